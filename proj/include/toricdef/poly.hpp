#pragma once

#include "toricdef/rational.hpp"

#include <map>
#include <string>

namespace toricdef {

/// Univariate polynomial in lambda with integer coefficients, stored sparsely.
/// Zero coefficients are never kept, so equality is coefficient-wise.
class Poly {
public:
    Poly() = default;
    Poly(long long c) { add_term(0, Int(c)); }  // NOLINT(google-explicit-constructor)

    static Poly monomial(const Int& coef, int degree) {
        Poly p;
        p.add_term(degree, coef);
        return p;
    }
    static Poly lambda() { return monomial(1, 1); }

    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
    Int coeff(int degree) const {
        auto it = terms_.find(degree);
        return it == terms_.end() ? Int(0) : it->second;
    }
    const std::map<int, Int>& terms() const { return terms_; }

    Poly& operator+=(const Poly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, Int(-c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [i, x] : a.terms_)
            for (const auto& [j, y] : b.terms_) r.add_term(i + j, x * y);
        return r;
    }
    Poly pow(long long e) const {
        Poly r(1), base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * base;
            base = base * base;
        }
        return r;
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// "2*λ + λ^2" style; "0" for the zero polynomial.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            Int a = abs(c);
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            std::string mono = k == 0 ? "" : (k == 1 ? "λ" : "λ^" + std::to_string(k));
            if (mono.empty()) out += a.str();
            else out += (a == 1 ? "" : a.str() + "*") + mono;
        }
        return out;
    }

private:
    void add_term(int degree, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(degree, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, Int> terms_;
};

}  // namespace toricdef
