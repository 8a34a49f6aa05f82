#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toricdef {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Always stored reduced with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(const Int& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) value_ = boost::multiprecision::cpp_rational(Int(-num), Int(-den));
        else value_ = boost::multiprecision::cpp_rational(num, den);
    }

    Int num() const { return boost::multiprecision::numerator(value_); }
    Int den() const { return boost::multiprecision::denominator(value_); }

    bool is_integer() const { return den() == 1; }

    Int floor() const {
        Int n = num(), d = den();
        Int q = n / d;
        if (n < 0 && q * d != n) q -= 1;
        return q;
    }
    Int ceil() const {
        Int n = num(), d = den();
        Int q = n / d;
        if (n > 0 && q * d != n) q += 1;
        return q;
    }

    Rat operator-() const { return Rat(-value_); }
    Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
    Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
    Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.value_ == 0) throw std::domain_error("Rat: division by zero");
        value_ /= o.value_;
        return *this;
    }
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    /// Parses "a", "-a" or "a/b".
    static Rat parse(std::string_view s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
            return Rat(Int(std::string(s.substr(0, slash))), Int(std::string(s.substr(slash + 1))));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    explicit Rat(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
    boost::multiprecision::cpp_rational value_{0};
};

inline Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Exact narrowing; throws when the value does not fit.
inline std::int64_t to_i64(const Int& v) {
    if (v > Int(INT64_MAX) || v < Int(INT64_MIN)) throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

/// Binomial coefficient C(n, k) for n >= 0; zero outside 0 <= k <= n.
inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace toricdef
