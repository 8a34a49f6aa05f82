#pragma once

#include "toricdef/errors.hpp"
#include "toricdef/rational.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricdef {

/// Integer vector in Z^3. The 3D computations stay small, so int64 with overflow checks suffices.
using I3 = std::array<long long, 3>;
using Q3 = std::array<Rat, 3>;

namespace detail {
inline long long ck_add(long long a, long long b) {
    long long r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("3D arithmetic overflow");
    return r;
}
inline long long ck_mul(long long a, long long b) {
    long long r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("3D arithmetic overflow");
    return r;
}
}  // namespace detail

inline I3 operator+(const I3& a, const I3& b) {
    return {detail::ck_add(a[0], b[0]), detail::ck_add(a[1], b[1]), detail::ck_add(a[2], b[2])};
}
inline I3 operator-(const I3& a) { return {-a[0], -a[1], -a[2]}; }
inline I3 operator-(const I3& a, const I3& b) { return a + (-b); }
inline I3 operator*(long long s, const I3& a) {
    return {detail::ck_mul(s, a[0]), detail::ck_mul(s, a[1]), detail::ck_mul(s, a[2])};
}

inline long long dot(const I3& a, const I3& b) {
    using detail::ck_add, detail::ck_mul;
    return ck_add(ck_add(ck_mul(a[0], b[0]), ck_mul(a[1], b[1])), ck_mul(a[2], b[2]));
}
inline Rat dot(const Q3& m, const I3& v) { return m[0] * Rat(v[0]) + m[1] * Rat(v[1]) + m[2] * Rat(v[2]); }

inline I3 cross(const I3& a, const I3& b) {
    using detail::ck_mul;
    return {ck_mul(a[1], b[2]) - ck_mul(a[2], b[1]), ck_mul(a[2], b[0]) - ck_mul(a[0], b[2]),
            ck_mul(a[0], b[1]) - ck_mul(a[1], b[0])};
}
inline long long det3(const I3& a, const I3& b, const I3& c) { return dot(a, cross(b, c)); }

inline bool is_zero(const I3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

inline I3 primitive(const I3& v) {
    long long g = std::gcd(std::gcd(v[0], v[1]), v[2]);
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    return {v[0] / g, v[1] / g, v[2] / g};
}

/// Primitive integer vector on the ray through a nonzero rational point.
inline I3 primitive_on_ray(const Q3& v) {
    Int l = 1;
    for (const auto& c : v) l = l / gcd(l, c.den()) * c.den();
    I3 out{};
    for (int i = 0; i < 3; ++i) out[i] = to_i64(v[i].num() * (l / v[i].den()));
    return primitive(out);
}

inline bool parallel(const I3& a, const I3& b) { return is_zero(cross(a, b)); }

inline std::string str(const I3& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

/// Solves m . r_j = rhs_j for three linearly independent rows.
inline Q3 solve3(const std::array<I3, 3>& rows, const Q3& rhs) {
    long long d = det3(rows[0], rows[1], rows[2]);
    if (d == 0) throw std::invalid_argument("solve3: singular system");
    Q3 out;
    for (int col = 0; col < 3; ++col) {
        Rat acc = 0;
        // Cramer: replace column col by rhs and expand along it.
        for (int r = 0; r < 3; ++r) {
            const I3& u = rows[(r + 1) % 3];
            const I3& w = rows[(r + 2) % 3];
            long long minor = u[(col + 1) % 3] * w[(col + 2) % 3] - u[(col + 2) % 3] * w[(col + 1) % 3];
            acc += rhs[r] * Rat(minor);
        }
        out[col] = acc / Rat(d);
    }
    return out;
}

/// A strictly convex, full-dimensional rational polyhedral cone in R^3.
/// Rays are the primitive extreme rays (in first-seen order); facets are primitive inner normals.
class Cone3 {
public:
    explicit Cone3(const std::vector<I3>& generators) {
        std::vector<I3> gens;
        for (const auto& g : generators) {
            if (is_zero(g)) continue;
            I3 p = primitive(g);
            if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                I3 nrm = cross(gens[i], gens[j]);
                if (is_zero(nrm)) throw InvalidInput("Cone3: contains a line");  // opposite rays
                bool pos = true, neg = true;
                for (const auto& g : gens) {
                    long long s = dot(nrm, g);
                    pos = pos && s >= 0;
                    neg = neg && s <= 0;
                }
                if (pos && neg) continue;  // all generators coplanar with this pair
                if (!pos && !neg) continue;
                I3 f = primitive(pos ? nrm : -nrm);
                if (std::find(facets_.begin(), facets_.end(), f) == facets_.end()) facets_.push_back(f);
            }
        if (facets_.size() < 3) throw InvalidInput("Cone3: not full-dimensional and strictly convex");
        for (const auto& g : gens) {
            int on = 0;
            for (const auto& f : facets_) on += dot(f, g) == 0;
            if (on >= 2) rays_.push_back(g);
        }
        ensure(rays_.size() >= 3, "Cone3: fewer than three extreme rays");
    }

    const std::vector<I3>& rays() const { return rays_; }
    const std::vector<I3>& facets() const { return facets_; }

    bool contains(const I3& v) const {
        return std::all_of(facets_.begin(), facets_.end(), [&](const I3& f) { return dot(f, v) >= 0; });
    }
    bool contains(const Q3& v) const {
        return std::all_of(facets_.begin(), facets_.end(), [&](const I3& f) { return dot(v, f) >= 0; });
    }
    /// Membership of a degree in the dual cone.
    bool dual_contains(const I3& m) const {
        return std::all_of(rays_.begin(), rays_.end(), [&](const I3& r) { return dot(m, r) >= 0; });
    }
    bool is_simplicial() const { return rays_.size() == 3; }

    /// The m with m . r = 1 on every primitive ray, when the cone is Q-Gorenstein.
    std::optional<Q3> gorenstein_degree() const {
        std::array<I3, 3> basis{};
        std::size_t found = 0;
        for (std::size_t i = 0; i < rays_.size() && found < 3; ++i) {
            basis[found] = rays_[i];
            if (found < 2 ? (found == 0 || !parallel(basis[0], basis[1])) : det3(basis[0], basis[1], basis[2]) != 0)
                ++found;
        }
        Q3 m = solve3(basis, {Rat(1), Rat(1), Rat(1)});
        for (const auto& r : rays_)
            if (dot(m, r) != 1) return std::nullopt;
        return m;
    }

    /// Same cone, compared as sets of rays.
    friend bool operator==(const Cone3& a, const Cone3& b) {
        if (a.rays_.size() != b.rays_.size()) return false;
        return std::all_of(a.rays_.begin(), a.rays_.end(),
                           [&](const I3& r) { return std::find(b.rays_.begin(), b.rays_.end(), r) != b.rays_.end(); });
    }

private:
    std::vector<I3> rays_;
    std::vector<I3> facets_;
};

}  // namespace toricdef
