#pragma once

#include "toricdef/rational.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toricdef {

/// Point or vector of N_R or M_R in the standard lattice Z^2.
struct Vec2 {
    Rat x{0};
    Rat y{0};

    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const Rat& s, const Vec2& v) { return {s * v.x, s * v.y}; }

    bool is_integral() const { return x.is_integer() && y.is_integer(); }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline Rat dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rat det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// v divided by the gcd of its (integer) coordinates.
inline Vec2 primitive(const Vec2& v) {
    if (!v.is_integral()) throw std::invalid_argument("primitive: non-integral vector");
    if (v.is_zero()) throw std::invalid_argument("primitive: zero vector");
    Int g = gcd(v.x.num(), v.y.num());
    return {Rat(v.x.num() / g), Rat(v.y.num() / g)};
}

/// Primitive lattice vector on the ray through a nonzero rational vector.
inline Vec2 primitive_on_ray(const Vec2& v) {
    if (v.is_zero()) throw std::invalid_argument("primitive_on_ray: zero vector");
    Int l = boost::multiprecision::lcm(v.x.den(), v.y.den());
    return primitive({v.x * Rat(l), v.y * Rat(l)});
}

/// Strictly convex two-dimensional cone with primitive rays, det(ray1, ray2) > 0.
class Cone2 {
public:
    Cone2(const Vec2& a, const Vec2& b) : ray1_(primitive_on_ray(a)), ray2_(primitive_on_ray(b)) {
        Rat d = det(ray1_, ray2_);
        if (d == 0) throw std::invalid_argument("Cone2: rays are collinear");
        if (d < 0) std::swap(ray1_, ray2_);
    }

    const Vec2& ray1() const { return ray1_; }
    const Vec2& ray2() const { return ray2_; }

    bool contains(const Vec2& v) const { return det(ray1_, v) >= 0 && det(v, ray2_) >= 0; }

    /// Dual cone in M_R: functionals nonnegative on both rays.
    Cone2 dual() const {
        // Inward normals of the two boundary rays.
        Vec2 n1{-ray1_.y, ray1_.x};
        Vec2 n2{ray2_.y, -ray2_.x};
        return Cone2(n1, n2);
    }

    friend bool operator==(const Cone2&, const Cone2&) = default;

private:
    Vec2 ray1_;
    Vec2 ray2_;
};

/// Hirzebruch-Jung continued fraction [c1, ..., ck] = c1 - 1/[c2, ..., ck].
struct ContinuedFraction {
    std::vector<long long> coeffs;
    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

/// Evaluates [c1, ..., ck]; nullopt when a division by zero occurs (or the list is empty).
inline std::optional<Rat> cf_eval(std::span<const long long> coeffs) {
    if (coeffs.empty()) return std::nullopt;
    Rat value(coeffs.back());
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
        if (value == 0) return std::nullopt;
        value = Rat(*it) - Rat(1) / value;
    }
    return value;
}

inline std::optional<Rat> cf_eval(const ContinuedFraction& cf) { return cf_eval(cf.coeffs); }

/// Expansion of num/den > 1 with all coefficients >= 2.
inline ContinuedFraction cf_expand(Int num, Int den) {
    if (den < 1 || num <= den) throw std::invalid_argument("cf_expand: requires num > den >= 1");
    if (gcd(num, den) != 1) throw std::invalid_argument("cf_expand: fraction not reduced");
    ContinuedFraction cf;
    while (den != 0) {
        Int c = num / den;
        if (c * den != num) c += 1;  // ceiling
        cf.coeffs.push_back(to_i64(c));
        Int rest = c * den - num;
        num = std::move(den);
        den = std::move(rest);
    }
    return cf;
}

namespace detail {

/// Integer vector s with det(r, s) = 1 for primitive integral r.
inline Vec2 unimodular_complement(const Vec2& r) {
    // Extended Euclid on (r.x, r.y): find u, v with r.x*v - r.y*u = 1.
    Int a = r.x.num(), b = r.y.num();
    Int old_r = a, cur_r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (cur_r != 0) {
        Int q = old_r / cur_r;
        Int tmp = old_r - q * cur_r; old_r = cur_r; cur_r = tmp;
        tmp = old_s - q * cur_s; old_s = cur_s; cur_s = tmp;
        tmp = old_t - q * cur_t; old_t = cur_t; cur_t = tmp;
    }
    // old_s * a + old_t * b = old_r = +-1
    if (old_r < 0) { old_s = -old_s; old_t = -old_t; }
    // det(r, (-old_t, old_s)) = a*old_s + b*old_t = 1
    return {Rat(Int(-old_t)), Rat(old_s)};
}

inline Int ceil_div(const Int& a, const Int& b) {
    Rat r(a, b);
    return r.ceil();
}

}  // namespace detail

/// Minimal generating set of cone ∩ Z^2, ordered counterclockwise from ray1 to ray2.
inline std::vector<Vec2> hilbert_basis_2d(const Cone2& cone) {
    const Vec2& r = cone.ray1();
    const Vec2& v = cone.ray2();
    std::vector<Vec2> basis{r};
    // Lattice points x with det(r, x) = 1 are s + t*r; the one closest to ray2 is next.
    Vec2 s = detail::unimodular_complement(r);
    Int dsv = det(s, v).num();
    Int drv = det(r, v).num();
    Int t = detail::ceil_div(-dsv, drv);
    Vec2 prev = r;
    Vec2 cur = s + Rat(t) * r;
    while (true) {
        basis.push_back(cur);
        Int dcv = det(cur, v).num();
        if (dcv == 0) break;
        Int c = detail::ceil_div(det(prev, v).num(), dcv);
        Vec2 next = Rat(c) * cur - prev;
        prev = cur;
        cur = next;
    }
    return basis;
}

}  // namespace toricdef
