#pragma once

#include "toricdef/cqs.hpp"
#include "toricdef/errors.hpp"

#include <string>
#include <vector>

namespace toricdef {

/// Closed interval [lo, hi] in a rank-one lattice; lo == hi is a point summand.
struct Interval {
    Rat lo{0};
    Rat hi{0};

    Rat length() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    Interval shifted(const Rat& s) const { return {lo + s, hi + s}; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval minkowski_sum(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

/// Q(w^h) = H^h ∩ sigma, where H^h = [<., w^h> = 1], as an interval of the lattice L^h.
///
/// Canonical frame: the leftmost lattice point is 0 and coordinates grow from the end on the
/// ray (-q,n) towards the end on the ray (1,0). The point with coordinate t is origin + t*step.
/// The lattice origin on H^h orthogonal to w^{h+1} sits at canonical coordinate -lemma_shift,
/// so t + lemma_shift = <point, w^{h+1}>; the total-space cones are built in that frame.
struct Segment {
    int h = 0;
    Rat beta{0};
    Rat gamma{0};
    Vec2 origin;   // lattice point of H^h with coordinate 0
    Vec2 step;     // primitive, <step, w^h> = 0, <step, w^{h+1}> = 1
    Int lemma_shift = 0;

    Rat length() const { return gamma - beta; }
    Interval interval() const { return {beta, gamma}; }
    Vec2 point(const Rat& t) const { return origin + t * step; }
    /// Coordinate of a point of H^h.
    Rat coordinate(const Vec2& x, const CqsModel& m) const {
        return dot(x, m.w_at(h + 1)) - Rat(lemma_shift);
    }
};

inline void check_index(const CqsModel& m, int h) {
    if (h < 2 || h > m.e - 1) throw InvalidInput("index h must satisfy 2 <= h <= e-1");
}

inline Segment segment(const CqsModel& m, int h) {
    check_index(m, h);
    const Vec2& w = m.w_at(h);
    const Vec2& wn = m.w_at(h + 1);
    // Dual basis of the lattice basis (w^h, w^{h+1}) of M.
    Rat dt = det(w, wn);
    ensure(dt == 1 || dt == -1, "consecutive generators do not form a lattice basis");
    Vec2 o{wn.y / dt, -wn.x / dt};      // <o,w> = 1, <o,wn> = 0
    Vec2 u{-w.y / dt, w.x / dt};        // <u,w> = 0, <u,wn> = 1

    Vec2 far = m.ray_far();
    Vec2 p_far = (Rat(1) / dot(far, w)) * far;
    Vec2 p_x = (Rat(1) / dot(m.ray_x(), w)) * m.ray_x();
    Rat beta_l = dot(p_far, wn);
    Rat gamma_l = dot(p_x, wn);
    ensure(beta_l < gamma_l, "segment orientation");

    Segment s;
    s.h = h;
    s.lemma_shift = beta_l.ceil();
    s.beta = beta_l - Rat(s.lemma_shift);
    s.gamma = gamma_l - Rat(s.lemma_shift);
    s.origin = o + Rat(s.lemma_shift) * u;
    s.step = u;
    return s;
}

/// n / (w1 (w2 n - w1 q)) for w^h = [w1, w2].
inline Rat segment_length(const CqsModel& m, int h) {
    check_index(m, h);
    const Vec2& w = m.w_at(h);
    Rat len = Rat(m.n) / (w.x * (w.y * Rat(m.n) - w.x * Rat(m.q)));
    ensure(len == segment(m, h).length(), "segment length formula disagrees with the geometric length");
    return len;
}

inline Int lattice_point_count(const Interval& i) {
    Int c = i.hi.floor() - i.lo.ceil() + 1;
    return c < 0 ? Int(0) : c;
}

inline long long lattice_point_count(const CqsModel& m, int h) {
    return static_cast<long long>(lattice_point_count(segment(m, h).interval()));
}

enum class DecompKind { D, Dbar };

/// An admissible decomposition Q = summand0 + summand1 in the canonical frame of segment(h).
/// For kind D, summand1 = p·[0, d] = [0, pd]; for Dbar p = 1.
struct Decomposition {
    DecompKind kind = DecompKind::D;
    int h = 0;
    long long p = 1;
    long long d = 1;
    Interval summand0;
    Interval summand1;

    std::string label() const {
        if (kind == DecompKind::D)
            return "D^" + std::to_string(d) + "_{" + std::to_string(h) + "," + std::to_string(p) + "}";
        return "Dbar^" + std::to_string(d) + "_" + std::to_string(h);
    }
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// D^d(p, Q): Q = (beta, gamma - pd) + p (0, d).
inline Decomposition decomposition_d(const Interval& q, long long p, long long d) {
    Decomposition dec;
    dec.kind = DecompKind::D;
    dec.p = p;
    dec.d = d;
    Rat pd(p * d);
    dec.summand0 = {q.lo, q.hi - pd};
    dec.summand1 = {0, pd};
    return dec;
}

/// Dbar^d(Q): Q = (beta, c) + (0, gamma - c) with c = ceil(beta + #(Q ∩ L) - d).
inline Decomposition decomposition_dbar(const Interval& q, long long d) {
    Decomposition dec;
    dec.kind = DecompKind::Dbar;
    dec.p = 1;
    dec.d = d;
    Rat c((q.lo + Rat(lattice_point_count(q)) - Rat(d)).ceil());
    dec.summand0 = {q.lo, c};
    dec.summand1 = {0, q.hi - c};
    return dec;
}

/// Admissibility of a two-term decomposition in degree p·w^h.
inline bool is_admissible(const Decomposition& dec) {
    const auto& [b0, g0] = dec.summand0;
    const auto& [b1, g1] = dec.summand1;
    if (b0 > g0 || b1 > g1) return false;
    if (dec.p == 1) return (b0.is_integer() || b1.is_integer()) && (g0.is_integer() || g1.is_integer());
    if (!b1.is_integer() || !g1.is_integer()) return false;
    return (g1 - b1).num() % dec.p == 0;
}

inline Decomposition make_decomposition(const CqsModel& m, DecompKind kind, int h, long long p, long long d) {
    Segment s = segment(m, h);
    Decomposition dec;
    if (kind == DecompKind::D) {
        if (p < 1 || p >= m.a_at(h)) throw InvalidInput("p must satisfy 1 <= p < a_h");
        if (d < 1 || Rat(p * d) > s.length()) throw InvalidInput("pd must satisfy 1 <= pd <= length(Q)");
        dec = decomposition_d(s.interval(), p, d);
    } else {
        if (!m.interior_index(h)) throw InvalidInput("Dbar requires h not in {2, e-1}");
        if (p != 1) throw InvalidInput("Dbar requires p = 1");
        if (d < 1 || Int(d) > lattice_point_count(s.interval())) throw InvalidInput("d must satisfy 1 <= d <= #(Q ∩ L)");
        dec = decomposition_dbar(s.interval(), d);
    }
    dec.h = h;
    ensure(minkowski_sum(dec.summand0, dec.summand1) == s.interval(), "summands do not add up to Q");
    ensure(is_admissible(dec), "constructed decomposition is not admissible");
    return dec;
}

/// Every non-trivial admissible decomposition up to lattice shifts, ordered by (h, p, kind, d).
inline std::vector<Decomposition> enum_decompositions(const CqsModel& m) {
    std::vector<Decomposition> out;
    for (int h = 2; h <= m.e - 1; ++h) {
        Segment s = segment(m, h);
        for (long long p = 1; p < m.a_at(h); ++p) {
            for (long long d = 1; Rat(p * d) <= s.length(); ++d)
                out.push_back(make_decomposition(m, DecompKind::D, h, p, d));
            if (p == 1 && m.interior_index(h)) {
                long long count = static_cast<long long>(lattice_point_count(s.interval()));
                for (long long d = 1; d <= count; ++d) out.push_back(make_decomposition(m, DecompKind::Dbar, h, 1, d));
            }
        }
    }
    return out;
}

}  // namespace toricdef
