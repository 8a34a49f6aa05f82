#pragma once

#include "toricdef/cqs.hpp"
#include "toricdef/errors.hpp"
#include "toricdef/geometry3.hpp"
#include "toricdef/minkowski.hpp"
#include "toricdef/totalspace.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace toricdef {

/// Shape of a two-dimensional cone cone(r1, r2) with primitive rays: the segment [r1, r2]
/// sits at lattice height `height` and has lattice length `length`.
struct Cone2Shape {
    Int height = 0;
    Int length = 0;
    bool smooth() const { return height == 1 && length == 1; }
    bool rdp() const { return height == 1; }  // A_{length-1}, smooth when length is 1
    bool t_or_smooth() const { return length % height == 0; }
};

inline Cone2Shape cone2_shape(const Vec2& r1, const Vec2& r2) {
    ensure(r1.is_integral() && r2.is_integral(), "cone2_shape expects integral rays");
    Vec2 dv = r2 - r1;
    if (dv.is_zero()) return {1, 0};
    Vec2 m = primitive(Vec2{-dv.y, dv.x});
    Rat h = dot(r1, m);
    if (h < 0) h = -h;
    Rat det_ = det(r1, r2);
    if (det_ < 0) det_ = -det_;
    Rat len = det_ / h;
    ensure(len.is_integer() && h.is_integer(), "cone2_shape: non-integral height or length");
    return {h.num(), len.num()};
}

/// tau_i = cone(b_i, b_{i+1}) with its roof on [<., w^i> = alpha_i] running from P_i to P_{i+1}.
struct PCone {
    int i = 0;
    Vec2 ray_lo;     // b_i
    Vec2 ray_hi;     // b_{i+1}
    Vec2 roof_lo;    // P_i
    Vec2 roof_hi;    // P_{i+1}
    long long alpha = 0;
    Rat roof_length{0};
    bool degenerate = false;
    Cone2Shape shape;
};

struct PResolutionFan {
    ZeroChain k;
    std::vector<Vec2> rays;   // distinct, ordered from (1,0) to (-q,n)
    std::vector<PCone> cones; // tau_2 .. tau_{e-1}, degenerate ones included

    const PCone& tau(int i) const { return cones.at(static_cast<std::size_t>(i - 2)); }
};

namespace detail {
// Solves <x, u> = a, <x, v> = b.
inline Vec2 solve2(const Vec2& u, const Vec2& v, const Rat& a, const Rat& b) {
    Rat dt = u.x * v.y - u.y * v.x;
    ensure(dt != 0, "solve2: dependent constraints");
    return {(a * v.y - b * u.y) / dt, (u.x * b - v.x * a) / dt};
}
}  // namespace detail

inline PResolutionFan p_resolution_fan(const CqsModel& m, const ZeroChain& k) {
    if (k.e() != m.e) throw InvalidInput("chain length does not match the model");
    for (int i = 2; i <= m.e - 1; ++i)
        if (k.k_at(i) > m.a_at(i)) throw InvalidInput("k is not in K: k_i exceeds a_i");
    const int e = m.e;
    // P_2 .. P_e: corners of the roof.
    std::vector<Vec2> P;
    P.push_back((Rat(k.alpha_at(2)) / dot(m.ray_x(), m.w_at(2))) * m.ray_x());
    for (int i = 3; i <= e - 1; ++i)
        P.push_back(detail::solve2(m.w_at(i - 1), m.w_at(i), Rat(k.alpha_at(i - 1)), Rat(k.alpha_at(i))));
    P.push_back((Rat(k.alpha_at(e - 1)) / dot(m.ray_far(), m.w_at(e - 1))) * m.ray_far());

    PResolutionFan fan;
    fan.k = k;
    std::vector<Vec2> b;
    for (const auto& pt : P) {
        ensure(!pt.is_zero() && m.sigma.contains(pt), "roof corner outside sigma");
        b.push_back(primitive_on_ray(pt));
        if (fan.rays.empty() || fan.rays.back() != b.back()) fan.rays.push_back(b.back());
    }
    ensure(fan.rays.front() == m.ray_x() && fan.rays.back() == primitive(m.ray_far()), "fan misses a ray of sigma");

    for (int i = 2; i <= e - 1; ++i) {
        PCone c;
        c.i = i;
        c.ray_lo = b[static_cast<std::size_t>(i - 2)];
        c.ray_hi = b[static_cast<std::size_t>(i - 1)];
        c.roof_lo = P[static_cast<std::size_t>(i - 2)];
        c.roof_hi = P[static_cast<std::size_t>(i - 1)];
        c.alpha = k.alpha_at(i);
        ensure(dot(c.roof_lo, m.w_at(i)) == c.alpha && dot(c.roof_hi, m.w_at(i)) == c.alpha, "roof off its line");
        // Lattice length along the primitive direction orthogonal to w^i.
        const Vec2& w = m.w_at(i);
        Vec2 u{w.y, -w.x};
        Vec2 dv = c.roof_hi - c.roof_lo;
        c.roof_length = u.x != 0 ? dv.x / u.x : dv.y / u.y;
        if (c.roof_length < 0) c.roof_length = -c.roof_length;
        Rat via_det = det(c.roof_lo, c.roof_hi) / Rat(c.alpha);
        ensure(c.roof_length == (via_det < 0 ? -via_det : via_det), "roof length routes disagree");
        c.degenerate = c.ray_lo == c.ray_hi;
        ensure(c.degenerate == (c.roof_length == 0), "degenerate cone with a non-trivial roof");
        c.shape = c.degenerate ? Cone2Shape{1, 0} : cone2_shape(c.ray_lo, c.ray_hi);
        fan.cones.push_back(c);
    }
    return fan;
}

/// One cone's share of a fan decomposition. `q` is Q_{tau_i}(w^h) in the lemma frame;
/// part0/part1 are the glued summands (part1 measured before division by p).
struct Piece {
    int i = 0;
    Interval q;
    Interval part0;
    Interval part1;
    bool degenerate() const { return part0.is_point() && part1.is_point(); }
};

enum class FanKind { S, Sbar };

struct FanDecomposition {
    FanKind kind = FanKind::S;
    int h = 0;
    long long p = 1;
    long long d = 1;
    ZeroChain k;
    PResolutionFan fan;
    std::vector<Piece> pieces;  // left to right: i = e-1 down to 2
    Interval total0;            // lemma frame
    Interval total1;
    Decomposition induced;      // canonical frame, comparable with enum_decompositions

    std::string label() const {
        std::string kk;
        for (std::size_t j = 0; j < k.k.size(); ++j) kk += (j ? "," : "") + std::to_string(k.k[j]);
        if (kind == FanKind::S)
            return "S^" + std::to_string(d) + "_{" + std::to_string(h) + "," + std::to_string(p) + "}[" + kk + "]";
        return "Sbar^" + std::to_string(d) + "_" + std::to_string(h) + "[" + kk + "]";
    }
};

inline FanDecomposition fan_decomposition(const CqsModel& m, const ZeroChain& k, FanKind kind, int h, long long p,
                                          long long d) {
    check_index(m, h);
    const long long room = m.a_at(h) - k.k_at(h);
    if (kind == FanKind::S) {
        if (d < 1 || d > room) throw InvalidInput("S: need 1 <= d <= a_h - k_h = " + std::to_string(room));
        if (p < 1 || p * d > room) throw InvalidInput("S: need 1 <= p <= (a_h - k_h)/d");
    } else {
        if (!m.interior_index(h)) throw InvalidInput("Sbar: need h not in {2, e-1}");
        if (p != 1) throw InvalidInput("Sbar: need p = 1");
        if (k.alpha_at(h) != 1) throw InvalidInput("Sbar: need alpha_h = 1");
        long long lo = k.alpha_at(h - 1);
        if (d < lo || d > room + lo)
            throw InvalidInput("Sbar: need " + std::to_string(lo) + " <= d <= " + std::to_string(room + lo));
    }

    FanDecomposition fd;
    fd.kind = kind;
    fd.h = h;
    fd.p = p;
    fd.d = d;
    fd.k = k;
    fd.fan = p_resolution_fan(m, k);
    const Vec2& wh = m.w_at(h);
    const Vec2& wn = m.w_at(h + 1);
    auto t_of = [&](const Vec2& b) { return dot(b, wn) / dot(b, wh); };

    Segment seg = segment(m, h);
    const Rat beta_l = seg.beta + Rat(seg.lemma_shift), gamma_l = seg.gamma + Rat(seg.lemma_shift);
    const Rat cut = Rat(kind == FanKind::S ? p * d : d - k.alpha_at(h - 1));
    Rat top = beta_l, bottom = 0;
    for (int i = m.e - 1; i >= 2; --i) {
        const PCone& c = fd.fan.tau(i);
        Piece pc;
        pc.i = i;
        pc.q = {t_of(c.ray_hi), t_of(c.ray_lo)};
        Rat len = pc.q.length();
        Rat len0 = len, len1 = 0;
        if (i == h) {
            ensure(len == Rat(room), "length of Q^h differs from a_h - k_h");
            len0 = len - cut;
            len1 = cut;
        } else if (kind == FanKind::Sbar && i < h) {
            len0 = 0;
            len1 = len;
        }
        pc.part0 = {top, top + len0};
        pc.part1 = {bottom, bottom + len1};
        top += len0;
        bottom += len1;
        fd.pieces.push_back(pc);
    }
    ensure(fd.pieces.front().q.lo == beta_l && fd.pieces.back().q.hi == gamma_l, "cone segments do not cover Q");
    fd.total0 = {beta_l, top};
    fd.total1 = {Rat(0), bottom};

    fd.induced.kind = kind == FanKind::S ? DecompKind::D : DecompKind::Dbar;
    fd.induced.h = h;
    fd.induced.p = p;
    fd.induced.d = d;
    fd.induced.summand0 = fd.total0.shifted(Rat(Int(-seg.lemma_shift)));
    fd.induced.summand1 = fd.total1;
    ensure(is_admissible(fd.induced), "induced decomposition is not admissible");
    ensure(minkowski_sum(fd.induced.summand0, fd.induced.summand1) == seg.interval(), "induced decomposition misses Q");
    return fd;
}

/// Number of lattice points of Q(w^h) strictly to the right of tau_h (towards the (1,0) ray).
inline long long lattice_points_right(const CqsModel& m, const ZeroChain& k, int h) {
    check_index(m, h);
    if (!m.interior_index(h)) throw InvalidInput("lattice_points_right: need h not in {2, e-1}");
    if (k.alpha_at(h) != 1) throw InvalidInput("lattice_points_right: need alpha_h = 1");
    auto fan = p_resolution_fan(m, k);
    const Vec2& wh = m.w_at(h);
    Rat right_edge = dot(fan.tau(h).ray_lo, m.w_at(h + 1)) / dot(fan.tau(h).ray_lo, wh);
    Segment seg = segment(m, h);
    Rat gamma_l = seg.gamma + Rat(seg.lemma_shift);
    Int count = gamma_l.floor() - right_edge.floor();
    return static_cast<long long>(count < 0 ? Int(0) : count);
}

struct Fan3Cone {
    int i = -1;  // index of the P-resolution cone it lies over; -1 when built from a hull
    Cone3 cone;
    std::optional<Q3> m;  // Gorenstein degree
    bool qgorenstein = false;
    bool canonical = false;
    bool rdp_or_smooth = false;  // the special-fiber cone tau_i is at most an RDP
};

struct Fan3 {
    std::vector<Fan3Cone> cones;
    Cone3 support{std::vector<I3>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
};

/// Planes <m, .> = 1 through three rays that bound conv(0, rays) from above.
inline std::vector<Q3> roof_planes(const Cone3& c) {
    const auto& r = c.rays();
    std::vector<Q3> out;
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = a + 1; b < r.size(); ++b)
            for (std::size_t d = b + 1; d < r.size(); ++d) {
                if (det3(r[a], r[b], r[d]) == 0) continue;
                Q3 m = solve3({r[a], r[b], r[d]}, {Rat(1), Rat(1), Rat(1)});
                if (std::find(out.begin(), out.end(), m) != out.end()) continue;
                if (std::all_of(r.begin(), r.end(), [&](const I3& x) { return dot(m, x) <= 1; })) out.push_back(m);
            }
    return out;
}

/// Nonzero lattice points of conv(0, rays), by enumeration of the bounding box.
inline std::vector<I3> lattice_points_conv0(const Cone3& c) {
    I3 lo{0, 0, 0}, hi{0, 0, 0};
    for (const auto& r : c.rays())
        for (int j = 0; j < 3; ++j) {
            lo[j] = std::min(lo[j], r[j]);
            hi[j] = std::max(hi[j], r[j]);
        }
    auto roofs = roof_planes(c);
    std::vector<I3> out;
    for (long long x = lo[0]; x <= hi[0]; ++x)
        for (long long y = lo[1]; y <= hi[1]; ++y)
            for (long long z = lo[2]; z <= hi[2]; ++z) {
                I3 v{x, y, z};
                if (is_zero(v) || !c.contains(v)) continue;
                if (std::all_of(roofs.begin(), roofs.end(), [&](const Q3& m) { return dot(m, v) <= 1; }))
                    out.push_back(v);
            }
    return out;
}

/// Q-Gorenstein cone whose only lattice point below the roof is 0.
inline bool is_canonical_cone3(const Cone3& c) {
    auto m = c.gorenstein_degree();
    if (!m) throw InvalidInput("is_canonical_cone3: cone is not Q-Gorenstein");
    for (const auto& v : lattice_points_conv0(c))
        if (dot(*m, v) < 1) return false;
    return true;
}

namespace detail {
inline I3 lift_top(const Rat& t) { return primitive_on_ray({t, Rat(1), Rat(0)}); }
inline I3 lift_bottom(const Rat& t, long long p) { return primitive_on_ray({t / Rat(p), Rat(0), Rat(1)}); }

inline Fan3Cone make_fan3_cone(int i, const Cone3& c) {
    Fan3Cone fc{i, c, c.gorenstein_degree()};
    fc.qgorenstein = fc.m.has_value();
    fc.canonical = fc.qgorenstein && is_canonical_cone3(c);
    return fc;
}
}  // namespace detail

inline Fan3 assemble_fan3(const FanDecomposition& fd) {
    Fan3 out;
    const auto& ps = fd.pieces;
    for (std::size_t j = 0; j + 1 < ps.size(); ++j)
        ensure(ps[j].part0.hi == ps[j + 1].part0.lo && ps[j].part1.hi == ps[j + 1].part1.lo, "pieces are not adjacent");
    ensure(ps.front().part0.lo == fd.total0.lo && ps.back().part0.hi == fd.total0.hi, "top row does not tile");
    ensure(ps.front().part1.lo == fd.total1.lo && ps.back().part1.hi == fd.total1.hi, "bottom row does not tile");

    out.support = Cone3({detail::lift_top(fd.total0.lo), detail::lift_top(fd.total0.hi),
                         detail::lift_bottom(fd.total1.lo, fd.p), detail::lift_bottom(fd.total1.hi, fd.p)});
    // Slice areas in y + z = 1: each piece is a trapezoid between the two parallel rows.
    Rat area = 0;
    for (const auto& pc : ps) {
        if (pc.degenerate()) continue;
        Cone3 c({detail::lift_top(pc.part0.lo), detail::lift_top(pc.part0.hi), detail::lift_bottom(pc.part1.lo, fd.p),
                 detail::lift_bottom(pc.part1.hi, fd.p)});
        Fan3Cone fc = detail::make_fan3_cone(pc.i, c);
        ensure(fc.qgorenstein, "cone " + std::to_string(pc.i) + " is not Q-Gorenstein");
        fc.rdp_or_smooth = fd.fan.tau(pc.i).degenerate || fd.fan.tau(pc.i).shape.rdp();
        for (const auto& r : c.rays()) ensure(out.support.contains(r), "cone leaves the support");
        area += pc.part0.length() + pc.part1.length() / Rat(fd.p);
        out.cones.push_back(std::move(fc));
    }
    ensure(area == fd.total0.length() + fd.total1.length() / Rat(fd.p), "cones do not tile the support");
    return out;
}

/// Canonical model of U_{sigma'} as the fan over the bounded faces of conv(sigma' ∩ N' \ 0).
/// Every lattice point of sigma' outside conv(0, rays) lies in conv(rays) + sigma', so the
/// lattice points of conv(0, rays) generate the same polyhedron.
inline Fan3 canonical_model_via_hull(const Cone3& sigma) {
    std::vector<I3> pts = lattice_points_conv0(sigma);
    // Drop points of s' + sigma': they cannot be vertices of bounded faces.
    std::vector<I3> keep;
    for (const auto& s : pts) {
        bool dominated = std::any_of(pts.begin(), pts.end(), [&](const I3& t) { return t != s && sigma.contains(s - t); });
        if (!dominated) keep.push_back(s);
    }
    for (const auto& r : sigma.rays())
        ensure(std::find(keep.begin(), keep.end(), r) != keep.end(), "primitive ray lost in the hull sieve");

    std::vector<Q3> normals;
    Fan3 out;
    out.support = sigma;
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            for (std::size_t c = b + 1; c < keep.size(); ++c) {
                if (det3(keep[a], keep[b], keep[c]) == 0) continue;
                Q3 m = solve3({keep[a], keep[b], keep[c]}, {Rat(1), Rat(1), Rat(1)});
                if (std::find(normals.begin(), normals.end(), m) != normals.end()) continue;
                bool ok = std::all_of(sigma.rays().begin(), sigma.rays().end(), [&](const I3& r) { return dot(m, r) > 0; }) &&
                          std::all_of(keep.begin(), keep.end(), [&](const I3& s) { return dot(m, s) >= 1; });
                if (!ok) continue;
                normals.push_back(m);
                std::vector<I3> face;
                for (const auto& s : keep)
                    if (dot(m, s) == 1) face.push_back(s);
                out.cones.push_back(detail::make_fan3_cone(-1, Cone3(face)));
            }
    return out;
}

/// Merges cones sharing a Gorenstein degree; two fans describe the same subdivision into
/// maximal convex pieces exactly when the merged cone sets agree.
inline std::vector<Cone3> merged_cones(const Fan3& f) {
    std::vector<std::pair<Q3, std::vector<I3>>> groups;
    for (const auto& c : f.cones) {
        ensure(c.m.has_value(), "merged_cones: cone without Gorenstein degree");
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == *c.m; });
        if (it == groups.end()) {
            groups.push_back({*c.m, {}});
            it = groups.end() - 1;
        }
        it->second.insert(it->second.end(), c.cone.rays().begin(), c.cone.rays().end());
    }
    std::vector<Cone3> out;
    for (const auto& g : groups) out.emplace_back(g.second);
    return out;
}

inline bool same_subdivision(const Fan3& a, const Fan3& b) {
    auto x = merged_cones(a), y = merged_cones(b);
    if (x.size() != y.size()) return false;
    return std::all_of(x.begin(), x.end(), [&](const Cone3& c) { return std::find(y.begin(), y.end(), c) != y.end(); });
}

inline FanDecomposition fan_decomposition_for(const Deformation& def, const ZeroChain& k) {
    return fan_decomposition(def.model, k, def.bar() ? FanKind::Sbar : FanKind::S, def.h(), def.p(), def.d());
}

/// The combinatorial canonical-model criterion: tau_i at most RDP for non-degenerate i != h,
/// and tau_h an RDP or the h-piece using all of Q^h.
inline bool canonical_predicate(const FanDecomposition& fd) {
    for (const auto& c : fd.fan.cones) {
        if (c.degenerate || c.i == fd.h) continue;
        if (!c.shape.rdp()) return false;
    }
    const PCone& th = fd.fan.tau(fd.h);
    long long cut = fd.kind == FanKind::S ? fd.p * fd.d : fd.d - fd.k.alpha_at(fd.h - 1);
    return th.degenerate || th.shape.rdp() || Rat(cut) == th.roof_length / Rat(th.alpha);
}

struct CanonicalModel {
    ZeroChain k;
    FanDecomposition decomposition;
    Fan3 fan;
};

inline CanonicalModel canonical_model(const Deformation& def) {
    std::optional<CanonicalModel> found;
    for (const auto& k : components_of(def)) {
        auto fd = fan_decomposition_for(def, k);
        if (!canonical_predicate(fd)) continue;
        auto fan = assemble_fan3(fd);
        for (const auto& c : fan.cones)
            ensure(c.canonical, def.label + ": predicate accepts a non-canonical cone");
        if (!found) found = CanonicalModel{k, fd, fan};
    }
    ensure(found.has_value(), def.label + ": no component satisfies the canonical criterion");
    ensure(same_subdivision(found->fan, canonical_model_via_hull(def.sigma_prime)),
           def.label + ": canonical model disagrees with the hull construction");
    return *found;
}

}  // namespace toricdef
