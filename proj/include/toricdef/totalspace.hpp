#pragma once

#include "toricdef/cqs.hpp"
#include "toricdef/geometry3.hpp"
#include "toricdef/minkowski.hpp"
#include "toricdef/poly.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace toricdef {

/// One-parameter toric deformation attached to an admissible decomposition of Q(w^h).
///
/// Coordinates on N' = Z^3 are (t, y, z) where t is the lattice coordinate <., w^{h+1}> on the
/// affine line L^h. The summands are stored in that frame: summand0 is shifted back by the
/// segment's lemma_shift, summand1 starts at 0 in both frames.
struct Deformation {
    CqsModel model;
    Decomposition decomp;
    Interval lemma0;
    Interval lemma1;
    Cone3 sigma_prime{std::vector<I3>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::string label;
    // lambda = x^{lambda_plus} - x^{lambda_minus}
    I3 lambda_plus{0, 0, 1};
    I3 lambda_minus{0, 0, 0};

    int h() const { return decomp.h; }
    long long p() const { return decomp.p; }
    long long d() const { return decomp.d; }
    bool bar() const { return decomp.kind == DecompKind::Dbar; }
};

inline std::string deformation_label(const Decomposition& dec) {
    if (dec.kind == DecompKind::D)
        return "pi^" + std::to_string(dec.d) + "_{" + std::to_string(dec.h) + "," + std::to_string(dec.p) + "}";
    return "pibar^" + std::to_string(dec.d) + "_" + std::to_string(dec.h);
}

/// phi(a) = (a, 1, p) for a point a of L^h given in the lemma frame.
inline Q3 phi(const Rat& t, long long p) { return {t, Rat(1), Rat(p)}; }

/// Pullback of a degree [x,y,z] of M' to M: x w^{h+1} + (y + p z) w^h.
inline Vec2 phi_star(const CqsModel& m, int h, long long p, const I3& v) {
    return Rat(v[0]) * m.w_at(h + 1) + Rat(v[1] + p * v[2]) * m.w_at(h);
}

inline Deformation build_deformation(const CqsModel& m, const Decomposition& dec) {
    check_index(m, dec.h);
    if (!is_admissible(dec)) throw InvalidInput("decomposition is not admissible");
    Segment seg = segment(m, dec.h);
    if (minkowski_sum(dec.summand0, dec.summand1) != seg.interval())
        throw InvalidInput("summands do not add up to Q(w^h)");
    if (dec.kind == DecompKind::Dbar && !m.interior_index(dec.h))
        throw InvalidInput("Dbar decompositions need 2 < h < e-1");

    Deformation def;
    def.model = m;
    def.decomp = dec;
    def.label = deformation_label(dec);
    Rat shift(seg.lemma_shift);
    def.lemma0 = dec.summand0.shifted(shift);
    def.lemma1 = dec.summand1;
    Rat p(dec.p);
    def.sigma_prime = Cone3({primitive_on_ray({def.lemma0.lo, Rat(1), Rat(0)}),
                             primitive_on_ray({def.lemma0.hi, Rat(1), Rat(0)}),
                             primitive_on_ray({def.lemma1.lo / p, Rat(0), Rat(1)}),
                             primitive_on_ray({def.lemma1.hi / p, Rat(0), Rat(1)})});
    def.lambda_minus = {0, dec.p, 0};
    // sigma sits inside sigma' via phi: its rays meet L^h in the endpoints of Q.
    Interval q = dec.summand0.shifted(shift);
    ensure(def.sigma_prime.contains(phi(q.lo + dec.summand1.lo, dec.p)) &&
               def.sigma_prime.contains(phi(q.hi + dec.summand1.hi, dec.p)),
           "phi(sigma) is not contained in sigma'");
    return def;
}

/// index 0 stands for v~^h, index i >= 1 for v^i.
struct RelationTerm {
    long long coef = 0;
    int index = 0;
    friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

struct Relation {
    std::vector<RelationTerm> lhs;
    std::vector<RelationTerm> rhs;
    std::string str() const {
        auto side = [](const std::vector<RelationTerm>& ts) {
            std::string s;
            for (const auto& t : ts) {
                if (t.coef == 0) continue;
                if (!s.empty()) s += " + ";
                if (t.coef != 1) s += std::to_string(t.coef) + "*";
                s += t.index == 0 ? std::string("vt") : "v" + std::to_string(t.index);
            }
            return s.empty() ? std::string("0") : s;
        };
        return side(lhs) + " = " + side(rhs);
    }
};

struct GeneratorRelations {
    std::vector<I3> v;  // v^1 .. v^e
    I3 v_tilde{0, 0, 1};
    std::vector<Relation> relations;

    const I3& v_at(int i) const { return v.at(static_cast<std::size_t>(i - 1)); }
    I3 eval(const std::vector<RelationTerm>& ts) const {
        I3 out{0, 0, 0};
        for (const auto& t : ts) out = out + t.coef * (t.index == 0 ? v_tilde : v_at(t.index));
        return out;
    }
};

inline GeneratorRelations generator_relations(const Deformation& def) {
    const CqsModel& m = def.model;
    const int h = def.h(), e = m.e;
    const long long p = def.p(), d = def.d(), ah = m.a_at(h);
    GeneratorRelations g;
    g.v.assign(static_cast<std::size_t>(e), I3{0, 0, 0});
    auto at = [&](int i) -> I3& { return g.v[static_cast<std::size_t>(i - 1)]; };
    at(h) = {0, 1, 0};
    at(h + 1) = {1, 0, 0};
    at(h - 1) = {-1, ah - p * d, d};
    for (int i = h + 1; i <= e - 1; ++i) at(i + 1) = m.a_at(i) * at(i) - at(i - 1);
    for (int i = h - 1; i >= 2; --i) {
        // For Dbar, v~ takes the place of v^h in the relation at h-1.
        const I3& next = def.bar() && i == h - 1 ? g.v_tilde : at(i + 1);
        at(i - 1) = m.a_at(i) * at(i) - next;
    }

    for (int i = 2; i <= e - 1; ++i) {
        Relation r;
        r.lhs = {{1, i - 1}, {1, i + 1}};
        r.rhs = {{m.a_at(i), i}};
        if (i == h) r.rhs = {{ah - p * d, h}, {d, 0}};
        if (def.bar() && i == h - 1) r.lhs = {{1, h - 2}, {1, 0}};
        g.relations.push_back(r);
    }

    for (const auto& r : g.relations) ensure(g.eval(r.lhs) == g.eval(r.rhs), "relation fails: " + r.str());
    for (int i = 1; i <= e; ++i) {
        ensure(def.sigma_prime.dual_contains(at(i)), "v^" + std::to_string(i) + " is not in the dual of sigma'");
        ensure(phi_star(m, h, p, at(i)) == m.w_at(i), "v^" + std::to_string(i) + " does not restrict to w^i");
    }
    ensure(def.sigma_prime.dual_contains(g.v_tilde), "v~ is not in the dual of sigma'");
    return g;
}

/// (x_var^inner + lambda)^outer when plus_lambda, else x_var^outer (inner is then 1).
struct Factor {
    int var = 0;
    long long inner = 1;
    bool plus_lambda = false;
    long long outer = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
};

struct Equation {
    int index = 0;  // the i of the toric relation it deforms
    std::vector<Factor> lhs;
    std::vector<Factor> rhs;

    std::string str() const {
        auto side = [](const std::vector<Factor>& fs) {
            std::string s;
            for (const auto& f : fs) {
                if (f.outer == 0) continue;
                if (!s.empty()) s += "*";
                std::string x = "x" + std::to_string(f.var);
                if (f.plus_lambda) {
                    s += "(" + x + (f.inner == 1 ? "" : "^" + std::to_string(f.inner)) + "+λ)";
                } else {
                    s += x;
                }
                if (f.outer != 1) s += "^" + std::to_string(f.outer);
            }
            return s.empty() ? std::string("1") : s;
        };
        return side(lhs) + " = " + side(rhs);
    }
};

/// Exponent vector of one side after lambda := 0, keyed by variable index.
inline std::map<int, long long> at_lambda_zero(const std::vector<Factor>& side) {
    std::map<int, long long> out;
    for (const auto& f : side) {
        long long ex = f.plus_lambda ? f.inner * f.outer : f.outer;
        if (ex != 0) out[f.var] += ex;
    }
    return out;
}

struct EquationSet {
    std::vector<Equation> equations;
};

inline EquationSet deformation_equations(const Deformation& def) {
    const CqsModel& m = def.model;
    const int h = def.h();
    const long long p = def.p(), d = def.d();
    EquationSet out;
    for (int i = 2; i <= m.e - 1; ++i) {
        Equation eq;
        eq.index = i;
        eq.lhs = {{i - 1, 1, false, 1}, {i + 1, 1, false, 1}};
        eq.rhs = {{i, 1, false, m.a_at(i)}};
        if (i == h) {
            eq.rhs = {{h, 1, false, m.a_at(h) - p * d}, {h, p, true, d}};
            if (eq.rhs[0].outer == 0) eq.rhs.erase(eq.rhs.begin());
        }
        if (def.bar() && i == h - 1) eq.lhs = {{h - 2, 1, false, 1}, {h, 1, true, 1}};
        out.equations.push_back(eq);
    }
    return out;
}

/// A coordinate on the versal base: s_i^{(l)} (kind 's') or t_i (kind 't', l = 0).
struct VersalParam {
    char kind = 's';
    int i = 0;
    int l = 0;
    auto operator<=>(const VersalParam&) const = default;
    std::string name() const {
        if (kind == 't') return "t_" + std::to_string(i);
        return "s_" + std::to_string(i) + "^(" + std::to_string(l) + ")";
    }
};

/// Parameters with a nonzero value; everything else is 0.
using VersalMap = std::map<VersalParam, Poly>;

/// All coordinates of the versal base of Y(n,q).
inline std::vector<VersalParam> versal_parameters(const CqsModel& m) {
    std::vector<VersalParam> out;
    for (int i = 2; i <= m.e - 1; ++i)
        for (int l = 1; l < m.a_at(i); ++l) out.push_back({'s', i, l});
    for (int j = 3; j <= m.e - 2; ++j) out.push_back({'t', j, 0});
    return out;
}

inline Poly value(const VersalMap& map, const VersalParam& key) {
    auto it = map.find(key);
    return it == map.end() ? Poly() : it->second;
}

inline void assign(VersalMap& map, const VersalParam& key, const Poly& v) {
    if (v.is_zero()) map.erase(key);
    else map[key] = v;
}

inline VersalMap versal_map(const Deformation& def) {
    VersalMap out;
    const int h = def.h();
    const long long d = def.d();
    if (!def.bar()) {
        for (long long l = 1; l <= d; ++l)
            assign(out, {'s', h, static_cast<int>(def.p() * l)}, Poly::monomial(binomial(d, l), static_cast<int>(l)));
    } else {
        assign(out, {'t', h, 0}, Poly::lambda());
        for (long long l = 1; l <= d - 1; ++l)
            assign(out, {'s', h, static_cast<int>(l)}, Poly::monomial(binomial(d - 1, l), static_cast<int>(l)));
    }
    return out;
}

namespace detail {
// alpha_{i-1} for the theta substitution at index i. At i = 2 this is alpha_1 = 0, where the
// sum would be empty; there is no t_2, so the substitution is read as the identity.
inline long long theta_alpha(const ZeroChain& k, int i) { return std::max(k.alpha_at(i - 1), 1LL); }
}  // namespace detail

/// theta_[k] applied to values given in S_[k] coordinates: returns the original coordinates.
inline VersalMap theta_apply(const CqsModel& m, const ZeroChain& k, const VersalMap& fresh) {
    VersalMap out;
    for (const auto& [key, val] : fresh)
        if (key.kind == 't') assign(out, key, val);
    for (int i = 2; i <= m.e - 1; ++i) {
        long long alpha = detail::theta_alpha(k, i);
        Poly t = value(fresh, {'t', i, 0});
        for (int l = 1; l < m.a_at(i); ++l) {
            Poly acc;
            for (long long j = 0; j <= alpha - 1 && j <= l; ++j) {
                Poly s = l - j == 0 ? Poly(1) : value(fresh, {'s', i, static_cast<int>(l - j)});
                acc += Poly::monomial(binomial(alpha - 1, j), 0) * t.pow(j) * s;
            }
            assign(out, {'s', i, l}, acc);
        }
    }
    return out;
}

/// Expresses a versal map in S_[k] coordinates by inverting the triangular theta substitution.
inline VersalMap theta_rewrite(const CqsModel& m, const ZeroChain& k, const VersalMap& map) {
    if (k.e() != m.e) throw InvalidInput("chain length does not match the model");
    VersalMap out;
    for (const auto& [key, val] : map)
        if (key.kind == 't') assign(out, key, val);
    for (int i = 2; i <= m.e - 1; ++i) {
        long long alpha = detail::theta_alpha(k, i);
        Poly t = value(map, {'t', i, 0});
        std::vector<Poly> fresh(static_cast<std::size_t>(m.a_at(i)));
        fresh[0] = Poly(1);
        for (int l = 1; l < m.a_at(i); ++l) {
            Poly s = value(map, {'s', i, l});
            for (long long j = 1; j <= alpha - 1 && j <= l; ++j)
                s -= Poly::monomial(binomial(alpha - 1, j), 0) * t.pow(j) * fresh[static_cast<std::size_t>(l - j)];
            fresh[static_cast<std::size_t>(l)] = s;
            assign(out, {'s', i, l}, s);
        }
    }
    return out;
}

/// The component S_[k]: s_i^{(l)} = 0 for l > a_i - k_i, and t_i = 0 wherever alpha_i != 1.
inline bool lies_in_component(const CqsModel& m, const ZeroChain& k, const VersalMap& rewritten) {
    for (const auto& [key, val] : rewritten) {
        if (val.is_zero()) continue;
        if (key.kind == 's' && key.l > m.a_at(key.i) - k.k_at(key.i)) return false;
        if (key.kind == 't' && k.alpha_at(key.i) != 1) return false;
    }
    return true;
}

/// Closed-form membership test from the main theorem.
inline bool maps_to(const Deformation& def, const ZeroChain& k) {
    const int h = def.h();
    const long long room = def.model.a_at(h) - k.k_at(h);
    if (!def.bar()) return def.p() * def.d() <= room;
    const long long ap = k.alpha_at(h - 1);
    return k.alpha_at(h) == 1 && ap <= def.d() && def.d() <= room + ap;
}

inline std::vector<ZeroChain> components_of(const Deformation& def) {
    std::vector<ZeroChain> out;
    for (auto& k : enumerate_K(def.model))
        if (maps_to(def, k)) out.push_back(std::move(k));
    return out;
}

/// Number of one-parameter deformations of degree (h, p) mapping to S_[k].
inline long long nu_count(const CqsModel& m, const ZeroChain& k, int h, long long p) {
    check_index(m, h);
    if (p < 1) throw InvalidInput("p must be positive");
    long long room = m.a_at(h) - k.k_at(h);
    if (p == 1 && k.alpha_at(h) == 1 && m.interior_index(h)) return 2 * room + 1;
    return room / p;
}

}  // namespace toricdef
