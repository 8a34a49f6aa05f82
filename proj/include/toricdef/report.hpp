#pragma once

#include "toricdef/fibers.hpp"
#include "toricdef/resolutions.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace toricdef::report {

inline constexpr int kSchemaVersion = 1;

using RatPair = std::vector<std::string>;  // exact coordinates, "p/q"

struct SegmentRec {
    int h = 0;
    std::string beta, gamma, length;
    long long lattice_points = 0;
    friend bool operator==(const SegmentRec&, const SegmentRec&) = default;
};

struct ModelRec {
    long long n = 0, q = 0;
    int e = 0;
    Chain a;
    std::vector<RatPair> dual_basis;        // w^1..w^e, sigma = cone((1,0),(-q,n))
    std::vector<RatPair> dual_basis_paper;  // [u1, u2], sigma = cone((0,1),(n,-q))
    bool t_singularity = false;
    bool rdp = false;
    std::vector<SegmentRec> segments;
    friend bool operator==(const ModelRec&, const ModelRec&) = default;
};

struct KRec {
    Chain k;
    std::vector<long long> alpha;
    bool artin = false;
    friend bool operator==(const KRec&, const KRec&) = default;
};

struct PConeRec {
    int i = 0;
    long long alpha = 0;
    std::string roof_length;
    bool degenerate = false;
    std::string height, length;
    bool rdp = false, t_or_smooth = false;
    friend bool operator==(const PConeRec&, const PConeRec&) = default;
};

struct FanRec {
    Chain k;
    std::vector<RatPair> rays, rays_paper;
    std::vector<PConeRec> cones;
    friend bool operator==(const FanRec&, const FanRec&) = default;
};

struct FiberRec {
    Chain raw;
    std::string form;
    long long multiplicity = 1;
    std::string location;
    friend bool operator==(const FiberRec&, const FiberRec&) = default;
};

struct DefRec {
    std::string label, decomposition;
    int h = 0;
    long long p = 1, d = 1;
    RatPair summand0, summand1;
    std::vector<std::vector<long long>> sigma_prime;
    std::vector<std::string> relations, equations, versal;
    std::vector<Chain> components;
    std::vector<FiberRec> fiber;  // every point, smooth ones included
    bool smoothing = false;
    friend bool operator==(const DefRec&, const DefRec&) = default;
};

struct Cone3Rec {
    int i = -1;
    std::vector<std::vector<long long>> rays;
    RatPair m;
    bool qgorenstein = false, canonical = false, rdp_or_smooth = false;
    friend bool operator==(const Cone3Rec&, const Cone3Rec&) = default;
};

struct ResRec {
    std::string label, deformation;
    Chain k;
    RatPair top, bottom;  // total summands in the lemma frame
    std::vector<Cone3Rec> cones;
    bool canonical = false;
    friend bool operator==(const ResRec&, const ResRec&) = default;
};

struct CanonRec {
    std::string deformation, fan;
    Chain k;
    friend bool operator==(const CanonRec&, const CanonRec&) = default;
};

struct NuRec {
    Chain k;
    int h = 0;
    long long p = 1, count = 0;
    friend bool operator==(const NuRec&, const NuRec&) = default;
};

struct Report {
    int schema_version = kSchemaVersion;
    ModelRec model;
    std::vector<KRec> K;
    std::vector<FanRec> p_resolutions;
    std::vector<DefRec> deformations;
    std::vector<ResRec> simultaneous_resolutions;
    std::vector<CanonRec> canonical_models;
    std::vector<NuRec> nu;
    friend bool operator==(const Report&, const Report&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SegmentRec, h, beta, gamma, length, lattice_points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ModelRec, n, q, e, a, dual_basis, dual_basis_paper, t_singularity, rdp, segments)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KRec, k, alpha, artin)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PConeRec, i, alpha, roof_length, degenerate, height, length, rdp, t_or_smooth)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FanRec, k, rays, rays_paper, cones)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FiberRec, raw, form, multiplicity, location)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DefRec, label, decomposition, h, p, d, summand0, summand1, sigma_prime, relations,
                                   equations, versal, components, fiber, smoothing)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Cone3Rec, i, rays, m, qgorenstein, canonical, rdp_or_smooth)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResRec, label, deformation, k, top, bottom, cones, canonical)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CanonRec, deformation, fan, k)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NuRec, k, h, p, count)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Report, schema_version, model, K, p_resolutions, deformations,
                                   simultaneous_resolutions, canonical_models, nu)

namespace detail {
inline RatPair pair(const Rat& a, const Rat& b) { return {a.str(), b.str()}; }
inline RatPair pair(const Vec2& v) { return pair(v.x, v.y); }
inline RatPair pair(const Interval& i) { return pair(i.lo, i.hi); }
inline std::vector<long long> vec(const I3& v) { return {v[0], v[1], v[2]}; }

inline std::string chain_str(const Chain& c) {
    std::string s = "(";
    for (std::size_t j = 0; j < c.size(); ++j) s += (j ? "," : "") + std::to_string(c[j]);
    return s + ")";
}
}  // namespace detail

inline Report build_report(const CqsModel& m) {
    using detail::pair;
    Report r;
    r.model.n = m.n;
    r.model.q = m.q;
    r.model.e = m.e;
    r.model.a = m.a_chain;
    for (const auto& w : m.w) {
        r.model.dual_basis.push_back(pair(w));
        auto u = to_paper_coords(w, m);
        r.model.dual_basis_paper.push_back({u.u1.str(), u.u2.str()});
    }
    r.model.t_singularity = is_t_singularity(m);
    r.model.rdp = is_rdp(m);
    for (int h = 2; h < m.e; ++h) {
        auto s = segment(m, h);
        r.model.segments.push_back({h, s.beta.str(), s.gamma.str(), segment_length(m, h).str(), lattice_point_count(m, h)});
    }

    const auto ks = enumerate_K(m);
    const Chain artin = rdp_chain(m.e);
    for (const auto& k : ks) {
        r.K.push_back({k.k, k.alpha, k.k == artin});
        auto fan = p_resolution_fan(m, k);
        FanRec f{k.k, {}, {}, {}};
        for (const auto& ray : fan.rays) {
            f.rays.push_back(pair(ray));
            f.rays_paper.push_back(pair(to_paper_n(ray, m)));
        }
        for (const auto& c : fan.cones)
            f.cones.push_back({c.i, c.alpha, c.roof_length.str(), c.degenerate, c.shape.height.str(),
                               c.shape.length.str(), c.shape.rdp(), c.shape.t_or_smooth()});
        r.p_resolutions.push_back(std::move(f));
    }

    std::map<std::tuple<Chain, int, long long>, long long> direct;
    for (const auto& dec : enum_decompositions(m)) {
        auto def = build_deformation(m, dec);
        DefRec d;
        d.label = def.label;
        d.decomposition = dec.label();
        d.h = dec.h;
        d.p = dec.p;
        d.d = dec.d;
        d.summand0 = pair(dec.summand0);
        d.summand1 = pair(dec.summand1);
        for (const auto& ray : def.sigma_prime.rays()) d.sigma_prime.push_back(detail::vec(ray));
        for (const auto& rel : generator_relations(def).relations) d.relations.push_back(rel.str());
        for (const auto& eq : deformation_equations(def).equations) d.equations.push_back(eq.str());
        for (const auto& [key, val] : versal_map(def)) d.versal.push_back(key.name() + " = " + val.str());
        auto comps = components_of(def);
        for (const auto& k : comps) {
            d.components.push_back(k.k);
            ++direct[{k.k, dec.h, dec.p}];
        }
        for (const auto& pt : general_fiber(def).raw)
            d.fiber.push_back({pt.raw, describe(pt.form), pt.multiplicity,
                               pt.location == Location::Origin ? "origin" : "off-origin"});
        d.smoothing = is_smoothing(def);

        for (const auto& k : comps) {
            auto fd = fan_decomposition_for(def, k);
            auto fan = assemble_fan3(fd);
            ResRec res{fd.label(), def.label, k.k, pair(fd.total0), pair(fd.total1), {}, true};
            for (const auto& c : fan.cones) {
                Cone3Rec cr{c.i, {}, {}, c.qgorenstein, c.canonical, c.rdp_or_smooth};
                for (const auto& ray : c.cone.rays()) cr.rays.push_back(detail::vec(ray));
                if (c.m) cr.m = {(*c.m)[0].str(), (*c.m)[1].str(), (*c.m)[2].str()};
                res.canonical = res.canonical && c.canonical;
                res.cones.push_back(std::move(cr));
            }
            r.simultaneous_resolutions.push_back(std::move(res));
        }
        auto cm = canonical_model(def);
        r.canonical_models.push_back({def.label, cm.decomposition.label(), cm.k.k});
        r.deformations.push_back(std::move(d));
    }

    for (const auto& k : ks)
        for (int h = 2; h < m.e; ++h)
            for (long long p = 1; p <= m.a_at(h); ++p) {
                long long nu = nu_count(m, k, h, p);
                auto it = direct.find({k.k, h, p});
                long long seen = it == direct.end() ? 0 : it->second;
                ensure(nu == seen, "nu count disagrees with the deformation catalogue");
                if (nu > 0) r.nu.push_back({k.k, h, p, nu});
            }
    return r;
}

inline Report build_report(long long n, long long q) { return build_report(cqs_new(n, q)); }

inline nlohmann::json to_json_value(const Report& r) { return nlohmann::json(r); }

inline Report parse_report(const nlohmann::json& j) {
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw InvalidInput("unsupported schema_version " + j.value("schema_version", nlohmann::json()).dump());
    return j.get<Report>();
}

/// Human-readable view. Reads only the JSON document.
inline std::string render_text(const nlohmann::json& j, bool verbose = false) {
    using nlohmann::json;
    std::ostringstream out;
    auto chain = [](const json& c) { return detail::chain_str(c.get<Chain>()); };
    auto bracket = [](const json& c) {
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].get<std::string>();
        return s + "]";
    };
    const json& m = j.at("model");
    out << "Y(" << m.at("n") << "," << m.at("q") << ")  e = " << m.at("e") << "  a = " << chain(m.at("a"));
    if (m.at("t_singularity").get<bool>()) out << "  [T-singularity]";
    if (m.at("rdp").get<bool>()) out << "  [RDP]";
    out << "\n  dual basis:";
    for (const auto& w : m.at("dual_basis_paper")) out << " " << bracket(w);
    out << "\n";
    if (verbose) {
        out << "  segments Q(w^h):\n";
        for (const auto& s : m.at("segments"))
            out << "    h=" << s.at("h") << "  [" << s.at("beta").get<std::string>() << ", "
                << s.at("gamma").get<std::string>() << "]  length " << s.at("length").get<std::string>() << ", "
                << s.at("lattice_points") << " lattice points\n";
    }

    out << "\nK (" << j.at("K").size() << " components)\n";
    for (const auto& k : j.at("K")) {
        out << "  " << chain(k.at("k")) << "  alpha " << chain(k.at("alpha"));
        if (k.at("artin").get<bool>()) out << "  Artin";
        out << "\n";
    }
    if (verbose)
        for (const auto& f : j.at("p_resolutions")) {
            out << "  P-resolution " << chain(f.at("k")) << ": rays";
            for (const auto& ray : f.at("rays_paper")) out << " " << bracket(ray);
            out << "\n";
            for (const auto& c : f.at("cones")) {
                if (c.at("degenerate").get<bool>()) continue;
                out << "    tau_" << c.at("i") << "  roof " << c.at("roof_length").get<std::string>() << "  height "
                    << c.at("height").get<std::string>() << (c.at("rdp").get<bool>() ? "  RDP" : "  T") << "\n";
            }
        }

    out << "\nDeformations (" << j.at("deformations").size() << ")\n";
    for (const auto& d : j.at("deformations")) {
        out << "  " << d.at("label").get<std::string>() << "  " << d.at("decomposition").get<std::string>() << "  Q = "
            << bracket(d.at("summand0")) << " + " << bracket(d.at("summand1")) << "\n    components:";
        for (const auto& k : d.at("components")) out << " " << chain(k);
        out << "\n    fiber:";
        bool any = false;
        for (const auto& pt : d.at("fiber")) {
            if (pt.at("form").get<std::string>() == "smooth") continue;
            out << (any ? ", " : " ") << pt.at("form").get<std::string>();
            if (pt.at("multiplicity").get<long long>() > 1) out << " x" << pt.at("multiplicity");
            out << " (" << pt.at("location").get<std::string>() << ")";
            any = true;
        }
        if (!any) out << " smooth";
        if (d.at("smoothing").get<bool>()) out << "  [smoothing]";
        out << "\n";
        if (verbose) {
            for (const auto& e : d.at("equations")) out << "    " << e.get<std::string>() << "\n";
            for (const auto& v : d.at("versal")) out << "    " << v.get<std::string>() << "\n";
        }
    }

    out << "\nSimultaneous resolutions (" << j.at("simultaneous_resolutions").size() << ")\n";
    for (const auto& s : j.at("simultaneous_resolutions")) {
        out << "  " << s.at("label").get<std::string>() << "  " << "cones: " << s.at("cones").size()
            << (s.at("canonical").get<bool>() ? "" : "  non-canonical") << "\n";
    }
    out << "\nCanonical models\n";
    for (const auto& c : j.at("canonical_models"))
        out << "  " << c.at("deformation").get<std::string>() << " -> " << chain(c.at("k")) << "  "
            << c.at("fan").get<std::string>() << "\n";
    if (verbose) {
        out << "\nnu(k, h, p)\n";
        for (const auto& n : j.at("nu"))
            out << "  " << chain(n.at("k")) << "  h=" << n.at("h") << " p=" << n.at("p") << "  " << n.at("count") << "\n";
    }
    return out.str();
}

inline std::string render_text(const Report& r, bool verbose = false) { return render_text(nlohmann::json(r), verbose); }

}  // namespace toricdef::report
