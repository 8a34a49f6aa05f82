// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include "toricdef/report.hpp"

#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace toricdef;

namespace {

struct Failure {
    std::string what;
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw Failure{what};
}

template <class F>
void for_models(long long nmax, F&& f) {
    for (long long n = 3; n <= nmax; ++n)
        for (long long q = 1; q < n - 1; ++q)
            if (std::gcd(n, q) == 1) f(cqs_new(n, q));
}

std::string name(const CqsModel& m) { return "(" + std::to_string(m.n) + "," + std::to_string(m.q) + ")"; }

Deformation find_def(const CqsModel& m, const std::string& label) {
    for (const auto& dec : enum_decompositions(m)) {
        auto def = build_deformation(m, dec);
        if (def.label == label) return def;
    }
    throw Failure{"missing deformation " + label};
}

std::vector<Chain> chains(const std::vector<ZeroChain>& ks) {
    std::vector<Chain> out;
    for (const auto& k : ks) out.push_back(k.k);
    return out;
}

void golden() {
    auto m = cqs_new(8, 3);
    expect(m.e == 5 && m.a_chain == Chain{2, 3, 2}, "e and a");
    std::vector<PaperCoords> basis;
    for (const auto& w : m.w) basis.push_back(to_paper_coords(w, m));
    expect(basis == std::vector<PaperCoords>{{0, 8}, {1, 5}, {2, 2}, {5, 1}, {8, 0}}, "dual Hilbert basis");
    auto K = enumerate_K(m);
    expect(chains(K) == std::vector<Chain>{{1, 2, 1}, {2, 1, 2}}, "K");
    expect(K[0].alpha == std::vector<long long>{0, 1, 1, 1, 0} && K[1].alpha == std::vector<long long>{0, 1, 2, 1, 0},
           "alpha rows");

    auto decs = enum_decompositions(m);
    expect(decs.size() == 7, "7 deformations");
    std::map<int, int> degree;
    for (const auto& d : decs) ++degree[d.h * 10 + static_cast<int>(d.p)];
    expect(degree == std::map<int, int>{{21, 1}, {31, 4}, {32, 1}, {41, 1}}, "degree distribution 1/4/1/1");

    const Chain artin{1, 2, 1}, other{2, 1, 2};
    for (const auto& dec : decs) {
        auto def = build_deformation(m, dec);
        auto comps = chains(components_of(def));
        std::vector<Chain> want{artin};
        if (def.label == "pi^2_{3,1}" || def.label == "pi^1_{3,2}") want = {other};
        if (def.label == "pi^1_{3,1}") want = {artin, other};
        expect(comps == want, "component map of " + def.label);
    }

    expect(general_fiber(find_def(m, "pi^1_{3,2}")).smooth(), "pi^1_{3,2} smooth");
    auto f = general_fiber(find_def(m, "pi^2_{3,1}"));
    expect(f.entries.size() == 1 && describe(f.entries[0].form) == "A_1" && f.entries[0].location == Location::OffOrigin,
           "pi^2_{3,1}: one A_1");
    f = general_fiber(find_def(m, "pi^1_{3,1}"));
    expect(f.entries.size() == 1 && f.entries[0].form.chain == Chain{2, 2, 2}, "pi^1_{3,1}: (2,2,2)");
    for (const char* l : {"pi^1_{2,1}", "pi^1_{4,1}", "pibar^1_3", "pibar^2_3"}) {
        f = general_fiber(find_def(m, l));
        expect(f.entries.size() == 1 && f.entries[0].form.chain == Chain{2, 2}, std::string(l) + ": (2,2)");
    }
    expect(general_fiber(find_def(m, "pibar^1_3")).entries[0].location == Location::Origin, "pibar^1_3 at origin");
    expect(general_fiber(find_def(m, "pibar^2_3")).entries[0].location == Location::OffOrigin, "pibar^2_3 off origin");

    int panels = 0;
    for (const auto& dec : decs) {
        auto def = build_deformation(m, dec);
        for (const auto& k : components_of(def)) {
            auto fd = fan_decomposition_for(def, k);
            auto fan = assemble_fan3(fd);
            bool canonical = std::all_of(fan.cones.begin(), fan.cones.end(), [](const Fan3Cone& c) { return c.canonical; });
            expect(canonical == (fd.label() != "S^1_{3,1}[2,1,2]"), "canonical flag of " + fd.label());
            ++panels;
        }
    }
    expect(panels == 8, "8 simultaneous resolutions");
    expect(canonical_model(find_def(m, "pi^1_{3,1}")).k.k == artin, "canonical model of pi^1_{3,1}");
}

void proposition() {
    std::mt19937_64 rng(20261017);
    std::vector<CqsModel> models;
    for_models(60, [&](const CqsModel& m) { models.push_back(m); });
    std::shuffle(models.begin(), models.end(), rng);
    for (const auto& m : models) {
        auto K = enumerate_K(m);
        for (int h = 2; h < m.e; ++h) {
            if (m.interior_index(h))
                expect(lattice_point_count(m, h) == m.a_at(h) - 1, name(m) + " lattice points at h=" + std::to_string(h));
            long long best = 0;
            for (const auto& k : K) best = std::max(best, m.a_at(h) - k.k_at(h));
            expect(segment_length(m, h).floor() == Int(best), name(m) + " floor(length) at h=" + std::to_string(h));
        }
    }
}

void theorem_vs_symbolic() {
    for_models(40, [](const CqsModel& m) {
        for (const auto& dec : enum_decompositions(m)) {
            auto def = build_deformation(m, dec);
            auto map = versal_map(def);
            std::vector<ZeroChain> symbolic;
            for (const auto& k : enumerate_K(m))
                if (lies_in_component(m, k, theta_rewrite(m, k, map))) symbolic.push_back(k);
            expect(components_of(def) == symbolic, name(m) + " " + def.label);
        }
    });
}

void corollary() {
    for_models(40, [](const CqsModel& m) {
        auto K = enumerate_K(m);
        std::map<std::tuple<Chain, int, long long>, long long> direct;
        for (const auto& dec : enum_decompositions(m))
            for (const auto& k : enumerate_K(m))
                if (maps_to(build_deformation(m, dec), k)) ++direct[{k.k, dec.h, dec.p}];
        for (const auto& k : K)
            for (int h = 2; h < m.e; ++h)
                for (long long p = 1; p <= m.a_at(h); ++p)
                    expect(nu_count(m, k, h, p) == direct[{k.k, h, p}], name(m) + " nu");
    });
}

void canonical_equivalence() {
    // canonical_model itself raises if the predicate fan differs from the hull fan.
    for_models(30, [](const CqsModel& m) {
        for (const auto& dec : enum_decompositions(m)) {
            auto def = build_deformation(m, dec);
            auto cm = canonical_model(def);
            expect(same_subdivision(cm.fan, canonical_model_via_hull(def.sigma_prime)), name(m) + " " + def.label);
        }
    });
}

void oracles() {
    for_models(45, [](const CqsModel& m) {
        double prod = 1;
        for (long long a : m.a_chain) prod *= static_cast<double>(a);
        if (prod <= 1e6) expect(chains(enumerate_K(m)) == oracle::zero_chains_brute(m.a_chain), name(m) + " K");
    });
    for_models(60, [](const CqsModel& m) {
        auto hb = hilbert_basis_2d(m.sigma.dual());
        std::vector<oracle::P2> got;
        for (const auto& p : hb) got.push_back({to_i64(p.x.num()), to_i64(p.y.num())});
        auto r1 = m.sigma.dual().ray1(), r2 = m.sigma.dual().ray2();
        expect(got == oracle::hilbert_basis_2d({to_i64(r1.x.num()), to_i64(r1.y.num())},
                                               {to_i64(r2.x.num()), to_i64(r2.y.num())}),
               name(m) + " hilbert basis");
    });
    for_models(15, [](const CqsModel& m) {
        for (const auto& dec : enum_decompositions(m)) {
            auto def = build_deformation(m, dec);
            auto g = generator_relations(def);
            std::vector<oracle::I3> gens;
            for (const auto& r : def.sigma_prime.rays()) gens.push_back(r);
            std::vector<oracle::I3> want(g.v.begin(), g.v.end());
            want.push_back(g.v_tilde);
            std::sort(want.begin(), want.end());
            want.erase(std::unique(want.begin(), want.end()), want.end());
            expect(oracle::dual_hilbert_basis_3d(gens) == want, name(m) + " " + def.label + " dual basis");
        }
    });
}

void structural() {
    for_models(30, [](const CqsModel& m) {
        for (const auto& dec : enum_decompositions(m)) {
            auto def = build_deformation(m, dec);
            std::string tag = name(m) + " " + def.label;
            for (const auto& k : components_of(def)) {
                auto fan = assemble_fan3(fan_decomposition_for(def, k));
                expect(fan.support == def.sigma_prime, tag + " support");
                for (const auto& c : fan.cones) {
                    expect(c.m.has_value(), tag + " Q-Gorenstein");
                    for (const auto& r : c.cone.rays()) expect(dot(*c.m, r) == 1, tag + " certificate");
                }
            }
            for (const auto& eq : deformation_equations(def).equations) {
                int i = eq.index;
                expect(at_lambda_zero(eq.lhs) == std::map<int, long long>{{i - 1, 1}, {i + 1, 1}}, tag + " lhs at 0");
                expect(at_lambda_zero(eq.rhs) == std::map<int, long long>{{i, m.a_at(i)}}, tag + " rhs at 0");
            }
        }
    });
}

void smoothing() {
    for_models(60, [](const CqsModel& m) {
        bool three_ray = false;
        for (const auto& dec : enum_decompositions(m)) {
            auto def = build_deformation(m, dec);
            if (!is_smoothing(def)) continue;
            if (dec.kind == DecompKind::D)
                expect(dec.d == 1 && dec.p == m.a_at(dec.h) - 1, name(m) + " " + def.label + " D conditions");
            else
                expect(m.a_at(dec.h) == 2 && dec.d == 1, name(m) + " " + def.label + " Dbar conditions");
            three_ray = three_ray || def.sigma_prime.rays().size() == 3;
        }
        if (is_t_singularity(m)) expect(three_ray, name(m) + " T-singularity without a three-ray smoothing");
    });
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"golden Y(8,3) suite", golden},
        {"proposition suite, n <= 60", proposition},
        {"closed-form components equal the theta rewrite, n <= 40", theorem_vs_symbolic},
        {"nu_count equals direct counts, n <= 40", corollary},
        {"canonical model: predicate route equals hull route, n <= 30", canonical_equivalence},
        {"brute-force oracles for K, 2D and 3D Hilbert bases", oracles},
        {"Q-Gorenstein certificates, support and lambda = 0 equations", structural},
        {"smoothing conditions and T-singularity smoothings, n <= 60", smoothing},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string status = "PASS", detail;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            status = "FAIL";
            detail = f.what;
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += status == "FAIL";
        std::ostringstream line;
        line << status << " criterion " << i + 1 << ": " << criteria[i].first;
        if (!detail.empty()) line << " [" << detail << "]";
        line.precision(2);
        line << std::fixed << " (" << secs << " s)";
        std::cout << line.str() << std::endl;
    }
    return failures;
}
