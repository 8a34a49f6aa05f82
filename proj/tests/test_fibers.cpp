#include "catch_amalgamated.hpp"

#include "toricdef/fibers.hpp"

#include <numeric>

using namespace toricdef;

namespace {
Deformation find_def(const CqsModel& m, const std::string& label) {
    for (const auto& dec : enum_decompositions(m)) {
        auto def = build_deformation(m, dec);
        if (def.label == label) return def;
    }
    throw std::runtime_error("no deformation " + label);
}
}  // namespace

TEST_CASE("general fibers of Y(8,3)", "[fibers]") {
    auto m = cqs_new(8, 3);

    CHECK(general_fiber(find_def(m, "pi^1_{3,2}")).smooth());

    auto f = general_fiber(find_def(m, "pi^2_{3,1}"));
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].location == Location::OffOrigin);
    CHECK(f.entries[0].form == NormalForm::singular({2}));
    CHECK(describe(f.entries[0].form) == "A_1");
    CHECK(f.raw[0].raw == Chain{2, 1, 2});
    CHECK(f.raw[0].form == NormalForm::smooth());

    f = general_fiber(find_def(m, "pibar^1_3"));
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].raw == Chain{2, 2});
    CHECK(f.entries[0].location == Location::Origin);
    CHECK(f.raw[1].raw == Chain{2, 1});
    CHECK(f.raw[1].form == NormalForm::smooth());

    f = general_fiber(find_def(m, "pibar^2_3"));
    REQUIRE(f.entries.size() == 1);
    CHECK(f.raw[0].raw == Chain{1, 2});
    CHECK(f.entries[0].raw == Chain{2, 2});
    CHECK(f.entries[0].location == Location::OffOrigin);

    for (const char* label : {"pi^1_{2,1}", "pi^1_{4,1}"}) {
        f = general_fiber(find_def(m, label));
        REQUIRE(f.entries.size() == 1);
        CHECK(f.entries[0].form == NormalForm::singular({2, 2}));
    }
    CHECK(general_fiber(find_def(m, "pi^1_{2,1}")).entries[0].raw == Chain{1, 3, 2});
    CHECK(general_fiber(find_def(m, "pi^1_{4,1}")).entries[0].raw == Chain{2, 3, 1});

    f = general_fiber(find_def(m, "pi^1_{3,1}"));
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].form == NormalForm::singular({2, 2, 2}));
}

TEST_CASE("smoothings of Y(8,3)", "[fibers]") {
    auto m = cqs_new(8, 3);
    CHECK(is_smoothing(find_def(m, "pi^1_{3,2}")));
    CHECK_FALSE(is_smoothing(find_def(m, "pi^1_{3,1}")));
    int count = 0;
    for (const auto& dec : enum_decompositions(m)) count += is_smoothing(build_deformation(m, dec));
    CHECK(count == 1);
}

TEST_CASE("off-origin points of D-kind fibers", "[fibers][property]") {
    for (long long n = 3; n <= 40; ++n)
        for (long long q = 1; q < n - 1; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto m = cqs_new(n, q);
            for (const auto& dec : enum_decompositions(m)) {
                if (dec.kind != DecompKind::D) continue;
                auto f = general_fiber(build_deformation(m, dec));
                REQUIRE(f.raw.size() == 2);
                REQUIRE(f.raw[1].multiplicity == dec.p);
                REQUIRE((f.raw[1].form.kind == NormalKind::Smooth) == (dec.d == 1));
                Chain origin = m.a_chain;
                origin[static_cast<std::size_t>(dec.h - 2)] -= dec.p * dec.d;
                REQUIRE(f.raw[0].raw == origin);
                // An entry 1 at h is discarded by blowing down.
                if (origin[static_cast<std::size_t>(dec.h - 2)] == 1) {
                    Chain c = origin;
                    std::size_t j = static_cast<std::size_t>(dec.h - 2);
                    if (c.size() == 1) {
                        REQUIRE(f.raw[0].form == NormalForm::smooth());
                    } else {
                        if (j > 0) --c[j - 1];
                        if (j + 1 < c.size()) --c[j + 1];
                        c.erase(c.begin() + static_cast<std::ptrdiff_t>(j));
                        REQUIRE(f.raw[0].form == blow_down(c));
                    }
                }
            }
        }
}

TEST_CASE("smoothings satisfy the necessary conditions", "[fibers][property]") {
    // is_smoothing throws InvariantViolation if a smooth fiber violates them.
    int smoothings = 0;
    for (long long n = 3; n <= 60; ++n)
        for (long long q = 1; q < n - 1; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto m = cqs_new(n, q);
            for (const auto& dec : enum_decompositions(m)) {
                auto def = build_deformation(m, dec);
                bool s = false;
                REQUIRE_NOTHROW(s = is_smoothing(def));
                if (!s) continue;
                ++smoothings;
                if (dec.kind == DecompKind::D) REQUIRE((dec.d == 1 && dec.p == m.a_at(dec.h) - 1));
                else REQUIRE((m.a_at(dec.h) == 2 && dec.d == 1));
            }
        }
    CHECK(smoothings > 0);
}

TEST_CASE("T-singularities have a toric smoothing with a three-ray sigma'", "[fibers][property]") {
    for (long long n = 3; n <= 80; ++n)
        for (long long q = 1; q < n - 1; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto m = cqs_new(n, q);
            if (!is_t_singularity(m)) continue;
            bool found = false;
            for (const auto& dec : enum_decompositions(m)) {
                if (dec.kind != DecompKind::D) continue;
                auto def = build_deformation(m, dec);
                found = found || (is_smoothing(def) && def.sigma_prime.rays().size() == 3);
            }
            INFO(n << "," << q);
            REQUIRE(found);
        }
}
