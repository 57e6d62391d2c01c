#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "spinwitness/witnesses.hpp"

using namespace spinwitness;

namespace {
constexpr double kPi = 3.14159265358979323846;
const AngleSchedule kDefault(kPi, kPi / 2.0, kPi / 2.0);
}  // namespace

TEST_CASE("two-level hand-derived suite") {
    const WitnessReport r = evaluate(Spin(1), kDefault, Coarsening(0.0));
    REQUIRE(r.k_lgi == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(r.k_wlgi == Catch::Approx(0.25).margin(1e-12));
    REQUIRE(r.k_nsit_signed == Catch::Approx(-0.5).margin(1e-12));
    REQUIRE(r.k_nsit_magnitude == Catch::Approx(0.5).margin(1e-12));
    REQUIRE_FALSE(r.lgi_violated);  // exactly on the classical boundary
    REQUIRE(r.wlgi_violated);
    REQUIRE(r.nsit_unsatisfied);
}

TEST_CASE("free functions agree with the combined report") {
    const Spin spin(3);
    const Coarsening delta(0.55);
    const WitnessReport r = evaluate(spin, kDefault, delta);
    REQUIRE(k_lgi(spin, kDefault, delta) == r.k_lgi);
    REQUIRE(k_wlgi(spin, kDefault, delta) == r.k_wlgi);
    const auto [signed_v, magnitude] = k_nsit(spin, kDefault, delta);
    REQUIRE(signed_v == r.k_nsit_signed);
    REQUIRE(magnitude == r.k_nsit_magnitude);
    REQUIRE(magnitude == std::abs(signed_v));
}

TEST_CASE("reference values at the default schedule") {
    SECTION("sharp half-integer plateau") {
        const WitnessReport r = evaluate(Spin(3), kDefault, Coarsening(0.0));
        REQUIRE(r.k_wlgi == Catch::Approx(0.250).margin(1e-3));
        REQUIRE(r.k_nsit_magnitude == Catch::Approx(0.500).margin(1e-3));
        REQUIRE(r.k_lgi <= 1.0 + 1e-9);
    }
    SECTION("strong coarsening at j = 3/2") {
        REQUIRE(k_wlgi(Spin(3), kDefault, Coarsening(0.85)) ==
                Catch::Approx(0.063).margin(1e-3));
    }
    SECTION("integer spin j = 3") {
        REQUIRE(k_wlgi(Spin(6), kDefault, Coarsening(0.0)) ==
                Catch::Approx(0.147).margin(1e-3));
        REQUIRE(k_lgi(Spin(6), kDefault, Coarsening(0.55)) <= 1.0 + 1e-9);
    }
    SECTION("integer spin j = 12 under strong coarsening") {
        REQUIRE(k_nsit(Spin(24), kDefault, Coarsening(0.85)).second ==
                Catch::Approx(0.415).margin(1e-3));
    }
}

TEST_CASE("witness ranges hold over a randomized grid") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> spin_draw(1, 24);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> width(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const Spin spin(spin_draw(rng));
        const AngleSchedule schedule(angle(rng), angle(rng), angle(rng));
        const WitnessReport r = evaluate(spin, schedule, Coarsening(width(rng)));
        REQUIRE(r.k_lgi >= -3.0 - 1e-9);
        REQUIRE(r.k_lgi <= 3.0 + 1e-9);
        REQUIRE(r.k_wlgi >= -2.0 - 1e-9);
        REQUIRE(r.k_wlgi <= 1.0 + 1e-9);
        REQUIRE(r.k_nsit_signed >= -1.0 - 1e-9);
        REQUIRE(r.k_nsit_signed <= 1.0 + 1e-9);
        REQUIRE(r.k_nsit_magnitude == std::abs(r.k_nsit_signed));
    }
}

TEST_CASE("witnesses recompute from the raw coarse joints") {
    // no independent probability path: the reported numbers must follow
    // from the measurement module's joint distributions alone
    const Spin spin(3);
    const Coarsening delta(0.55);
    const auto eig = detail::jx_eigensystem(spin);
    const auto p12 = pair_joint(eig, kDefault.a01, kDefault.a12, delta);
    const auto p23 = pair_joint(eig, kDefault.a01 + kDefault.a12, kDefault.a23, delta);
    const auto p13 = pair_joint(eig, kDefault.a01, kDefault.a12 + kDefault.a23, delta);
    const double q3 = unmeasured_marginal(eig, kDefault.total(), delta);

    auto corr = [](const CoarseJoint& j) {
        return j.at(+1, +1) + j.at(-1, -1) - j.at(+1, -1) - j.at(-1, +1);
    };
    const WitnessReport r = evaluate(eig, kDefault, delta);
    REQUIRE(r.k_lgi == Catch::Approx(corr(p12) + corr(p23) - corr(p13)).margin(1e-15));
    REQUIRE(r.k_wlgi ==
            Catch::Approx(p23.at(+1, +1) - p12.at(-1, +1) - p13.at(+1, +1)).margin(1e-15));
    REQUIRE(r.k_nsit_signed ==
            Catch::Approx(q3 - p23.later_marginal(+1)).margin(1e-15));
}

TEST_CASE("k_wlgi is continuous in delta") {
    const double a = k_wlgi(Spin(3), kDefault, Coarsening(0.5));
    const double b = k_wlgi(Spin(3), kDefault, Coarsening(0.5 + 1e-6));
    REQUIRE(std::abs(a - b) <= 1e-4);
}

TEST_CASE("tabulated-grid monotonicity in delta and spin") {
    const double deltas[] = {0.25, 0.55, 0.85};
    const int spins[] = {3, 9, 15};
    double value[3][3];
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            value[i][k] = k_wlgi(Spin(spins[i]), kDefault, Coarsening(deltas[k]));
    for (int i = 0; i < 3; ++i) {
        REQUIRE(value[i][0] > value[i][1]);
        REQUIRE(value[i][1] > value[i][2]);
    }
    for (int k = 0; k < 3; ++k) {
        REQUIRE(value[0][k] < value[1][k]);
        REQUIRE(value[1][k] < value[2][k]);
    }
}
