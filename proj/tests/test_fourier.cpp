#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "spinwitness/detail/fourier.hpp"

using spinwitness::detail::fft_pow2;
using spinwitness::detail::next_pow2;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("next_pow2 rounds up to the nearest power of two") {
    REQUIRE(next_pow2(1) == 1);
    REQUIRE(next_pow2(2) == 2);
    REQUIRE(next_pow2(3) == 4);
    REQUIRE(next_pow2(4) == 4);
    REQUIRE(next_pow2(5) == 8);
    REQUIRE(next_pow2(6) == 8);     // smallest sampling count for 2j = 1..3
    REQUIRE(next_pow2(50) == 64);   // 4j + 2 at 2j = 24
    REQUIRE(next_pow2(1024) == 1024);
    REQUIRE(next_pow2(1025) == 2048);
}

TEST_CASE("fft rejects non-power-of-two lengths") {
    std::vector<std::complex<double>> a(6, 0.0);
    REQUIRE_THROWS_AS(fft_pow2(a, false), std::invalid_argument);
    a.clear();
    REQUIRE_THROWS_AS(fft_pow2(a, false), std::invalid_argument);
}

TEST_CASE("delta impulse transforms to a flat spectrum") {
    std::vector<std::complex<double>> a(16, 0.0);
    a[0] = 1.0;
    fft_pow2(a, false);
    for (const auto& x : a) {
        REQUIRE(x.real() == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(x.imag() == Catch::Approx(0.0).margin(1e-14));
    }
}

TEST_CASE("a pure tone lands in a single forward bin") {
    const std::size_t m = 32;
    for (std::size_t f : {0u, 1u, 5u, 31u}) {
        std::vector<std::complex<double>> a(m);
        for (std::size_t t = 0; t < m; ++t)
            a[t] = std::polar(1.0, 2.0 * kPi * static_cast<double>(f * t) / m);
        fft_pow2(a, false);
        for (std::size_t s = 0; s < m; ++s) {
            const double expected = s == f ? static_cast<double>(m) : 0.0;
            REQUIRE(std::abs(a[s] - expected) < 1e-12);
        }
    }
}

TEST_CASE("forward then inverse is the identity") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t m : {2u, 8u, 64u, 512u}) {
        std::vector<std::complex<double>> a(m), orig(m);
        for (auto& x : a) x = {u(rng), u(rng)};
        orig = a;
        fft_pow2(a, false);
        fft_pow2(a, true);
        for (std::size_t t = 0; t < m; ++t) REQUIRE(std::abs(a[t] - orig[t]) < 1e-12);
    }
}
