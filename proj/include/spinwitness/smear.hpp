// Gaussian coarsening of measurement times: transition probabilities
// convolved over the precession angle with a Gaussian kernel of standard
// deviation delta centered on the mean angle.
//
// |d^j_{m',m}(theta)|^2 is a trigonometric polynomial with integer
// frequencies |n| <= 2j, so the infinite-domain Gaussian integral has an
// exact finite form: sample the polynomial at M >= 4j+2 equispaced points
// on [0, 2pi), recover the coefficients c_n by DFT, and damp each harmonic
// by exp(-n^2 delta^2 / 2). M is the smallest power of two >= 4j+2.
// The per-entry samples come straight from the J_x eigensystem: the
// amplitude at the M sample angles is a zero-padded FFT of the eigenvector
// row products, so no dense matrix product is ever formed.
//
// quadrature_transfer is the independent oracle: per-entry adaptive Simpson
// integration over [mean - 8 delta, mean + 8 delta] (Gaussian mass outside
// is ~1e-15). The window is pre-split into panels no wider than half the
// shortest oscillation period (the integrand has harmonics up to 2j), since
// an adaptive rule seeded with 3 points straddling many periods can alias
// and accept a wildly wrong estimate. It exists for tests; nothing
// downstream depends on it.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spinwitness/detail/fourier.hpp"
#include "spinwitness/spin.hpp"
#include "spinwitness/wigner.hpp"

namespace spinwitness {

struct Coarsening {
    double delta = 0.0;

    explicit Coarsening(double d) : delta(d) {
        if (!(d >= 0.0) || !std::isfinite(d))
            throw std::invalid_argument("coarsening: delta must be finite and >= 0");
    }

    bool sharp() const { return delta == 0.0; }
};

struct TransferMatrix {
    Spin spin;
    double mean_angle = 0.0;
    Coarsening delta;
    // t(row m', col m): probability of landing on m' given m, kernel-averaged
    Eigen::MatrixXd t;
};

namespace detail {

constexpr double kImagResidueLimit = 1e-10;

// Smeared matrix with an arbitrary per-harmonic damping factor damp(n),
// n = 0..2j (harmonics enter symmetrically). The Gaussian kernel is
// damp(n) = exp(-n^2 delta^2 / 2); other even kernels plug in the same way.
template <typename DampingFn>
Eigen::MatrixXd smeared_matrix(const JxEigensystem& eig, double mean_angle,
                               DampingFn&& damp) {
    if (!std::isfinite(mean_angle))
        throw std::invalid_argument("smeared_transfer: mean_angle must be finite");

    const int n = eig.spin.dimension();
    const int band = eig.spin.twice_j();  // harmonics run over |k| <= 2j
    const std::size_t m_samples = next_pow2(static_cast<std::size_t>(2 * band + 2));

    std::vector<double> damping(static_cast<std::size_t>(band) + 1);
    for (int k = 0; k <= band; ++k) damping[static_cast<std::size_t>(k)] = damp(k);

    std::vector<std::complex<double>> phase(static_cast<std::size_t>(band) + 1);
    for (int k = 0; k <= band; ++k)
        phase[static_cast<std::size_t>(k)] = std::polar(1.0, -k * mean_angle);

    const Eigen::MatrixXd& v = eig.vectors;
    Eigen::MatrixXd t(n, n);
    std::vector<std::complex<double>> work(m_samples);

    for (int r = 0; r < n; ++r) {
        for (int c = r; c < n; ++c) {
            // amplitude samples over the angle grid, then |.|^2
            std::fill(work.begin(), work.end(), std::complex<double>(0.0, 0.0));
            for (int k = 0; k < n; ++k) work[static_cast<std::size_t>(k)] = v(r, k) * v(c, k);
            fft_pow2(work, false);
            for (auto& x : work) x = std::norm(x);
            fft_pow2(work, true);  // coefficients c_k at bins k mod M

            std::complex<double> val = work[0] * damping[0];
            for (int k = 1; k <= band; ++k) {
                const auto pos = work[static_cast<std::size_t>(k)];
                const auto neg = work[m_samples - static_cast<std::size_t>(k)];
                val += damping[static_cast<std::size_t>(k)] *
                       (pos * phase[static_cast<std::size_t>(k)] +
                        neg * std::conj(phase[static_cast<std::size_t>(k)]));
            }
            if (std::abs(val.imag()) > kImagResidueLimit)
                throw std::runtime_error(
                    "smeared_transfer: imaginary residue " + std::to_string(val.imag()) +
                    " exceeds 1e-10; sampling count too small");
            t(r, c) = val.real();
            t(c, r) = val.real();
        }
    }

    check_row_sums(t, 1e-9, "smeared_transfer");
    check_row_sums(t.transpose(), 1e-9, "smeared_transfer(columns)");
    clamp_probabilities(t);
    return t;
}

}  // namespace detail

inline TransferMatrix smeared_transfer(const detail::JxEigensystem& eig,
                                       double mean_angle, Coarsening delta) {
    const double half_var = 0.5 * delta.delta * delta.delta;
    Eigen::MatrixXd t = detail::smeared_matrix(
        eig, mean_angle, [half_var](int k) { return std::exp(-half_var * k * k); });
    return TransferMatrix{eig.spin, mean_angle, delta, std::move(t)};
}

inline TransferMatrix smeared_transfer(Spin spin, double mean_angle, Coarsening delta) {
    return smeared_transfer(detail::jx_eigensystem(spin), mean_angle, delta);
}

namespace detail {

struct SimpsonBudget {
    long evals = 0;
    long max_evals = 1L << 21;
    int max_depth = 60;
};

inline double simpson_recurse(const std::function<double(double)>& f, double a,
                              double fa, double b, double fb, double c, double fc,
                              double whole, double tol, int depth, SimpsonBudget& budget) {
    const double lm = 0.5 * (a + c), rm = 0.5 * (c + b);
    const double flm = f(lm), frm = f(rm);
    budget.evals += 2;
    if (budget.evals > budget.max_evals || depth > budget.max_depth)
        throw std::runtime_error("quadrature_transfer: integration budget exhausted");

    const double left = (c - a) / 6.0 * (fa + 4.0 * flm + fc);
    const double right = (b - c) / 6.0 * (fc + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(f, a, fa, c, fc, lm, flm, left, 0.5 * tol, depth + 1, budget) +
           simpson_recurse(f, c, fc, b, fb, rm, frm, right, 0.5 * tol, depth + 1, budget);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double rel_tol) {
    SimpsonBudget budget;
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    budget.evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    const double tol = std::max(std::abs(whole) * rel_tol, 1e-15);
    return simpson_recurse(f, a, fa, b, fb, c, fc, whole, tol, 0, budget);
}

}  // namespace detail

// Test oracle: direct numerical integration of every entry against the
// Gaussian kernel, truncated at window_sigmas standard deviations.
inline TransferMatrix quadrature_transfer(Spin spin, double mean_angle, Coarsening delta,
                                          double rel_tol, double window_sigmas = 8.0) {
    if (delta.sharp())
        throw std::invalid_argument("quadrature_transfer: requires delta > 0");
    if (!(rel_tol > 0.0) || rel_tol > 1e-4)
        throw std::invalid_argument("quadrature_transfer: rel_tol must be in (0, 1e-4]");
    if (!std::isfinite(mean_angle))
        throw std::invalid_argument("quadrature_transfer: mean_angle must be finite");

    const auto eig = detail::jx_eigensystem(spin);
    const Eigen::MatrixXd& v = eig.vectors;
    const int n = spin.dimension();

    const double sd = delta.delta;
    const double norm = 1.0 / (sd * std::sqrt(2.0 * 3.14159265358979323846));
    const double lo = mean_angle - window_sigmas * sd;
    const double hi = mean_angle + window_sigmas * sd;

    // Panels no wider than pi / (2j + 2): at most half the period of the
    // fastest harmonic, so the per-panel Simpson seed cannot alias.
    const double panel_width = 3.14159265358979323846 / (spin.twice_j() + 2);
    const int n_panels =
        std::max(8, static_cast<int>(std::ceil((hi - lo) / panel_width)));

    Eigen::MatrixXd t(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            auto f = [&](double theta) {
                std::complex<double> amp(0.0, 0.0);
                for (int k = 0; k < n; ++k)
                    amp += v(r, k) * v(c, k) *
                           std::polar(1.0, -theta * eig.eigenvalue(k));
                const double z = (theta - mean_angle) / sd;
                return norm * std::exp(-0.5 * z * z) * std::norm(amp);
            };
            double sum = 0.0;
            for (int p = 0; p < n_panels; ++p) {
                const double a = lo + (hi - lo) * p / n_panels;
                const double b = lo + (hi - lo) * (p + 1) / n_panels;
                sum += detail::adaptive_simpson(f, a, b, rel_tol);
            }
            t(r, c) = sum;
        }
    }
    return TransferMatrix{spin, mean_angle, delta, std::move(t)};
}

}  // namespace spinwitness
