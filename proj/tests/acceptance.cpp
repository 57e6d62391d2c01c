// Shipping gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spinwitness/smear.hpp"
#include "spinwitness/sweep.hpp"
#include "spinwitness/witnesses.hpp"

using namespace spinwitness;

namespace {

constexpr double kPi = 3.14159265358979323846;
const AngleSchedule kDefault(kPi, kPi / 2.0, kPi / 2.0);

int g_failures = 0;

void report(int id, bool ok, const std::string& text) {
    std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int id, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

double worst_deviation(const TableReport& r) { return r.cells.at(r.worst_index).deviation; }

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return std::string(buf);
}

void check_table(int id, const char* table_id) {
    const auto t0 = std::chrono::steady_clock::now();
    const TableReport r = reproduce_table(table_spec(table_id), 1e-3);
    const double elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t0).count();
    const bool in_time = table_id != std::string("I") || elapsed < 60.0;
    report(id, r.passed && in_time,
           std::string("grid ") + table_id + " reproduced, " +
               std::to_string(r.cells.size()) + " cells, " +
               fmt("worst deviation %.2e, %.1f s", worst_deviation(r), elapsed));
}

}  // namespace

int main() {
    criterion(1, [] { check_table(1, "I"); });
    criterion(2, [] { check_table(2, "II"); });
    criterion(3, [] { check_table(3, "III"); });
    criterion(4, [] { check_table(4, "IV"); });

    // LGI stays at or below its classical bound on every tabulated point
    criterion(5, [] {
        std::set<std::pair<int, int>> seen;  // (twice_j, delta in 1e-2 units)
        std::vector<std::pair<int, double>> points;
        for (const TableSpec& spec : all_tables())
            for (const TableCell& c : spec.cells)
                if (seen.insert({c.twice_j, static_cast<int>(c.delta * 100 + 0.5)}).second)
                    points.emplace_back(c.twice_j, c.delta);
        std::sort(points.begin(), points.end());

        double worst = -1e300;
        int cached_tj = -1;
        detail::JxEigensystem eig{Spin(1), Eigen::MatrixXd()};
        for (const auto& [tj, delta] : points) {
            if (tj != cached_tj) {
                eig = detail::jx_eigensystem(Spin(tj));
                cached_tj = tj;
            }
            worst = std::max(worst, evaluate(eig, kDefault, Coarsening(delta)).k_lgi);
        }
        report(5, worst <= 1.0 + 1e-9,
               fmt("max k_lgi over all %.0f tabulated points = %.9f",
                   static_cast<double>(points.size()), worst));
    });

    // Fourier smearing against the quadrature oracle and closed forms
    criterion(6, [] {
        double worst = 0.0;
        for (int tj : {1, 3, 6, 24}) {
            const Spin spin(tj);
            const auto eig = detail::jx_eigensystem(spin);
            for (double angle : {kPi / 4.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0, 2.0 * kPi})
                for (double delta : {0.25, 0.55, 0.85}) {
                    const auto fast = smeared_transfer(eig, angle, Coarsening(delta));
                    const auto slow =
                        quadrature_transfer(spin, angle, Coarsening(delta), 1e-9);
                    worst = std::max(worst, (fast.t - slow.t).cwiseAbs().maxCoeff());
                }
        }

        double worst_closed = 0.0;
        for (double delta : {0.25, 0.55, 0.85}) {
            const double off = 0.5 * (1.0 + std::exp(-0.5 * delta * delta));
            const auto fast = smeared_transfer(Spin(1), kPi, Coarsening(delta));
            const auto slow = quadrature_transfer(Spin(1), kPi, Coarsening(delta), 1e-10);
            worst_closed = std::max(worst_closed, std::abs(fast.t(0, 1) - off));
            worst_closed = std::max(worst_closed, std::abs(slow.t(0, 1) - off));
        }
        report(6, worst <= 1e-8 && worst_closed <= 1e-9,
               fmt("max |fourier - quadrature| = %.2e, closed-form deviation = %.2e",
                   worst, worst_closed));
    });

    // hand-derived two-level suite at the default schedule
    criterion(7, [] {
        const WitnessReport r = evaluate(Spin(1), kDefault, Coarsening(0.0));
        const double dev = std::max({std::abs(r.k_wlgi - 0.25),
                                     std::abs(r.k_nsit_signed + 0.5),
                                     std::abs(r.k_lgi - 1.0)});
        report(7, dev <= 1e-12, fmt("two-level witness deviation = %.2e", dev));
    });

    // double stochasticity across the full theta grid up to twice_j = 400
    criterion(8, [] {
        double worst = 0.0;
        for (int tj : {1, 2, 3, 6, 24, 199, 400}) {
            const auto eig = detail::jx_eigensystem(Spin(tj));
            for (int k = 0; k < 100; ++k) {
                const auto d = d_matrix_sq(eig, 2.0 * kPi * k / 100.0);
                worst = std::max(worst,
                                 (d.p.rowwise().sum().array() - 1.0).abs().maxCoeff());
                worst = std::max(worst,
                                 (d.p.colwise().sum().array() - 1.0).abs().maxCoeff());
            }
        }
        report(8, worst <= 1e-10, fmt("worst row/column sum deviation = %.2e", worst));
    });

    // strict monotonicity across the tabulated smearing grids
    criterion(9, [] {
        const double wlgi_deltas[] = {0.25, 0.55, 0.85};
        const double nsit_deltas[] = {0.55, 0.70, 0.85};
        bool ok = true;
        for (const auto& spins :
             std::vector<std::vector<int>>{{3, 9, 15}, {6, 12, 18, 24}}) {
            std::vector<std::array<double, 3>> wlgi(spins.size()), nsit(spins.size());
            for (std::size_t i = 0; i < spins.size(); ++i) {
                const auto eig = detail::jx_eigensystem(Spin(spins[i]));
                for (int k = 0; k < 3; ++k) {
                    wlgi[i][static_cast<std::size_t>(k)] =
                        evaluate(eig, kDefault, Coarsening(wlgi_deltas[k])).k_wlgi;
                    nsit[i][static_cast<std::size_t>(k)] =
                        evaluate(eig, kDefault, Coarsening(nsit_deltas[k]))
                            .k_nsit_magnitude;
                }
            }
            for (std::size_t i = 0; i < spins.size(); ++i)
                for (int k = 0; k + 1 < 3; ++k) {
                    ok = ok && wlgi[i][static_cast<std::size_t>(k)] >
                                   wlgi[i][static_cast<std::size_t>(k + 1)];
                    ok = ok && nsit[i][static_cast<std::size_t>(k)] >
                                   nsit[i][static_cast<std::size_t>(k + 1)];
                }
            for (std::size_t i = 0; i + 1 < spins.size(); ++i)
                for (int k = 0; k < 3; ++k) {
                    ok = ok && wlgi[i][static_cast<std::size_t>(k)] <
                                   wlgi[i + 1][static_cast<std::size_t>(k)];
                    ok = ok && nsit[i][static_cast<std::size_t>(k)] <
                                   nsit[i + 1][static_cast<std::size_t>(k)];
                }
        }
        report(9, ok, "WLGI and NSIT strictly decrease in delta and increase in j "
                      "on both smearing grids");
    });

    // schedule optimizer dominates the default schedule it probes
    criterion(10, [] {
        bool ok = true;
        double min_gap = 1e300;
        for (const auto& [tj, delta] :
             std::vector<std::pair<int, double>>{{3, 0.0}, {6, 0.55}}) {
            const auto eig = detail::jx_eigensystem(Spin(tj));
            const WitnessReport def = evaluate(eig, kDefault, Coarsening(delta));
            for (Objective objective :
                 {Objective::KWlgi, Objective::KNsitMagnitude, Objective::KLgi}) {
                const double base = objective == Objective::KWlgi ? def.k_wlgi
                                    : objective == Objective::KLgi
                                        ? def.k_lgi
                                        : def.k_nsit_magnitude;
                const OptimizeResult r =
                    optimize_schedule(Spin(tj), Coarsening(delta), objective, 200);
                ok = ok && r.value >= base;
                min_gap = std::min(min_gap, r.value - base);
            }
        }
        report(10, ok, fmt("six optimizer runs, min (best - default) = %.3e", min_gap));
    });

    std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return g_failures == 0 ? 0 : 1;
}
