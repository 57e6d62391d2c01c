// Parameter sweeps over (spin, delta), reference-table reproduction, and
// derivative-free optimization of a witness over the mean-angle schedule.
//
// Grid points are independent pure evaluations; they may run on several
// threads, but rows are merged in lexicographic (twice_j, delta) order so
// output is identical however the work is scheduled.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinwitness/measurement.hpp"
#include "spinwitness/smear.hpp"
#include "spinwitness/spin.hpp"
#include "spinwitness/table_data.hpp"
#include "spinwitness/witnesses.hpp"

namespace spinwitness {

struct SweepRow {
    int twice_j = 0;
    double delta = 0.0;
    AngleSchedule schedule;
    double k_lgi = 0.0;
    double k_wlgi = 0.0;
    double k_nsit_signed = 0.0;
    double k_nsit_magnitude = 0.0;
};

inline SweepRow make_row(const detail::JxEigensystem& eig, AngleSchedule schedule,
                         Coarsening delta) {
    const WitnessReport r = evaluate(eig, schedule, delta);
    return SweepRow{eig.spin.twice_j(), delta.delta,  schedule,
                    r.k_lgi,            r.k_wlgi,     r.k_nsit_signed,
                    r.k_nsit_magnitude};
}

// Full Cartesian product of spins x deltas at one schedule. threads = 0
// picks the hardware concurrency; any thread count yields identical rows.
inline std::vector<SweepRow> sweep_grid(std::vector<Spin> spins,
                                        std::vector<Coarsening> deltas,
                                        AngleSchedule schedule, unsigned threads = 0) {
    if (spins.empty() || deltas.empty())
        throw std::invalid_argument("sweep_grid: spins and deltas must be nonempty");

    std::sort(spins.begin(), spins.end(),
              [](Spin a, Spin b) { return a.twice_j() < b.twice_j(); });
    std::sort(deltas.begin(), deltas.end(),
              [](Coarsening a, Coarsening b) { return a.delta < b.delta; });

    // one eigensystem per distinct spin, shared read-only by the workers
    std::vector<detail::JxEigensystem> systems;
    systems.reserve(spins.size());
    for (std::size_t i = 0; i < spins.size(); ++i) {
        if (!systems.empty() && systems.back().spin == spins[i])
            systems.push_back(systems.back());
        else
            systems.push_back(detail::jx_eigensystem(spins[i]));
    }

    const std::size_t total = spins.size() * deltas.size();
    std::vector<SweepRow> rows(total, SweepRow{0, 0.0, schedule, 0.0, 0.0, 0.0, 0.0});

    unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            if (failed.load()) return;
            const std::size_t si = idx / deltas.size();
            const std::size_t di = idx % deltas.size();
            try {
                rows[idx] = make_row(systems[si], schedule, deltas[di]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true))
                    failure = "sweep_grid: twice_j=" + std::to_string(spins[si].twice_j()) +
                              " delta=" + std::to_string(deltas[di].delta) + ": " + e.what();
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error(failure);
    return rows;
}

struct CellCheck {
    TableCell cell;
    double actual = 0.0;
    double deviation = 0.0;
    bool ok = false;
};

struct TableReport {
    std::string id;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<CellCheck> cells;
    std::size_t worst_index = 0;  // cell with the largest deviation
};

// Computes every cell of a reference grid and compares against the fixture.
// Failures are data in the report, not errors. Fixture values carry three
// truncated decimals, so tolerances below that 1e-3 floor can only fail.
inline TableReport reproduce_table(const TableSpec& spec, double tolerance = 1e-3) {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
        throw std::invalid_argument("reproduce_table: tolerance must be positive");

    const AngleSchedule schedule(M_PI, M_PI / 2.0, M_PI / 2.0);
    TableReport report;
    report.id = spec.id;
    report.tolerance = tolerance;
    report.passed = true;

    int cached_twice_j = -1;
    detail::JxEigensystem cached{Spin(1), Eigen::MatrixXd()};
    for (const TableCell& cell : spec.cells) {
        if (cell.twice_j != cached_twice_j) {
            cached = detail::jx_eigensystem(Spin(cell.twice_j));
            cached_twice_j = cell.twice_j;
        }
        const WitnessReport r = evaluate(cached, schedule, Coarsening(cell.delta));
        CellCheck check;
        check.cell = cell;
        check.actual =
            cell.witness == TableWitness::KWlgi ? r.k_wlgi : r.k_nsit_magnitude;
        check.deviation = std::abs(check.actual - cell.expected);
        check.ok = check.deviation <= tolerance;
        if (!check.ok) report.passed = false;
        if (!report.cells.empty() &&
            check.deviation > report.cells[report.worst_index].deviation)
            report.worst_index = report.cells.size();
        report.cells.push_back(check);
    }
    return report;
}

enum class Objective { KWlgi, KNsitMagnitude, KLgi };

inline const char* objective_name(Objective o) {
    switch (o) {
        case Objective::KWlgi: return "k_wlgi";
        case Objective::KNsitMagnitude: return "k_nsit_magnitude";
        case Objective::KLgi: return "k_lgi";
    }
    return "?";
}

struct OptimizeTracePoint {
    long evaluation = 0;  // 1-based index of the evaluation that improved the best
    AngleSchedule schedule;
    double value = 0.0;
};

struct OptimizeResult {
    AngleSchedule best;
    double value = 0.0;
    bool converged = false;
    long evaluations = 0;
    std::vector<OptimizeTracePoint> trace;
};

namespace detail {

inline double wrap_angle(double a) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

}  // namespace detail

// Coarse grid over [0, 2pi)^3 (the default schedule is always probed first)
// followed by Nelder-Mead refinement from the best probe. Every witness is
// 2pi-periodic in each angle, so candidate points are wrapped before
// evaluation. Deterministic: there is no stochastic restart policy; the
// seed parameter is accepted for interface stability and recorded only.
inline OptimizeResult optimize_schedule(Spin spin, Coarsening delta, Objective objective,
                                        long budget, unsigned seed = 0) {
    (void)seed;
    if (budget < 27)
        throw std::invalid_argument("optimize_schedule: budget must be >= 27");

    const auto eig = detail::jx_eigensystem(spin);
    OptimizeResult result{AngleSchedule(M_PI, M_PI / 2.0, M_PI / 2.0), 0.0, false, 0, {}};

    auto objective_value = [&](const std::array<double, 3>& x) {
        const AngleSchedule s(detail::wrap_angle(x[0]), detail::wrap_angle(x[1]),
                              detail::wrap_angle(x[2]));
        const WitnessReport r = evaluate(eig, s, delta);
        ++result.evaluations;
        switch (objective) {
            case Objective::KWlgi: return r.k_wlgi;
            case Objective::KNsitMagnitude: return r.k_nsit_magnitude;
            case Objective::KLgi: return r.k_lgi;
        }
        return 0.0;
    };

    std::array<double, 3> best_x{M_PI, M_PI / 2.0, M_PI / 2.0};
    double best_v = objective_value(best_x);
    result.trace.push_back({result.evaluations, result.best, best_v});

    auto consider = [&](const std::array<double, 3>& x, double v) {
        if (v > best_v) {
            best_v = v;
            best_x = x;
            result.trace.push_back(
                {result.evaluations,
                 AngleSchedule(detail::wrap_angle(x[0]), detail::wrap_angle(x[1]),
                               detail::wrap_angle(x[2])),
                 v});
        }
    };

    // probe grid: at least 3 points per axis, roughly a third of the budget
    const long per_axis = std::max<long>(3, static_cast<long>(std::cbrt(budget / 3.0)));
    const double step = 2.0 * M_PI / static_cast<double>(per_axis);
    for (long i = 0; i < per_axis; ++i)
        for (long j = 0; j < per_axis; ++j)
            for (long k = 0; k < per_axis; ++k) {
                const std::array<double, 3> x{i * step, j * step, k * step};
                consider(x, objective_value(x));
            }

    // Nelder-Mead refinement (maximization) within the remaining budget
    long remaining = budget - result.evaluations;
    if (remaining > 4) {
        struct Vertex {
            std::array<double, 3> x;
            double v;
        };
        std::vector<Vertex> simplex;
        simplex.push_back({best_x, best_v});
        for (int d = 0; d < 3 && remaining > 0; ++d) {
            auto x = best_x;
            x[d] += 0.5 * step;
            simplex.push_back({x, objective_value(x)});
            --remaining;
            consider(x, simplex.back().v);
        }

        auto order = [&]() {
            std::sort(simplex.begin(), simplex.end(),
                      [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
        };
        auto centroid_excl_worst = [&]() {
            std::array<double, 3> c{0.0, 0.0, 0.0};
            for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
                for (int d = 0; d < 3; ++d) c[d] += simplex[i].x[d];
            for (int d = 0; d < 3; ++d) c[d] /= static_cast<double>(simplex.size() - 1);
            return c;
        };

        while (simplex.size() == 4 && remaining > 0) {
            order();
            double spread = simplex.front().v - simplex.back().v;
            double size = 0.0;
            for (int d = 0; d < 3; ++d)
                size = std::max(size, std::abs(simplex.front().x[d] - simplex.back().x[d]));
            if (spread < 1e-12 && size < 1e-8) {
                result.converged = true;
                break;
            }

            const auto c = centroid_excl_worst();
            const auto& worst = simplex.back();
            auto blend = [&](double coef) {
                std::array<double, 3> x;
                for (int d = 0; d < 3; ++d) x[d] = c[d] + coef * (c[d] - worst.x[d]);
                return x;
            };

            const auto xr = blend(1.0);
            const double vr = objective_value(xr);
            --remaining;
            consider(xr, vr);

            if (vr > simplex[0].v && remaining > 0) {
                const auto xe = blend(2.0);
                const double ve = objective_value(xe);
                --remaining;
                consider(xe, ve);
                simplex.back() = ve > vr ? Vertex{xe, ve} : Vertex{xr, vr};
            } else if (vr > simplex[1].v) {
                simplex.back() = {xr, vr};
            } else if (remaining > 0) {
                const auto xc = blend(-0.5);
                const double vc = objective_value(xc);
                --remaining;
                consider(xc, vc);
                if (vc > worst.v) {
                    simplex.back() = {xc, vc};
                } else {
                    // shrink toward the best vertex
                    for (std::size_t i = 1; i < simplex.size() && remaining > 0; ++i) {
                        for (int d = 0; d < 3; ++d)
                            simplex[i].x[d] =
                                0.5 * (simplex[i].x[d] + simplex[0].x[d]);
                        simplex[i].v = objective_value(simplex[i].x);
                        --remaining;
                        consider(simplex[i].x, simplex[i].v);
                    }
                }
            }
        }
    }

    result.best = AngleSchedule(detail::wrap_angle(best_x[0]), detail::wrap_angle(best_x[1]),
                                detail::wrap_angle(best_x[2]));
    result.value = best_v;
    return result;
}

struct NamedSchedule {
    std::string name;
    AngleSchedule schedule;
};

// The default schedule plus the four studied alternates, default first.
inline std::vector<NamedSchedule> preset_schedules() {
    const double pi = M_PI;
    return {
        {"default", AngleSchedule(pi, pi / 2.0, pi / 2.0)},
        {"pi-pi-pi", AngleSchedule(pi, pi, pi)},
        {"halfpi-halfpi-pi", AngleSchedule(pi / 2.0, pi / 2.0, pi)},
        {"pi-quarterpi-quarterpi", AngleSchedule(pi, pi / 4.0, pi / 4.0)},
        {"pi-3quarterpi-3quarterpi", AngleSchedule(pi, 3.0 * pi / 4.0, 3.0 * pi / 4.0)},
    };
}

}  // namespace spinwitness
