// The three necessary conditions of macrorealism evaluated from the coarse
// measurement statistics:
//
//   K_LGI  = C12 + C23 - C13                      (macrorealism: <= 1)
//   K_WLGI = P(Q2+,Q3+) - P(Q1-,Q2+) - P(Q1+,Q3+) (macrorealism: <= 0)
//   K_NSIT = P(Q3+) - [P(Q2+,Q3+) + P(Q2-,Q3+)]   (macrorealism: = 0)
//
// Pair joints reuse cumulative angles from the schedule: pair (1,2) uses
// (a01, a12), pair (2,3) uses (a01+a12, a23), pair (1,3) uses (a01, a12+a23).
// Every probability flows through measurement's pair_joint and
// unmeasured_marginal; there is no second probability path.

#pragma once

#include <cmath>
#include <utility>

#include "spinwitness/measurement.hpp"
#include "spinwitness/smear.hpp"
#include "spinwitness/spin.hpp"

namespace spinwitness {

struct WitnessReport {
    double k_lgi = 0.0;
    double k_wlgi = 0.0;
    double k_nsit_signed = 0.0;
    double k_nsit_magnitude = 0.0;
    bool lgi_violated = false;
    bool wlgi_violated = false;
    bool nsit_unsatisfied = false;
};

namespace detail {

// separates genuine violations from floating-point dust on the bound
constexpr double kViolationTol = 1e-9;

inline double correlation(const CoarseJoint& joint) {
    return joint.at(+1, +1) + joint.at(-1, -1) - joint.at(+1, -1) - joint.at(-1, +1);
}

}  // namespace detail

inline WitnessReport evaluate(const detail::JxEigensystem& eig, AngleSchedule schedule,
                              Coarsening delta) {
    const CoarseJoint p12 = pair_joint(eig, schedule.a01, schedule.a12, delta);
    const CoarseJoint p23 = pair_joint(eig, schedule.a01 + schedule.a12, schedule.a23, delta);
    const CoarseJoint p13 = pair_joint(eig, schedule.a01, schedule.a12 + schedule.a23, delta);
    const double q3_plus = unmeasured_marginal(eig, schedule.total(), delta);

    WitnessReport report;
    report.k_lgi = detail::correlation(p12) + detail::correlation(p23) -
                   detail::correlation(p13);
    report.k_wlgi = p23.at(+1, +1) - p12.at(-1, +1) - p13.at(+1, +1);
    report.k_nsit_signed = q3_plus - p23.later_marginal(+1);
    report.k_nsit_magnitude = std::abs(report.k_nsit_signed);
    report.lgi_violated = report.k_lgi > 1.0 + detail::kViolationTol;
    report.wlgi_violated = report.k_wlgi > detail::kViolationTol;
    report.nsit_unsatisfied = report.k_nsit_magnitude > detail::kViolationTol;
    return report;
}

inline WitnessReport evaluate(Spin spin, AngleSchedule schedule, Coarsening delta) {
    return evaluate(detail::jx_eigensystem(spin), schedule, delta);
}

inline double k_lgi(Spin spin, AngleSchedule schedule, Coarsening delta) {
    return evaluate(spin, schedule, delta).k_lgi;
}

inline double k_wlgi(Spin spin, AngleSchedule schedule, Coarsening delta) {
    return evaluate(spin, schedule, delta).k_wlgi;
}

// (signed value, magnitude); the reference tables report the magnitude
inline std::pair<double, double> k_nsit(Spin spin, AngleSchedule schedule, Coarsening delta) {
    const auto report = evaluate(spin, schedule, delta);
    return {report.k_nsit_signed, report.k_nsit_magnitude};
}

}  // namespace spinwitness
