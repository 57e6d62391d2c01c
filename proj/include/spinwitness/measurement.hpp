// Coarse-grained measurement statistics for a precessing spin prepared in
// |-j; j>: outcome grouping into Q = +/-1, first-measurement marginals,
// two-time joint distributions, and the no-earlier-measurement marginal.
//
// All angles are mean precession angles (Omega times a mean interval). The
// two-time joint factorizes as P(m_i, m_j) = f(m_i) T(m_j | m_i) with one
// smearing kernel per factor, each of width delta; a composite interval
// (e.g. start -> second measurement) still gets a single kernel centered on
// the summed mean angle. delta = 0 bypasses smearing and uses the sharp
// transition matrix directly.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>

#include "spinwitness/smear.hpp"
#include "spinwitness/spin.hpp"
#include "spinwitness/wigner.hpp"

namespace spinwitness {

// m -> Q partition: Q = +1 for m > 0, Q = -1 for m <= 0. For half-integer j
// the two groups have equal size; for integer j the m = 0 outcome tips the
// Q = -1 group to one extra member.
struct Grouping {
    Spin spin;

    int q_of(MagQuantum m) const { return m.twice_m > 0 ? +1 : -1; }

    std::vector<MagQuantum> group(int q) const {
        std::vector<MagQuantum> members;
        for (const auto m : outcomes(spin))
            if (q_of(m) == q) members.push_back(m);
        return members;
    }
};

inline Grouping grouping(Spin spin) { return Grouping{spin}; }

struct AngleSchedule {
    double a01 = 0.0;  // mean angle, start -> first measurement
    double a12 = 0.0;  // first -> second
    double a23 = 0.0;  // second -> third

    AngleSchedule(double a, double b, double c) : a01(a), a12(b), a23(c) {
        for (double x : {a, b, c})
            if (!std::isfinite(x) || x < 0.0)
                throw std::invalid_argument("schedule: angles must be finite and >= 0");
    }

    double total() const { return a01 + a12 + a23; }
};

// 2x2 joint table over the coarse outcomes of an ordered time pair.
struct CoarseJoint {
    // storage order: [earlier Q][later Q], index 0 <-> Q=-1, 1 <-> Q=+1
    std::array<std::array<double, 2>, 2> p{{{0.0, 0.0}, {0.0, 0.0}}};

    static int slot(int q) {
        if (q != 1 && q != -1) throw std::invalid_argument("coarse joint: Q must be +/-1");
        return q == 1 ? 1 : 0;
    }

    double& at(int q_earlier, int q_later) { return p[slot(q_earlier)][slot(q_later)]; }
    double at(int q_earlier, int q_later) const { return p[slot(q_earlier)][slot(q_later)]; }

    double total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

    // marginal of the later outcome, summed over the earlier one
    double later_marginal(int q_later) const {
        return p[0][slot(q_later)] + p[1][slot(q_later)];
    }
};

namespace detail {

inline Eigen::MatrixXd transfer(const JxEigensystem& eig, double angle, Coarsening delta) {
    if (delta.sharp()) return d_matrix_sq(eig, angle).p;
    return smeared_transfer(eig, angle, delta).t;
}

}  // namespace detail

// Distribution of the first measured m, indexed ascending from -j. This is
// the initial-state column of the (smeared) transition matrix.
inline Eigen::VectorXd first_marginal(const detail::JxEigensystem& eig,
                                      double angle_from_start, Coarsening delta) {
    return detail::transfer(eig, angle_from_start, delta).col(0);
}

inline Eigen::VectorXd first_marginal(Spin spin, double angle_from_start, Coarsening delta) {
    return first_marginal(detail::jx_eigensystem(spin), angle_from_start, delta);
}

// Joint distribution of the coarse outcomes at an ordered pair of times.
// angle_from_start positions the earlier measurement; angle_between spans
// the gap to the later one.
inline CoarseJoint pair_joint(const detail::JxEigensystem& eig, double angle_from_start,
                              double angle_between, Coarsening delta) {
    const Spin spin = eig.spin;
    const Eigen::VectorXd f = first_marginal(eig, angle_from_start, delta);
    const Eigen::MatrixXd t = detail::transfer(eig, angle_between, delta);

    // index of the first m with Q = +1 (smallest twice_m > 0)
    const int split = index_of(spin, MagQuantum{spin.is_integer() ? 2 : 1});
    const int n = spin.dimension();

    CoarseJoint joint;
    for (int mi = 0; mi < n; ++mi) {
        double to_minus = 0.0, to_plus = 0.0;
        for (int mj = 0; mj < split; ++mj) to_minus += t(mj, mi);
        for (int mj = split; mj < n; ++mj) to_plus += t(mj, mi);
        const int qi = mi < split ? -1 : +1;
        joint.at(qi, -1) += f(mi) * to_minus;
        joint.at(qi, +1) += f(mi) * to_plus;
    }
    return joint;
}

inline CoarseJoint pair_joint(Spin spin, double angle_from_start, double angle_between,
                              Coarsening delta) {
    return pair_joint(detail::jx_eigensystem(spin), angle_from_start, angle_between, delta);
}

// P(Q = +1) at the final time with no earlier measurement: the group-summed
// first marginal at the composite angle, one kernel of width delta.
inline double unmeasured_marginal(const detail::JxEigensystem& eig, double total_angle,
                                  Coarsening delta) {
    const Spin spin = eig.spin;
    const Eigen::VectorXd f = first_marginal(eig, total_angle, delta);
    const int split = index_of(spin, MagQuantum{spin.is_integer() ? 2 : 1});
    double plus = 0.0;
    for (int k = split; k < spin.dimension(); ++k) plus += f(k);
    return plus;
}

inline double unmeasured_marginal(Spin spin, double total_angle, Coarsening delta) {
    return unmeasured_marginal(detail::jx_eigensystem(spin), total_angle, delta);
}

}  // namespace spinwitness
