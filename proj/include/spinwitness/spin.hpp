// Exact arithmetic for spin magnitudes and magnetic quantum numbers.
//
// Both j and m are stored as doubled integers (2j, 2m) so that parity
// checks and group-boundary comparisons are exact. j = 0 is rejected:
// a single-outcome measurement makes every witness degenerate.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinwitness {

class Spin {
public:
    explicit Spin(int twice_j) : twice_j_(twice_j) {
        if (twice_j < 1)
            throw std::invalid_argument("spin: twice_j must be >= 1, got " +
                                        std::to_string(twice_j));
    }

    int twice_j() const { return twice_j_; }
    int dimension() const { return twice_j_ + 1; }
    double value() const { return 0.5 * twice_j_; }
    bool is_integer() const { return twice_j_ % 2 == 0; }

    friend bool operator==(Spin a, Spin b) { return a.twice_j_ == b.twice_j_; }
    friend bool operator!=(Spin a, Spin b) { return !(a == b); }

private:
    int twice_j_;
};

struct MagQuantum {
    int twice_m = 0;

    double value() const { return 0.5 * twice_m; }

    friend bool operator==(MagQuantum a, MagQuantum b) { return a.twice_m == b.twice_m; }
    friend bool operator!=(MagQuantum a, MagQuantum b) { return !(a == b); }
};

// m-value at basis index k in the ascending ordering (-j first, +j last).
inline MagQuantum outcome_at(Spin spin, int index) {
    if (index < 0 || index >= spin.dimension())
        throw std::out_of_range("outcome_at: index " + std::to_string(index) +
                                " outside [0, " + std::to_string(spin.dimension()) + ")");
    return MagQuantum{2 * index - spin.twice_j()};
}

// Basis index of an m-value; validates magnitude and parity against the spin.
inline int index_of(Spin spin, MagQuantum m) {
    if (std::abs(m.twice_m) > spin.twice_j())
        throw std::invalid_argument("index_of: |2m| exceeds 2j");
    if ((m.twice_m & 1) != (spin.twice_j() & 1))
        throw std::invalid_argument("index_of: 2m has wrong parity for this spin");
    return (m.twice_m + spin.twice_j()) / 2;
}

// All 2j+1 outcomes of a J_z measurement, ascending from -j to +j.
inline std::vector<MagQuantum> outcomes(Spin spin) {
    std::vector<MagQuantum> out;
    out.reserve(spin.dimension());
    for (int k = 0; k < spin.dimension(); ++k)
        out.push_back(outcome_at(spin, k));
    return out;
}

inline bool is_integer_spin(Spin spin) { return spin.is_integer(); }

}  // namespace spinwitness
