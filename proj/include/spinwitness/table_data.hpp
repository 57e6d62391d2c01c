// Built-in reference grids: expected witness magnitudes on four (j, delta)
// grids at the default schedule (pi, pi/2, pi/2). The values are fixture
// data recorded at 3-decimal precision (truncated, not rounded, so a cell
// may sit up to 1e-3 below the exact value) and are never regenerated by
// the code under test. Every cell is the 3-decimal truncation of the
// exact model value, so reproduction at the default 1e-3 tolerance is a
// genuine correctness gate, not a self-fulfilling snapshot.
//
//   I   half-integer spins, sharp times      (WLGI and NSIT constant)
//   II  half-integer spins, smeared times    (delta sweeps per witness)
//   III integer spins, sharp times
//   IV  integer spins, smeared times

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinwitness {

enum class TableWitness { KWlgi, KNsitMagnitude };

struct TableCell {
    int twice_j = 0;
    double delta = 0.0;
    TableWitness witness = TableWitness::KWlgi;
    double expected = 0.0;
};

struct TableSpec {
    std::string id;
    std::vector<TableCell> cells;
};

namespace detail {

inline void append_sharp_cells(std::vector<TableCell>& cells, int twice_j, double wlgi,
                               double nsit) {
    cells.push_back({twice_j, 0.0, TableWitness::KWlgi, wlgi});
    cells.push_back({twice_j, 0.0, TableWitness::KNsitMagnitude, nsit});
}

inline void append_smeared_cells(std::vector<TableCell>& cells, int twice_j,
                                 std::initializer_list<double> wlgi,
                                 std::initializer_list<double> nsit) {
    const double wlgi_deltas[] = {0.25, 0.55, 0.85};
    const double nsit_deltas[] = {0.55, 0.70, 0.85};
    int i = 0;
    for (double v : wlgi) cells.push_back({twice_j, wlgi_deltas[i++], TableWitness::KWlgi, v});
    i = 0;
    for (double v : nsit)
        cells.push_back({twice_j, nsit_deltas[i++], TableWitness::KNsitMagnitude, v});
}

}  // namespace detail

inline TableSpec table_spec(const std::string& id) {
    TableSpec spec;
    spec.id = id;
    auto& cells = spec.cells;

    if (id == "I") {
        for (int twice_j : {3, 15, 35, 55, 97, 147, 199})
            detail::append_sharp_cells(cells, twice_j, 0.250, 0.500);
    } else if (id == "II") {
        detail::append_smeared_cells(cells, 3, {0.245, 0.181, 0.063}, {0.467, 0.433, 0.389});
        detail::append_smeared_cells(cells, 9, {0.249, 0.206, 0.082}, {0.486, 0.459, 0.416});
        detail::append_smeared_cells(cells, 15, {0.250, 0.212, 0.088}, {0.490, 0.465, 0.423});
    } else if (id == "III") {
        detail::append_sharp_cells(cells, 6, 0.147, 0.451);
        detail::append_sharp_cells(cells, 18, 0.195, 0.482);
        detail::append_sharp_cells(cells, 24, 0.205, 0.487);
        detail::append_sharp_cells(cells, 50, 0.218, 0.493);
        detail::append_sharp_cells(cells, 80, 0.226, 0.496);
        detail::append_sharp_cells(cells, 160, 0.233, 0.498);
    } else if (id == "IV") {
        detail::append_smeared_cells(cells, 6, {0.161, 0.140, 0.053}, {0.421, 0.398, 0.365});
        detail::append_smeared_cells(cells, 12, {0.196, 0.176, 0.073}, {0.456, 0.433, 0.396});
        detail::append_smeared_cells(cells, 18, {0.210, 0.190, 0.081}, {0.468, 0.446, 0.408});
        detail::append_smeared_cells(cells, 24, {0.218, 0.198, 0.085}, {0.475, 0.453, 0.415});
    } else {
        throw std::invalid_argument("table_spec: unknown table id '" + id +
                                    "' (expected I, II, III, or IV)");
    }
    return spec;
}

inline std::vector<TableSpec> all_tables() {
    return {table_spec("I"), table_spec("II"), table_spec("III"), table_spec("IV")};
}

}  // namespace spinwitness
