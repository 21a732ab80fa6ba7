// table.hpp
//
// Published comparison table of the bounded solution against the two rational
// approximants, kept as a fixture, and the row-by-row audit against a freshly
// computed solution.

#ifndef TF_TABLE_HPP
#define TF_TABLE_HPP

#include "tf/core.hpp"

#include <array>
#include <vector>

namespace tf {

struct PublishedRow {
    double x;
    double numerical;
    double approx1;
    double approx2;
};

// The x = 4.0 numerical entry (0.1840) does not fit between its neighbours
// 0.2430 and 0.0789; the integrated value there is about 0.1084.
inline constexpr std::array<PublishedRow, 9> kPublishedTable{{
    {0.0, 1.0000, 1.0000, 1.0000},
    {0.5, 0.6070, 0.5571, 0.6102},
    {1.0, 0.4240, 0.3853, 0.3964},
    {2.0, 0.2430, 0.2363, 0.1817},
    {4.0, 0.1840, 0.1283, 0.0578},
    {5.0, 0.0789, 0.1020, 0.0378},
    {10.0, 0.0243, 0.0420, 0.0093},
    {25.0, 0.0035, 0.0067, 0.0013},
    {40.0, 0.0011, 0.0020, 0.0005},
}};

/// Rows whose numerical entry differs from a computed solution by more than
/// this are flagged.
inline constexpr double kTableFlagThreshold = 0.002;

struct TableRow {
    double x = 0.0;
    double computed = 0.0;
    double approx1 = 0.0;
    double approx2 = 0.0;
    double published = 0.0;
    bool flagged = false;
};

/// One row per published abscissa, evaluating `numeric` and both canonical
/// approximants.
std::vector<TableRow> build_table(const EvaluableSolution& numeric);

} // namespace tf

#endif
