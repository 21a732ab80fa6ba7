#include "tf/table.hpp"

#include "tf/approximants.hpp"

#include <cmath>

namespace tf {

std::vector<TableRow> build_table(const EvaluableSolution& numeric)
{
    const auto first = RationalApproximant::first();
    const auto second = RationalApproximant::second();

    std::vector<TableRow> rows;
    rows.reserve(kPublishedTable.size());
    for (const auto& p : kPublishedTable) {
        TableRow r;
        r.x = p.x;
        r.computed = numeric.value(p.x);
        r.approx1 = first.value(p.x);
        r.approx2 = second.value(p.x);
        r.published = p.numerical;
        r.flagged = std::abs(r.computed - p.numerical) > kTableFlagThreshold;
        rows.push_back(r);
    }
    return rows;
}

} // namespace tf
