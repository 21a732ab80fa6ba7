// json.hpp
//
// JSON documents for series, property reports and sum-rule reports.

#ifndef TF_JSON_HPP
#define TF_JSON_HPP

#include "tf/approximants.hpp"
#include "tf/quadrature.hpp"
#include "tf/series.hpp"

#include <json.hpp>

namespace tf {

/// {"terms": [{"twice_power": n, "coefficient": c}, ...],
///  "truncation_twice_power": N}   (null when the series is exact)
nlohmann::json series_to_json(const TfSeries& s);
TfSeries series_from_json(const nlohmann::json& j);

/// [{"property", "residual", "tolerance", "pass"}, ...]
nlohmann::json dc_report_to_json(const DcReport& r);

/// Fields rule_norm, rule_balance_lhs, rule_balance_rhs, rule_energy,
/// rule_slope, b_input, fractional_error_pct; failed rules are null.
nlohmann::json sum_rule_report_to_json(const SumRuleReport& r);

} // namespace tf

#endif
