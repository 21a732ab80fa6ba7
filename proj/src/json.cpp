#include "tf/json.hpp"

#include <cmath>

namespace tf {

namespace {

nlohmann::json optional_number(const std::optional<double>& v)
{
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

} // namespace

nlohmann::json series_to_json(const TfSeries& s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [t, c] : s.terms()) terms.push_back({{"twice_power", t}, {"coefficient", c}});
    nlohmann::json out;
    out["terms"] = std::move(terms);
    out["truncation_twice_power"] = s.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(s.truncation());
    return out;
}

TfSeries series_from_json(const nlohmann::json& j)
{
    const auto& trunc = j.at("truncation_twice_power");
    TfSeries s(trunc.is_null() ? kExactTruncation : trunc.get<int>());
    int previous = std::numeric_limits<int>::min();
    for (const auto& term : j.at("terms")) {
        const int t = term.at("twice_power").get<int>();
        if (t <= previous) throw PreconditionError("series_from_json: exponents must be strictly increasing");
        if (t > s.truncation()) throw PreconditionError("series_from_json: term beyond truncation order");
        previous = t;
        s.add(t, term.at("coefficient").get<double>());
    }
    return s;
}

nlohmann::json dc_report_to_json(const DcReport& r)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : r.properties)
        out.push_back({{"property", p.name},
                       {"residual", finite_or_null(p.residual)},
                       {"tolerance", p.tolerance},
                       {"pass", p.pass}});
    return out;
}

nlohmann::json sum_rule_report_to_json(const SumRuleReport& r)
{
    return {{"rule_norm", optional_number(r.rule_norm)},
            {"rule_balance_lhs", optional_number(r.rule_balance_lhs)},
            {"rule_balance_rhs", optional_number(r.rule_balance_rhs)},
            {"rule_energy", optional_number(r.rule_energy)},
            {"rule_slope", optional_number(r.rule_slope)},
            {"b_input", r.b_input},
            {"fractional_error_pct", optional_number(r.fractional_error_pct)}};
}

} // namespace tf
