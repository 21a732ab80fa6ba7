// quadrature.hpp
//
// Improper integrals over (0, inf) whose integrands have at worst an x^{-1/2}
// singularity at the origin and decay at least like x^{-2}, and the four
// integral identities of the bounded Thomas-Fermi solution:
//
//   norm      int sqrt(x) y^{3/2}                   = 1
//   balance   int y  =  (1/2) int x^{3/2} y^{3/2}
//   energy    int [ y'^2 + y^{5/2}/sqrt(x) ]        = B
//   slope     int y^{3/2}/sqrt(x)                   = B

#ifndef TF_QUADRATURE_HPP
#define TF_QUADRATURE_HPP

#include "tf/core.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

namespace tf {

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double split = 1.0;
    int max_depth = 50;

    void validate() const;
};

/// Thrown when adaptive refinement hits max_depth somewhere; carries the
/// estimate assembled anyway.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate) : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

using Integrand = std::function<double(double)>;

/// Adaptive Simpson with Richardson correction on [a, b].
double adaptive_simpson(const Integrand& f, double a, double b, const QuadratureConfig& cfg);

/// int_0^b f(x) dx via x = u^2, which removes an x^{-1/2} endpoint singularity.
double integrate_head(const Integrand& f, double b, const QuadratureConfig& cfg);

/// int_a^inf f(x) dx via x = a + t/(1-t). The t = 1 end contributes zero,
/// which requires f to decay faster than x^{-2}.
double integrate_tail(const Integrand& f, double a, const QuadratureConfig& cfg);

/// integrate_head up to cfg.split plus integrate_tail from there. Extra
/// breakpoints split the range further: the head runs to the smallest cut,
/// plain adaptive Simpson covers the gaps, the tail starts at the largest.
double integrate_improper(const Integrand& f, const QuadratureConfig& cfg = {},
                          std::span<const double> breakpoints = {});

double sum_rule_norm(const EvaluableSolution& sol, const QuadratureConfig& cfg = {});
std::pair<double, double> sum_rule_balance(const EvaluableSolution& sol, const QuadratureConfig& cfg = {});
double sum_rule_energy(const EvaluableSolution& sol, const QuadratureConfig& cfg = {});
double sum_rule_slope(const EvaluableSolution& sol, const QuadratureConfig& cfg = {});

struct SumRuleReport {
    std::optional<double> rule_norm;
    std::optional<double> rule_balance_lhs;
    std::optional<double> rule_balance_rhs;
    std::optional<double> rule_energy;
    std::optional<double> rule_slope;
    double b_input = 0.0;
    /// 100 (B_input - rule_energy) / B_input; empty when the energy rule failed.
    std::optional<double> fractional_error_pct;

    bool complete() const noexcept
    {
        return rule_norm && rule_balance_lhs && rule_balance_rhs && rule_energy && rule_slope;
    }
};

/// Runs all four rules. A rule whose quadrature fails is left empty rather
/// than aborting the report.
SumRuleReport consistency_report(const EvaluableSolution& sol, double b_input, const QuadratureConfig& cfg = {});

} // namespace tf

#endif
