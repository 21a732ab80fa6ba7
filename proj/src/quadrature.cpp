#include "tf/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

namespace tf {

namespace {

constexpr int kMinDepth = 5;

// Stand-in for u = 0 in the head substitution; u^2 stays a normal double.
constexpr double kTinyU = 1e-150;

struct SimpsonState {
    const Integrand& f;
    int max_depth;
    bool depth_exceeded = false;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole, double eps,
                    int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;

    const bool converged = std::abs(delta) <= 15.0 * eps || std::abs(delta) <= 8.0 * DBL_EPSILON * (std::abs(left) + std::abs(right));
    if (depth >= kMinDepth && converged) return left + right + delta / 15.0;
    if (depth >= st.max_depth || lm <= a || rm >= b) {
        st.depth_exceeded = true;
        return left + right + delta / 15.0;
    }
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

// y^{3/2} for the sum-rule integrands; bounded-branch solutions never go
// negative, so a negative value means the representation is broken.
double nonnegative(double y)
{
    if (y < 0.0) throw DomainError("sum rule: solution value is negative");
    return y;
}

double pow_three_halves(double y) { return nonnegative(y) * std::sqrt(y); }

} // namespace

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw PreconditionError("QuadratureConfig: need 0 < rel_tol < 1");
    if (!(split > 0.0)) throw PreconditionError("QuadratureConfig: split must be positive");
    if (max_depth < kMinDepth) throw PreconditionError("QuadratureConfig: max_depth too small");
}

double adaptive_simpson(const Integrand& f, double a, double b, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (a == b) return 0.0;

    // Composite estimate on 64 panels sets the absolute tolerance scale.
    constexpr int kPanels = 64;
    double coarse = 0.0;
    const double w = (b - a) / kPanels;
    for (int i = 0; i < kPanels; ++i) {
        const double x0 = a + i * w;
        coarse += w / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * w) + f(x0 + w));
    }
    const double eps = std::max(cfg.rel_tol * std::abs(coarse), DBL_MIN);

    SimpsonState st{f, cfg.max_depth};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double result = simpson_step(st, a, b, fa, fm, fb, whole, eps, 0);
    if (st.depth_exceeded) throw QuadratureError("adaptive_simpson: maximum recursion depth exceeded", result);
    return result;
}

double integrate_head(const Integrand& f, double b, const QuadratureConfig& cfg)
{
    if (!(b > 0.0)) throw PreconditionError("integrate_head: upper limit must be positive");
    const Integrand g = [&f](double u) {
        const double v = std::max(u, kTinyU);
        return 2.0 * v * f(v * v);
    };
    return adaptive_simpson(g, 0.0, std::sqrt(b), cfg);
}

double integrate_tail(const Integrand& f, double a, const QuadratureConfig& cfg)
{
    const Integrand g = [&f, a](double t) {
        if (t >= 1.0) return 0.0;
        const double s = 1.0 - t;
        const double x = a + t / s;
        if (!std::isfinite(x)) return 0.0;
        return f(x) / (s * s);
    };
    return adaptive_simpson(g, 0.0, 1.0, cfg);
}

double integrate_improper(const Integrand& f, const QuadratureConfig& cfg, std::span<const double> breakpoints)
{
    cfg.validate();
    std::vector<double> cuts{cfg.split};
    for (double b : breakpoints)
        if (b > 0.0 && std::isfinite(b)) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    std::optional<std::string> failure;
    auto piece = [&](auto&& fn) {
        try {
            total += fn();
        } catch (const QuadratureError& e) {
            total += e.estimate();
            failure = e.what();
        }
    };
    // A breakpoint belongs to the piece on its left, so every later piece
    // starts one ulp to the right of its cut.
    auto right_of = [](double c) { return std::nextafter(c, INFINITY); };
    piece([&] { return integrate_head(f, cuts.front(), cfg); });
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        piece([&] { return adaptive_simpson(f, right_of(cuts[i]), cuts[i + 1], cfg); });
    piece([&] { return integrate_tail(f, right_of(cuts.back()), cfg); });
    if (failure) throw QuadratureError(*failure, total);
    return total;
}

double sum_rule_norm(const EvaluableSolution& sol, const QuadratureConfig& cfg)
{
    return integrate_improper([&sol](double x) { return std::sqrt(x) * pow_three_halves(sol.value(x)); }, cfg, sol.breakpoints());
}

std::pair<double, double> sum_rule_balance(const EvaluableSolution& sol, const QuadratureConfig& cfg)
{
    const auto cuts = sol.breakpoints();
    const double lhs = integrate_improper([&sol](double x) { return nonnegative(sol.value(x)); }, cfg, cuts);
    const double rhs = 0.5 * integrate_improper(
                                 [&sol](double x) { return x * std::sqrt(x) * pow_three_halves(sol.value(x)); }, cfg, cuts);
    return {lhs, rhs};
}

double sum_rule_energy(const EvaluableSolution& sol, const QuadratureConfig& cfg)
{
    return integrate_improper(
        [&sol](double x) {
            const double y = sol.value(x);
            const double dy = sol.derivative(x);
            return dy * dy + y * pow_three_halves(y) / std::sqrt(x);
        },
        cfg, sol.breakpoints());
}

double sum_rule_slope(const EvaluableSolution& sol, const QuadratureConfig& cfg)
{
    return integrate_improper([&sol](double x) { return pow_three_halves(sol.value(x)) / std::sqrt(x); }, cfg,
                              sol.breakpoints());
}

SumRuleReport consistency_report(const EvaluableSolution& sol, double b_input, const QuadratureConfig& cfg)
{
    cfg.validate();
    SumRuleReport r;
    r.b_input = b_input;

    auto attempt = [](auto&& fn) -> std::optional<decltype(fn())> {
        try {
            return fn();
        } catch (const QuadratureError&) {
        } catch (const DomainError&) {
        }
        return std::nullopt;
    };

    r.rule_norm = attempt([&] { return sum_rule_norm(sol, cfg); });
    if (auto bal = attempt([&] { return sum_rule_balance(sol, cfg); })) {
        r.rule_balance_lhs = bal->first;
        r.rule_balance_rhs = bal->second;
    }
    r.rule_energy = attempt([&] { return sum_rule_energy(sol, cfg); });
    r.rule_slope = attempt([&] { return sum_rule_slope(sol, cfg); });
    if (r.rule_energy) r.fractional_error_pct = 100.0 * (b_input - *r.rule_energy) / b_input;
    return r;
}

} // namespace tf
