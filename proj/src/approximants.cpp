#include "tf/approximants.hpp"

#include <algorithm>
#include <cmath>

namespace tf {

namespace {

constexpr double kInvSingular = 1.0 / kSingularCoefficient;

constexpr double kGridLo = 1e-4;
constexpr double kGridHi = 1e3;
constexpr int kGridPoints = 4001;

constexpr double kFarPoint = 1e6;
constexpr double kSmallPoint = 1e-6;

double log_grid(int i, int n, double lo, double hi)
{
    return lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
}

} // namespace

std::string to_string(AnsatzKind kind)
{
    return kind == AnsatzKind::rational_in_x ? "rational_in_x" : "rational_in_sqrt_x";
}

RationalApproximant::RationalApproximant(AnsatzKind kind, double b, double c, NoCheck) : kind_(kind), b_(b), c_(c) {}

RationalApproximant::RationalApproximant(AnsatzKind kind, double b, double c) : RationalApproximant(kind, b, c, NoCheck{})
{
    if (!(b > 0.0) || !std::isfinite(b)) throw PreconditionError("RationalApproximant: B must be positive");
    if (!(c >= 0.0) || !std::isfinite(c)) throw PreconditionError("RationalApproximant: C must be nonnegative");
    if (monotone_denominator()) return;

    // d(0) = 1; past x = 1e4 the x^3/144 term dominates every other one.
    for (int i = 0; i < 20001; ++i) {
        if (!(denominator(log_grid(i, 20001, 1e-6, 1e4)) > 0.0))
            throw PreconditionError("RationalApproximant: denominator not positive on [0, inf)");
    }
}

RationalApproximant RationalApproximant::unchecked(AnsatzKind kind, double b, double c)
{
    return RationalApproximant(kind, b, c, NoCheck{});
}

RationalApproximant RationalApproximant::first(double b) { return {AnsatzKind::rational_in_x, b, 0.0}; }

RationalApproximant RationalApproximant::second(double b) { return second(TfConstants(b)); }

RationalApproximant RationalApproximant::second(const TfConstants& k)
{
    return {AnsatzKind::rational_in_sqrt_x, k.b(), k.c()};
}

double RationalApproximant::denominator(double x) const
{
    const double cubic = x * x * x * kInvSingular;
    if (kind_ == AnsatzKind::rational_in_x) return 1.0 + b_ * x + cubic;
    return 1.0 + b_ * x - (4.0 / 3.0) * x * std::sqrt(x) + c_ * x * x + cubic;
}

double RationalApproximant::denominator_derivative(double x) const
{
    const double quad = x * x / 48.0;
    if (kind_ == AnsatzKind::rational_in_x) return b_ + quad;
    return b_ - 2.0 * std::sqrt(x) + 2.0 * c_ * x + quad;
}

double RationalApproximant::value(double x) const
{
    if (!(x >= 0.0)) throw DomainError("RationalApproximant: x must be nonnegative");
    return 1.0 / denominator(x);
}

double RationalApproximant::derivative(double x) const
{
    if (!(x >= 0.0)) throw DomainError("RationalApproximant: x must be nonnegative");
    const double d = denominator(x);
    return -denominator_derivative(x) / (d * d);
}

bool RationalApproximant::monotone_denominator() const
{
    if (kind_ == AnsatzKind::rational_in_x) return b_ > 0.0;
    return c_ > 0.0 && b_ - 1.0 / (2.0 * c_) > 0.0;
}

DcReport dc_check(const RationalApproximant& a, const DcTolerances& tol)
{
    DcReport report;
    const double b = a.b();

    {
        const double r = std::max(std::abs(a.value(0.0) - 1.0), std::abs(a.derivative(0.0) + b));
        report.properties[0] = {"initial_conditions", r, tol.initial, r <= tol.initial};
    }

    {
        // 0 < y <= 1 and -B <= y' < 0, including x = 0 itself.
        double residual = 0.0;
        bool strict_ok = true;
        for (int i = -1; i < kGridPoints; ++i) {
            const double x = i < 0 ? 0.0 : log_grid(i, kGridPoints, kGridLo, kGridHi);
            const double y = a.value(x);
            const double dy = a.derivative(x);
            if (!std::isfinite(y) || !std::isfinite(dy)) {
                residual = INFINITY;
                strict_ok = false;
                continue;
            }
            if (!(y > 0.0) || !(dy < 0.0)) strict_ok = false;
            residual = std::max({residual, -y, y - 1.0, -b - dy, dy});
        }
        report.properties[1] = {"bounds_monotonicity", residual, tol.bounds, strict_ok && residual <= tol.bounds};
    }

    {
        const double x = kFarPoint;
        const double r = std::abs(x * x * x * a.value(x) - kSingularCoefficient);
        report.properties[2] = {"asymptotic_limit", r, tol.asymptote, r <= tol.asymptote};
    }

    // Both kinds are rational in x or sqrt(x) by construction.
    report.properties[3] = {"rational_structure", 0.0, tol.structure, true};

    {
        const double x = kSmallPoint;
        const double ratio = (a.value(x) - (1.0 - b * x)) / (x * std::sqrt(x));
        const double target = a.kind() == AnsatzKind::rational_in_x ? 0.0 : 4.0 / 3.0;
        const double r = std::abs(ratio - target);
        report.properties[4] = {"small_x_form", r, tol.small_x, r <= tol.small_x};
    }
    return report;
}

CrossingResult find_crossing(double b, double c)
{
    const auto first = RationalApproximant::unchecked(AnsatzKind::rational_in_x, b, 0.0);
    const auto second = RationalApproximant::unchecked(AnsatzKind::rational_in_sqrt_x, b, c);
    auto g = [&](double x) { return first.value(x) - second.value(x); };

    double lo = 0.1;
    double hi = 2.0;
    while (!(g(lo) < 0.0 && g(hi) > 0.0)) {
        const bool can_lo = lo / 2.0 >= 1e-3;
        const bool can_hi = hi * 2.0 <= 1e3;
        if (!can_lo && !can_hi) throw CrossingError("find_crossing: no sign change in (1e-3, 1e3)");
        if (!(g(lo) < 0.0) && can_lo) lo /= 2.0;
        if (!(g(hi) > 0.0) && can_hi) hi *= 2.0;
        if (!(g(lo) < 0.0) && !can_lo) throw CrossingError("find_crossing: no sign change in (1e-3, 1e3)");
        if (!(g(hi) > 0.0) && !can_hi) throw CrossingError("find_crossing: no sign change in (1e-3, 1e3)");
    }

    const CrossingResult bracket{0.0, lo, hi};
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), bracket.lo, bracket.hi};
}

} // namespace tf
