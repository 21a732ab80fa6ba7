#include "tf/ode.hpp"

#include "tf/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace tf {

namespace {

// Past y = 0 the right-hand side is continued by zero so the step that
// brackets a crossing can finish; the crossing is then located on that step.
double rhs_continued(double x, double y) { return y > 0.0 ? tf_rhs(x, y) : 0.0; }

struct State {
    double y;
    double dy;
};

State rk4_step(double x, State s, double h)
{
    const double half = 0.5 * h;
    const double k1y = s.dy;
    const double k1d = rhs_continued(x, s.y);
    const double k2y = s.dy + half * k1d;
    const double k2d = rhs_continued(x + half, s.y + half * k1y);
    const double k3y = s.dy + half * k2d;
    const double k3d = rhs_continued(x + half, s.y + half * k2y);
    const double k4y = s.dy + h * k3d;
    const double k4d = rhs_continued(x + h, s.y + h * k3y);
    return {s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            s.dy + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)};
}

TfSeries seed_series(double b, HalfPower order)
{
    if (order.twice == 9) return reference_series(b);
    return iterate_series(b, order).series;
}

struct RunResult {
    std::vector<SolutionSample> samples;
    Classification status;
    TfSeries seed;
};

RunResult run(double slope, const IntegratorConfig& cfg, bool record)
{
    if (!(slope < 0.0)) throw PreconditionError("integrate: slope must be negative");
    cfg.validate();

    RunResult out{{}, BoundedSoFar{}, seed_series(-slope, cfg.series_order)};
    double x = cfg.x_start;
    State s{eval_series(out.seed, x), eval_series_derivative(out.seed, x)};
    if (record) out.samples.reserve(static_cast<std::size_t>((cfg.x_max - cfg.x_start) / cfg.h) + 2);
    out.samples.push_back({x, s.y, s.dy});

    // Step count is fixed up front so that x lands on x_start + n*h exactly.
    const auto steps = static_cast<long>(std::ceil((cfg.x_max - cfg.x_start) / cfg.h - 1e-9));
    for (long n = 1; n <= steps; ++n) {
        const double x_next = std::min(cfg.x_start + static_cast<double>(n) * cfg.h, cfg.x_max);
        const State next = rk4_step(x, s, x_next - x);

        if (next.y <= 0.0) {
            out.status = Crossing{x + (x_next - x) * s.y / (s.y - next.y)};
            return out;
        }
        if (record || next.dy >= 0.0) out.samples.push_back({x_next, next.y, next.dy});
        else out.samples.back() = {x_next, next.y, next.dy};
        if (next.dy >= 0.0 || !std::isfinite(next.y)) {
            out.status = Unbounded{x_next};
            return out;
        }
        x = x_next;
        s = next;
    }
    return out;
}

} // namespace

void IntegratorConfig::validate() const
{
    if (!(x_start > 0.0)) throw PreconditionError("IntegratorConfig: x_start must be positive");
    if (!(x_max > x_start)) throw PreconditionError("IntegratorConfig: x_max must exceed x_start");
    if (!(h > 0.0) || !(h < x_start)) throw PreconditionError("IntegratorConfig: need 0 < h < x_start");
    if (series_order.twice < 2) throw PreconditionError("IntegratorConfig: series order must be at least 1");
}

std::string describe(const Classification& c)
{
    struct Visitor {
        std::string operator()(const Crossing& v) const { return "crossing at x = " + format_shortest(v.x_c); }
        std::string operator()(const Unbounded& v) const
        {
            return "unbounded, turning point x = " + format_shortest(v.x_turn);
        }
        std::string operator()(const BoundedSoFar&) const { return "bounded"; }
    };
    return std::visit(Visitor{}, c);
}

SolutionTrajectory::SolutionTrajectory(std::vector<SolutionSample> samples, double slope, Classification status,
                                       TfSeries seed)
    : samples_(std::move(samples)), slope_(slope), status_(status), seed_(std::move(seed))
{
    if (samples_.empty()) throw PreconditionError("SolutionTrajectory: no samples");
}

SolutionSample SolutionTrajectory::at(double x) const
{
    if (!(x >= 0.0)) throw DomainError("SolutionTrajectory: x must be nonnegative");
    if (x < x_begin()) return {x, eval_series(seed_, x), eval_series_derivative(seed_, x)};
    if (x > x_end()) throw DomainError("SolutionTrajectory: x beyond the last sample");

    auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                               [](double v, const SolutionSample& s) { return v < s.x; });
    if (it == samples_.end()) return samples_.back();
    const SolutionSample& a = *(it - 1);
    const SolutionSample& b = *it;

    const double h = b.x - a.x;
    const double t = (x - a.x) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const double y = h00 * a.y + h10 * h * a.dy + h01 * b.y + h11 * h * b.dy;

    const double d00 = 6.0 * t2 - 6.0 * t;
    const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double d01 = -6.0 * t2 + 6.0 * t;
    const double d11 = 3.0 * t2 - 2.0 * t;
    const double dy = (d00 * a.y + d01 * b.y) / h + d10 * a.dy + d11 * b.dy;
    return {x, y, dy};
}

SolutionTrajectory integrate(double slope, const IntegratorConfig& cfg)
{
    auto r = run(slope, cfg, true);
    return SolutionTrajectory(std::move(r.samples), slope, r.status, std::move(r.seed));
}

Classification classify(double slope, const IntegratorConfig& cfg) { return run(slope, cfg, false).status; }

ShootResult shoot(double bracket_lo, double bracket_hi, double tol, const IntegratorConfig& cfg)
{
    if (!(tol > 0.0)) throw PreconditionError("shoot: tol must be positive");
    if (!(bracket_lo < bracket_hi)) throw BracketError("shoot: need bracket_lo < bracket_hi");

    const auto lo_status = classify(bracket_lo, cfg);
    if (!is_crossing(lo_status))
        throw BracketError("shoot: lower endpoint " + format_shortest(bracket_lo) + " must cross zero, got " +
                           describe(lo_status));
    const auto hi_status = classify(bracket_hi, cfg);
    if (!is_unbounded(hi_status))
        throw BracketError("shoot: upper endpoint " + format_shortest(bracket_hi) + " must be unbounded, got " +
                           describe(hi_status));

    ShootResult r{0.0, 0, bracket_lo, bracket_hi};
    while (r.hi - r.lo > tol) {
        const double mid = 0.5 * (r.lo + r.hi);
        if (mid <= r.lo || mid >= r.hi) break;
        ++r.iterations;
        const auto status = classify(mid, cfg);
        if (is_crossing(status)) {
            r.lo = mid;
        } else if (is_unbounded(status)) {
            r.hi = mid;
        } else {
            r.lo = r.hi = mid;
            break;
        }
    }
    r.b = -0.5 * (r.lo + r.hi);
    return r;
}

TrajectorySolution::TrajectorySolution(SolutionTrajectory trajectory, TailModel tail)
    : trajectory_(std::make_shared<const SolutionTrajectory>(std::move(trajectory))), tail_(tail)
{
    const auto& last = trajectory_->samples().back();
    const double anchored = last.x * last.x * last.x * last.y;
    if (tail_ == TailModel::asymptotic) {
        if (!(anchored > 0.0 && anchored < kSingularCoefficient)) {
            tail_ = TailModel::power_law;
        } else {
            const double q = std::pow(kSingularCoefficient / anchored, kTailExponent / 3.0) - 1.0;
            tail_scale_ = last.x * std::pow(q, 1.0 / kTailExponent);
        }
    }
}

double TrajectorySolution::value(double x) const
{
    const auto& t = *trajectory_;
    if (x <= t.x_end()) return t.at(x).y;
    if (tail_ == TailModel::power_law) {
        const auto& last = t.samples().back();
        const double r = last.x / x;
        return last.y * r * r * r;
    }
    const double q = std::pow(tail_scale_ / x, kTailExponent);
    return singular_solution(x) * std::pow(1.0 + q, -3.0 / kTailExponent);
}

double TrajectorySolution::derivative(double x) const
{
    const auto& t = *trajectory_;
    if (x <= t.x_end()) return t.at(x).dy;
    if (tail_ == TailModel::power_law) return -3.0 * value(x) / x;
    const double q = std::pow(tail_scale_ / x, kTailExponent);
    return -3.0 * value(x) / (x * (1.0 + q));
}

TrajectorySolution bounded_solution(const IntegratorConfig& cfg, TailModel tail)
{
    return TrajectorySolution(integrate(-kCanonicalB, cfg), tail);
}

void write_trajectory_csv(std::ostream& os, const SolutionTrajectory& trajectory)
{
    os << "x,y,dy\n";
    for (const auto& s : trajectory.samples())
        os << format_shortest(s.x) << ',' << format_shortest(s.y) << ',' << format_shortest(s.dy) << '\n';
}

} // namespace tf
