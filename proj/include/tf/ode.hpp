// ode.hpp
//
// Forward integration of y'' = y^{3/2}/sqrt(x) from y(0) = 1, y'(0) = slope,
// classification of the resulting trajectory (crosses zero, turns upward, or
// stays bounded up to the horizon) and bisection shooting on the slope.
//
// RK4 cannot start at x = 0 because y'' ~ x^{-1/2} there. The first stretch
// [0, x_start] is served by the small-x series with B replaced by -slope, and
// classical fixed-step RK4 takes over from x_start.

#ifndef TF_ODE_HPP
#define TF_ODE_HPP

#include "tf/core.hpp"
#include "tf/series.hpp"

#include <cmath>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace tf {

struct IntegratorConfig {
    double x_start = 0.05;
    double h = 1e-3;
    double x_max = 60.0;
    HalfPower series_order{16};

    /// Throws PreconditionError unless 0 < x_start < x_max and 0 < h < x_start.
    void validate() const;
};

struct Crossing {
    double x_c = 0.0;
};

struct Unbounded {
    double x_turn = 0.0;
};

struct BoundedSoFar {};

using Classification = std::variant<Crossing, Unbounded, BoundedSoFar>;

/// "crossing at x = ...", "unbounded, turning point x = ...", "bounded".
std::string describe(const Classification& c);

inline bool is_crossing(const Classification& c) { return std::holds_alternative<Crossing>(c); }
inline bool is_unbounded(const Classification& c) { return std::holds_alternative<Unbounded>(c); }
inline bool is_bounded(const Classification& c) { return std::holds_alternative<BoundedSoFar>(c); }

/// RK4 samples from x_start onward plus the seed series that covers
/// [0, x_start). Immutable once built.
class SolutionTrajectory {
public:
    SolutionTrajectory(std::vector<SolutionSample> samples, double slope, Classification status, TfSeries seed);

    const std::vector<SolutionSample>& samples() const noexcept { return samples_; }
    double slope() const noexcept { return slope_; }
    const Classification& status() const noexcept { return status_; }
    const TfSeries& seed() const noexcept { return seed_; }

    double x_begin() const noexcept { return samples_.front().x; }
    double x_end() const noexcept { return samples_.back().x; }

    /// Dense output on [0, x_end]: the seed series below x_start, cubic
    /// Hermite interpolation on (y, y') between samples.
    SolutionSample at(double x) const;

private:
    std::vector<SolutionSample> samples_;
    double slope_;
    Classification status_;
    TfSeries seed_;
};

SolutionTrajectory integrate(double slope, const IntegratorConfig& cfg = {});

Classification classify(double slope, const IntegratorConfig& cfg = {});

struct ShootResult {
    double b = 0.0;
    int iterations = 0;
    double lo = 0.0;
    double hi = 0.0;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection on the slope. `bracket_lo` must cross zero and `bracket_hi` must
/// turn upward; both stay that way at every step. Stops when the bracket is no
/// wider than `tol` or a midpoint survives to the horizon. Returns B = -midpoint.
ShootResult shoot(double bracket_lo, double bracket_hi, double tol, const IntegratorConfig& cfg = {});

/// How a trajectory is continued past its last sample x_a.
enum class TailModel {
    /// y = x_a^3 y(x_a) / x^3.
    power_law,
    /// y = (144/x^3) (1 + (s/x)^lambda)^(-3/lambda), lambda = (sqrt(73) - 7)/2,
    /// with s fixed by continuity at x_a. This keeps the leading x^{-lambda}
    /// correction to x^3 y -> 144. Falls back to power_law when
    /// x_a^3 y(x_a) >= 144.
    asymptotic,
};

/// Exponent of the leading correction to x^3 y -> 144.
inline const double kTailExponent = 0.5 * (std::sqrt(73.0) - 7.0);

/// Trajectory wrapped as an EvaluableSolution, continued past the last sample
/// by a tail model that is continuous there.
class TrajectorySolution final : public EvaluableSolution {
public:
    explicit TrajectorySolution(SolutionTrajectory trajectory, TailModel tail = TailModel::asymptotic);

    double value(double x) const override;
    double derivative(double x) const override;
    std::vector<double> breakpoints() const override { return {trajectory_->x_end()}; }

    const SolutionTrajectory& trajectory() const noexcept { return *trajectory_; }
    TailModel tail_model() const noexcept { return tail_; }

private:
    std::shared_ptr<const SolutionTrajectory> trajectory_;
    TailModel tail_;
    double tail_scale_ = 0.0; // s, for the asymptotic tail
};

/// The bounded solution at the canonical B.
TrajectorySolution bounded_solution(const IntegratorConfig& cfg = {}, TailModel tail = TailModel::asymptotic);

/// Header `x,y,dy`, LF line endings, shortest round-trip decimals.
void write_trajectory_csv(std::ostream& os, const SolutionTrajectory& trajectory);

} // namespace tf

#endif
