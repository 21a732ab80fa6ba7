// core.hpp
//
// Shared vocabulary for the Thomas-Fermi solvers: the slope constant, the
// right-hand side of y'' = y^{3/2}/sqrt(x), and the parameter-free singular
// solution 144/x^3.

#ifndef TF_CORE_HPP
#define TF_CORE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

/// Magnitude of the initial slope of the bounded solution, y'(0) = -B.
inline constexpr double kCanonicalB = 1.588071022611375;

/// Coefficient of the singular solution y_s = 144/x^3.
inline constexpr double kSingularCoefficient = 144.0;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The pair (B, C) shared by the closed-form approximants.
class TfConstants {
public:
    /// C = B^2/2.
    explicit TfConstants(double b = kCanonicalB) : b_(checked(b)), c_(0.5 * b * b) {}

    TfConstants(double b, double c) : b_(checked(b)), c_(c)
    {
        if (!(c > 0.0)) throw PreconditionError("TfConstants: C must be positive");
    }

    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }

private:
    static double checked(double b)
    {
        if (!(b > 0.0) || !std::isfinite(b)) throw PreconditionError("TfConstants: B must be positive");
        return b;
    }

    double b_;
    double c_;
};

struct SolutionSample {
    double x = 0.0;
    double y = 0.0;
    double dy = 0.0;
};

/// Anything that can report y(x) and y'(x) for x >= 0. Implementations must
/// be deterministic and safe to call concurrently.
class EvaluableSolution {
public:
    virtual ~EvaluableSolution() = default;

    virtual double value(double x) const = 0;
    virtual double derivative(double x) const = 0;

    /// Abscissae where the representation switches form and y' may jump.
    /// Quadrature splits its intervals there; the value at a breakpoint
    /// belongs to the piece on its left.
    virtual std::vector<double> breakpoints() const { return {}; }
};

/// 144/x^3.
inline double singular_solution(double x)
{
    if (!(x > 0.0)) throw DomainError("singular_solution: x must be positive");
    return kSingularCoefficient / (x * x * x);
}

/// y^{3/2}/sqrt(x). Negative y is rejected; trajectories treat a sign change
/// as a stopping event before ever getting here.
inline double tf_rhs(double x, double y)
{
    if (!(x > 0.0)) throw DomainError("tf_rhs: x must be positive");
    if (y < 0.0) throw DomainError("tf_rhs: y must be nonnegative");
    return y * std::sqrt(y / x);
}

} // namespace tf

#endif
