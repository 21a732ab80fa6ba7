// approximants.hpp
//
// Closed-form rational approximations to the bounded Thomas-Fermi solution:
//
//   first:   y = 1 / (1 + B x + x^3/144)
//   second:  y = 1 / (1 + B x - (4/3) x^{3/2} + C x^2 + x^3/144),  C = B^2/2
//
// plus a checker for the five shared properties (initial data, bounds and
// monotonicity, x^3 y -> 144, rational structure, small-x form) and the point
// where the two curves cross.

#ifndef TF_APPROXIMANTS_HPP
#define TF_APPROXIMANTS_HPP

#include "tf/core.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace tf {

enum class AnsatzKind {
    rational_in_x,      // first ansatz
    rational_in_sqrt_x, // second ansatz
};

std::string to_string(AnsatzKind kind);

class RationalApproximant final : public EvaluableSolution {
public:
    /// Throws PreconditionError unless B > 0, C >= 0 and the denominator is
    /// positive on [0, inf).
    RationalApproximant(AnsatzKind kind, double b, double c);

    /// Same parameters without the positivity check, for probing parameter
    /// choices that break the approximant.
    static RationalApproximant unchecked(AnsatzKind kind, double b, double c);

    static RationalApproximant first(double b = kCanonicalB);
    static RationalApproximant second(double b = kCanonicalB);
    static RationalApproximant second(const TfConstants& k);

    AnsatzKind kind() const noexcept { return kind_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }

    double denominator(double x) const;
    double denominator_derivative(double x) const;

    double value(double x) const override;

    /// -d'(x)/d(x)^2; at x = 0 this is the one-sided limit -B.
    double derivative(double x) const override;

    /// Sufficient test for d' > 0 on [0, inf): for the second ansatz, the
    /// minimum of B - 2u + 2C u^2 (u = sqrt(x)) is B - 1/(2C), and x^2/48 only
    /// adds to it.
    bool monotone_denominator() const;

private:
    struct NoCheck {};
    RationalApproximant(AnsatzKind kind, double b, double c, NoCheck);

    AnsatzKind kind_;
    double b_;
    double c_;
};

inline double eval_approx(const RationalApproximant& a, double x) { return a.value(x); }
inline double eval_approx_derivative(const RationalApproximant& a, double x) { return a.derivative(x); }

struct DcTolerances {
    double initial = 1e-12;
    double bounds = 0.0;
    double asymptote = 0.5;
    double structure = 0.0;
    double small_x = 1e-2;
};

struct DcProperty {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct DcReport {
    std::array<DcProperty, 5> properties;

    bool all_pass() const noexcept
    {
        for (const auto& p : properties)
            if (!p.pass) return false;
        return true;
    }
};

/// Evaluates the five properties. Failures are recorded in the report, never
/// thrown.
DcReport dc_check(const RationalApproximant& a, const DcTolerances& tol = {});

struct CrossingResult {
    double x0 = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

class CrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root of y1(x) - y2(x), negative to the left and positive to the right.
/// The search bracket starts at (0.1, 2) and widens inside (1e-3, 1e3).
CrossingResult find_crossing(double b = kCanonicalB, double c = 0.5 * kCanonicalB * kCanonicalB);

} // namespace tf

#endif
