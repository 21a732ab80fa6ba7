// series.hpp
//
// Generalized power series in steps of x^{1/2}. Exponents are held as exact
// doubled integers so that integer and half-integer powers merge exactly.
// The coefficient type is a template parameter: `double` for numerics, and
// `BPolynomial` (exact rational polynomials in the slope constant B) for
// symbolic output.

#ifndef TF_SERIES_HPP
#define TF_SERIES_HPP

#include "tf/core.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>

namespace tf {

using Rational = boost::rational<std::int64_t>;

/// Exponent p = twice/2, stored as the exact integer `twice`.
struct HalfPower {
    int twice = 0;

    constexpr HalfPower() = default;
    constexpr explicit HalfPower(int twice_power) : twice(twice_power) {}

    constexpr double value() const noexcept { return 0.5 * twice; }

    /// Accepts "9/2", "4.5", "4" and the like. Throws PreconditionError on
    /// anything that is not a nonnegative multiple of one half.
    static HalfPower parse(std::string_view text);

    std::string to_string() const;

    friend constexpr auto operator<=>(HalfPower, HalfPower) = default;
};

/// Truncation marker for series that are exact (finite sums, not expansions).
inline constexpr int kExactTruncation = std::numeric_limits<int>::max() / 4;

/// Polynomial in B with rational coefficients: sum_k r_k B^k.
class BPolynomial {
public:
    BPolynomial() = default;
    BPolynomial(Rational r) { add_term(0, r); }                       // NOLINT
    BPolynomial(std::int64_t n) : BPolynomial(Rational(n)) {}         // NOLINT

    static BPolynomial b_power(int k, Rational r = 1)
    {
        BPolynomial p;
        p.add_term(k, r);
        return p;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<int, Rational>& terms() const noexcept { return terms_; }

    double evaluate(double b) const;
    std::string to_string() const;

    BPolynomial& operator+=(const BPolynomial& o)
    {
        for (const auto& [k, r] : o.terms_) add_term(k, r);
        return *this;
    }

    friend BPolynomial operator+(BPolynomial a, const BPolynomial& b) { return a += b; }
    friend BPolynomial operator-(const BPolynomial& a) { return a * BPolynomial(Rational(-1)); }

    friend BPolynomial operator*(const BPolynomial& a, const BPolynomial& b)
    {
        BPolynomial out;
        for (const auto& [ka, ra] : a.terms_)
            for (const auto& [kb, rb] : b.terms_) out.add_term(ka + kb, ra * rb);
        return out;
    }

    friend bool operator==(const BPolynomial&, const BPolynomial&) = default;

private:
    void add_term(int k, Rational r)
    {
        auto& slot = terms_[k];
        slot += r;
        if (slot.numerator() == 0) terms_.erase(k);
    }

    std::map<int, Rational> terms_;
};

template <class Coef>
struct CoefficientTraits;

template <>
struct CoefficientTraits<double> {
    static double from_rational(Rational r) { return boost::rational_cast<double>(r); }
    static bool is_zero(double c) { return c == 0.0; }
};

template <>
struct CoefficientTraits<BPolynomial> {
    static BPolynomial from_rational(Rational r) { return BPolynomial(r); }
    static bool is_zero(const BPolynomial& c) { return c.is_zero(); }
};

/// Finite sum of c * x^{twice/2}, valid modulo o(x^{truncation/2}).
/// Zero coefficients are never stored and no stored exponent exceeds the
/// truncation order.
template <class Coef>
class BasicSeries {
public:
    using Traits = CoefficientTraits<Coef>;
    using TermMap = std::map<int, Coef>;

    explicit BasicSeries(int truncation = kExactTruncation) : truncation_(truncation) {}

    static BasicSeries constant(const Coef& c, int truncation = kExactTruncation)
    {
        BasicSeries s(truncation);
        s.add(0, c);
        return s;
    }

    static BasicSeries monomial(int twice, const Coef& c, int truncation = kExactTruncation)
    {
        BasicSeries s(truncation);
        s.add(twice, c);
        return s;
    }

    const TermMap& terms() const noexcept { return terms_; }
    int truncation() const noexcept { return truncation_; }
    bool is_exact() const noexcept { return truncation_ >= kExactTruncation; }
    bool empty() const noexcept { return terms_.empty(); }

    Coef coefficient(int twice) const
    {
        auto it = terms_.find(twice);
        return it == terms_.end() ? Coef{} : it->second;
    }

    /// Accumulates c into the x^{twice/2} slot; terms beyond the truncation
    /// order are dropped.
    BasicSeries& add(int twice, const Coef& c)
    {
        if (twice > truncation_ || Traits::is_zero(c)) return *this;
        auto [it, inserted] = terms_.try_emplace(twice, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
        return *this;
    }

    BasicSeries truncated(int order) const
    {
        BasicSeries out(std::min(order, truncation_));
        for (const auto& [t, c] : terms_) out.add(t, c);
        return out;
    }

    BasicSeries scaled(const Coef& k) const
    {
        BasicSeries out(truncation_);
        for (const auto& [t, c] : terms_) out.add(t, c * k);
        return out;
    }

    friend bool operator==(const BasicSeries&, const BasicSeries&) = default;

private:
    TermMap terms_;
    int truncation_;
};

using TfSeries = BasicSeries<double>;
using SymbolicSeries = BasicSeries<BPolynomial>;

namespace detail {

inline int shifted_truncation(int truncation, int shift)
{
    return truncation >= kExactTruncation ? kExactTruncation : truncation + shift;
}

} // namespace detail

template <class Coef>
BasicSeries<Coef> series_add(const BasicSeries<Coef>& a, const BasicSeries<Coef>& b)
{
    BasicSeries<Coef> out(std::min(a.truncation(), b.truncation()));
    for (const auto& [t, c] : a.terms()) out.add(t, c);
    for (const auto& [t, c] : b.terms()) out.add(t, c);
    return out;
}

template <class Coef>
BasicSeries<Coef> series_multiply(const BasicSeries<Coef>& a, const BasicSeries<Coef>& b)
{
    BasicSeries<Coef> out(std::min(a.truncation(), b.truncation()));
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) out.add(ta + tb, ca * cb);
    return out;
}

/// (1 + w)^{3/2} by the generalized binomial series, every product truncated
/// at the input's order. The constant term of `s` must be exactly one.
template <class Coef>
BasicSeries<Coef> series_pow_three_halves(const BasicSeries<Coef>& s)
{
    using Traits = CoefficientTraits<Coef>;
    const Coef one = Traits::from_rational(1);
    if (!(s.coefficient(0) == one))
        throw PreconditionError("series_pow_three_halves: constant term must be 1");

    BasicSeries<Coef> w(s.truncation());
    for (const auto& [t, c] : s.terms())
        if (t != 0) w.add(t, c);

    BasicSeries<Coef> result = BasicSeries<Coef>::constant(one, s.truncation());
    if (w.empty()) return result;

    const int lowest = w.terms().begin()->first;
    if (lowest <= 0) throw PreconditionError("series_pow_three_halves: w must vanish at x = 0");
    if (s.is_exact()) throw PreconditionError("series_pow_three_halves: need a finite truncation order");

    Rational binom = 1;
    BasicSeries<Coef> w_power = BasicSeries<Coef>::constant(one, s.truncation());
    for (int k = 1; static_cast<long>(k) * lowest <= s.truncation(); ++k) {
        binom *= (Rational(3, 2) - (k - 1)) / k;
        w_power = series_multiply(w_power, w);
        result = series_add(result, w_power.scaled(Traits::from_rational(binom)));
    }
    return result;
}

/// Shifts every exponent down by one half. An exponent of -1/2 is the lowest
/// the result may hold.
template <class Coef>
BasicSeries<Coef> series_divide_sqrt_x(const BasicSeries<Coef>& s)
{
    BasicSeries<Coef> out(detail::shifted_truncation(s.truncation(), -1));
    for (const auto& [t, c] : s.terms()) {
        if (t - 1 < -1) throw DomainError("series_divide_sqrt_x: exponent below -1/2");
        out.add(t - 1, c);
    }
    return out;
}

/// c x^p -> c x^{p+2}/((p+1)(p+2)), then adds y0 + dy0 x.
template <class Coef>
BasicSeries<Coef> series_integrate_twice(const BasicSeries<Coef>& s, const Coef& y0, const Coef& dy0)
{
    using Traits = CoefficientTraits<Coef>;
    BasicSeries<Coef> out(detail::shifted_truncation(s.truncation(), 4));
    for (const auto& [t, c] : s.terms()) {
        if (t < -1) throw DomainError("series_integrate_twice: exponent below -1/2");
        // (p+1)(p+2) = (t+2)(t+4)/4
        out.add(t + 4, c * Traits::from_rational(Rational(4, static_cast<std::int64_t>(t + 2) * (t + 4))));
    }
    out.add(0, y0);
    out.add(2, dy0);
    return out;
}

/// One step y_{n+1}'' = y_n^{3/2}/sqrt(x), y_{n+1}(0) = 1, y_{n+1}'(0) = -B,
/// with y_n first truncated to `order`.
template <class Coef>
BasicSeries<Coef> iterate_tf(const BasicSeries<Coef>& series_n, const Coef& b, HalfPower order)
{
    using Traits = CoefficientTraits<Coef>;
    const auto rhs = series_divide_sqrt_x(series_pow_three_halves(series_n.truncated(order.twice)));
    return series_integrate_twice(rhs, Traits::from_rational(1), b * Traits::from_rational(-1));
}

template <class Coef>
struct SeriesIteration {
    BasicSeries<Coef> series;
    int iterations = 0;
    bool converged = false;
};

/// Runs the iteration from y_0 = 1, truncating every iterate at `order`.
/// With `max_iterations` <= 0 it stops as soon as two successive iterates are
/// identical; otherwise it runs exactly that many steps (and still reports
/// whether the last step changed anything).
template <class Coef>
SeriesIteration<Coef> iterate_series(const Coef& b, HalfPower order, int max_iterations = 0)
{
    using Traits = CoefficientTraits<Coef>;
    constexpr int kCap = 64;
    const bool until_fixed = max_iterations <= 0;
    const int limit = until_fixed ? kCap : max_iterations;

    SeriesIteration<Coef> out{BasicSeries<Coef>::constant(Traits::from_rational(1), order.twice), 0, false};
    for (int n = 0; n < limit; ++n) {
        auto next = iterate_tf(out.series, b, order).truncated(order.twice);
        out.converged = (next == out.series);
        out.series = std::move(next);
        out.iterations = n + 1;
        if (until_fixed && out.converged) break;
    }
    return out;
}

/// The explicit small-x expansion of the bounded solution through x^{9/2}.
TfSeries reference_series(double b);

/// The same expansion with coefficients kept symbolic in B.
SymbolicSeries reference_series_symbolic();

/// Numeric image of a symbolic series at a given B.
TfSeries evaluate_coefficients(const SymbolicSeries& s, double b);

double eval_series(const TfSeries& s, double x);

/// At x = 0 this returns the finite one-sided limit, or throws DomainError
/// when an x^{1/2} (or lower) term makes the limit infinite.
double eval_series_derivative(const TfSeries& s, double x);

/// Second derivative term by term (used in residual checks).
TfSeries series_second_derivative(const TfSeries& s);

std::string format_term(int twice);

} // namespace tf

#endif
