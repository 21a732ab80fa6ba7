#include "tf/series.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tf {

namespace {

// x^{twice/2} for x > 0 (or x = 0 with twice >= 0) from one square root and
// integer powers.
double half_power(double x, int twice)
{
    if (x == 0.0) {
        if (twice < 0) throw DomainError("half_power: negative exponent at x = 0");
        return twice == 0 ? 1.0 : 0.0;
    }
    const int whole = twice >= 0 ? twice / 2 : (twice - 1) / 2;
    double out = 1.0;
    double base = x;
    for (int e = std::abs(whole); e != 0; e >>= 1, base *= base)
        if (e & 1) out *= base;
    if (whole < 0) out = 1.0 / out;
    if (twice - 2 * whole == 1) out *= std::sqrt(x);
    return out;
}

std::string rational_string(Rational r)
{
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

} // namespace

HalfPower HalfPower::parse(std::string_view text)
{
    auto fail = [&] { return PreconditionError("invalid half-integer order: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        int num = 0;
        int den = 0;
        auto lhs = text.substr(0, slash);
        auto rhs = text.substr(slash + 1);
        if (std::from_chars(lhs.data(), lhs.data() + lhs.size(), num).ptr != lhs.data() + lhs.size()) throw fail();
        if (std::from_chars(rhs.data(), rhs.data() + rhs.size(), den).ptr != rhs.data() + rhs.size()) throw fail();
        if (den == 1 && num >= 0) return HalfPower(2 * num);
        if (den == 2 && num >= 0) return HalfPower(num);
        throw fail();
    }

    double v = 0.0;
    std::istringstream is{std::string(text)};
    if (!(is >> v) || !is.eof()) throw fail();
    const double twice = 2.0 * v;
    if (v < 0.0 || twice != std::floor(twice) || twice > 1e6) throw fail();
    return HalfPower(static_cast<int>(twice));
}

std::string HalfPower::to_string() const
{
    return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

double BPolynomial::evaluate(double b) const
{
    double out = 0.0;
    for (const auto& [k, r] : terms_) out += boost::rational_cast<double>(r) * std::pow(b, k);
    return out;
}

std::string BPolynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, r] : terms_) {
        const bool negative = r.numerator() < 0;
        const Rational mag = negative ? -r : r;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        if (k == 0) {
            out += rational_string(mag);
            continue;
        }
        if (mag != Rational(1)) out += rational_string(mag) + " ";
        out += "B";
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
}

TfSeries reference_series(double b)
{
    if (!(b > 0.0)) throw PreconditionError("reference_series: B must be positive");
    return evaluate_coefficients(reference_series_symbolic(), b);
}

SymbolicSeries reference_series_symbolic()
{
    SymbolicSeries s(9);
    s.add(0, Rational(1));
    s.add(2, BPolynomial::b_power(1, -1));
    s.add(6, Rational(1, 3));
    s.add(8, BPolynomial::b_power(1, Rational(-2, 15)));
    s.add(3, Rational(4, 3));
    s.add(5, BPolynomial::b_power(1, Rational(-2, 5)));
    s.add(7, BPolynomial::b_power(2, Rational(3, 70)));
    s.add(9, BPolynomial(Rational(2, 27)) + BPolynomial::b_power(3, Rational(1, 252)));
    return s;
}

TfSeries evaluate_coefficients(const SymbolicSeries& s, double b)
{
    TfSeries out(s.truncation());
    for (const auto& [t, c] : s.terms()) out.add(t, c.evaluate(b));
    return out;
}

double eval_series(const TfSeries& s, double x)
{
    if (!(x >= 0.0)) throw DomainError("eval_series: x must be nonnegative");
    double sum = 0.0;
    for (const auto& [t, c] : s.terms()) sum += c * half_power(x, t);
    return sum;
}

double eval_series_derivative(const TfSeries& s, double x)
{
    if (!(x >= 0.0)) throw DomainError("eval_series_derivative: x must be nonnegative");
    double sum = 0.0;
    for (const auto& [t, c] : s.terms()) {
        if (t == 0) continue;
        if (x == 0.0) {
            if (t < 2) throw DomainError("eval_series_derivative: derivative unbounded at x = 0");
            if (t == 2) sum += c;
            continue;
        }
        sum += c * 0.5 * t * half_power(x, t - 2);
    }
    return sum;
}

TfSeries series_second_derivative(const TfSeries& s)
{
    TfSeries out(detail::shifted_truncation(s.truncation(), -4));
    for (const auto& [t, c] : s.terms()) out.add(t - 4, c * (0.5 * t) * (0.5 * t - 1.0));
    return out;
}

std::string format_term(int twice)
{
    if (twice == 0) return "1";
    if (twice == 2) return "x";
    if (twice % 2 == 0) return "x^" + std::to_string(twice / 2);
    return "x^(" + std::to_string(twice) + "/2)";
}

} // namespace tf
