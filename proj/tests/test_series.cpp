#include "support/generators.hpp"

#include "tf/json.hpp"
#include "tf/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace tf;
using tf::testing::Gen;

namespace {

// Closed-form small-x expansion, written out term by term.
double closed_form(double b, double x)
{
    const double s = std::sqrt(x);
    return 1.0 - b * x + 4.0 / 3.0 * x * s - 2.0 * b / 5.0 * x * x * s + x * x * x / 3.0 +
           3.0 * b * b / 70.0 * x * x * x * s - 2.0 * b / 15.0 * x * x * x * x +
           (2.0 / 27.0 + b * b * b / 252.0) * x * x * x * x * s;
}

std::array<double, 8> closed_form_coefficients(double b)
{
    return {1.0, -b, 4.0 / 3.0, -2.0 * b / 5.0, 1.0 / 3.0, 3.0 * b * b / 70.0, -2.0 * b / 15.0,
            2.0 / 27.0 + b * b * b / 252.0};
}

constexpr std::array<int, 8> kClosedFormPowers{0, 2, 3, 5, 6, 7, 8, 9};

TfSeries random_series(Gen& gen, int max_twice)
{
    TfSeries s;
    for (int t = 0; t <= max_twice; ++t)
        if (gen.integer(0, 2) != 0) s.add(t, gen.uniform(-3.0, 3.0));
    return s;
}

} // namespace

TEST_CASE("HalfPower parsing")
{
    CHECK(HalfPower::parse("9/2").twice == 9);
    CHECK(HalfPower::parse("4.5").twice == 9);
    CHECK(HalfPower::parse("4").twice == 8);
    CHECK(HalfPower::parse("0").twice == 0);
    CHECK(HalfPower::parse("8/2").twice == 8);
    CHECK(HalfPower(9).to_string() == "9/2");
    CHECK(HalfPower(8).to_string() == "4");
    CHECK_THROWS_AS(HalfPower::parse("7/3"), PreconditionError);
    CHECK_THROWS_AS(HalfPower::parse("4.25"), PreconditionError);
    CHECK_THROWS_AS(HalfPower::parse("-1"), PreconditionError);
    CHECK_THROWS_AS(HalfPower::parse("abc"), PreconditionError);
    CHECK_THROWS_AS(HalfPower::parse(""), PreconditionError);
}

TEST_CASE("series_add merges integer and half-integer powers")
{
    TfSeries a;
    a.add(0, 1.0).add(3, 2.0);
    TfSeries b(6);
    b.add(2, -1.0).add(3, 0.5);
    const auto s = series_add(a, b);
    CHECK(s.truncation() == 6);
    CHECK(s.coefficient(0) == 1.0);
    CHECK(s.coefficient(2) == -1.0);
    CHECK(s.coefficient(3) == 2.5);
    CHECK(s.terms().size() == 3);
}

TEST_CASE("series_add drops cancelled terms")
{
    TfSeries a;
    a.add(4, 1.5);
    TfSeries b;
    b.add(4, -1.5);
    CHECK(series_add(a, b).empty());
}

TEST_CASE("series_pow_three_halves examples")
{
    const double b = kCanonicalB;
    TfSeries y1(4);
    y1.add(0, 1.0).add(2, -b);
    const auto p = series_pow_three_halves(y1);
    CHECK(p.coefficient(0) == 1.0);
    CHECK(p.coefficient(2) == doctest::Approx(-1.5 * b).epsilon(1e-15));
    CHECK(p.coefficient(4) == doctest::Approx(3.0 / 8.0 * b * b).epsilon(1e-15));

    TfSeries bad(4);
    bad.add(0, 2.0).add(2, 1.0);
    CHECK_THROWS_AS(series_pow_three_halves(bad), PreconditionError);
    TfSeries no_constant(4);
    no_constant.add(2, 1.0);
    CHECK_THROWS_AS(series_pow_three_halves(no_constant), PreconditionError);
    TfSeries exact;
    exact.add(0, 1.0).add(2, 1.0);
    CHECK_THROWS_AS(series_pow_three_halves(exact), PreconditionError);
}

TEST_CASE("series_pow_three_halves agrees with direct evaluation")
{
    // Residual of (1 + w)^{3/2} truncated at x^{N/2} must scale like x^{(N+1)/2}.
    Gen gen;
    for (int i = 0; i < 50; ++i) {
        TfSeries in(8);
        in.add(0, 1.0);
        const TfSeries w = random_series(gen, 8);
        for (const auto& [t, c] : w.terms())
            if (t > 0) in.add(t, c);
        const auto p = series_pow_three_halves(in);
        auto residual = [&](double x) {
            const double y = eval_series(in, x);
            return std::abs(y * std::sqrt(y) - eval_series(p, x));
        };
        CAPTURE(i);
        CHECK(residual(1e-3) < 1e-9);
        CHECK(residual(1e-4) < 1e-11);
    }
}

TEST_CASE("series_divide_sqrt_x")
{
    TfSeries s(9);
    s.add(0, 1.0).add(3, 2.0);
    const auto d = series_divide_sqrt_x(s);
    CHECK(d.truncation() == 8);
    CHECK(d.coefficient(-1) == 1.0);
    CHECK(d.coefficient(2) == 2.0);

    TfSeries low;
    low.add(-1, 1.0);
    CHECK_THROWS_AS(series_divide_sqrt_x(low), DomainError);
}

TEST_CASE("series_integrate_twice examples")
{
    TfSeries s;
    s.add(-1, 1.0);
    const auto y = series_integrate_twice(s, 1.0, -2.0);
    CHECK(y.coefficient(0) == 1.0);
    CHECK(y.coefficient(2) == -2.0);
    CHECK(y.coefficient(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("second derivative undoes double integration")
{
    Gen gen;
    for (int i = 0; i < 100; ++i) {
        const TfSeries s = random_series(gen, 12);
        const auto round_trip = series_second_derivative(series_integrate_twice(s, gen.uniform(-1, 1), gen.uniform(-1, 1)));
        CAPTURE(i);
        for (int t = 0; t <= 12; ++t) CHECK(round_trip.coefficient(t) == doctest::Approx(s.coefficient(t)).epsilon(1e-14));
    }
}

TEST_CASE("iteration reproduces the first iterates")
{
    const double b = kCanonicalB;
    const HalfPower order(6);
    const auto y0 = TfSeries::constant(1.0, 6);
    const auto y1 = iterate_tf(y0, b, order).truncated(6);
    CHECK(y1.coefficient(0) == 1.0);
    CHECK(y1.coefficient(2) == -b);
    CHECK(y1.coefficient(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(y1.terms().size() == 3);

    const auto y2 = iterate_tf(y1, b, order).truncated(6);
    CHECK(y2.coefficient(5) == doctest::Approx(-2.0 * b / 5.0).epsilon(1e-15));
    CHECK(y2.coefficient(6) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("iteration fixed point matches the closed-form coefficients")
{
    Gen gen(20240611);
    for (int i = 0; i < 5; ++i) {
        const double b = gen.uniform(1.0, 2.0);
        const auto it = iterate_series(b, HalfPower(9));
        CAPTURE(b);
        CHECK(it.converged);
        const auto expect = closed_form_coefficients(b);
        for (std::size_t k = 0; k < expect.size(); ++k) {
            CAPTURE(kClosedFormPowers[k]);
            CHECK(tf::testing::rel_diff(it.series.coefficient(kClosedFormPowers[k]), expect[k]) <= 1e-12);
        }
        CHECK(it.series.terms().size() == expect.size());
    }
}

TEST_CASE("symbolic iteration is exact")
{
    const auto it = iterate_series(BPolynomial::b_power(1), HalfPower(9));
    CHECK(it.converged);
    CHECK(it.series == reference_series_symbolic());
    CHECK(it.series.coefficient(9).to_string() == "2/27 + 1/252 B^3");
    CHECK(it.series.coefficient(7).to_string() == "3/70 B^2");
}

TEST_CASE("fixed iteration count")
{
    const auto one = iterate_series(kCanonicalB, HalfPower(9), 1);
    CHECK(one.iterations == 1);
    CHECK_FALSE(one.converged);
    CHECK(one.series.terms().size() == 3);
}

TEST_CASE("higher orders extend the closed form")
{
    const auto s = iterate_series(kCanonicalB, HalfPower(10)).series;
    const double b = kCanonicalB;
    CHECK(s.coefficient(10) == doctest::Approx(b * b / 175.0).epsilon(1e-13));
}

TEST_CASE("reference series evaluation")
{
    const double b = kCanonicalB;
    const auto s = reference_series(b);
    CHECK(eval_series(s, 0.0) == 1.0);
    CHECK(eval_series_derivative(s, 0.0) == -b);
    // High-precision value of the truncated expansion at x = 0.01.
    CHECK(eval_series(s, 0.01) == doctest::Approx(0.98544661293744266).epsilon(1e-14));
    Gen gen;
    for (int i = 0; i < 100; ++i) {
        const double x = gen.uniform(0.0, 0.2);
        CHECK(eval_series(s, x) == doctest::Approx(closed_form(b, x)).epsilon(1e-14));
    }
    TfSeries sqrt_term;
    sqrt_term.add(1, 1.0);
    CHECK_THROWS_AS(eval_series_derivative(sqrt_term, 0.0), DomainError);
}

TEST_CASE("truncated series satisfies the ODE to high order")
{
    const auto s = reference_series(kCanonicalB);
    const auto d2 = series_second_derivative(s);
    auto residual = [&](double x) { return std::abs(eval_series(d2, x) - tf_rhs(x, eval_series(s, x))); };
    const double ratio = residual(1e-2) / residual(1e-3);
    CAPTURE(ratio);
    CHECK(ratio >= 50.0);
}

TEST_CASE("series JSON round trip")
{
    Gen gen;
    for (int i = 0; i < 100; ++i) {
        TfSeries s = random_series(gen, 14);
        if (gen.integer(0, 1) == 1) s = s.truncated(gen.integer(0, 14));
        const auto back = series_from_json(series_to_json(s));
        CAPTURE(i);
        CHECK(back == s);
        CHECK(back.truncation() == s.truncation());
    }
}

TEST_CASE("series JSON validation")
{
    const auto good = series_to_json(reference_series(kCanonicalB));
    CHECK(good["truncation_twice_power"] == 9);
    CHECK(good["terms"][1]["twice_power"] == 2);

    auto unordered = good;
    std::swap(unordered["terms"][0], unordered["terms"][1]);
    CHECK_THROWS(series_from_json(unordered));

    auto beyond = good;
    beyond["terms"].push_back({{"twice_power", 11}, {"coefficient", 1.0}});
    CHECK_THROWS(series_from_json(beyond));
}
