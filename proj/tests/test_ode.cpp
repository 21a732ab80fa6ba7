#include "support/generators.hpp"

#include "tf/ode.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace tf;
using tf::testing::Gen;

namespace {

const TrajectorySolution& canonical()
{
    static const TrajectorySolution sol = bounded_solution();
    return sol;
}

} // namespace

TEST_CASE("config validation")
{
    IntegratorConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.h = 0.0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.h = 0.06;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.x_max = 0.01;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    CHECK_THROWS_AS(integrate(0.0), PreconditionError);
    CHECK_THROWS_AS(integrate(1.0), PreconditionError);
}

TEST_CASE("classification examples")
{
    const auto steep = classify(-2.0);
    REQUIRE(is_crossing(steep));
    CHECK(std::get<Crossing>(steep).x_c > 0.05);
    CHECK(std::get<Crossing>(steep).x_c < 2.0);

    const auto shallow = classify(-1.0);
    REQUIRE(is_unbounded(shallow));
    CHECK(std::isfinite(std::get<Unbounded>(shallow).x_turn));

    CHECK(is_unbounded(classify(-1.5)));
    CHECK(is_crossing(classify(-1.7)));
    CHECK(is_bounded(classify(-kCanonicalB)));

    CHECK(describe(BoundedSoFar{}) == "bounded");
    CHECK(describe(Crossing{0.5}) == "crossing at x = 0.5");
    CHECK(describe(Unbounded{2.0}) == "unbounded, turning point x = 2");
}

TEST_CASE("slopes either side of -B split into crossing and unbounded")
{
    Gen gen;
    for (int i = 0; i < 12; ++i) {
        const double delta = gen.log_uniform(1e-6, 0.1);
        CAPTURE(delta);
        CHECK(is_crossing(classify(-kCanonicalB - delta)));
        CHECK(is_unbounded(classify(-kCanonicalB + delta)));
    }
}

TEST_CASE("shooting")
{
    const auto r = shoot(-1.7, -1.5, 1e-10);
    CHECK(r.b == doctest::Approx(kCanonicalB).epsilon(1e-7));
    CHECK(r.iterations > 0);
    CHECK(r.iterations <= 31);

    const auto narrow = shoot(-1.589, -1.588, 1e-12);
    CHECK(std::abs(narrow.b - r.b) < 1e-8);

    CHECK_THROWS_AS(shoot(-1.5, -1.4, 1e-10), BracketError);
    CHECK_THROWS_WITH_AS(shoot(-1.5, -1.4, 1e-10), doctest::Contains("lower endpoint"), BracketError);
    CHECK_THROWS_WITH_AS(shoot(-1.7, -1.65, 1e-10), doctest::Contains("upper endpoint"), BracketError);
    CHECK_THROWS_AS(shoot(-1.5, -1.7, 1e-10), BracketError);
    CHECK_THROWS_AS(shoot(-1.7, -1.5, 0.0), PreconditionError);
}

TEST_CASE("bounded solution examples")
{
    const auto& sol = canonical();
    CHECK(sol.value(0.0) == 1.0);
    CHECK(sol.derivative(0.0) == -kCanonicalB);
    CHECK(std::abs(sol.value(1.0) - 0.4240) < 5e-5);
    CHECK(std::abs(sol.value(10.0) - 0.0243) < 5e-4);
    CHECK(std::abs(sol.value(4.0) - 0.108) < 5e-4);
    CHECK(is_bounded(sol.trajectory().status()));
    CHECK(sol.trajectory().x_begin() == 0.05);
    CHECK(sol.trajectory().x_end() == doctest::Approx(60.0));
}

TEST_CASE("bounded solution is decreasing, convex and below the singular solution")
{
    const auto& samples = canonical().trajectory().samples();
    REQUIRE(samples.size() > 1000);
    double prev_scaled = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto& a = samples[i - 1];
        const auto& b = samples[i];
        CAPTURE(b.x);
        REQUIRE(b.y > 0.0);
        REQUIRE(b.y < a.y);
        REQUIRE(b.dy < 0.0);
        REQUIRE(b.dy > a.dy);
        const double scaled = b.x * b.x * b.x * b.y;
        REQUIRE(scaled > prev_scaled);
        REQUIRE(scaled < kSingularCoefficient);
        prev_scaled = scaled;
    }
}

TEST_CASE("dense output and tail are continuous")
{
    const auto& sol = canonical();
    const auto& t = sol.trajectory();
    Gen gen;
    for (int i = 0; i < 200; ++i) {
        const auto& s = t.samples()[static_cast<std::size_t>(gen.integer(0, static_cast<int>(t.samples().size()) - 1))];
        CHECK(sol.value(s.x) == s.y);
        CHECK(sol.derivative(s.x) == s.dy);
    }
    CHECK(t.at(0.05).y == doctest::Approx(eval_series(t.seed(), 0.05)).epsilon(1e-15));
    CHECK(sol.value(std::nextafter(0.05, 0.0)) == doctest::Approx(sol.value(0.05)).epsilon(1e-12));

    const double end = t.x_end();
    const double past = std::nextafter(end, INFINITY);
    CHECK(sol.value(past) == doctest::Approx(sol.value(end)).epsilon(1e-12));
    CHECK(sol.derivative(past) == doctest::Approx(sol.derivative(end)).epsilon(2e-2));
    CHECK(sol.tail_model() == TailModel::asymptotic);
    double prev = 0.0;
    for (double x : tf::testing::log_grid(end, 1e8, 200)) {
        const double scaled = x * x * x * sol.value(x);
        CHECK(scaled > prev);
        CHECK(scaled < kSingularCoefficient);
        prev = scaled;
    }
    CHECK(prev == doctest::Approx(kSingularCoefficient).epsilon(1e-4));

    const TrajectorySolution power(t, TailModel::power_law);
    CHECK(power.tail_model() == TailModel::power_law);
    CHECK(power.value(past) == doctest::Approx(sol.value(end)).epsilon(1e-12));
    CHECK(power.value(2.0 * end) == doctest::Approx(sol.value(end) / 8.0).epsilon(1e-12));
    CHECK_THROWS_AS(t.at(end + 1.0), DomainError);
    CHECK_THROWS_AS(t.at(-1.0), DomainError);
}

TEST_CASE("step halving changes y(10) by less than 1e-8")
{
    IntegratorConfig coarse;
    coarse.x_max = 12.0;
    IntegratorConfig fine = coarse;
    fine.h = 0.5 * coarse.h;
    const auto a = integrate(-kCanonicalB, coarse);
    const auto b = integrate(-kCanonicalB, fine);
    for (double x : {0.5, 1.0, 4.0, 10.0}) {
        CAPTURE(x);
        CHECK(std::abs(a.at(x).y - b.at(x).y) < 1e-8);
    }
}

TEST_CASE("seed series converges with order")
{
    IntegratorConfig cfg;
    cfg.x_max = 5.0;
    auto y5 = [&](int twice) {
        cfg.series_order = HalfPower(twice);
        return integrate(-kCanonicalB, cfg);
    };
    const auto closed = y5(9);
    const auto standard = y5(16);
    const auto higher = y5(20);
    CHECK(closed.seed() == reference_series(kCanonicalB));
    CHECK(std::abs(standard.at(5.0).y - higher.at(5.0).y) < 1e-9);
    CHECK(std::abs(closed.at(5.0).y - higher.at(5.0).y) < 1e-4);
    CHECK(std::abs(standard.at(5.0).y - higher.at(5.0).y) < std::abs(closed.at(5.0).y - higher.at(5.0).y));
}

TEST_CASE("crossing trajectories stop before going negative")
{
    const auto t = integrate(-2.0);
    REQUIRE(is_crossing(t.status()));
    const double xc = std::get<Crossing>(t.status()).x_c;
    CHECK(t.x_end() <= xc);
    CHECK(xc - t.x_end() <= 1e-3);
    for (const auto& s : t.samples()) CHECK(s.y > 0.0);
}

TEST_CASE("trajectory CSV")
{
    IntegratorConfig cfg;
    cfg.x_max = 0.06;
    const auto t = integrate(-kCanonicalB, cfg);
    std::ostringstream os;
    write_trajectory_csv(os, t);
    const std::string csv = os.str();
    CHECK(csv.rfind("x,y,dy\n0.05,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(t.samples().size()) + 1);
}
