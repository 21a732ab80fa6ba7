// tfsolve: command-line front end for the Thomas-Fermi solvers.
//
//   tfsolve [--format csv|json|table] [--out PATH] <command> [options]
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include "tf/approximants.hpp"
#include "tf/format.hpp"
#include "tf/json.hpp"
#include "tf/ode.hpp"
#include "tf/quadrature.hpp"
#include "tf/series.hpp"
#include "tf/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum class Format { csv, json, table };

struct Grid {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Document {
    Grid grid;
    nlohmann::json json;
};

struct GlobalOptions {
    Format format = Format::table;
    std::string out;
};

void write_grid_csv(std::ostream& os, const Grid& g)
{
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(g.header);
    for (const auto& r : g.rows) line(r);
}

void write_grid_table(std::ostream& os, const Grid& g)
{
    std::vector<std::size_t> width(g.header.size(), 0);
    auto measure = [&width](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(g.header);
    for (const auto& r : g.rows) measure(r);

    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += "  ";
            text += cells[i];
            if (i + 1 < cells.size()) text.append(width[i] - cells[i].size(), ' ');
        }
        os << text << '\n';
    };
    line(g.header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : g.rows) line(r);
}

void emit(std::ostream& os, const Document& doc, Format format)
{
    switch (format) {
    case Format::csv: write_grid_csv(os, doc.grid); break;
    case Format::json: os << doc.json.dump(2) << '\n'; break;
    case Format::table: write_grid_table(os, doc.grid); break;
    }
}

// Writes to --out when given, otherwise to standard output.
void deliver(const GlobalOptions& g, const Document& doc)
{
    if (g.out.empty()) {
        emit(std::cout, doc, g.format);
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
    emit(file, doc, g.format);
}

std::string fixed(double v, int decimals = 4) { return tf::format_fixed(v, decimals); }

nlohmann::json classification_json(const tf::Classification& c)
{
    if (const auto* v = std::get_if<tf::Crossing>(&c)) return {{"status", "crossing"}, {"x", v->x_c}};
    if (const auto* v = std::get_if<tf::Unbounded>(&c)) return {{"status", "unbounded"}, {"x", v->x_turn}};
    return {{"status", "bounded"}, {"x", nullptr}};
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    double slope = -tf::kCanonicalB;
    double x_max = tf::IntegratorConfig{}.x_max;
    double step = tf::IntegratorConfig{}.h;
};

int run_solve(const GlobalOptions& g, const SolveOptions& o)
{
    tf::IntegratorConfig cfg;
    cfg.x_max = o.x_max;
    cfg.h = o.step;
    const auto trajectory = tf::integrate(o.slope, cfg);

    if (g.format == Format::json) {
        nlohmann::json summary = classification_json(trajectory.status());
        summary["slope"] = o.slope;
        summary["samples"] = trajectory.samples().size();
        std::cout << summary.dump(2) << '\n';
    } else {
        std::cout << "slope: " << tf::format_shortest(o.slope) << '\n'
                  << "classification: " << tf::describe(trajectory.status()) << '\n'
                  << "samples: " << trajectory.samples().size() << '\n';
    }

    if (!g.out.empty()) {
        std::ofstream file(g.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
        if (g.format == Format::json) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& s : trajectory.samples()) rows.push_back({{"x", s.x}, {"y", s.y}, {"dy", s.dy}});
            file << nlohmann::json{{"slope", o.slope}, {"samples", rows}}.dump() << '\n';
        } else {
            tf::write_trajectory_csv(file, trajectory);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// shoot

struct ShootOptions {
    double lo = -1.7;
    double hi = -1.5;
    double tol = 1e-10;
};

int run_shoot(const GlobalOptions& g, const ShootOptions& o)
{
    const auto r = tf::shoot(o.lo, o.hi, o.tol);
    Document doc;
    doc.grid.header = {"B", "iterations", "bracket_lo", "bracket_hi"};
    doc.grid.rows.push_back({fixed(r.b, 10), std::to_string(r.iterations), tf::format_shortest(r.lo),
                             tf::format_shortest(r.hi)});
    doc.json = {{"b", r.b}, {"iterations", r.iterations}, {"bracket_lo", r.lo}, {"bracket_hi", r.hi}};
    deliver(g, doc);
    return 0;
}

// ---------------------------------------------------------------------------
// table

int run_table(const GlobalOptions& g)
{
    const auto solution = tf::bounded_solution();
    const auto rows = tf::build_table(solution);

    Document doc;
    doc.grid.header = {"x", "rk4", "approx1", "approx2", "published", "flag"};
    doc.json = nlohmann::json::array();
    for (const auto& r : rows) {
        doc.grid.rows.push_back({fixed(r.x, 1), fixed(r.computed), fixed(r.approx1), fixed(r.approx2),
                                 fixed(r.published), r.flagged ? "MISMATCH" : ""});
        doc.json.push_back({{"x", r.x},
                            {"rk4", r.computed},
                            {"approx1", r.approx1},
                            {"approx2", r.approx2},
                            {"published", r.published},
                            {"flagged", r.flagged}});
    }
    deliver(g, doc);
    for (const auto& r : rows)
        if (r.flagged)
            std::cerr << "warning: published value " << fixed(r.published) << " at x = " << fixed(r.x, 1)
                      << " disagrees with the integrated " << fixed(r.computed) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// sumrules

struct SumRuleOptions {
    std::string target = "numeric";
    double tol = tf::QuadratureConfig{}.rel_tol;
};

int run_sumrules(const GlobalOptions& g, const SumRuleOptions& o)
{
    tf::QuadratureConfig cfg;
    cfg.rel_tol = o.tol;

    tf::SumRuleReport report;
    if (o.target == "numeric") {
        report = tf::consistency_report(tf::bounded_solution(), tf::kCanonicalB, cfg);
    } else {
        const auto a = o.target == "approx1" ? tf::RationalApproximant::first() : tf::RationalApproximant::second();
        report = tf::consistency_report(a, tf::kCanonicalB, cfg);
    }

    Document doc;
    doc.json = tf::sum_rule_report_to_json(report);
    doc.grid.header = {"quantity", "value"};
    for (const char* key : {"rule_norm", "rule_balance_lhs", "rule_balance_rhs", "rule_energy", "rule_slope", "b_input",
                            "fractional_error_pct"}) {
        const auto& v = doc.json.at(key);
        doc.grid.rows.push_back({key, v.is_null() ? "failed" : tf::format_shortest(v.get<double>())});
    }
    deliver(g, doc);
    return report.complete() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// series

struct SeriesOptions {
    std::string order = "9/2";
    int iterations = 0;
    std::optional<double> x;
};

int run_series(const GlobalOptions& g, const SeriesOptions& o)
{
    const auto order = tf::HalfPower::parse(o.order);
    const double b = tf::kCanonicalB;
    const auto numeric = tf::iterate_series<double>(b, order, o.iterations);
    const auto symbolic = tf::iterate_series<tf::BPolynomial>(tf::BPolynomial::b_power(1), order, o.iterations);
    const auto reference = tf::reference_series(b);

    // Compare against the closed form on the exponents both cover.
    const int common = std::min(order.twice, reference.truncation());
    bool matches = true;
    for (int t = 0; t <= common; ++t) {
        const double got = numeric.series.coefficient(t);
        const double want = reference.coefficient(t);
        if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) matches = false;
    }

    Document doc;
    doc.grid.header = {"twice_power", "term", "symbolic", "coefficient"};
    for (const auto& [t, c] : numeric.series.terms())
        doc.grid.rows.push_back(
            {std::to_string(t), tf::format_term(t), symbolic.series.coefficient(t).to_string(), tf::format_shortest(c)});

    doc.json = tf::series_to_json(numeric.series);
    for (auto& term : doc.json["terms"])
        term["symbolic"] = symbolic.series.coefficient(term["twice_power"].get<int>()).to_string();
    doc.json["iterations"] = numeric.iterations;
    doc.json["converged"] = numeric.converged;
    doc.json["b"] = b;
    if (o.x) {
        const double y = tf::eval_series(numeric.series, *o.x);
        doc.json["x"] = *o.x;
        doc.json["value"] = y;
        doc.grid.rows.push_back({"", "y(" + tf::format_shortest(*o.x) + ")", "", tf::format_shortest(y)});
    }
    deliver(g, doc);

    if (!matches)
        std::cerr << "warning: iterated coefficients differ from the closed-form expansion up to x^"
                  << tf::HalfPower(common).to_string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// dc / crossing

int run_dc(const GlobalOptions& g, int which)
{
    const auto a = which == 1 ? tf::RationalApproximant::first() : tf::RationalApproximant::second();
    const auto report = tf::dc_check(a);

    Document doc;
    doc.json = tf::dc_report_to_json(report);
    doc.grid.header = {"property", "residual", "tolerance", "pass"};
    for (const auto& p : report.properties)
        doc.grid.rows.push_back(
            {p.name, tf::format_shortest(p.residual), tf::format_shortest(p.tolerance), p.pass ? "pass" : "FAIL"});
    deliver(g, doc);
    return report.all_pass() ? 0 : 1;
}

int run_crossing(const GlobalOptions& g)
{
    const auto r = tf::find_crossing();
    Document doc;
    doc.grid.header = {"x0", "bracket_lo", "bracket_hi"};
    doc.grid.rows.push_back({fixed(r.x0, 10), tf::format_shortest(r.lo), tf::format_shortest(r.hi)});
    doc.json = {{"x0", r.x0}, {"bracket_lo", r.lo}, {"bracket_hi", r.hi}};
    deliver(g, doc);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Thomas-Fermi equation: shooting, series, rational approximants and sum rules"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}, {"table", Format::table}};
    app.add_option("--format", global.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--out", global.out, "Write data to this file instead of standard output");

    SolveOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "Integrate from y(0) = 1 with a given initial slope");
    solve->add_option("--slope", solve_opts.slope, "Initial slope y'(0), negative")
        ->check(CLI::Range(-1e6, -1e-300));
    solve->add_option("--xmax", solve_opts.x_max, "Integration horizon")->check(CLI::PositiveNumber);
    solve->add_option("--step", solve_opts.step, "RK4 step")->check(CLI::PositiveNumber);

    ShootOptions shoot_opts;
    auto* shoot = app.add_subcommand("shoot", "Find B by bisection on the initial slope");
    shoot->add_option("--lo", shoot_opts.lo, "Slope that crosses zero");
    shoot->add_option("--hi", shoot_opts.hi, "Slope that turns upward");
    shoot->add_option("--tol", shoot_opts.tol, "Bracket width to stop at")->check(CLI::PositiveNumber);

    auto* table = app.add_subcommand("table", "Integrated solution and both approximants at the tabulated points");

    SumRuleOptions sum_opts;
    auto* sumrules = app.add_subcommand("sumrules", "Evaluate the four integral identities");
    sumrules->add_option("--target", sum_opts.target, "numeric, approx1 or approx2")
        ->check(CLI::IsMember({"numeric", "approx1", "approx2"}));
    sumrules->add_option("--tol", sum_opts.tol, "Relative quadrature tolerance")->check(CLI::Range(1e-15, 0.5));

    SeriesOptions series_opts;
    auto* series = app.add_subcommand("series", "Small-x expansion from the iteration scheme");
    series->add_option("--order", series_opts.order, "Truncation order, e.g. 9/2");
    series->add_option("--iterations", series_opts.iterations, "Iteration count (0: until the order stabilizes)")
        ->check(CLI::NonNegativeNumber);
    series->add_option("--x", series_opts.x, "Also evaluate the series here")->check(CLI::NonNegativeNumber);

    int which = 1;
    auto* dc = app.add_subcommand("dc", "Check the five shared properties of an approximant");
    dc->add_option("--which", which, "1 or 2")->check(CLI::IsMember({1, 2}));

    auto* crossing = app.add_subcommand("crossing", "Where the two approximants cross");

    try {
        app.parse(argc, argv);
        if (solve_opts.step >= tf::IntegratorConfig{}.x_start)
            throw CLI::ValidationError("--step", "must be smaller than the series hand-over point 0.05");
        if (solve_opts.x_max <= tf::IntegratorConfig{}.x_start)
            throw CLI::ValidationError("--xmax", "must exceed the series hand-over point 0.05");
        tf::HalfPower::parse(series_opts.order);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    } catch (const tf::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (*solve) return run_solve(global, solve_opts);
        if (*shoot) return run_shoot(global, shoot_opts);
        if (*table) return run_table(global);
        if (*sumrules) return run_sumrules(global, sum_opts);
        if (*series) return run_series(global, series_opts);
        if (*dc) return run_dc(global, which);
        if (*crossing) return run_crossing(global);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
