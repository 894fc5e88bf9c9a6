#include "minigraph/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "minigraph/report.hpp"

namespace minigraph::cli {

namespace {

using report::json;

constexpr const char* kDefaultGrid = "-2:2:41,-2:2:41";
constexpr const char* kFitGrid = "-1.5:1.5:21,-1.5:1.5:21";
constexpr long kSelftestSeed = 1729;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open dump file '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("failed writing dump file '" + path + "'");
}

std::vector<double> parse_radii(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        double v = 0.0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (res.ec != std::errc())
            throw std::invalid_argument("bad radii list \"" + text + "\"");
        out.push_back(v);
        pos = std::size_t(res.ptr - text.data());
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw std::invalid_argument("bad radii list \"" + text + "\"");
            ++pos;
        }
    }
    if (out.empty()) throw std::invalid_argument("empty radii list");
    return out;
}

Point2 parse_point(const std::string& text) {
    Point2 p;
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("bad point \"" + text + "\", expected X,Y");
    const auto r1 = std::from_chars(text.data(), text.data() + comma, p.x);
    const auto r2 =
        std::from_chars(text.data() + comma + 1, text.data() + text.size(), p.y);
    if (r1.ec != std::errc() || r2.ec != std::errc() ||
        r1.ptr != text.data() + comma || r2.ptr != text.data() + text.size())
        throw std::invalid_argument("bad point \"" + text + "\", expected X,Y");
    return p;
}

std::string radius_dump_path(const std::string& base, std::size_t index) {
    const std::filesystem::path p(base);
    std::filesystem::path out = p.parent_path();
    out /= p.stem().string() + "_r" + std::to_string(index) + p.extension().string();
    return out.string();
}

// ---------------------------------------------------------------------------
// subcommand handlers
// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string f1, f2;
    std::string grid = kDefaultGrid;
    double tol = 1e-8;
    std::string dump;
};

int run_verify(const VerifyArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto e1 = expr::parse(a.f1, expr::Mode::Real2);
    const auto e2 = expr::parse(a.f2, expr::Mode::Real2);
    const GridSpec grid = parse_grid(a.grid);
    const auto field = geometry::make_expr_field(e1, e2);

    std::vector<geometry::MinimalitySample> samples;
    const auto rep = geometry::grid_minimality_report(field, grid, a.tol,
                                                      a.dump.empty() ? nullptr : &samples);
    if (!a.dump.empty()) write_file(a.dump, report::csv_minimality(samples));

    const json inputs{{"f1", a.f1}, {"f2", a.f2}, {"grid", a.grid}, {"tolerance", a.tol}};
    emit(out, report::envelope("verify", argv, inputs, report::to_json(rep),
                               rep.minimal ? "minimal" : "non-minimal", rep.errors));
    return rep.minimal ? 0 : 1;
}

struct ClassifyArgs {
    std::string f1, f2;
    std::string grid = kDefaultGrid;
    double tol = 1e-8;
};

int run_classify(const ClassifyArgs& a, const std::vector<std::string>& argv,
                 std::ostream& out) {
    const auto e1 = expr::parse(a.f1, expr::Mode::Real2);
    const auto e2 = expr::parse(a.f2, expr::Mode::Real2);
    const GridSpec grid = parse_grid(a.grid);
    const auto rep = jacobian::classify_cr(geometry::make_expr_field(e1, e2), grid, a.tol);

    const json inputs{{"f1", a.f1}, {"f2", a.f2}, {"grid", a.grid}, {"tolerance", a.tol}};
    emit(out, report::envelope("classify", argv, inputs, report::to_json(rep),
                               jacobian::to_string(rep.verdict), rep.errors));
    return rep.verdict == jacobian::CrClass::Neither ? 1 : 0;
}

struct JrangeArgs {
    std::string f1, f2;
    std::string radii = "1,2,3";
    int resolution = 41;
    double tol = 1e-8;
    double growth = 10.0;
    std::string dump;
};

int run_jrange(const JrangeArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto e1 = expr::parse(a.f1, expr::Mode::Real2);
    const auto e2 = expr::parse(a.f2, expr::Mode::Real2);
    const auto field = geometry::make_expr_field(e1, e2);
    const auto radii = parse_radii(a.radii);
    const auto ev = jacobian::jacobian_range(field, radii, a.resolution, a.tol, a.growth);

    if (!a.dump.empty()) {
        const auto batches = jacobian::jacobian_range_samples(field, radii, a.resolution);
        for (std::size_t i = 0; i < batches.size(); ++i)
            write_file(radius_dump_path(a.dump, i), report::csv_jacobian(batches[i]));
    }

    const json inputs{{"f1", a.f1},
                      {"f2", a.f2},
                      {"radii", a.radii},
                      {"resolution", a.resolution},
                      {"tolerance", a.tol},
                      {"growth_factor", a.growth}};
    emit(out, report::envelope("jrange", argv, inputs, report::to_json(ev),
                               jacobian::to_string(ev.verdict), ev.errors));
    return 0;  // every range verdict is valid evidence
}

struct ConstructArgs {
    std::string h;
    double a = 0.0;
    double b = 1.0;
    std::string offset = "0,0";
    std::string grid = kDefaultGrid;
    int quad_order = 8;
    std::string dump;
};

int run_construct(const ConstructArgs& a, const std::vector<std::string>& argv,
                  std::ostream& out) {
    const auto h = expr::parse(a.h, expr::Mode::Complex1);
    const weierstrass::HoloData data(h, a.a, a.b, parse_point(a.offset));
    const GridSpec grid = parse_grid(a.grid);
    const auto rep = weierstrass::verify_construction(data, grid, a.quad_order);

    if (!a.dump.empty()) {
        const auto surface = weierstrass::build_surface(data, grid, a.quad_order);
        write_file(a.dump, report::csv_surface(surface));
    }

    json result = report::to_json(rep);
    result["d"] = json{{"re", data.d.real()}, {"im", data.d.imag()}};

    const json inputs{{"h", a.h},      {"a", a.a},
                      {"b", a.b},      {"offset", a.offset},
                      {"grid", a.grid}, {"quad_order", a.quad_order}};
    const bool ok = rep.identities_hold();
    emit(out, report::envelope("construct", argv, inputs, std::move(result),
                               ok ? "identities-hold" : "identities-violated", rep.errors));
    return ok ? 0 : 1;
}

struct FitArgs {
    std::string f1, f2;
    std::string grid = kFitGrid;
    int starts = 15;
    int max_iter = 2000;
};

int run_fit(const FitArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto e1 = expr::parse(a.f1, expr::Mode::Real2);
    const auto e2 = expr::parse(a.f2, expr::Mode::Real2);
    const GridSpec grid = parse_grid(a.grid);
    const auto field = geometry::make_expr_field(e1, e2);
    const auto params = isothermal::fit_shear(field, grid, a.starts, a.max_iter);
    const double harmonicity = isothermal::harmonicity_check(field, params, grid);

    json result = report::to_json(params);
    result["harmonicity"] = harmonicity;

    const json inputs{{"f1", a.f1},
                      {"f2", a.f2},
                      {"grid", a.grid},
                      {"starts", a.starts},
                      {"max_iter", a.max_iter}};
    emit(out, report::envelope("fit-isothermal", argv, inputs, std::move(result),
                               params.converged ? "converged" : "not-converged", {}));
    return params.converged ? 0 : 1;
}

struct SlagArgs {
    std::string u;
    double theta = 0.0;
    bool theta_given = false;
    std::string grid = kDefaultGrid;
    double tol = 1e-8;
};

int run_slag(const SlagArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto u = expr::parse(a.u, expr::Mode::Real2);
    const GridSpec grid = parse_grid(a.grid);

    double theta = a.theta;
    bool degenerate = false;
    if (!a.theta_given) {
        const auto fit = slag::fit_theta(u, grid);
        theta = fit.theta;
        degenerate = fit.degenerate;
    }
    const auto residual = slag::slag_residual(u, theta, grid);
    const auto fu = slag::fu_classify(u, grid, a.tol);

    const auto [g1, g2] = slag::gradient_graph(u);
    const auto graph_rep =
        geometry::grid_minimality_report(geometry::make_expr_field(g1, g2), grid);

    // Sampled range of J_f = det Hess u relative to 1 (the dichotomy's case split).
    double jmin = 0.0, jmax = 0.0;
    bool first = true, hits_one = false;
    std::vector<PointError> jerrors;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const Point2 p = grid.point(i);
        try {
            const Jet2 j = expr::eval_jet2(u, p.x, p.y);
            const double det = j.dxx * j.dyy - j.dxy * j.dxy;
            if (first || det < jmin) jmin = det;
            if (first || det > jmax) jmax = det;
            first = false;
            if (std::fabs(det - 1.0) <= a.tol) hits_one = true;
        } catch (const expr::EvalError& e) {
            jerrors.push_back({p, e.what()});
        }
    }
    std::string j_case = "mixed";
    if (!first) {
        if (jmin > 1.0)
            j_case = "all_above_one";
        else if (jmax < 1.0)
            j_case = "all_below_one";
        else if (jmax - jmin <= 2.0 * a.tol && hits_one)
            j_case = "all_equal_one";
        else if (hits_one)
            j_case = "crosses_one";
    }

    json result{
        {"theta", theta},
        {"theta_fitted", !a.theta_given},
        {"theta_degenerate", degenerate},
        {"max_residual", residual.max_abs},
        {"worst_point", report::to_json(residual.worst)},
        {"fu",
         json{{"verdict", slag::to_string(fu.verdict)},
              {"max_abs_laplacian", fu.max_abs_laplacian},
              {"max_abs_third", fu.max_abs_third},
              {"tie", fu.tie},
              {"consistency_warning", fu.consistency_warning}}},
        {"gradient_graph",
         json{{"f1", g1.str()}, {"f2", g2.str()}, {"minimality", report::to_json(graph_rep)}}},
        {"j_min", jmin},
        {"j_max", jmax},
        {"j_case", j_case},
    };

    std::vector<PointError> errors = residual.errors;
    errors.insert(errors.end(), jerrors.begin(), jerrors.end());

    json inputs{{"u", a.u}, {"grid", a.grid}, {"tolerance", a.tol}};
    inputs["theta"] = a.theta_given ? json(a.theta) : json(nullptr);

    const bool solves = residual.max_abs < a.tol;
    emit(out, report::envelope("slag", argv, inputs, std::move(result),
                               solves ? "slag-solution" : "not-a-solution", errors));
    return solves ? 0 : 1;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    bool pass;
    std::string measured;
};

std::vector<Check> run_selftest_checks() {
    std::vector<Check> checks;
    const auto push = [&](const std::string& name, bool pass, double measured) {
        checks.push_back({name, pass, report::format_double(measured)});
    };

    const std::string osf1 = "0.5*(exp(x)-3*exp(-x))*cos(y/2)";
    const std::string osf2 = "-0.5*(exp(x)-3*exp(-x))*sin(y/2)";
    const auto f1 = expr::parse(osf1, expr::Mode::Real2);
    const auto f2 = expr::parse(osf2, expr::Mode::Real2);
    const auto osserman = geometry::make_expr_field(f1, f2);

    {
        const auto reparsed = expr::parse(f1.str(), expr::Mode::Real2);
        checks.push_back({"expression print/parse round-trip",
                          expr::structurally_equal(f1.root, reparsed.root), "ast"});
    }
    {
        const Jet2 j = expr::eval_jet2(expr::parse("x^2-y^2", expr::Mode::Real2), 1.0, 2.0);
        const bool pass = j.v == -3.0 && j.dx == 2.0 && j.dy == -4.0 && j.dxx == 2.0 &&
                          j.dxy == 0.0 && j.dyy == -2.0;
        push("second-order jet of x^2-y^2 at (1,2)", pass, j.v);
    }
    {
        const auto rep = geometry::grid_minimality_report(
            osserman, GridSpec(-2, 2, -2, 2, 21, 21), 1e-9);
        push("shear example graph is minimal", rep.minimal && rep.errors.empty(),
             rep.max_residual_norm);
        push("mean curvature vanishes on the example", rep.max_abs_mean_curvature < 1e-9,
             rep.max_abs_mean_curvature);
    }
    {
        double worst = 0.0;
        for (const double x : {-2.0, -1.0, -0.25, 0.0, 0.55, 1.0, 2.0}) {
            const auto j = osserman({x, 0.7 * x - 0.3});
            const double expected = -(std::exp(2 * x) - 9 * std::exp(-2 * x)) / 8.0;
            worst = std::max(worst,
                             std::fabs(jacobian::jacobian(j) - expected) /
                                 std::max(1.0, std::fabs(expected)));
        }
        push("closed-form Jacobian agrees", worst < 1e-12, worst);
    }
    {
        const GridSpec grid(-2, 2, -2, 2, 21, 21);
        const auto z2 = geometry::make_expr_field(
            expr::parse("x^2-y^2", expr::Mode::Real2), expr::parse("2*x*y", expr::Mode::Real2));
        const auto zb2 = geometry::make_expr_field(
            expr::parse("x^2-y^2", expr::Mode::Real2),
            expr::parse("-2*x*y", expr::Mode::Real2));
        const bool pass =
            jacobian::classify_cr(z2, grid).verdict == jacobian::CrClass::Holomorphic &&
            jacobian::classify_cr(zb2, grid).verdict == jacobian::CrClass::AntiHolomorphic &&
            jacobian::classify_cr(osserman, grid).verdict == jacobian::CrClass::Neither;
        checks.push_back({"Cauchy-Riemann classification", pass, "3 maps"});
    }
    {
        const auto ev = jacobian::jacobian_range(osserman, {1.0, 2.0, 3.0}, 41);
        const bool pass = ev.verdict == jacobian::RangeVerdict::FullRangeEvidence &&
                          ev.sampled_min < -50.0 && ev.sampled_max > 400.0;
        push("Jacobian range evidence (full range)", pass, ev.sampled_min);
    }
    {
        const weierstrass::HoloData seed(expr::parse("exp(w)", expr::Mode::Complex1), 0.0, 2.0);
        const auto rep =
            weierstrass::verify_construction(seed, GridSpec(-2, 2, -2, 2, 11, 11), 8);
        push("construction identities", rep.identities_hold(), rep.max_residual_norm);
        const auto jets = weierstrass::graph_jets(seed, {0.0, 0.0}, 8);
        push("constructed Jacobian at origin equals 1",
             std::fabs(jacobian::jacobian(jets) - 1.0) < 1e-12,
             jacobian::jacobian(jets));
    }
    {
        const weierstrass::HoloData seed(expr::parse("w*w+5", expr::Mode::Complex1), 1.0, 1.5);
        std::mt19937_64 rng(kSelftestSeed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 64; ++k) {
            const std::complex<double> w(dist(rng), dist(rng));
            worst = std::max(worst,
                             std::abs(weierstrass::phi_components(seed, w).sum_of_squares()));
        }
        push("quadratic relation on random samples", worst < 1e-12, worst);
    }
    {
        const auto params =
            isothermal::fit_shear(osserman, parse_grid(kFitGrid), 15, 2000);
        const double harmonicity =
            isothermal::harmonicity_check(osserman, params, parse_grid(kFitGrid));
        const bool pass = std::fabs(params.a) < 1e-4 && std::fabs(params.b - 2.0) < 1e-4 &&
                          harmonicity < 1e-9;
        push("isothermal shear recovered (a,b)=(0,2)", pass, params.b);
    }
    {
        const GridSpec grid(-2, 2, -2, 2, 21, 21);
        const auto quad = expr::parse("x^2+y^2", expr::Mode::Real2);
        const auto fit = slag::fit_theta(quad, grid);
        const bool theta_ok =
            std::fabs(fit.theta - std::atan2(4.0, 3.0)) < 1e-9 && fit.residual < 1e-12;
        push("theta fit for the quadratic potential", theta_ok, fit.theta);
        const auto harm = expr::parse("exp(x)*cos(y)", expr::Mode::Real2);
        const auto hfit = slag::fit_theta(harm, grid);
        const auto [g1, g2] = slag::gradient_graph(harm);
        const auto graph = geometry::grid_minimality_report(
            geometry::make_expr_field(g1, g2), grid);
        const bool harm_ok =
            std::fabs(hfit.theta) < 1e-12 && hfit.residual < 1e-12 &&
            slag::fu_classify(harm, grid).verdict == slag::FuClass::Harmonic &&
            graph.minimal;
        push("harmonic potential checks", harm_ok, hfit.residual);
        const bool other_ok = slag::fu_classify(expr::parse("x^4", expr::Mode::Real2), grid)
                                  .verdict == slag::FuClass::Other;
        checks.push_back({"quartic potential classified Other", other_ok, "x^4"});
    }
    return checks;
}

int run_selftest(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    const auto checks = run_selftest_checks();
    std::size_t failed = 0;
    err << "minigraph selftest\n";
    for (const auto& c : checks) {
        err << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << " (" << c.measured << ")\n";
        if (!c.pass) ++failed;
    }
    err << (failed == 0 ? "all checks passed\n"
                        : std::to_string(failed) + " check(s) failed\n");

    json rows = json::array();
    for (const auto& c : checks)
        rows.push_back(json{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
    const json result{{"checks", rows},
                      {"total", checks.size()},
                      {"failed", failed}};
    emit(out, report::envelope("selftest", argv, json::object(), result,
                               failed == 0 ? "all-passed" : "failures", {}, kSelftestSeed));
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"analysis toolkit for two-dimensional minimal graphs in R^4", "minigraph"};
    app.require_subcommand(1);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "minimal-surface-equation residual and mean curvature over a grid");
    verify->add_option("--f1", verify_args.f1, "first graph component f1(x,y)")->required();
    verify->add_option("--f2", verify_args.f2, "second graph component f2(x,y)")->required();
    verify->add_option("--grid", verify_args.grid, "grid spec X0:X1:NX,Y0:Y1:NY");
    verify->add_option("--tol", verify_args.tol, "minimality tolerance on the residual norm");
    verify->add_option("--dump", verify_args.dump, "write per-point CSV (x,y,res1,res2,H1,H2)");

    ClassifyArgs classify_args;
    auto* classify =
        app.add_subcommand("classify", "holomorphic / anti-holomorphic / neither");
    classify->add_option("--f1", classify_args.f1, "first graph component")->required();
    classify->add_option("--f2", classify_args.f2, "second graph component")->required();
    classify->add_option("--grid", classify_args.grid, "grid spec");
    classify->add_option("--tol", classify_args.tol, "max-modulus tolerance");

    JrangeArgs jrange_args;
    auto* jrange = app.add_subcommand("jrange", "sampled evidence on the range of J_f");
    jrange->add_option("--f1", jrange_args.f1, "first graph component")->required();
    jrange->add_option("--f2", jrange_args.f2, "second graph component")->required();
    jrange->add_option("--radii", jrange_args.radii, "comma-separated increasing radii");
    jrange->add_option("--resolution", jrange_args.resolution, "samples per axis and radius");
    jrange->add_option("--tol", jrange_args.tol, "one-sidedness tolerance (times scale)");
    jrange->add_option("--growth", jrange_args.growth, "growth factor for range evidence");
    jrange->add_option("--dump", jrange_args.dump, "CSV base path, one file per radius");

    ConstructArgs construct_args;
    auto* construct =
        app.add_subcommand("construct", "build a minimal graph from seed (h, a, b)");
    construct->set_help_flag("--help", "print help");  // frees -h for the seed option
    construct->add_option("--h", construct_args.h, "holomorphic seed h(w), nowhere zero")
        ->required();
    construct->add_option("--a", construct_args.a, "shear constant a")->required();
    construct->add_option("--b", construct_args.b, "shear constant b > 0")->required();
    construct->add_option("--offset", construct_args.offset, "f value at w=0, as X,Y");
    construct->add_option("--grid", construct_args.grid, "grid in the w-plane");
    construct->add_option("--quad-order", construct_args.quad_order,
                          "Gauss-Legendre order (>= 4)");
    construct->add_option("--dump", construct_args.dump,
                          "write surface CSV (u,v,x,y,f1,f2,J)");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit-isothermal",
                                   "recover shear constants (a, b) making (u,v) isothermal");
    fit->add_option("--f1", fit_args.f1, "first graph component")->required();
    fit->add_option("--f2", fit_args.f2, "second graph component")->required();
    fit->add_option("--grid", fit_args.grid, "fitting grid");
    fit->add_option("--starts", fit_args.starts, "multi-start count (1..15)");
    fit->add_option("--max-iter", fit_args.max_iter, "simplex iteration cap");

    SlagArgs slag_args;
    auto* slag_cmd = app.add_subcommand("slag", "special Lagrangian residual and dichotomy");
    slag_cmd->add_option("--u", slag_args.u, "potential u(x,y)")->required();
    auto* theta_opt = slag_cmd->add_option("--theta", slag_args.theta,
                                           "phase in radians (omit to fit it)");
    slag_cmd->add_option("--grid", slag_args.grid, "grid spec");
    slag_cmd->add_option("--tol", slag_args.tol, "residual/classification tolerance");

    auto* selftest = app.add_subcommand("selftest", "run the built-in example checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(verify_args, args, out);
        if (classify->parsed()) return run_classify(classify_args, args, out);
        if (jrange->parsed()) return run_jrange(jrange_args, args, out);
        if (construct->parsed()) return run_construct(construct_args, args, out);
        if (fit->parsed()) return run_fit(fit_args, args, out);
        if (slag_cmd->parsed()) {
            slag_args.theta_given = theta_opt->count() > 0;
            return run_slag(slag_args, args, out);
        }
        if (selftest->parsed()) return run_selftest(args, out, err);
    } catch (const expr::ParseError& e) {
        err << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace minigraph::cli
