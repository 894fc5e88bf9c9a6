#include "minigraph/slag.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "minigraph/parallel.hpp"

namespace minigraph::slag {

SlagProblem::SlagProblem(expr::Expr potential, std::optional<double> theta_)
    : u(std::move(potential)), theta(theta_) {
    if (u.mode != expr::Mode::Real2)
        throw std::invalid_argument("potential must be a real-mode expression");
}

namespace {

struct PointData {
    bool ok = false;
    double lap = 0.0;       // A = u_xx + u_yy
    double dethm1 = 0.0;    // B = u_xx u_yy - u_xy^2 - 1
    std::string error;
};

std::vector<PointData> scan(const expr::Expr& u, const GridSpec& grid) {
    if (grid.empty()) throw std::invalid_argument("empty grid");
    const std::size_t n = grid.count();
    std::vector<PointData> data(n);
    parallel_for(n, [&](std::size_t i) {
        PointData& s = data[i];
        const Point2 p = grid.point(i);
        try {
            const Jet2 j = expr::eval_jet2(u, p.x, p.y);
            s.lap = j.dxx + j.dyy;
            s.dethm1 = j.dxx * j.dyy - j.dxy * j.dxy - 1.0;
            s.ok = true;
        } catch (const expr::EvalError& e) {
            s.error = e.what();
        }
    });
    return data;
}

double residual_at(const PointData& s, double c, double sn) {
    return std::fabs(c * s.lap - sn * s.dethm1);
}

double max_residual(const std::vector<PointData>& data, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    double m = 0.0;
    for (const auto& s : data)
        if (s.ok) m = std::max(m, residual_at(s, c, sn));
    return m;
}

}  // namespace

ResidualScan slag_residual(const expr::Expr& u, double theta, const GridSpec& grid) {
    const auto data = scan(u, grid);
    const double c = std::cos(theta), sn = std::sin(theta);
    ResidualScan out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& s = data[i];
        if (!s.ok) {
            out.errors.push_back({grid.point(i), s.error});
            continue;
        }
        ++out.points;
        const double r = residual_at(s, c, sn);
        if (r >= out.max_abs) {
            out.max_abs = r;
            out.worst = grid.point(i);
        }
    }
    return out;
}

ThetaFit fit_theta(const expr::Expr& u, const GridSpec& grid) {
    const auto data = scan(u, grid);

    double saa = 0.0, sab = 0.0, sbb = 0.0;
    bool all_tiny = true;
    for (const auto& s : data) {
        if (!s.ok) continue;
        saa += s.lap * s.lap;
        sab += s.lap * s.dethm1;
        sbb += s.dethm1 * s.dethm1;
        if (std::fabs(s.lap) >= 1e-14 || std::fabs(s.dethm1) >= 1e-14) all_tiny = false;
    }

    ThetaFit fit;
    if (all_tiny) {
        fit.degenerate = true;
        fit.theta = 0.0;
        fit.residual = max_residual(data, 0.0);
        return fit;
    }

    // Leading eigendirection of [[saa, sab],[sab, sbb]] makes angle alpha with
    // the A-axis; the residual-minimizing theta is pi/2 - alpha (mod pi).
    const double alpha = 0.5 * std::atan2(2.0 * sab, saa - sbb);
    const double pi = std::numbers::pi;
    double best_theta = 0.0, best_res = 0.0;
    bool first = true;
    for (const double cand : {pi / 2.0 - alpha, pi - alpha, -alpha}) {
        double t = std::fmod(cand, pi);
        if (t < 0.0) t += pi;
        const double r = max_residual(data, t);
        if (first || r < best_res) {
            best_theta = t;
            best_res = r;
            first = false;
        }
    }
    fit.theta = best_theta;
    fit.residual = best_res;
    return fit;
}

std::pair<expr::Expr, expr::Expr> gradient_graph(const expr::Expr& u) {
    if (u.mode != expr::Mode::Real2)
        throw std::invalid_argument("potential must be a real-mode expression");
    return {expr::differentiate(u, "x"), expr::differentiate(u, "y")};
}

const char* to_string(FuClass c) {
    switch (c) {
        case FuClass::Harmonic: return "Harmonic";
        case FuClass::Quadratic: return "Quadratic";
        case FuClass::Other: return "Other";
    }
    return "?";
}

FuReport fu_classify(const expr::Expr& u, const GridSpec& grid, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (grid.empty()) throw std::invalid_argument("empty grid");

    // Six third partials as derivatives of the three Hessian entries; the
    // mixed ones come out in both differentiation orders.
    const expr::Expr ux = expr::differentiate(u, "x");
    const expr::Expr uy = expr::differentiate(u, "y");
    const expr::Expr uxx = expr::differentiate(ux, "x");
    const expr::Expr uxy = expr::differentiate(ux, "y");
    const expr::Expr uyy = expr::differentiate(uy, "y");
    const expr::Expr thirds[6] = {
        expr::differentiate(uxx, "x"), expr::differentiate(uxx, "y"),
        expr::differentiate(uxy, "x"), expr::differentiate(uxy, "y"),
        expr::differentiate(uyy, "x"), expr::differentiate(uyy, "y"),
    };

    FuReport report;
    report.tolerance = tol;
    const std::size_t n = grid.count();
    struct Slot {
        bool ok = false;
        double lap = 0.0, third = 0.0;
        std::string error;
    };
    std::vector<Slot> slots(n);
    parallel_for(n, [&](std::size_t i) {
        Slot& s = slots[i];
        const Point2 p = grid.point(i);
        try {
            const Jet2 j = expr::eval_jet2(u, p.x, p.y);
            s.lap = std::fabs(j.dxx + j.dyy);
            for (const auto& t : thirds)
                s.third = std::max(s.third, std::fabs(expr::eval_jet2(t, p.x, p.y).v));
            s.ok = true;
        } catch (const expr::EvalError& e) {
            s.error = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!slots[i].ok) {
            report.errors.push_back({grid.point(i), slots[i].error});
            continue;
        }
        report.max_abs_laplacian = std::max(report.max_abs_laplacian, slots[i].lap);
        report.max_abs_third = std::max(report.max_abs_third, slots[i].third);
    }

    const bool harmonic = report.max_abs_laplacian < tol;
    const bool quadratic = report.max_abs_third < tol;
    if (quadratic) {
        report.verdict = FuClass::Quadratic;
        report.tie = harmonic;
    } else if (harmonic) {
        report.verdict = FuClass::Harmonic;
    } else {
        report.verdict = FuClass::Other;
        report.consistency_warning = fit_theta(u, grid).residual < tol;
    }
    return report;
}

}  // namespace minigraph::slag
