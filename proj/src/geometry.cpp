#include "minigraph/geometry.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "minigraph/parallel.hpp"

namespace minigraph::geometry {

JetField make_expr_field(const expr::Expr& f1, const expr::Expr& f2) {
    if (f1.mode != expr::Mode::Real2 || f2.mode != expr::Mode::Real2)
        throw std::invalid_argument("graph components must be real-mode expressions");
    return [f1, f2](Point2 p) {
        return Jet2Map{expr::eval_jet2(f1, p.x, p.y), expr::eval_jet2(f2, p.x, p.y), p};
    };
}

double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

Vec4 tangent_x(const Jet2Map& j) { return {1.0, 0.0, j.f1.dx, j.f2.dx}; }
Vec4 tangent_y(const Jet2Map& j) { return {0.0, 1.0, j.f1.dy, j.f2.dy}; }

MetricCoeffs first_fundamental_form(const Jet2Map& j) {
    MetricCoeffs g;
    g.g11 = 1.0 + j.f1.dx * j.f1.dx + j.f2.dx * j.f2.dx;
    g.g12 = j.f1.dx * j.f1.dy + j.f2.dx * j.f2.dy;
    g.g22 = 1.0 + j.f1.dy * j.f1.dy + j.f2.dy * j.f2.dy;
    return g;
}

namespace {

Vec4 axpy(Vec4 v, double c, const Vec4& u) {
    for (int k = 0; k < 4; ++k) v[k] -= c * u[k];
    return v;
}

Vec4 normalized(const Vec4& v) {
    const double n = norm4(v);
    return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

}  // namespace

NormalFrame normal_frame(const Jet2Map& j) {
    const Vec4 t1 = normalized(tangent_x(j));
    Vec4 t2 = axpy(tangent_y(j), dot4(tangent_y(j), t1), t1);
    t2 = normalized(t2);

    const Vec4 e3{0.0, 0.0, 1.0, 0.0};
    const Vec4 e4{0.0, 0.0, 0.0, 1.0};
    Vec4 xi1 = axpy(axpy(e3, dot4(e3, t1), t1), dot4(e3, t2), t2);
    xi1 = normalized(xi1);
    Vec4 xi2 = axpy(axpy(e4, dot4(e4, t1), t1), dot4(e4, t2), t2);
    xi2 = axpy(xi2, dot4(xi2, xi1), xi1);
    xi2 = normalized(xi2);
    return {xi1, xi2};
}

SecondFormCoeffs second_fundamental_form(const Jet2Map& j, const Vec4& xi) {
    const double unit_defect = std::fabs(norm4(xi) - 1.0);
    const double tangency = std::max(std::fabs(dot4(xi, tangent_x(j))),
                                     std::fabs(dot4(xi, tangent_y(j))));
    if (unit_defect > 1e-8 || tangency > 1e-8)
        throw std::invalid_argument("direction is not a unit normal of the graph");

    SecondFormCoeffs b;
    b.xi = xi;
    b.b11 = j.f1.dxx * xi[2] + j.f2.dxx * xi[3];
    b.b12 = j.f1.dxy * xi[2] + j.f2.dxy * xi[3];
    b.b22 = j.f1.dyy * xi[2] + j.f2.dyy * xi[3];
    return b;
}

double mean_curvature(const Jet2Map& j, const Vec4& xi) {
    const MetricCoeffs g = first_fundamental_form(j);
    const SecondFormCoeffs b = second_fundamental_form(j, xi);
    return (g.g22 * b.b11 - 2.0 * g.g12 * b.b12 + g.g11 * b.b22) / (2.0 * g.det());
}

Vec2 minimal_residual(const Jet2Map& j) {
    const double gx = 1.0 + j.f1.dx * j.f1.dx + j.f2.dx * j.f2.dx;  // 1+|f_x|^2
    const double gy = 1.0 + j.f1.dy * j.f1.dy + j.f2.dy * j.f2.dy;  // 1+|f_y|^2
    const double fxy = j.f1.dx * j.f1.dy + j.f2.dx * j.f2.dy;       // <f_x,f_y>
    return {gy * j.f1.dxx - 2.0 * fxy * j.f1.dxy + gx * j.f1.dyy,
            gy * j.f2.dxx - 2.0 * fxy * j.f2.dxy + gx * j.f2.dyy};
}

MinimalityReport grid_minimality_report(const JetField& field, const GridSpec& grid,
                                        double tolerance,
                                        std::vector<MinimalitySample>* samples) {
    if (grid.empty()) throw std::invalid_argument("empty grid");

    struct Slot {
        bool ok = false;
        double res_norm = 0.0;
        Vec2 res{};
        double h1 = 0.0, h2 = 0.0;
        double det = 0.0;
        std::string error;
    };
    const std::size_t n = grid.count();
    std::vector<Slot> slots(n);

    parallel_for(n, [&](std::size_t i) {
        Slot& s = slots[i];
        const Point2 p = grid.point(i);
        try {
            const Jet2Map j = field(p);
            s.res = minimal_residual(j);
            s.res_norm = std::hypot(s.res[0], s.res[1]);
            const NormalFrame frame = normal_frame(j);
            s.h1 = mean_curvature(j, frame.xi1);
            s.h2 = mean_curvature(j, frame.xi2);
            s.det = first_fundamental_form(j).det();
            s.ok = true;
        } catch (const expr::EvalError& e) {
            s.error = e.what();
        }
    });

    MinimalityReport report;
    report.tolerance = tolerance;
    report.min_metric_det = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    if (samples) samples->reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Slot& s = slots[i];
        const Point2 p = grid.point(i);
        if (!s.ok) {
            report.errors.push_back({p, s.error});
            continue;
        }
        ++report.points;
        sum += s.res_norm;
        if (s.res_norm >= report.max_residual_norm) {
            // >= so the worst point is defined even for an identically-zero field
            report.max_residual_norm = s.res_norm;
            report.worst_point = p;
        }
        report.max_abs_mean_curvature =
            std::max(report.max_abs_mean_curvature, std::max(std::fabs(s.h1), std::fabs(s.h2)));
        report.min_metric_det = std::min(report.min_metric_det, s.det);
        if (samples) samples->push_back({p, s.res, s.h1, s.h2});
    }
    if (report.points == 0) {
        report.min_metric_det = 0.0;
        report.minimal = false;
        return report;
    }
    report.mean_residual_norm = sum / double(report.points);
    report.minimal = report.max_residual_norm < tolerance;
    return report;
}

}  // namespace minigraph::geometry
