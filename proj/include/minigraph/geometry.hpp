#pragma once

#include <array>
#include <functional>
#include <vector>

#include "minigraph/expr.hpp"
#include "minigraph/grid.hpp"
#include "minigraph/jets.hpp"

namespace minigraph::geometry {

using Vec2 = std::array<double, 2>;
using Vec4 = std::array<double, 4>;

// Full second-order data of the graph map f = (f1, f2) at one point.
struct Jet2Map {
    Jet2 f1, f2;
    Point2 at;
};

// Evaluates the map's jet at a point; the common carrier for expression-backed
// maps and for surfaces reconstructed from holomorphic seed data.
using JetField = std::function<Jet2Map(Point2)>;

JetField make_expr_field(const expr::Expr& f1, const expr::Expr& f2);

struct MetricCoeffs {
    double g11 = 1.0, g12 = 0.0, g22 = 1.0;
    double det() const { return g11 * g22 - g12 * g12; }
};

struct SecondFormCoeffs {
    double b11 = 0.0, b12 = 0.0, b22 = 0.0;
    Vec4 xi{};
};

struct NormalFrame {
    Vec4 xi1{}, xi2{};
};

double dot4(const Vec4& a, const Vec4& b);
double norm4(const Vec4& a);

// Tangent vectors X_x = (1,0,f1_x,f2_x), X_y = (0,1,f1_y,f2_y).
Vec4 tangent_x(const Jet2Map& j);
Vec4 tangent_y(const Jet2Map& j);

// g11 = 1+|f_x|^2, g12 = <f_x,f_y>, g22 = 1+|f_y|^2.
MetricCoeffs first_fundamental_form(const Jet2Map& j);

// Gram-Schmidt of the ambient e3, e4 against the tangent plane, in that
// order. Always well defined over a graph (e3, e4 are never tangent).
NormalFrame normal_frame(const Jet2Map& j);

// b_ij(xi) = <X_ij, xi>. Rejects xi whose unit-normality defect exceeds 1e-8.
SecondFormCoeffs second_fundamental_form(const Jet2Map& j, const Vec4& xi);

// H(xi) = (g22 b11 - 2 g12 b12 + g11 b22) / (2 (g11 g22 - g12^2)).
double mean_curvature(const Jet2Map& j, const Vec4& xi);

// Left-hand side of (1+|f_y|^2) f_xx - 2 <f_x,f_y> f_xy + (1+|f_x|^2) f_yy,
// an R^2-valued quantity that vanishes exactly where the graph is minimal.
Vec2 minimal_residual(const Jet2Map& j);

struct MinimalityReport {
    double max_residual_norm = 0.0;
    double mean_residual_norm = 0.0;
    double max_abs_mean_curvature = 0.0;
    Point2 worst_point{};
    double min_metric_det = 0.0;
    std::size_t points = 0;
    double tolerance = 0.0;
    bool minimal = false;
    std::vector<PointError> errors;
};

// Per-point samples for CSV dumps: x,y,res1,res2,H1,H2.
struct MinimalitySample {
    Point2 at;
    Vec2 residual{};
    double h1 = 0.0, h2 = 0.0;
};

MinimalityReport grid_minimality_report(const JetField& field, const GridSpec& grid,
                                        double tolerance = 1e-8,
                                        std::vector<MinimalitySample>* samples = nullptr);

}  // namespace minigraph::geometry
