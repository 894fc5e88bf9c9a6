#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "minigraph/expr.hpp"
#include "minigraph/geometry.hpp"
#include "minigraph/grid.hpp"

namespace minigraph::slag {

// A candidate potential u(x, y) for cos(theta) Lap u = sin(theta) (det Hess u - 1).
// theta absent means "fit it".
struct SlagProblem {
    expr::Expr u;
    std::optional<double> theta;

    explicit SlagProblem(expr::Expr potential, std::optional<double> theta_ = std::nullopt);
};

struct ResidualScan {
    double max_abs = 0.0;
    Point2 worst{};
    std::size_t points = 0;
    std::vector<PointError> errors;
};

// max over the grid of |cos(theta) (u_xx+u_yy) - sin(theta) (u_xx u_yy - u_xy^2 - 1)|.
ResidualScan slag_residual(const expr::Expr& u, double theta, const GridSpec& grid);

struct ThetaFit {
    double theta = 0.0;
    double residual = 0.0;  // max-abs residual at the fitted theta
    // A = Lap u and B = det Hess u - 1 vanished at every sample; theta is
    // unconstrained and reported as 0.
    bool degenerate = false;
};

// Least-squares fit of theta: the minimizing direction of sum (A cos - B sin)^2
// comes from the leading eigenvector of the Gram matrix of (A, B); the two
// stationary branches are compared on the max-abs residual and the smaller
// one wins. Returned theta lies in [0, pi).
ThetaFit fit_theta(const expr::Expr& u, const GridSpec& grid);

// f = grad u as a symbolic expression pair, usable by every other module.
std::pair<expr::Expr, expr::Expr> gradient_graph(const expr::Expr& u);

enum class FuClass { Harmonic, Quadratic, Other };
const char* to_string(FuClass c);

struct FuReport {
    FuClass verdict = FuClass::Other;
    double max_abs_laplacian = 0.0;
    double max_abs_third = 0.0;  // worst of the six symbolic third partials
    // verdict was Quadratic while the potential is also harmonic on the grid
    bool tie = false;
    // residual ~ 0 at the fitted theta yet the potential classified Other:
    // sampled evidence against the dichotomy, worth flagging, never a proof
    bool consistency_warning = false;
    double tolerance = 0.0;
    std::vector<PointError> errors;
};

// Sampled version of the dichotomy "entire solutions are harmonic or
// quadratic": Harmonic when max |Lap u| < tol, Quadratic when all third
// partials stay under tol, tie resolves to Quadratic.
FuReport fu_classify(const expr::Expr& u, const GridSpec& grid, double tol = 1e-8);

}  // namespace minigraph::slag
