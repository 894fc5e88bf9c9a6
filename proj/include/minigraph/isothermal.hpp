#pragma once

#include <string>
#include <vector>

#include "minigraph/geometry.hpp"
#include "minigraph/grid.hpp"

namespace minigraph::isothermal {

// Result of fitting the shear x = u, y = a u + b v that makes (u, v)
// isothermal for the graph. The defect is the minimized conformality defect;
// candidates lists every distinct multi-start minimum whose defect is within
// 10x of the best (parameter uniqueness is not asserted).
struct ShearCandidate {
    double a = 0.0;
    double b = 1.0;
    double defect = 0.0;
};

struct ShearParams {
    double a = 0.0;
    double b = 1.0;
    double defect = 0.0;
    bool converged = false;
    std::string note;  // set to a NonMinimalInput warning when applicable
    std::vector<ShearCandidate> candidates;
};

// Mean over the grid of ((E-G)^2 + 4 F^2) / (E+G)^2 with X_u = X_x + a X_y
// and X_v = b X_y. Dimensionless; zero exactly when (u,v) is isothermal at
// every sample.
double conformal_defect(const geometry::JetField& field, double a, double b,
                        const GridSpec& grid);

// Derivative-free simplex descent over (a, log b) from a deterministic
// multi-start lattice a in {0,-1,1,-2,2} x log b in {0,-1,1} (center-first
// order, truncated to `starts`).
ShearParams fit_shear(const geometry::JetField& field, const GridSpec& grid, int starts = 15,
                      int max_iter = 2000);

// Max over the (u,v) grid of |phi_uu + phi_vv| and |psi_uu + psi_vv| where
// phi(u,v) = f1(u, a u + b v), second derivatives by the shear chain rule.
double harmonicity_check(const geometry::JetField& field, const ShearParams& params,
                         const GridSpec& grid);

}  // namespace minigraph::isothermal
