#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "minigraph/expr.hpp"
#include "minigraph/geometry.hpp"
#include "minigraph/grid.hpp"

namespace minigraph::weierstrass {

using Complex = std::complex<double>;

// The seed h must be nowhere vanishing on the working domain; construction
// rejects quadrature nodes where |h| falls under 1e-13 * (1 + |d|).
class ZeroOfHError : public std::runtime_error {
public:
    ZeroOfHError(Complex where, const std::string& what);
    Complex where() const { return where_; }

private:
    Complex where_;
};

class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Holomorphic seed of the construction: h in complex mode, shear constants
// a and b > 0, and the derived constant d = 1 + (a - i b)^2. origin_offset
// fixes the integration constants: f(w=0) = origin_offset.
struct HoloData {
    expr::Expr h;
    double a = 0.0;
    double b = 1.0;
    Complex d{};
    Point2 origin_offset{0.0, 0.0};

    HoloData(expr::Expr h_expr, double a_, double b_, Point2 offset = {0.0, 0.0});
};

Complex shear_constant(double a, double b);  // d = 1 + (a - i b)^2

// phi1 = 1, phi2 = a - i b, phi3 = (h - d/h)/2, phi4 = i (h + d/h)/2.
// The quadruple satisfies phi1^2 + ... + phi4^2 = 0 and phi3 - i phi4 = h.
struct PhiQuad {
    Complex phi1, phi2, phi3, phi4;

    Complex sum_of_squares() const {
        return phi1 * phi1 + phi2 * phi2 + phi3 * phi3 + phi4 * phi4;
    }
};

PhiQuad phi_components(const HoloData& data, Complex w);

// d/dw of phi3 and phi4, needed for the second-order jets of the graph map.
struct PhiDerivs {
    Complex dphi3, dphi4;
};

PhiDerivs phi_derivatives(const HoloData& data, Complex w);

// Second derivatives of phi(u,v) = f1 and psi(u,v) = f2 in the isothermal
// frame. phi_vv is the bitwise negation of phi_uu: harmonicity is exact.
struct IsothermalHessians {
    double phi_uu, phi_uv, phi_vv;
    double psi_uu, psi_uv, psi_vv;
};

IsothermalHessians isothermal_hessians(const HoloData& data, Complex w);

// Composite Gauss-Legendre integral of (phi3, phi4) along the straight
// segment [z0, z1], split into the given number of equal panels.
std::pair<Complex, Complex> integrate_segment(const HoloData& data, Complex z0, Complex z1,
                                              int quad_order, int panels);

// Surface point (x, y, f1, f2) at parameter w:
//   x = Re w,  y = a Re w + b Im w,
//   f1 = Re int_0^w phi3 + offset.x,  f2 = Re int_0^w phi4 + offset.y,
// integrating along the straight segment from 0 with panel count ~ |w|.
std::array<double, 4> integrate_surface(const HoloData& data, Complex w, int quad_order = 8);

// Full second-order jet of the reconstructed graph map at (x, y). First and
// second derivatives are analytic (phi3, phi4 and their w-derivatives through
// the shear chain rule); only the zeroth-order values use quadrature.
geometry::Jet2Map graph_jets(const HoloData& data, Point2 xy, int quad_order = 8);

geometry::JetField make_jet_field(const HoloData& data, int quad_order = 8);

struct ConstructionReport {
    double max_sum_phi_sq = 0.0;          // |phi1^2+...+phi4^2|
    double max_factorization_dev = 0.0;   // |(phi3-i phi4)(phi3+i phi4) + d|
    double max_h_identity_dev = 0.0;      // |(phi3 - i phi4) - h|
    double max_jphi_identity_dev = 0.0;   // |Im(phi3 conj(phi4)) - b J_f|
    double max_closed_form_dev = 0.0;     // |J_f - (-|h|^2 + |d|^2/|h|^2)/(4b)|
    double max_residual_norm = 0.0;       // minimal-surface residual of the jets
    std::size_t points = 0;
    int quad_order = 0;
    std::vector<PointError> errors;

    bool identities_hold(double tol_algebraic = 1e-12, double tol_numeric = 1e-9) const;
};

// Sweeps a grid in the w-plane and reports the worst deviation of each
// identity of the construction.
ConstructionReport verify_construction(const HoloData& data, const GridSpec& grid,
                                       int quad_order = 8);

struct SurfaceSample {
    double u, v;
    double x, y;
    double f1, f2;
    double jac;
};

struct ConstructedSurface {
    double a, b;
    Complex d;
    int quad_order;
    std::vector<SurfaceSample> samples;  // x = u and y = a u + b v hold exactly
    std::vector<geometry::Jet2Map> jets;  // cached per-sample jets, same order
};

ConstructedSurface build_surface(const HoloData& data, const GridSpec& grid,
                                 int quad_order = 8);

}  // namespace minigraph::weierstrass
