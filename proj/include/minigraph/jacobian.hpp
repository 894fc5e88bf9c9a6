#pragma once

#include <complex>
#include <vector>

#include "minigraph/geometry.hpp"
#include "minigraph/grid.hpp"

namespace minigraph::jacobian {

// J_f = det(df) = f1_x f2_y - f1_y f2_x.
double jacobian(const geometry::Jet2Map& j);

// Derivatives of f = f1 + i f2 with respect to z = x+iy and its conjugate:
//   f_z    = ((f1_x + f2_y) + i (f2_x - f1_y)) / 2
//   f_zbar = ((f1_x - f2_y) + i (f2_x + f1_y)) / 2
// and |f_z|^2 - |f_zbar|^2 equals the Jacobian.
struct WirtingerPair {
    std::complex<double> fz;
    std::complex<double> fzbar;
};

WirtingerPair wirtinger(const geometry::Jet2Map& j);

enum class CrClass { Holomorphic, AntiHolomorphic, Neither };

struct CrReport {
    CrClass verdict = CrClass::Neither;
    double max_abs_fz = 0.0;
    double max_abs_fzbar = 0.0;
    // Both Wirtinger derivatives vanished on the grid, i.e. f is constant.
    bool degenerate = false;
    double tolerance = 0.0;
    std::vector<PointError> errors;
};

// Holomorphic when max |f_zbar| < tol on the grid, anti-holomorphic when
// max |f_z| < tol; a degenerate (constant) map reports Holomorphic.
CrReport classify_cr(const geometry::JetField& field, const GridSpec& grid, double tol = 1e-8);

enum class RangeVerdict {
    OneSidedNonNegative,
    OneSidedNonPositive,
    BoundedWindow,
    FullRangeEvidence
};

const char* to_string(RangeVerdict v);
const char* to_string(CrClass c);

// Sampled evidence about the range of J_f. Verdicts are evidence at the
// sampled radii, never a proof:
//  - FullRangeEvidence: cumulative max and |min| both grew by >= growth_factor
//    from the smallest to the largest radius, on opposite signs.
//  - BoundedWindow: neither end shows growth (covers planes / affine maps).
//  - OneSidedNonNegative / OneSidedNonPositive: one end pinned at 0 within
//    tol*scale while the other end grows.
struct RangeEvidence {
    std::vector<double> radii;
    // cumulative over all samples up to each radius, hence monotone
    std::vector<double> min_by_radius;
    std::vector<double> max_by_radius;
    double sampled_min = 0.0;
    double sampled_max = 0.0;
    Point2 argmin{};
    Point2 argmax{};
    // sampling cannot settle whether the infimum 0 is attained or approached;
    // this only records whether some sample was exactly 0
    bool zero_hit = false;
    double tolerance = 0.0;
    double growth_factor = 0.0;
    int resolution = 0;
    RangeVerdict verdict = RangeVerdict::BoundedWindow;
    std::vector<PointError> errors;
};

// Samples J_f on square grids [-r,r]^2 (resolution x resolution) for each
// radius. Radii must be positive and strictly increasing.
RangeEvidence jacobian_range(const geometry::JetField& field, const std::vector<double>& radii,
                             int resolution, double tol = 1e-8, double growth_factor = 10.0);

// Raw samples for CSV dumps (x,y,J), one batch per radius.
std::vector<std::vector<std::array<double, 3>>> jacobian_range_samples(
    const geometry::JetField& field, const std::vector<double>& radii, int resolution);

}  // namespace minigraph::jacobian
