#include "minigraph/isothermal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "minigraph/nelder_mead.hpp"
#include "minigraph/parallel.hpp"

namespace minigraph::isothermal {

namespace {

// Defect evaluations only need the first fundamental form, which does not
// depend on (a, b); the fit caches it once per grid point.
std::vector<geometry::MetricCoeffs> metric_cache(const geometry::JetField& field,
                                                 const GridSpec& grid) {
    const std::size_t n = grid.count();
    std::vector<geometry::MetricCoeffs> cache(n);
    parallel_for(n, [&](std::size_t i) {
        cache[i] = geometry::first_fundamental_form(field(grid.point(i)));
    });
    return cache;
}

double defect_from_metric(const std::vector<geometry::MetricCoeffs>& cache, double a, double b) {
    // E = g11 + 2 a g12 + a^2 g22, F = b (g12 + a g22), G = b^2 g22
    double sum = 0.0;
    for (const auto& g : cache) {
        const double E = g.g11 + 2.0 * a * g.g12 + a * a * g.g22;
        const double F = b * (g.g12 + a * g.g22);
        const double G = b * b * g.g22;
        const double trace = E + G;
        sum += ((E - G) * (E - G) + 4.0 * F * F) / (trace * trace);
    }
    return sum / double(cache.size());
}

}  // namespace

double conformal_defect(const geometry::JetField& field, double a, double b,
                        const GridSpec& grid) {
    if (!(b > 0.0)) throw std::invalid_argument("shear constant b must be positive");
    if (grid.empty()) throw std::invalid_argument("empty grid");
    return defect_from_metric(metric_cache(field, grid), a, b);
}

ShearParams fit_shear(const geometry::JetField& field, const GridSpec& grid, int starts,
                      int max_iter) {
    if (starts < 1) throw std::invalid_argument("starts must be at least 1");
    if (grid.empty()) throw std::invalid_argument("empty grid");

    ShearParams params;

    const geometry::MinimalityReport minimality = geometry::grid_minimality_report(field, grid);
    if (!minimality.minimal) {
        std::ostringstream os;
        os << "NonMinimalInput: max residual norm " << minimality.max_residual_norm
           << " exceeds " << minimality.tolerance
           << "; isothermal shear parameters are only guaranteed for minimal graphs";
        params.note = os.str();
    }

    const auto cache = metric_cache(field, grid);
    const auto objective = [&cache](const std::vector<double>& p) {
        return defect_from_metric(cache, p[0], std::exp(p[1]));
    };

    // Center-first deterministic lattice in (a, log b).
    static constexpr double kA[] = {0.0, -1.0, 1.0, -2.0, 2.0};
    static constexpr double kLogB[] = {0.0, -1.0, 1.0};
    std::vector<std::array<double, 2>> lattice;
    for (const double a0 : kA)
        for (const double s0 : kLogB) lattice.push_back({a0, s0});
    if (lattice.size() > std::size_t(starts)) lattice.resize(std::size_t(starts));

    optim::NelderMeadOptions options;
    options.max_iter = max_iter;

    std::vector<ShearCandidate> found;
    for (const auto& start : lattice) {
        const auto run = optim::nelder_mead(objective, {start[0], start[1]}, options);
        const ShearCandidate cand{run.x[0], std::exp(run.x[1]), run.value};
        bool duplicate = false;
        for (auto& c : found) {
            if (std::fabs(c.a - cand.a) < 1e-6 && std::fabs(c.b - cand.b) < 1e-6) {
                duplicate = true;
                if (cand.defect < c.defect) c = cand;
                break;
            }
        }
        if (!duplicate) found.push_back(cand);
    }

    std::sort(found.begin(), found.end(),
              [](const ShearCandidate& l, const ShearCandidate& r) {
                  if (l.defect != r.defect) return l.defect < r.defect;
                  if (l.a != r.a) return l.a < r.a;
                  return l.b < r.b;
              });
    const ShearCandidate& best = found.front();
    params.a = best.a;
    params.b = best.b;
    params.defect = best.defect;
    params.converged = params.defect < 1e-8;
    for (const auto& c : found)
        if (c.defect <= 10.0 * best.defect || c.defect == best.defect)
            params.candidates.push_back(c);
    return params;
}

double harmonicity_check(const geometry::JetField& field, const ShearParams& params,
                         const GridSpec& grid) {
    if (!(params.b > 0.0)) throw std::invalid_argument("shear constant b must be positive");
    if (grid.empty()) throw std::invalid_argument("empty grid");
    const double a = params.a, b = params.b;

    const std::size_t n = grid.count();
    std::vector<double> worst(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        const Point2 uv = grid.point(i);
        const Point2 xy{uv.x, a * uv.x + b * uv.y};
        const geometry::Jet2Map j = field(xy);
        // phi_uu + phi_vv = f_xx + 2 a f_xy + (a^2 + b^2) f_yy
        const double lap1 = j.f1.dxx + 2.0 * a * j.f1.dxy + (a * a + b * b) * j.f1.dyy;
        const double lap2 = j.f2.dxx + 2.0 * a * j.f2.dxy + (a * a + b * b) * j.f2.dyy;
        worst[i] = std::max(std::fabs(lap1), std::fabs(lap2));
    });
    double out = 0.0;
    for (double v : worst) out = std::max(out, v);
    return out;
}

}  // namespace minigraph::isothermal
