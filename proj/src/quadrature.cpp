#include "minigraph/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace minigraph::quadrature {

namespace {

// Legendre P_n and P_n' by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
    }
    p = n == 0 ? p0 : p1;
    dp = n == 0 ? 0.0 : double(n) * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendre compute(int order) {
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-based initial guess, then Newton
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre(order, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        legendre(order, x, p, dp);
        gl.nodes[i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1 || order > 64) throw std::invalid_argument("quadrature order out of range");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute(order)).first;
    return it->second;
}

}  // namespace minigraph::quadrature
