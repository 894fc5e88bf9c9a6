#pragma once

#include <vector>

namespace minigraph::quadrature {

// Gauss-Legendre nodes and weights on [-1, 1]. Computed once per order by
// Newton iteration on the Legendre polynomial and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

}  // namespace minigraph::quadrature
