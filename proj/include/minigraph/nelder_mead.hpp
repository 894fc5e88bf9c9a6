#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace minigraph::optim {

struct NelderMeadOptions {
    double edge = 0.5;         // initial simplex edge along each axis
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double diameter_tol = 1e-10;  // stop when max pairwise vertex distance is below
    int max_iter = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;  // diameter criterion met before max_iter
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start,
                                    const NelderMeadOptions& opt = {}) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> xs(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) xs[i + 1][i] += opt.edge;
    std::vector<double> fs(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fs[i] = f(xs[i]);

    auto order = [&] {
        for (std::size_t i = 1; i <= dim; ++i) {
            auto xk = xs[i];
            auto fk = fs[i];
            std::size_t j = i;
            while (j > 0 && fs[j - 1] > fk) {
                xs[j] = xs[j - 1];
                fs[j] = fs[j - 1];
                --j;
            }
            xs[j] = std::move(xk);
            fs[j] = fk;
        }
    };
    auto diameter = [&] {
        double dmax = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t j = i + 1; j <= dim; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double dk = xs[i][k] - xs[j][k];
                    s += dk * dk;
                }
                dmax = std::max(dmax, s);
            }
        return std::sqrt(dmax);
    };

    NelderMeadResult result;
    int iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        order();
        if (diameter() < opt.diameter_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += xs[i][k] / double(dim);

        auto blend = [&](const std::vector<double>& away, double c) {
            std::vector<double> p(dim);
            for (std::size_t k = 0; k < dim; ++k) p[k] = centroid[k] + c * (centroid[k] - away[k]);
            return p;
        };

        const auto reflected = blend(xs[dim], opt.reflection);
        const double fr = f(reflected);
        if (fr < fs[0]) {
            const auto expanded = blend(xs[dim], opt.reflection * opt.expansion);
            const double fe = f(expanded);
            if (fe < fr) {
                xs[dim] = expanded;
                fs[dim] = fe;
            } else {
                xs[dim] = reflected;
                fs[dim] = fr;
            }
            continue;
        }
        if (fr < fs[dim - 1]) {
            xs[dim] = reflected;
            fs[dim] = fr;
            continue;
        }
        const bool outside = fr < fs[dim];
        const auto contracted =
            outside ? blend(xs[dim], opt.reflection * opt.contraction)
                    : blend(xs[dim], -opt.contraction);
        const double fc = f(contracted);
        if (fc < (outside ? fr : fs[dim])) {
            xs[dim] = contracted;
            fs[dim] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k)
                xs[i][k] = xs[0][k] + opt.shrink * (xs[i][k] - xs[0][k]);
            fs[i] = f(xs[i]);
        }
    }
    order();
    result.x = xs[0];
    result.value = fs[0];
    result.iterations = iter;
    return result;
}

}  // namespace minigraph::optim
