#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minigraph {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// One evaluation failure inside a grid sweep, kept with the point it came from.
struct PointError {
    Point2 at;
    std::string message;
};

// Uniform rectangular sampling lattice. Both endpoints are included on each
// axis, so nx and ny must be at least 2 for a usable grid.
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0;

    GridSpec() = default;
    GridSpec(double x0, double x1, double y0, double y1, int nx_, int ny_)
        : x_min(x0), x_max(x1), y_min(y0), y_max(y1), nx(nx_), ny(ny_) {
        if (!(x_min < x_max) || !(y_min < y_max))
            throw std::invalid_argument("grid bounds must satisfy min < max");
        if (nx < 2 || ny < 2)
            throw std::invalid_argument("grid needs at least 2 samples per axis");
    }

    static GridSpec square(double radius, int n) {
        return GridSpec(-radius, radius, -radius, radius, n, n);
    }

    bool empty() const { return nx < 2 || ny < 2; }
    std::size_t count() const { return empty() ? 0 : std::size_t(nx) * std::size_t(ny); }

    double x_at(int ix) const {
        return ix == nx - 1 ? x_max : x_min + (x_max - x_min) * double(ix) / double(nx - 1);
    }
    double y_at(int iy) const {
        return iy == ny - 1 ? y_max : y_min + (y_max - y_min) * double(iy) / double(ny - 1);
    }
    Point2 point(std::size_t i) const {
        return {x_at(int(i % std::size_t(nx))), y_at(int(i / std::size_t(nx)))};
    }
};

// Parses "X0:X1:NX,Y0:Y1:NY", e.g. "-2:2:41,-2:2:41".
GridSpec parse_grid(std::string_view text);

std::string format_grid(const GridSpec& g);

}  // namespace minigraph
