#include "minigraph/grid.hpp"

#include <charconv>
#include <sstream>

namespace minigraph {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad grid spec \"" + std::string(text) + "\": " + what);
    }

    double number() {
        double v = 0.0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (res.ec != std::errc()) fail("expected a number");
        pos = std::size_t(res.ptr - text.data());
        return v;
    }

    int integer() {
        int v = 0;
        const auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (res.ec != std::errc()) fail("expected an integer sample count");
        pos = std::size_t(res.ptr - text.data());
        return v;
    }

    void expect(char c) {
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
};

}  // namespace

GridSpec parse_grid(std::string_view text) {
    Cursor c{text};
    const double x0 = c.number();
    c.expect(':');
    const double x1 = c.number();
    c.expect(':');
    const int nx = c.integer();
    c.expect(',');
    const double y0 = c.number();
    c.expect(':');
    const double y1 = c.number();
    c.expect(':');
    const int ny = c.integer();
    if (c.pos != text.size()) c.fail("trailing characters");
    return GridSpec(x0, x1, y0, y1, nx, ny);
}

std::string format_grid(const GridSpec& g) {
    std::ostringstream os;
    os << g.x_min << ':' << g.x_max << ':' << g.nx << ',' << g.y_min << ':' << g.y_max << ':'
       << g.ny;
    return os.str();
}

}  // namespace minigraph
