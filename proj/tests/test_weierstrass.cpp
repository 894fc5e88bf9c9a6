#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "minigraph/jacobian.hpp"
#include "minigraph/weierstrass.hpp"
#include "test_support.hpp"

using namespace minigraph;
using namespace minigraph::weierstrass;
namespace ex = minigraph::expr;

namespace {

HoloData seed(const char* h, double a, double b) {
    return HoloData(ex::parse(h, ex::Mode::Complex1), a, b);
}

// the five documented seeds of the identity suite
std::vector<HoloData> documented_seeds() {
    std::vector<HoloData> out;
    out.push_back(seed("exp(w)", 0.0, 2.0));
    out.push_back(seed("exp(w)", 0.0, 1.0));  // d = 0 collapse
    out.push_back(seed("exp(w)+2", 1.0, 1.0));
    out.push_back(seed("w*w+5", -2.0, 0.5));
    out.push_back(seed("w*w+5", 2.0, 3.0));
    return out;
}

}  // namespace

TEST_CASE("seed validation") {
    CHECK_THROWS_AS(seed("exp(w)", 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(seed("exp(w)", 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(HoloData(ex::parse("x", ex::Mode::Real2), 0.0, 1.0),
                    std::invalid_argument);

    const HoloData d0 = seed("exp(w)", 0.0, 1.0);
    CHECK(std::abs(d0.d) < 1e-15);  // 1 + (-i)^2 = 0
    const HoloData d2 = seed("exp(w)", 0.0, 2.0);
    CHECK(d2.d == std::complex<double>(-3.0, 0.0));
    const HoloData d11 = seed("exp(w)", 1.0, 1.0);
    CHECK(d11.d == std::complex<double>(1.0, -2.0));  // 1 + (1-i)^2
    CHECK(d11.d == shear_constant(d11.a, d11.b));     // stored d is the derived value
}

TEST_CASE("phi components at the origin for the two arithmetic examples") {
    const HoloData collapse = seed("exp(w)", 0.0, 1.0);
    const PhiQuad p0 = phi_components(collapse, {0.0, 0.0});
    CHECK(std::abs(p0.phi3 - std::complex<double>(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(p0.phi4 - std::complex<double>(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(p0.sum_of_squares()) < 1e-15);

    const HoloData osr = seed("exp(w)", 0.0, 2.0);
    const PhiQuad p1 = phi_components(osr, {0.0, 0.0});
    CHECK(std::abs(p1.phi3 - std::complex<double>(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(p1.phi4 - std::complex<double>(0.0, -1.0)) < 1e-15);
}

TEST_CASE("quadratic relation, factorization and the h identity hold pointwise") {
    std::mt19937_64 rng(5150u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> apar(-2.0, 2.0);
    std::uniform_real_distribution<double> bpar(0.5, 3.0);
    const char* hs[] = {"exp(w)", "exp(w)+2", "w*w+5"};
    for (int si = 0; si < 15; ++si) {
        const HoloData data = seed(hs[si % 3], apar(rng), bpar(rng));
        for (int k = 0; k < 80; ++k) {
            const std::complex<double> w(coord(rng), coord(rng));
            const PhiQuad phi = phi_components(data, w);
            const std::complex<double> h = ex::eval_cjet(data.h, w).v;
            const std::complex<double> i(0.0, 1.0);
            CHECK(std::abs(phi.sum_of_squares()) < 1e-12);
            CHECK(std::abs((phi.phi3 - i * phi.phi4) * (phi.phi3 + i * phi.phi4) + data.d) <
                  1e-12);
            CHECK(std::abs((phi.phi3 - i * phi.phi4) - h) < 1e-12 * (1.0 + std::abs(h)));
        }
    }
}

TEST_CASE("phi rejects zeros of h") {
    const HoloData bad(ex::parse("w", ex::Mode::Complex1), 0.0, 2.0);
    CHECK_THROWS_AS(phi_components(bad, {0.0, 0.0}), ZeroOfHError);
    CHECK_THROWS_AS(integrate_surface(bad, {1.0, 0.0}), ZeroOfHError);
}

TEST_CASE("integration starts at the offset and is path independent") {
    const HoloData data = seed("exp(w)+2", 1.0, 1.5);
    const auto origin = integrate_surface(data, {0.0, 0.0});
    CHECK(origin == std::array<double, 4>{0.0, 0.0, 0.0, 0.0});

    HoloData shifted(ex::parse("exp(w)+2", ex::Mode::Complex1), 1.0, 1.5, {3.0, -2.0});
    const auto at0 = integrate_surface(shifted, {0.0, 0.0});
    CHECK(at0[2] == 3.0);
    CHECK(at0[3] == -2.0);

    // straight path against an L-path through the real axis
    std::mt19937_64 rng(31337u);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const std::complex<double> w(coord(rng), coord(rng));
        if (std::abs(w) < 0.1) continue;
        const auto direct = integrate_segment(data, {0.0, 0.0}, w, 8, 8);
        const auto leg1 = integrate_segment(data, {0.0, 0.0}, {w.real(), 0.0}, 8, 8);
        const auto leg2 = integrate_segment(data, {w.real(), 0.0}, w, 8, 8);
        CHECK(std::abs(direct.first - (leg1.first + leg2.first)) < 1e-10);
        CHECK(std::abs(direct.second - (leg1.second + leg2.second)) < 1e-10);
    }
}

TEST_CASE("quadrature error falls by at least 2^6 per panel doubling") {
    const HoloData data = seed("exp(w)", 0.0, 2.0);
    const std::complex<double> w(2.0, 1.5);
    // phi3 = (e^w + 3 e^-w)/2 has antiderivative (e^w - 3 e^-w)/2
    const std::complex<double> exact =
        0.5 * (std::exp(w) - 3.0 * std::exp(-w)) - 0.5 * (1.0 - 3.0);
    double prev = 0.0;
    bool have_prev = false;
    for (int panels : {1, 2, 4, 8, 16}) {
        const auto got = integrate_segment(data, {0.0, 0.0}, w, 4, panels);
        const double err = std::abs(got.first - exact);
        if (have_prev && prev > 1e-13) CHECK(err <= prev / 64.0);
        prev = err;
        have_prev = true;
    }
    CHECK(prev < 1e-13);
}

TEST_CASE("reconstructed jets: exact harmonicity and sub-1e-9 minimality") {
    for (const HoloData& data : documented_seeds()) {
        const GridSpec grid(-2, 2, -2, 2, 9, 9);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.count(); ++i) {
            const Point2 uv = grid.point(i);
            const std::complex<double> w(uv.x, uv.y);
            const IsothermalHessians hes = isothermal_hessians(data, w);
            CHECK(hes.phi_uu + hes.phi_vv == 0.0);  // bitwise negation symmetry
            CHECK(hes.psi_uu + hes.psi_vv == 0.0);

            const Point2 xy{uv.x, data.a * uv.x + data.b * uv.y};
            const auto jets = graph_jets(data, xy);
            const auto res = geometry::minimal_residual(jets);
            worst = std::max(worst, std::hypot(res[0], res[1]));
        }
        CAPTURE(data.a);
        CAPTURE(data.b);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("d = 0 seeds reconstruct complex-analytic graphs") {
    const HoloData data = seed("exp(w)", 0.0, 1.0);
    const auto field = make_jet_field(data);
    const auto rep = jacobian::classify_cr(field, GridSpec(-1.5, 1.5, -1.5, 1.5, 11, 11));
    const bool analytic = rep.verdict == jacobian::CrClass::Holomorphic ||
                          rep.verdict == jacobian::CrClass::AntiHolomorphic;
    CHECK(analytic);
}

TEST_CASE("the (exp(w), 0, 2) seed reproduces the closed-form Jacobian field") {
    const HoloData data = seed("exp(w)", 0.0, 2.0);
    const GridSpec grid(-2, 2, -2, 2, 11, 11);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const Point2 uv = grid.point(i);
        const Point2 xy{uv.x, 2.0 * uv.y};
        const auto jets = graph_jets(data, xy);
        const double expected = testsupport::osserman_jacobian(uv.x);
        CHECK(std::fabs(jacobian::jacobian(jets) - expected) < 1e-9);
    }
    const auto jets0 = graph_jets(data, {0.0, 0.0});
    CHECK(jacobian::jacobian(jets0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("verify_construction flags all identities for the documented seeds") {
    for (const HoloData& data : documented_seeds()) {
        const auto rep = verify_construction(data, GridSpec(-2, 2, -2, 2, 11, 11));
        CAPTURE(data.a);
        CAPTURE(data.b);
        CHECK(rep.errors.empty());
        CHECK(rep.max_sum_phi_sq < 1e-12);
        CHECK(rep.max_factorization_dev < 1e-12);
        CHECK(rep.max_h_identity_dev < 1e-12);
        CHECK(rep.max_jphi_identity_dev < 1e-9);
        CHECK(rep.max_closed_form_dev < 1e-9);
        CHECK(rep.max_residual_norm < 1e-9);
        CHECK(rep.identities_hold());
    }
}

TEST_CASE("constant h with h^2 = -d builds a plane") {
    // a = 0, b = 2, d = -3, h = sqrt(3) i
    const HoloData data(ex::parse("sqrt(3)*i", ex::Mode::Complex1), 0.0, 2.0);
    const PhiQuad phi = phi_components(data, {0.7, -0.4});
    CHECK(std::abs(phi.phi3) < 1e-15);
    CHECK(std::abs(phi.phi4 - std::complex<double>(-std::sqrt(3.0), 0.0)) < 1e-15);

    const auto rep = verify_construction(data, GridSpec(-2, 2, -2, 2, 9, 9));
    CHECK(rep.max_residual_norm == 0.0);
    CHECK(rep.max_closed_form_dev < 1e-15);

    // J_f is the constant 0 for this plane
    const auto jets = graph_jets(data, {0.5, 0.5});
    CHECK(std::fabs(jacobian::jacobian(jets)) < 1e-15);
}

TEST_CASE("surface samples keep x = u and y = a u + b v exactly") {
    const HoloData data = seed("w*w+5", -2.0, 0.5);
    const auto surface = build_surface(data, GridSpec(-1, 1, -1, 1, 7, 7), 8);
    CHECK(surface.samples.size() == 49);
    CHECK(surface.jets.size() == 49);
    for (std::size_t i = 0; i < surface.samples.size(); ++i) {
        const auto& s = surface.samples[i];
        CHECK(s.x == s.u);
        CHECK(s.y == data.a * s.u + data.b * s.v);
        CHECK(surface.jets[i].f1.v == s.f1);  // cached jets match the samples
        CHECK(surface.jets[i].at.x == s.x);
    }
}

TEST_CASE("non-finite integrands are reported") {
    const HoloData data = seed("exp(w)", 0.0, 2.0);
    CHECK_THROWS_AS(integrate_surface(data, {800.0, 0.0}), NonFiniteError);
}
