#include "minigraph/weierstrass.hpp"

#include <cmath>
#include <sstream>

#include "minigraph/jacobian.hpp"
#include "minigraph/parallel.hpp"
#include "minigraph/quadrature.hpp"

namespace minigraph::weierstrass {

namespace {

std::string format_w(Complex w) {
    std::ostringstream os;
    os << "w=(" << w.real() << ", " << w.imag() << ")";
    return os.str();
}

}  // namespace

ZeroOfHError::ZeroOfHError(Complex where, const std::string& what)
    : std::runtime_error(what), where_(where) {}

Complex shear_constant(double a, double b) {
    const Complex s(a, -b);
    return 1.0 + s * s;
}

HoloData::HoloData(expr::Expr h_expr, double a_, double b_, Point2 offset)
    : h(std::move(h_expr)), a(a_), b(b_), origin_offset(offset) {
    if (h.mode != expr::Mode::Complex1)
        throw std::invalid_argument("seed h must be a complex-mode expression");
    if (!(b > 0.0)) throw std::invalid_argument("shear constant b must be positive");
    d = shear_constant(a, b);
}

namespace {

Complex checked_h(const HoloData& data, Complex w) {
    const Complex hv = expr::eval_cjet(data.h, w).v;
    if (std::abs(hv) < 1e-13 * (1.0 + std::abs(data.d)))
        throw ZeroOfHError(w, "seed h vanishes at " + format_w(w));
    return hv;
}

}  // namespace

PhiQuad phi_components(const HoloData& data, Complex w) {
    const Complex hv = checked_h(data, w);
    const Complex q = data.d / hv;
    PhiQuad phi;
    phi.phi1 = Complex(1.0, 0.0);
    phi.phi2 = Complex(data.a, -data.b);
    phi.phi3 = 0.5 * (hv - q);
    phi.phi4 = Complex(0.0, 0.5) * (hv + q);
    return phi;
}

PhiDerivs phi_derivatives(const HoloData& data, Complex w) {
    const CJet1 hj = expr::eval_cjet(data.h, w);
    if (std::abs(hj.v) < 1e-13 * (1.0 + std::abs(data.d)))
        throw ZeroOfHError(w, "seed h vanishes at " + format_w(w));
    const Complex ratio = data.d / (hj.v * hj.v);
    PhiDerivs out;
    out.dphi3 = 0.5 * hj.d * (1.0 + ratio);
    out.dphi4 = Complex(0.0, 0.5) * hj.d * (1.0 - ratio);
    return out;
}

IsothermalHessians isothermal_hessians(const HoloData& data, Complex w) {
    const PhiDerivs dp = phi_derivatives(data, w);
    IsothermalHessians h;
    h.phi_uu = dp.dphi3.real();
    h.phi_uv = -dp.dphi3.imag();
    h.phi_vv = -h.phi_uu;
    h.psi_uu = dp.dphi4.real();
    h.psi_uv = -dp.dphi4.imag();
    h.psi_vv = -h.psi_uu;
    return h;
}

std::pair<Complex, Complex> integrate_segment(const HoloData& data, Complex z0, Complex z1,
                                              int quad_order, int panels) {
    if (quad_order < 4) throw std::invalid_argument("quadrature order must be at least 4");
    if (panels < 1) throw std::invalid_argument("panel count must be positive");
    // interior nodes never reach the segment ends, so probe those explicitly
    checked_h(data, z0);
    checked_h(data, z1);
    const auto& gl = quadrature::gauss_legendre(quad_order);
    const Complex dz = (z1 - z0) / double(panels);
    Complex i3{}, i4{};
    for (int p = 0; p < panels; ++p) {
        const Complex mid = z0 + dz * (p + 0.5);
        for (int k = 0; k < quad_order; ++k) {
            const Complex zeta = mid + 0.5 * dz * gl.nodes[k];
            const PhiQuad phi = phi_components(data, zeta);
            i3 += gl.weights[k] * phi.phi3;
            i4 += gl.weights[k] * phi.phi4;
        }
    }
    i3 *= 0.5 * dz;
    i4 *= 0.5 * dz;
    return {i3, i4};
}

namespace {

int panels_for(Complex w) { return std::max(1, int(std::ceil(std::abs(w) / 0.5))); }

}  // namespace

std::array<double, 4> integrate_surface(const HoloData& data, Complex w, int quad_order) {
    const double x = w.real();
    const double y = data.a * w.real() + data.b * w.imag();
    if (w == Complex(0.0, 0.0))
        return {x, y, data.origin_offset.x, data.origin_offset.y};
    const auto [i3, i4] = integrate_segment(data, Complex(0.0, 0.0), w, quad_order,
                                            panels_for(w));
    const double f1 = i3.real() + data.origin_offset.x;
    const double f2 = i4.real() + data.origin_offset.y;
    if (!std::isfinite(f1) || !std::isfinite(f2))
        throw NonFiniteError("surface integral is not finite at " + format_w(w));
    return {x, y, f1, f2};
}

geometry::Jet2Map graph_jets(const HoloData& data, Point2 xy, int quad_order) {
    const double u = xy.x;
    const double v = (xy.y - data.a * xy.x) / data.b;
    const Complex w(u, v);

    const PhiQuad phi = phi_components(data, w);
    const IsothermalHessians hes = isothermal_hessians(data, w);
    const auto values = integrate_surface(data, w, quad_order);

    const double phi_u = phi.phi3.real(), phi_v = -phi.phi3.imag();
    const double psi_u = phi.phi4.real(), psi_v = -phi.phi4.imag();

    // u = x, v = (y - a x)/b, so u_x = 1, u_y = 0, v_x = -a/b, v_y = 1/b.
    const double vx = -data.a / data.b;
    const double vy = 1.0 / data.b;

    const auto assemble = [&](double value, double du, double dv, double duu, double duv,
                              double dvv) {
        Jet2 jet;
        jet.v = value;
        jet.dx = du + dv * vx;
        jet.dy = dv * vy;
        jet.dxx = duu + 2.0 * duv * vx + dvv * vx * vx;
        jet.dxy = (duv + dvv * vx) * vy;
        jet.dyy = dvv * vy * vy;
        return jet;
    };

    geometry::Jet2Map out;
    out.at = xy;
    out.f1 = assemble(values[2], phi_u, phi_v, hes.phi_uu, hes.phi_uv, hes.phi_vv);
    out.f2 = assemble(values[3], psi_u, psi_v, hes.psi_uu, hes.psi_uv, hes.psi_vv);
    if (!out.f1.finite() || !out.f2.finite())
        throw NonFiniteError("reconstructed jet is not finite at " + format_w(w));
    return out;
}

geometry::JetField make_jet_field(const HoloData& data, int quad_order) {
    return [data, quad_order](Point2 p) { return graph_jets(data, p, quad_order); };
}

bool ConstructionReport::identities_hold(double tol_algebraic, double tol_numeric) const {
    return errors.empty() && points > 0 && max_sum_phi_sq < tol_algebraic &&
           max_factorization_dev < tol_algebraic && max_h_identity_dev < tol_algebraic &&
           max_jphi_identity_dev < tol_numeric && max_closed_form_dev < tol_numeric &&
           max_residual_norm < tol_numeric;
}

ConstructionReport verify_construction(const HoloData& data, const GridSpec& grid,
                                       int quad_order) {
    if (grid.empty()) throw std::invalid_argument("empty grid");

    struct Slot {
        bool ok = false;
        double sum_sq = 0.0, fact = 0.0, hdev = 0.0, jphi = 0.0, closed = 0.0, res = 0.0;
        std::string error;
    };
    const std::size_t n = grid.count();
    std::vector<Slot> slots(n);

    parallel_for(n, [&](std::size_t i) {
        Slot& s = slots[i];
        const Point2 uv = grid.point(i);
        const Complex w(uv.x, uv.y);
        try {
            const Complex hv = checked_h(data, w);
            const PhiQuad phi = phi_components(data, w);
            s.sum_sq = std::abs(phi.sum_of_squares());
            const Complex lhs =
                (phi.phi3 - Complex(0, 1) * phi.phi4) * (phi.phi3 + Complex(0, 1) * phi.phi4);
            s.fact = std::abs(lhs + data.d);
            s.hdev = std::abs(phi.phi3 - Complex(0, 1) * phi.phi4 - hv);

            // graph point matching this parameter value
            const Point2 xy{uv.x, data.a * uv.x + data.b * uv.y};
            const geometry::Jet2Map jets = graph_jets(data, xy, quad_order);
            const double jf = jacobian::jacobian(jets);
            s.jphi = std::fabs(std::imag(phi.phi3 * std::conj(phi.phi4)) - data.b * jf);
            const double habs2 = std::norm(hv);
            const double closed_form =
                (-habs2 + std::norm(data.d) / habs2) / (4.0 * data.b);
            s.closed = std::fabs(jf - closed_form);
            const auto res = geometry::minimal_residual(jets);
            s.res = std::hypot(res[0], res[1]);
            s.ok = true;
        } catch (const expr::EvalError& e) {
            s.error = e.what();
        } catch (const ZeroOfHError& e) {
            s.error = e.what();
        } catch (const NonFiniteError& e) {
            s.error = e.what();
        }
    });

    ConstructionReport report;
    report.quad_order = quad_order;
    for (std::size_t i = 0; i < n; ++i) {
        const Slot& s = slots[i];
        if (!s.ok) {
            report.errors.push_back({grid.point(i), s.error});
            continue;
        }
        ++report.points;
        report.max_sum_phi_sq = std::max(report.max_sum_phi_sq, s.sum_sq);
        report.max_factorization_dev = std::max(report.max_factorization_dev, s.fact);
        report.max_h_identity_dev = std::max(report.max_h_identity_dev, s.hdev);
        report.max_jphi_identity_dev = std::max(report.max_jphi_identity_dev, s.jphi);
        report.max_closed_form_dev = std::max(report.max_closed_form_dev, s.closed);
        report.max_residual_norm = std::max(report.max_residual_norm, s.res);
    }
    return report;
}

ConstructedSurface build_surface(const HoloData& data, const GridSpec& grid, int quad_order) {
    if (grid.empty()) throw std::invalid_argument("empty grid");
    ConstructedSurface surface;
    surface.a = data.a;
    surface.b = data.b;
    surface.d = data.d;
    surface.quad_order = quad_order;

    const std::size_t n = grid.count();
    std::vector<SurfaceSample> samples(n);
    std::vector<geometry::Jet2Map> jets(n);
    parallel_for(n, [&](std::size_t i) {
        const Point2 uv = grid.point(i);
        SurfaceSample& s = samples[i];
        s.u = uv.x;
        s.v = uv.y;
        s.x = uv.x;
        s.y = data.a * uv.x + data.b * uv.y;
        jets[i] = graph_jets(data, {s.x, s.y}, quad_order);
        s.f1 = jets[i].f1.v;
        s.f2 = jets[i].f2.v;
        s.jac = jacobian::jacobian(jets[i]);
    });
    surface.samples = std::move(samples);
    surface.jets = std::move(jets);
    return surface;
}

}  // namespace minigraph::weierstrass
