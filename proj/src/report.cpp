#include "minigraph/report.hpp"

#include <charconv>

namespace minigraph::report {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json to_json(const Point2& p) { return json{{"x", p.x}, {"y", p.y}}; }

json to_json(const std::vector<PointError>& errors) {
    json out = json::array();
    for (const auto& e : errors)
        out.push_back(json{{"x", e.at.x}, {"y", e.at.y}, {"message", e.message}});
    return out;
}

json to_json(const geometry::MinimalityReport& r) {
    return json{
        {"max_residual_norm", r.max_residual_norm},
        {"mean_residual_norm", r.mean_residual_norm},
        {"max_abs_mean_curvature", r.max_abs_mean_curvature},
        {"worst_point", to_json(r.worst_point)},
        {"min_metric_det", r.min_metric_det},
        {"points", r.points},
        {"tolerance", r.tolerance},
        {"minimal", r.minimal},
    };
}

json to_json(const jacobian::CrReport& r) {
    return json{
        {"verdict", jacobian::to_string(r.verdict)},
        {"max_abs_fz", r.max_abs_fz},
        {"max_abs_fzbar", r.max_abs_fzbar},
        {"degenerate", r.degenerate},
        {"note", r.degenerate ? "degenerate (affine)" : ""},
        {"tolerance", r.tolerance},
    };
}

json to_json(const jacobian::RangeEvidence& r) {
    return json{
        {"verdict", jacobian::to_string(r.verdict)},
        {"radii", r.radii},
        {"min_by_radius", r.min_by_radius},
        {"max_by_radius", r.max_by_radius},
        {"sampled_min", r.sampled_min},
        {"sampled_max", r.sampled_max},
        {"argmin", to_json(r.argmin)},
        {"argmax", to_json(r.argmax)},
        {"zero_hit", r.zero_hit},
        {"resolution", r.resolution},
        {"tolerance", r.tolerance},
        {"growth_factor", r.growth_factor},
    };
}

json to_json(const weierstrass::ConstructionReport& r) {
    return json{
        {"max_sum_phi_sq", r.max_sum_phi_sq},
        {"max_factorization_dev", r.max_factorization_dev},
        {"max_h_identity_dev", r.max_h_identity_dev},
        {"max_jphi_identity_dev", r.max_jphi_identity_dev},
        {"max_closed_form_dev", r.max_closed_form_dev},
        {"max_residual_norm", r.max_residual_norm},
        {"points", r.points},
        {"quad_order", r.quad_order},
        {"identities_hold", r.identities_hold()},
    };
}

json to_json(const isothermal::ShearParams& r) {
    json candidates = json::array();
    for (const auto& c : r.candidates)
        candidates.push_back(json{{"a", c.a}, {"b", c.b}, {"defect", c.defect}});
    return json{
        {"a", r.a},
        {"b", r.b},
        {"defect", r.defect},
        {"converged", r.converged},
        {"note", r.note},
        {"candidates", candidates},
    };
}

json envelope(const std::string& command, const std::vector<std::string>& argv,
              json inputs, json result, const std::string& verdict,
              const std::vector<PointError>& errors, long seed) {
    return json{
        {"tool", kToolName},
        {"version", kToolVersion},
        {"schema", kSchemaId},
        {"command", command},
        {"argv", argv},
        {"seed", seed},
        {"inputs", std::move(inputs)},
        {"result", std::move(result)},
        {"verdict", verdict},
        {"errors", to_json(errors)},
    };
}

std::string csv_minimality(const std::vector<geometry::MinimalitySample>& samples) {
    std::string out = "x,y,res1,res2,H1,H2\n";
    for (const auto& s : samples) {
        out += format_double(s.at.x) + ',' + format_double(s.at.y) + ',' +
               format_double(s.residual[0]) + ',' + format_double(s.residual[1]) + ',' +
               format_double(s.h1) + ',' + format_double(s.h2) + '\n';
    }
    return out;
}

std::string csv_jacobian(const std::vector<std::array<double, 3>>& samples) {
    std::string out = "x,y,J\n";
    for (const auto& s : samples)
        out += format_double(s[0]) + ',' + format_double(s[1]) + ',' + format_double(s[2]) +
               '\n';
    return out;
}

std::string csv_surface(const weierstrass::ConstructedSurface& surface) {
    std::string out = "u,v,x,y,f1,f2,J\n";
    for (const auto& s : surface.samples) {
        out += format_double(s.u) + ',' + format_double(s.v) + ',' + format_double(s.x) + ',' +
               format_double(s.y) + ',' + format_double(s.f1) + ',' + format_double(s.f2) +
               ',' + format_double(s.jac) + '\n';
    }
    return out;
}

}  // namespace minigraph::report
