#include "minigraph/jacobian.hpp"

#include <cmath>
#include <stdexcept>

#include "minigraph/parallel.hpp"

namespace minigraph::jacobian {

double jacobian(const geometry::Jet2Map& j) {
    return j.f1.dx * j.f2.dy - j.f1.dy * j.f2.dx;
}

WirtingerPair wirtinger(const geometry::Jet2Map& j) {
    WirtingerPair p;
    p.fz = 0.5 * std::complex<double>(j.f1.dx + j.f2.dy, j.f2.dx - j.f1.dy);
    p.fzbar = 0.5 * std::complex<double>(j.f1.dx - j.f2.dy, j.f2.dx + j.f1.dy);
    return p;
}

const char* to_string(CrClass c) {
    switch (c) {
        case CrClass::Holomorphic: return "Holomorphic";
        case CrClass::AntiHolomorphic: return "AntiHolomorphic";
        case CrClass::Neither: return "Neither";
    }
    return "?";
}

const char* to_string(RangeVerdict v) {
    switch (v) {
        case RangeVerdict::OneSidedNonNegative: return "OneSidedNonNegative";
        case RangeVerdict::OneSidedNonPositive: return "OneSidedNonPositive";
        case RangeVerdict::BoundedWindow: return "BoundedWindow";
        case RangeVerdict::FullRangeEvidence: return "FullRangeEvidence";
    }
    return "?";
}

CrReport classify_cr(const geometry::JetField& field, const GridSpec& grid, double tol) {
    if (grid.empty()) throw std::invalid_argument("empty grid");
    if (!(tol > 0.0)) throw std::invalid_argument("classification tolerance must be positive");

    struct Slot {
        bool ok = false;
        double afz = 0.0, afzbar = 0.0;
        std::string error;
    };
    const std::size_t n = grid.count();
    std::vector<Slot> slots(n);
    parallel_for(n, [&](std::size_t i) {
        Slot& s = slots[i];
        try {
            const WirtingerPair wp = wirtinger(field(grid.point(i)));
            s.afz = std::abs(wp.fz);
            s.afzbar = std::abs(wp.fzbar);
            s.ok = true;
        } catch (const expr::EvalError& e) {
            s.error = e.what();
        }
    });

    CrReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < n; ++i) {
        if (!slots[i].ok) {
            report.errors.push_back({grid.point(i), slots[i].error});
            continue;
        }
        report.max_abs_fz = std::max(report.max_abs_fz, slots[i].afz);
        report.max_abs_fzbar = std::max(report.max_abs_fzbar, slots[i].afzbar);
    }
    const bool holo = report.max_abs_fzbar < tol;
    const bool anti = report.max_abs_fz < tol;
    if (holo && anti) {
        report.verdict = CrClass::Holomorphic;
        report.degenerate = true;  // df vanished everywhere sampled: constant map
    } else if (holo) {
        report.verdict = CrClass::Holomorphic;
    } else if (anti) {
        report.verdict = CrClass::AntiHolomorphic;
    } else {
        report.verdict = CrClass::Neither;
    }
    return report;
}

namespace {

void check_radii(const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("empty radii list");
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > prev)) throw std::invalid_argument("radii must be positive and increasing");
        prev = r;
    }
}

}  // namespace

RangeEvidence jacobian_range(const geometry::JetField& field, const std::vector<double>& radii,
                             int resolution, double tol, double growth_factor) {
    check_radii(radii);
    if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");

    RangeEvidence ev;
    ev.radii = radii;
    ev.tolerance = tol;
    ev.growth_factor = growth_factor;
    ev.resolution = resolution;

    bool first_sample = true;
    for (double r : radii) {
        const GridSpec grid = GridSpec::square(r, resolution);
        const std::size_t n = grid.count();
        struct Slot {
            bool ok = false;
            double jac = 0.0;
            std::string error;
        };
        std::vector<Slot> slots(n);
        parallel_for(n, [&](std::size_t i) {
            try {
                slots[i].jac = jacobian(field(grid.point(i)));
                slots[i].ok = true;
            } catch (const expr::EvalError& e) {
                slots[i].error = e.what();
            }
        });
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 p = grid.point(i);
            if (!slots[i].ok) {
                ev.errors.push_back({p, slots[i].error});
                continue;
            }
            const double jv = slots[i].jac;
            if (jv == 0.0) ev.zero_hit = true;
            if (first_sample || jv < ev.sampled_min) {
                ev.sampled_min = jv;
                ev.argmin = p;
            }
            if (first_sample || jv > ev.sampled_max) {
                ev.sampled_max = jv;
                ev.argmax = p;
            }
            first_sample = false;
        }
        ev.min_by_radius.push_back(ev.sampled_min);
        ev.max_by_radius.push_back(ev.sampled_max);
    }

    const double m_first = ev.min_by_radius.front(), m_last = ev.min_by_radius.back();
    const double M_first = ev.max_by_radius.front(), M_last = ev.max_by_radius.back();
    const double scale = std::max({1.0, std::fabs(m_last), std::fabs(M_last)});
    const bool grows_pos = M_last > 0.0 && (M_first <= 0.0 || M_last >= growth_factor * M_first);
    const bool grows_neg = m_last < 0.0 && (m_first >= 0.0 || m_last <= growth_factor * m_first);

    if (grows_pos && grows_neg)
        ev.verdict = RangeVerdict::FullRangeEvidence;
    else if (!grows_pos && !grows_neg)
        ev.verdict = RangeVerdict::BoundedWindow;
    else if (m_last >= -tol * scale)
        ev.verdict = RangeVerdict::OneSidedNonNegative;
    else if (M_last <= tol * scale)
        ev.verdict = RangeVerdict::OneSidedNonPositive;
    else
        ev.verdict = RangeVerdict::BoundedWindow;
    return ev;
}

std::vector<std::vector<std::array<double, 3>>> jacobian_range_samples(
    const geometry::JetField& field, const std::vector<double>& radii, int resolution) {
    check_radii(radii);
    std::vector<std::vector<std::array<double, 3>>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const GridSpec grid = GridSpec::square(r, resolution);
        std::vector<std::array<double, 3>> batch;
        batch.reserve(grid.count());
        for (std::size_t i = 0; i < grid.count(); ++i) {
            const Point2 p = grid.point(i);
            try {
                batch.push_back({p.x, p.y, jacobian(field(p))});
            } catch (const expr::EvalError&) {
                // skipped points stay out of the dump; the report carries them
            }
        }
        out.push_back(std::move(batch));
    }
    return out;
}

}  // namespace minigraph::jacobian
