#ifndef WEDGE_CONTOUR_HPP
#define WEDGE_CONTOUR_HPP

// Horizontal quadrature contours (with optional semicircular indentations)
// and the adaptive Gauss-Legendre panel integrator they share.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wedge/complexfn.hpp"
#include "wedge/errors.hpp"

namespace wedge {

enum class IndentSide { ABOVE, BELOW };

struct Indentation {
    Cplx center;
    double radius;
    IndentSide side;
};

enum class TailModel { NONE, RECIPROCAL };

// A quadrature-ready horizontal contour R + i*offset, truncated to
// [-truncation, truncation], with optional semicircular indentations.
struct ContourSpec {
    double offset = 0.0;
    double truncation = 2000.0;
    int node_budget = 400000;
    TailModel tail_model = TailModel::RECIPROCAL;
    std::vector<Indentation> indentations;
    std::string warning;  // diagnostic only, not serialized
};

struct QuadratureResult {
    Cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

inline nlohmann::json contour_to_json(const ContourSpec& c) {
    nlohmann::json ind = nlohmann::json::array();
    for (const auto& i : c.indentations)
        ind.push_back({{"center", {i.center.real(), i.center.imag()}},
                       {"radius", i.radius},
                       {"side", i.side == IndentSide::ABOVE ? "ABOVE" : "BELOW"}});
    return {{"offset", c.offset},
            {"truncation", c.truncation},
            {"node_budget", c.node_budget},
            {"tail_model", c.tail_model == TailModel::NONE ? "NONE" : "RECIPROCAL"},
            {"indentations", ind}};
}

inline ContourSpec contour_from_json(const nlohmann::json& j) {
    ContourSpec c;
    c.offset = j.at("offset").get<double>();
    c.truncation = j.at("truncation").get<double>();
    c.node_budget = j.at("node_budget").get<int>();
    const std::string tm = j.at("tail_model").get<std::string>();
    if (tm == "NONE") c.tail_model = TailModel::NONE;
    else if (tm == "RECIPROCAL") c.tail_model = TailModel::RECIPROCAL;
    else throw UsageError("contour_from_json: unknown tail_model " + tm);
    for (const auto& i : j.value("indentations", nlohmann::json::array())) {
        Indentation ind;
        ind.center = Cplx(i.at("center").at(0).get<double>(),
                          i.at("center").at(1).get<double>());
        ind.radius = i.at("radius").get<double>();
        const std::string s = i.at("side").get<std::string>();
        if (s == "ABOVE") ind.side = IndentSide::ABOVE;
        else if (s == "BELOW") ind.side = IndentSide::BELOW;
        else throw UsageError("contour_from_json: unknown side " + s);
        c.indentations.push_back(ind);
    }
    if (!(c.truncation > 0.0) || c.node_budget <= 0)
        throw UsageError("contour_from_json: truncation and node_budget must be positive");
    return c;
}

// A smooth piece of a contour: straight horizontal run or semicircular arc.
struct PathSegment {
    enum Kind { LINE, ARC } kind;
    // LINE: z(t) = t + i*offset for t in [t0, t1].
    // ARC:  z(t) = center + radius * e^{it} for t from t0 to t1.
    double t0, t1;
    Cplx center;
    double radius = 0.0;
    double offset = 0.0;

    Cplx point(double t) const {
        if (kind == LINE) return Cplx(t, offset);
        return center + radius * std::polar(1.0, t);
    }
    Cplx derivative(double t) const {
        if (kind == LINE) return Cplx(1.0, 0.0);
        return radius * Cplx(0.0, 1.0) * std::polar(1.0, t);
    }
};

// Left-to-right path realizing the contour: line pieces joined by arcs
// around each indentation.
inline std::vector<PathSegment> contour_path(const ContourSpec& c) {
    std::vector<Indentation> ind = c.indentations;
    std::sort(ind.begin(), ind.end(),
              [](const Indentation& a, const Indentation& b) {
                  return a.center.real() < b.center.real();
              });
    std::vector<PathSegment> path;
    double cursor = -c.truncation;
    for (const auto& i : ind) {
        if (!(i.radius > 0.0)) throw UsageError("contour: indentation radius must be > 0");
        const double cre = i.center.real();
        if (cre - i.radius < cursor)
            throw UsageError("contour: overlapping or out-of-range indentations");
        if (cre - i.radius > cursor) {
            path.push_back({PathSegment::LINE, cursor, cre - i.radius, {}, 0.0, c.offset});
        }
        PathSegment arc;
        arc.kind = PathSegment::ARC;
        arc.center = Cplx(cre, c.offset);
        arc.radius = i.radius;
        if (i.side == IndentSide::ABOVE) { arc.t0 = pi; arc.t1 = 0.0; }
        else { arc.t0 = -pi; arc.t1 = 0.0; }
        path.push_back(arc);
        cursor = cre + i.radius;
    }
    if (cursor < c.truncation)
        path.push_back({PathSegment::LINE, cursor, c.truncation, {}, 0.0, c.offset});
    return path;
}

// Distance from a point to the contour path (used for proximity guards).
inline double contour_distance(const ContourSpec& c, Cplx alpha) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& seg : contour_path(c)) {
        if (seg.kind == PathSegment::LINE) {
            const double lo = std::min(seg.t0, seg.t1), hi = std::max(seg.t0, seg.t1);
            const double tre = std::clamp(alpha.real(), lo, hi);
            d = std::min(d, std::abs(alpha - Cplx(tre, seg.offset)));
        } else {
            // nearest point of the half-circle
            const double ang = std::arg(alpha - seg.center);
            const bool upper = seg.t0 > seg.t1;  // ABOVE arc spans [0, pi]
            double a = ang;
            if (upper) a = std::clamp(a, 0.0, pi);
            else a = std::clamp(a, -pi, 0.0);
            d = std::min(d, std::abs(alpha - seg.point(a)));
        }
    }
    return d;
}

namespace detail {

inline constexpr double gl7_x[7] = {
    -9.49107912342758486e-01, -7.41531185599394460e-01, -4.05845151377397184e-01,
    0.0, 4.05845151377397184e-01, 7.41531185599394460e-01, 9.49107912342758486e-01};
inline constexpr double gl7_w[7] = {
    1.29484966168870647e-01, 2.79705391489276589e-01, 3.81830050505118312e-01,
    4.17959183673468959e-01, 3.81830050505118312e-01, 2.79705391489276589e-01,
    1.29484966168870647e-01};
inline constexpr double gl15_x[15] = {
    -9.87992518020485377e-01, -9.37273392400705951e-01, -8.48206583410427206e-01,
    -7.24417731360170070e-01, -5.70972172608538830e-01, -3.94151347077563385e-01,
    -2.01194093997434514e-01, 0.0, 2.01194093997434514e-01, 3.94151347077563385e-01,
    5.70972172608538830e-01, 7.24417731360170070e-01, 8.48206583410427206e-01,
    9.37273392400705951e-01, 9.87992518020485377e-01};
inline constexpr double gl15_w[15] = {
    3.07532419961186465e-02, 7.03660474881080689e-02, 1.07159220467171773e-01,
    1.39570677926153908e-01, 1.66269205816993781e-01, 1.86161000015561878e-01,
    1.98431485327111246e-01, 2.02578241925560898e-01, 1.98431485327111246e-01,
    1.86161000015561878e-01, 1.66269205816993781e-01, 1.39570677926153908e-01,
    1.07159220467171773e-01, 7.03660474881080689e-02, 3.07532419961186465e-02};

struct AdaptState {
    long evaluations = 0;
    long budget = 0;
    double error = 0.0;
    bool budget_hit = false;
};

// h(t) must already include the dz/dt factor.
template <class H>
Cplx panel_rule(const H& h, double a, double b, const double* x, const double* w,
                int n, AdaptState& st) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Cplx s{0.0, 0.0};
    for (int i = 0; i < n; ++i) s += w[i] * h(mid + half * x[i]);
    st.evaluations += n;
    return half * s;
}

template <class H>
Cplx adapt_panel(const H& h, double a, double b, double tol, int depth,
                 AdaptState& st) {
    const Cplx i15 = panel_rule(h, a, b, gl15_x, gl15_w, 15, st);
    const Cplx i7 = panel_rule(h, a, b, gl7_x, gl7_w, 7, st);
    const double err = std::abs(i15 - i7);
    if (err <= tol || depth >= 48 || st.evaluations > st.budget) {
        st.error += err;
        if (err > tol && st.evaluations > st.budget) st.budget_hit = true;
        return i15;
    }
    const double mid = 0.5 * (a + b);
    return adapt_panel(h, a, mid, 0.6 * tol, depth + 1, st) +
           adapt_panel(h, mid, b, 0.6 * tol, depth + 1, st);
}

}  // namespace detail

// Adaptive integral of f along the contour path. `breakpoints` (real parts)
// force initial panel boundaries on line segments; `panel_cap` bounds the
// initial panel width (used by the oscillatory transforms).
inline QuadratureResult integrate_contour(
    const std::function<Cplx(Cplx)>& f, const ContourSpec& c, double abs_tol,
    const std::vector<double>& breakpoints = {},
    double panel_cap = std::numeric_limits<double>::infinity()) {
    detail::AdaptState st;
    st.budget = c.node_budget;
    Cplx total{0.0, 0.0};

    const auto path = contour_path(c);
    // distribute the tolerance over segments by a rough length weight
    double total_len = 0.0;
    for (const auto& seg : path)
        total_len += seg.kind == PathSegment::LINE ? std::abs(seg.t1 - seg.t0)
                                                   : seg.radius * pi;

    for (const auto& seg : path) {
        const auto h = [&](double t) { return f(seg.point(t)) * seg.derivative(t); };
        double a = seg.t0, b = seg.t1;
        std::vector<double> cuts;
        cuts.push_back(a);
        if (seg.kind == PathSegment::LINE) {
            const double lo = std::min(a, b), hi = std::max(a, b);
            // geometric layout away from the origin keeps long tails cheap
            std::vector<double> marks = breakpoints;
            for (double m = 1.0; m < hi || -m > lo; m *= 2.0) {
                marks.push_back(m);
                marks.push_back(-m);
            }
            marks.push_back(0.0);
            std::sort(marks.begin(), marks.end());
            for (double m : marks)
                if (m > lo + 1e-12 && m < hi - 1e-12) cuts.push_back(m);
        }
        cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end(),
                  [&](double u, double v) { return a < b ? u < v : u > v; });
        // enforce the panel width cap
        std::vector<double> panels;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            panels.push_back(cuts[i]);
            const double w = std::abs(cuts[i + 1] - cuts[i]);
            if (w > panel_cap) {
                const int n = static_cast<int>(std::ceil(w / panel_cap));
                for (int j = 1; j < n; ++j)
                    panels.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * j / n);
            }
        }
        panels.push_back(cuts.back());

        const double seg_len =
            seg.kind == PathSegment::LINE ? std::abs(b - a) : seg.radius * pi;
        const double seg_tol =
            abs_tol * std::max(0.05, seg_len / std::max(total_len, 1e-300));
        for (size_t i = 0; i + 1 < panels.size(); ++i) {
            const double ptol =
                seg_tol * std::max(0.02, std::abs(panels[i + 1] - panels[i]) /
                                             std::max(seg_len, 1e-300));
            total += detail::adapt_panel(h, panels[i], panels[i + 1], ptol, 0, st);
        }
    }

    if (st.budget_hit)
        throw AccuracyError("integrate_contour: node budget exhausted before tolerance",
                            total.real(), total.imag(), st.error);
    return {total, st.error, st.evaluations};
}

}  // namespace wedge

#endif
