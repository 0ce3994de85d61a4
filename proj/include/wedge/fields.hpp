#ifndef WEDGE_FIELDS_HPP
#define WEDGE_FIELDS_HPP

// Physical-space layer: incident wave, inverse 2D Fourier reconstruction
// over Gamma x Gamma, continuity and Helmholtz residual checks, and the
// tip (edge-condition) expansion fit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wedge/complexfn.hpp"
#include "wedge/contour.hpp"
#include "wedge/errors.hpp"
#include "wedge/kernel.hpp"
#include "wedge/spectra.hpp"

namespace wedge {

struct PhysicalPoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

// Local tip expansion f ~ B + (A1 sin t + B1 cos t) r; primed constants are
// the interior-grid counterparts.
struct EdgeExpansion {
    Cplx B{0.0, 0.0};
    Cplx A1{0.0, 0.0};
    Cplx B1{0.0, 0.0};
    Cplx A1p{0.0, 0.0};
    Cplx B1p{0.0, 0.0};
    double fit_radius = 0.0;
    double fit_residual = 0.0;
};

enum class GridRegion { Q1, Q2, Q3, Q4, FULL };
enum class WedgeFace { X1_POSITIVE, X2_POSITIVE };

// Uniform grid with nodes (x1_min + i*h, x2_min + j*h); the origin lies on
// the node lattice so grids from different runs align.
struct FieldGrid {
    GridRegion region = GridRegion::FULL;
    double spacing = 0.0;
    double x1_min = 0.0;
    double x2_min = 0.0;
    std::vector<std::vector<Cplx>> values;  // [i over x1][j over x2]

    size_t n1() const { return values.size(); }
    size_t n2() const { return values.empty() ? 0 : values[0].size(); }
    double x1_at(size_t i) const { return x1_min + spacing * i; }
    double x2_at(size_t j) const { return x2_min + spacing * j; }

    void validate() const {
        if (!(spacing > 0.0)) throw UsageError("FieldGrid: spacing must be > 0");
        if (n1() < 2 || n2() < 2) throw UsageError("FieldGrid: need at least 2x2 nodes");
        for (const auto& row : values)
            if (row.size() != n2()) throw UsageError("FieldGrid: ragged rows");
    }
};

inline const char* region_name(GridRegion r) {
    switch (r) {
        case GridRegion::Q1: return "Q1";
        case GridRegion::Q2: return "Q2";
        case GridRegion::Q3: return "Q3";
        case GridRegion::Q4: return "Q4";
        default: return "FULL";
    }
}

inline GridRegion region_from_name(const std::string& s) {
    if (s == "Q1") return GridRegion::Q1;
    if (s == "Q2") return GridRegion::Q2;
    if (s == "Q3") return GridRegion::Q3;
    if (s == "Q4") return GridRegion::Q4;
    if (s == "FULL") return GridRegion::FULL;
    throw UsageError("unknown grid region " + s);
}

inline void grid_to_csv(const FieldGrid& g, std::ostream& os) {
    os << "x1,x2,re,im\n";
    os.precision(17);
    for (size_t i = 0; i < g.n1(); ++i)
        for (size_t j = 0; j < g.n2(); ++j)
            os << g.x1_at(i) << ',' << g.x2_at(j) << ',' << g.values[i][j].real()
               << ',' << g.values[i][j].imag() << '\n';
}

inline nlohmann::json grid_to_json(const FieldGrid& g) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& row : g.values) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back({v.real(), v.imag()});
        vals.push_back(r);
    }
    return {{"region", region_name(g.region)}, {"spacing", g.spacing},
            {"x1_min", g.x1_min},             {"x2_min", g.x2_min},
            {"values", vals}};
}

inline FieldGrid grid_from_json(const nlohmann::json& j) {
    FieldGrid g;
    g.region = region_from_name(j.at("region").get<std::string>());
    g.spacing = j.at("spacing").get<double>();
    g.x1_min = j.at("x1_min").get<double>();
    g.x2_min = j.at("x2_min").get<double>();
    for (const auto& row : j.at("values")) {
        std::vector<Cplx> r;
        for (const auto& v : row) r.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        g.values.push_back(std::move(r));
    }
    g.validate();
    return g;
}

inline nlohmann::json edge_to_json(const EdgeExpansion& e) {
    const auto c = [](Cplx z) { return nlohmann::json{z.real(), z.imag()}; };
    return {{"B", c(e.B)},     {"A1", c(e.A1)},   {"B1", c(e.B1)},
            {"A1p", c(e.A1p)}, {"B1p", c(e.B1p)}, {"fit_radius", e.fit_radius},
            {"fit_residual", e.fit_residual}};
}

// phi_in(x) = exp(-i (a1 x1 + a2 x2)).
inline Cplx incident_field(const WaveParams& p, PhysicalPoint x) {
    return std::exp(Cplx(0.0, -1.0) * (p.a1 * x.x1 + p.a2 * x.x2));
}

enum class ContourMode { ABSORBING, INDENTED };

// The inversion contour Gamma. ABSORBING is the plain real line, valid
// because Im(k) > 0 keeps all singularities off it. INDENTED skirts the
// limiting singular abscissae with semicircles, each passing on the side
// away from the approaching singularity.
inline ContourSpec gamma_contour(const WaveParams& p, ContourMode mode,
                                 double radius = 0.05) {
    ContourSpec c;
    c.offset = 0.0;
    c.tail_model = TailModel::NONE;
    c.truncation = std::max(500.0, 20.0 * std::max(std::abs(p.k1), std::abs(p.k2)));
    if (mode == ContourMode::ABSORBING) return c;
    if (!(radius > 0.0)) throw UsageError("gamma_contour: INDENTED needs radius > 0");

    // singularities below the axis are skirted from above and vice versa
    std::vector<std::pair<double, IndentSide>> marks = {
        {p.a1.real(), p.a1.imag() < 0 ? IndentSide::ABOVE : IndentSide::BELOW},
        {-p.k1.real(), IndentSide::ABOVE},
        {-p.k2.real(), IndentSide::ABOVE},
        {p.k1.real(), IndentSide::BELOW},
        {p.k2.real(), IndentSide::BELOW},
    };
    std::sort(marks.begin(), marks.end());
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [re, side] : marks) {
        if (re - radius <= prev) continue;  // merge coincident abscissae
        c.indentations.push_back({Cplx(re, 0.0), radius, side});
        prev = re + radius;
    }
    const double im = std::min(p.k1.imag(), p.k2.imag());
    if (im > 10.0 * radius)
        c.warning = "INDENTED mode with strongly absorbing wavenumbers; "
                    "ABSORBING is the appropriate mode";
    return c;
}

namespace detail {

// Oscillatory line integral \int_Gamma g(z) e^{-i z x} dz. Panels are capped
// at a half period; beyond the truncation a two-term integration-by-parts
// tail is added (valid when g decays and x > 0).
inline Cplx oscillatory_integral(const std::function<Cplx(Cplx)>& g,
                                 const ContourSpec& c, double x, double abs_tol) {
    const auto f = [&](Cplx z) { return g(z) * std::exp(Cplx(0.0, -1.0) * z * x); };
    const double cap = x > 1e-9 ? pi / x : std::numeric_limits<double>::infinity();
    const QuadratureResult main = integrate_contour(f, c, abs_tol, {}, cap);
    if (x <= 1e-9) return main.value;

    const Cplx zr(c.truncation, c.offset), zl(-c.truncation, c.offset);
    const Cplx ix(0.0, x);
    const double h = 0.5;
    const Cplx dr = (g(zr + h) - g(zr - h)) / (2.0 * h);
    const Cplx dl = (g(zl + h) - g(zl - h)) / (2.0 * h);
    const Cplx tail_r = std::exp(-Cplx(0.0, 1.0) * zr * x) * (g(zr) / ix + dr / (ix * ix));
    const Cplx tail_l = -std::exp(-Cplx(0.0, 1.0) * zl * x) * (g(zl) / ix + dl / (ix * ix));
    return main.value + tail_r + tail_l;
}

}  // namespace detail

// psi(x) = (1/4pi^2) \iint_{Gamma x Gamma} spectral(alpha) e^{-i alpha.x} dalpha
// as a tensor product of two oscillatory line integrals.
inline Cplx inverse_transform(const Function2D& spectral, const ContourSpec& contour1,
                              const ContourSpec& contour2, PhysicalPoint x,
                              double abs_tol = 1e-6) {
    const auto inner = [&](Cplx a1) {
        return detail::oscillatory_integral(
            [&](Cplx z) { return spectral({a1, z}); }, contour2, x.x2, abs_tol);
    };
    const Cplx outer =
        detail::oscillatory_integral(inner, contour1, x.x1, abs_tol);
    return outer / (4.0 * pi * pi);
}

namespace detail {

// Value and normal derivative at the face (coordinate 0) from a quadratic
// through the three grid nodes nearest the face along the normal.
inline std::pair<Cplx, Cplx> face_trace(const std::vector<double>& t,
                                        const std::vector<Cplx>& f) {
    // Lagrange quadratic through (t0,f0),(t1,f1),(t2,f2), evaluated at 0
    const double t0 = t[0], t1 = t[1], t2 = t[2];
    const double d0 = (t0 - t1) * (t0 - t2);
    const double d1 = (t1 - t0) * (t1 - t2);
    const double d2 = (t2 - t0) * (t2 - t1);
    const Cplx val = f[0] * (t1 * t2 / d0) + f[1] * (t0 * t2 / d1) + f[2] * (t0 * t1 / d2);
    const Cplx der = f[0] * (-(t1 + t2) / d0) + f[1] * (-(t0 + t2) / d1) +
                     f[2] * (-(t0 + t1) / d2);
    return {val, der};
}

}  // namespace detail

// Max over face samples of |phi - psi| and |d_n phi - d_n psi|, each grid
// traced to the face from its own side of the wedge boundary.
inline std::pair<double, double> continuity_check(const FieldGrid& phi,
                                                  const FieldGrid& psi,
                                                  WedgeFace face) {
    phi.validate();
    psi.validate();
    const double h = phi.spacing;
    if (std::abs(psi.spacing - h) > 1e-12 * h)
        throw UsageError("continuity_check: grids must share spacing");

    // along = coordinate running along the face, normal = distance from it
    const auto trace = [&](const FieldGrid& g, double along) -> std::pair<Cplx, Cplx> {
        std::vector<std::pair<double, Cplx>> column;
        for (size_t i = 0; i < g.n1(); ++i)
            for (size_t j = 0; j < g.n2(); ++j) {
                const double x1 = g.x1_at(i), x2 = g.x2_at(j);
                const double a = face == WedgeFace::X1_POSITIVE ? x1 : x2;
                const double n = face == WedgeFace::X1_POSITIVE ? x2 : x1;
                if (std::abs(a - along) < 1e-9 * std::max(1.0, std::abs(along)))
                    column.push_back({n, g.values[i][j]});
            }
        if (column.size() < 3)
            throw UsageError("continuity_check: grids are misaligned along the face");
        std::sort(column.begin(), column.end(), [](const auto& u, const auto& v) {
            return std::abs(u.first) < std::abs(v.first);
        });
        std::vector<double> t = {column[0].first, column[1].first, column[2].first};
        std::vector<Cplx> f = {column[0].second, column[1].second, column[2].second};
        return detail::face_trace(t, f);
    };

    // face sample abscissae: strictly positive lattice points present in both grids
    std::vector<double> samples;
    const FieldGrid& ref = phi;
    if (face == WedgeFace::X1_POSITIVE) {
        for (size_t i = 0; i < ref.n1(); ++i)
            if (ref.x1_at(i) > h / 2.0) samples.push_back(ref.x1_at(i));
    } else {
        for (size_t j = 0; j < ref.n2(); ++j)
            if (ref.x2_at(j) > h / 2.0) samples.push_back(ref.x2_at(j));
    }
    if (samples.empty())
        throw UsageError("continuity_check: no face samples in the grid range");

    double vjump = 0.0, djump = 0.0;
    for (double a : samples) {
        const auto [pv, pd] = trace(phi, a);
        const auto [qv, qd] = trace(psi, a);
        vjump = std::max(vjump, std::abs(pv - qv));
        djump = std::max(djump, std::abs(pd - qd));
    }
    return {vjump, djump};
}

// max |5-point Laplacian + k^2 f| over interior nodes, normalized by max |f|.
inline double helmholtz_residual(const FieldGrid& g, Cplx k) {
    g.validate();
    if (g.n1() < 3 || g.n2() < 3)
        throw UsageError("helmholtz_residual: grid interior must be at least 3x3");
    const double h2 = g.spacing * g.spacing;
    double res = 0.0, scale = 0.0;
    for (size_t i = 0; i < g.n1(); ++i)
        for (size_t j = 0; j < g.n2(); ++j) scale = std::max(scale, std::abs(g.values[i][j]));
    if (scale == 0.0) return 0.0;
    for (size_t i = 1; i + 1 < g.n1(); ++i)
        for (size_t j = 1; j + 1 < g.n2(); ++j) {
            const Cplx lap = (g.values[i + 1][j] + g.values[i - 1][j] +
                              g.values[i][j + 1] + g.values[i][j - 1] -
                              4.0 * g.values[i][j]) / h2;
            res = std::max(res, std::abs(lap + k * k * g.values[i][j]));
        }
    return res / scale;
}

// Least-squares fit of f ~ B + A1 x2 + B1 x1 over grid nodes with
// 2*spacing <= r <= fit_radius (the innermost ring is stencil-contaminated).
inline EdgeExpansion edge_expansion_fit(const FieldGrid& g, double fit_radius) {
    g.validate();
    if (!(fit_radius > 0.0)) throw UsageError("edge_expansion_fit: fit_radius must be > 0");
    std::vector<double> xs, ys;
    std::vector<Cplx> fs;
    for (size_t i = 0; i < g.n1(); ++i)
        for (size_t j = 0; j < g.n2(); ++j) {
            const double x1 = g.x1_at(i), x2 = g.x2_at(j);
            const double r = std::hypot(x1, x2);
            if (r < 2.0 * g.spacing || r > fit_radius) continue;
            xs.push_back(x1);
            ys.push_back(x2);
            fs.push_back(g.values[i][j]);
        }
    if (fs.size() < 16)
        throw UsageError("edge_expansion_fit: fewer than 16 usable samples near the tip");

    // normal equations for the real design matrix [1, x2, x1]
    double M[3][3] = {};
    Cplx rhs[3] = {};
    for (size_t q = 0; q < fs.size(); ++q) {
        const double row[3] = {1.0, ys[q], xs[q]};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) M[i][j] += row[i] * row[j];
            rhs[i] += row[i] * fs[q];
        }
    }
    // 3x3 Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[perm[r]][c]) > std::abs(M[perm[piv]][c])) piv = r;
        std::swap(perm[c], perm[piv]);
        if (std::abs(M[perm[c]][c]) < 1e-14)
            throw UsageError("edge_expansion_fit: degenerate sample geometry");
        for (int r = c + 1; r < 3; ++r) {
            const double f = M[perm[r]][c] / M[perm[c]][c];
            for (int cc = c; cc < 3; ++cc) M[perm[r]][cc] -= f * M[perm[c]][cc];
            rhs[perm[r]] -= f * rhs[perm[c]];
        }
    }
    Cplx sol[3];
    for (int c = 2; c >= 0; --c) {
        Cplx s = rhs[perm[c]];
        for (int cc = c + 1; cc < 3; ++cc) s -= M[perm[c]][cc] * sol[cc];
        sol[c] = s / M[perm[c]][c];
    }

    EdgeExpansion e;
    e.B = sol[0];
    e.fit_radius = fit_radius;
    if (g.region == GridRegion::Q1) {
        e.A1p = sol[1];
        e.B1p = sol[2];
    } else {
        e.A1 = sol[1];
        e.B1 = sol[2];
    }
    double ss = 0.0;
    for (size_t q = 0; q < fs.size(); ++q) {
        const Cplx pred = sol[0] + sol[1] * ys[q] + sol[2] * xs[q];
        ss += std::norm(fs[q] - pred);
    }
    e.fit_residual = std::sqrt(ss / fs.size());
    return e;
}

// Helper used by the CLI and tests: sample an evaluable on a grid.
inline FieldGrid sample_grid(const std::function<Cplx(PhysicalPoint)>& f,
                             GridRegion region, double spacing, double x1_min,
                             double x2_min, size_t n1, size_t n2) {
    FieldGrid g;
    g.region = region;
    g.spacing = spacing;
    // snap the corner onto the origin-aligned lattice
    g.x1_min = std::round(x1_min / spacing) * spacing;
    g.x2_min = std::round(x2_min / spacing) * spacing;
    g.values.assign(n1, std::vector<Cplx>(n2));
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < n2; ++j)
            g.values[i][j] = f({g.x1_at(i), g.x2_at(j)});
    return g;
}

}  // namespace wedge

#endif
