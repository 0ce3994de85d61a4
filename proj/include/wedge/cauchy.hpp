#ifndef WEDGE_CAUCHY_HPP
#define WEDGE_CAUCHY_HPP

// Cauchy sum-split and multiplicative factorisation on horizontal contours,
// plus the four kernel factors K_{--}, K_{-+}, K_{+-}, K_{++}.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "wedge/complexfn.hpp"
#include "wedge/contour.hpp"
#include "wedge/errors.hpp"
#include "wedge/kernel.hpp"

namespace wedge {

// One-variable evaluable with its declared analyticity strip.
struct Function1D {
    std::function<Cplx(Cplx)> eval;
    double strip_lo = -std::numeric_limits<double>::infinity();
    double strip_hi = std::numeric_limits<double>::infinity();
};

enum class SplitSign { PLUS, MINUS };
enum class Plane { ALPHA1, ALPHA2 };

// +-(1/2pi i) \int f(z)/(z - alpha) dz over the contour. PLUS is the
// plus-part formula (prefactor +1, contour below alpha); MINUS the minus
// part (prefactor -1, contour above alpha). With the RECIPROCAL tail model
// a fitted c/z behaviour of f is integrated in closed form beyond the
// truncation.
inline QuadratureResult cauchy_integral(const Function1D& f, const ContourSpec& contour,
                                        Cplx alpha, SplitSign sign,
                                        double abs_tol = 1e-8) {
    if (!(contour.offset > f.strip_lo && contour.offset < f.strip_hi))
        throw UsageError("cauchy_integral: contour outside the declared strip");

    const double spacing = 2.0 * contour.truncation / contour.node_budget;
    const double d = contour_distance(contour, alpha);
    if (d < 2.0 * spacing)
        throw ProximityError("cauchy_integral: alpha within two node spacings of the contour");

    const Cplx zl(-contour.truncation, contour.offset);
    const Cplx zr(contour.truncation, contour.offset);
    const Cplx fl = f.eval(zl), fr = f.eval(zr);
    if (std::abs(fl) > 1e-2 || std::abs(fr) > 1e-2)
        throw AccuracyError("cauchy_integral: integrand has not decayed at the truncation",
                            0.0, 0.0, std::abs(fl) + std::abs(fr));

    const auto q = [&](Cplx z) { return f.eval(z) / (z - alpha); };
    std::vector<double> bp = {alpha.real(), alpha.real() - std::max(d, 1.0),
                              alpha.real() + std::max(d, 1.0)};
    QuadratureResult r = integrate_contour(q, contour, abs_tol, bp);

    Cplx tail{0.0, 0.0};
    if (contour.tail_model == TailModel::RECIPROCAL) {
        const Cplx cl = zl * fl, cr = zr * fr;
        if (std::abs(alpha) < 1e-8) {
            tail = cr / zr - cl / zl;
        } else {
            // \int (c/z)/(z-a) dz = (c/a) log((z-a)/z), branch continuous to 0
            tail = -(cr / alpha) * std::log(1.0 - alpha / zr) +
                   (cl / alpha) * std::log(1.0 - alpha / zl);
        }
    }

    const Cplx pref = (sign == SplitSign::PLUS ? 1.0 : -1.0) / (2.0 * pi * Cplx(0.0, 1.0));
    QuadratureResult out;
    out.value = pref * (r.value + tail);
    out.error_estimate = (r.error_estimate + 0.25 * std::abs(tail)) / (2.0 * pi);
    out.evaluations = r.evaluations + 2;
    return out;
}

// Bracket operators [F]_{+-circ} / [F]_{circ +-}: the Cauchy sum-split
// applied in one plane with the other variable frozen.
inline QuadratureResult bracket(const std::function<Cplx(const SpectralPoint&)>& F,
                                Plane plane, SplitSign sign, const WaveParams& params,
                                const SpectralPoint& alpha, const ContourSpec& contour,
                                double abs_tol = 1e-8) {
    (void)params;
    Function1D f;
    if (plane == Plane::ALPHA1) {
        f.eval = [&](Cplx z) { return F({z, alpha.alpha2}); };
        return cauchy_integral(f, contour, alpha.alpha1, sign, abs_tol);
    }
    f.eval = [&](Cplx z) { return F({alpha.alpha1, z}); };
    return cauchy_integral(f, contour, alpha.alpha2, sign, abs_tol);
}

namespace detail {

// Consecutive samples of mylog(g) along the contour must not jump by ~2pi;
// a jump of more than pi indicates g crossed mylog's branch cut.
inline void winding_check(const std::function<Cplx(Cplx)>& g, const ContourSpec& c,
                          int samples = 201) {
    Cplx prev{0.0, 0.0};
    bool have = false;
    for (int j = 0; j < samples; ++j) {
        const double u = -1.0 + 2.0 * j / (samples - 1);
        const double t = c.truncation * u * std::abs(u);  // clustered at 0
        const Cplx l = mylog(g(Cplx(t, c.offset)));
        if (have && std::abs(l.imag() - prev.imag()) >= pi)
            throw BranchCrossingError(
                "factorize_log: sampled mylog(g) jumps across a branch cut on the contour");
        prev = l;
        have = true;
    }
}

}  // namespace detail

// Cauchy multiplicative factorisation: returns (Psi_plus, Psi_minus) with
// Psi_plus * Psi_minus = g(alpha) on the common strip, using mylog as the
// logarithm. g must tend to 1 at the truncation ends.
inline std::pair<Cplx, Cplx> factorize_log(const Function1D& g,
                                           const ContourSpec& contour_low,
                                           const ContourSpec& contour_high, Cplx alpha,
                                           double abs_tol = 1e-8) {
    detail::winding_check(g.eval, contour_low);
    detail::winding_check(g.eval, contour_high);
    Function1D lg{[&](Cplx z) { return mylog(g.eval(z)); }, g.strip_lo, g.strip_hi};
    const Cplx ip = cauchy_integral(lg, contour_low, alpha, SplitSign::PLUS, abs_tol).value;
    const Cplx im = cauchy_integral(lg, contour_high, alpha, SplitSign::MINUS, abs_tol).value;
    return {std::exp(ip), std::exp(im)};
}

enum class FactorKind { MM, MP, PM, PP };

namespace detail {

struct FactorKey {
    std::array<long long, 9> v;
    bool operator==(const FactorKey&) const = default;
};

struct FactorKeyHash {
    size_t operator()(const FactorKey& k) const {
        size_t h = 1469598103934665603ull;
        for (long long x : k.v) {
            h ^= static_cast<size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline long long quant(double x) {
    // 1e-12 quantisation for memo keys
    return static_cast<long long>(std::llround(x * 1e12));
}

inline std::unordered_map<FactorKey, Cplx, FactorKeyHash>& factor_cache() {
    static std::unordered_map<FactorKey, Cplx, FactorKeyHash> cache;
    return cache;
}

inline std::unordered_map<FactorKey, bool, FactorKeyHash>& winding_cache() {
    static std::unordered_map<FactorKey, bool, FactorKeyHash> cache;
    return cache;
}

inline std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

// Contour for the alpha2-plane factor integrals. The default offset is
// +-epsilon_strip/2; when the evaluation point comes close to it the offset
// moves to the midpoint between the point and the strip edge (the theorems
// make the result offset-independent on the correct side).
inline ContourSpec factor_contour(const WaveParams& p, SplitSign sign, Cplx alpha2) {
    const double eps = p.epsilon_strip;
    const double hi = 0.9 * eps;
    const double im = alpha2.imag();
    ContourSpec c;
    c.truncation = std::max(10.0 * std::max(std::abs(p.k1), std::abs(p.k2)), 2000.0);
    if (sign == SplitSign::MINUS) {
        // contour above the evaluation point
        if (im >= hi * (1.0 - 1e-12))
            throw ProximityError("K_factor: alpha2 above the minus factor's domain");
        c.offset = eps / 2.0;
        if (im > c.offset - 0.25 * eps) c.offset = 0.5 * (im + hi);
    } else {
        if (im <= -hi * (1.0 - 1e-12))
            throw ProximityError("K_factor: alpha2 below the plus factor's domain");
        c.offset = -eps / 2.0;
        if (im < c.offset + 0.25 * eps) c.offset = 0.5 * (im - hi);
    }
    return c;
}

// The four exponential-integral kernel factors, e.g.
//   K_{--}(a) = exp( -(1/2pi i) \int_{R+ie} mylog(K_{-circ}(a1, z))/(z - a2) dz ).
// MM/MP factorise K_{-circ}; PM/PP factorise K_{+circ}. Results are memoized.
inline Cplx K_factor(const WaveParams& p, FactorKind which, const SpectralPoint& a,
                     double abs_tol = 1e-9) {
    const bool from_minus_circ = (which == FactorKind::MM || which == FactorKind::MP);
    const SplitSign part =
        (which == FactorKind::MM || which == FactorKind::PM) ? SplitSign::MINUS
                                                             : SplitSign::PLUS;
    const ContourSpec contour = factor_contour(p, part, a.alpha2);

    detail::FactorKey key{{detail::quant(p.k1.real()), detail::quant(p.k1.imag()),
                           detail::quant(p.k2.real()), detail::quant(p.k2.imag()),
                           static_cast<long long>(which), detail::quant(a.alpha1.real()),
                           detail::quant(a.alpha1.imag()), detail::quant(a.alpha2.real()),
                           detail::quant(a.alpha2.imag())}};
    {
        std::lock_guard<std::mutex> lock(detail::cache_mutex());
        auto it = detail::factor_cache().find(key);
        if (it != detail::factor_cache().end()) return it->second;
    }

    const auto g = [&, from_minus_circ](Cplx z) {
        const SpectralPoint pt{a.alpha1, z};
        return from_minus_circ ? K_minus_circ(p, pt) : K_plus_circ(p, pt);
    };

    // one winding verification per (k1, k2, side, alpha1, offset)
    detail::FactorKey wkey{{detail::quant(p.k1.real()), detail::quant(p.k1.imag()),
                            detail::quant(p.k2.real()), detail::quant(p.k2.imag()),
                            from_minus_circ ? 0ll : 1ll, detail::quant(a.alpha1.real()),
                            detail::quant(a.alpha1.imag()), detail::quant(contour.offset),
                            0ll}};
    bool need_check = false;
    {
        std::lock_guard<std::mutex> lock(detail::cache_mutex());
        need_check = !detail::winding_cache().count(wkey);
    }
    if (need_check) {
        detail::winding_check(g, contour);
        std::lock_guard<std::mutex> lock(detail::cache_mutex());
        detail::winding_cache()[wkey] = true;
    }

    Function1D lg{[&](Cplx z) { return mylog(g(z)); }, -p.epsilon_strip, p.epsilon_strip};
    const Cplx integral =
        cauchy_integral(lg, contour, a.alpha2, part, abs_tol * 2.0 * pi).value;
    const Cplx value = std::exp(integral);
    {
        std::lock_guard<std::mutex> lock(detail::cache_mutex());
        detail::factor_cache()[key] = value;
    }
    return value;
}

inline void clear_factor_cache() {
    std::lock_guard<std::mutex> lock(detail::cache_mutex());
    detail::factor_cache().clear();
    detail::winding_cache().clear();
}

}  // namespace wedge

#endif
