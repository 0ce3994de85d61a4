#ifndef WEDGE_COMPLEXFN_HPP
#define WEDGE_COMPLEXFN_HPP

// Branch-cut-controlled elementary functions and C^2 region predicates.
//
// Two non-standard branch conventions are used throughout:
//   * mysqrt: square root with its cut along the positive real axis and
//     mysqrt(-1) = i, so Im(mysqrt) >= 0 everywhere.
//   * mylog: logarithm with its cut along the ray arg(z) = -3pi/4.

#include <cmath>
#include <complex>
#include <variant>

#include "wedge/errors.hpp"

namespace wedge {

using Cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

struct SpectralPoint {
    Cplx alpha1;
    Cplx alpha2;
};

// Square root with branch cut along the positive real axis, mysqrt(-1) = i.
// Defined by mysqrt(z) = i * sqrt(-z) with the principal square root; the
// imaginary part is >= 0 everywhere and vanishes only on [0, inf).
inline Cplx mysqrt(Cplx z) {
    // Keep -z on the +0 side of the principal cut when z is real, so that
    // real z >= 0 maps to the real line (mysqrt(4) = -2, mysqrt(0) = 0).
    Cplx w(-z.real(), z.imag() == 0.0 ? 0.0 : -z.imag());
    Cplx r = std::sqrt(w);
    return Cplx(-r.imag(), r.real());  // i * r
}

// Logarithm with branch cut along arg(z) = -3pi/4, i.e. arg in (-3pi/4, 5pi/4].
// Obtained as mylog(z) = log(e^{-i pi/4} z) + i pi/4 with the principal log.
inline Cplx mylog(Cplx z) {
    if (z == Cplx(0.0, 0.0)) throw PoleError("mylog: evaluation at z = 0");
    static const Cplx rot = std::polar(1.0, -pi / 4.0);
    return std::log(rot * z) + Cplx(0.0, pi / 4.0);
}

// kappa(k, z) = mysqrt(k^2 - z^2) on the sheet with kappa(k, 0) = +k.
// Requires Re(k) > 0, Im(k) > 0; then Im(kappa) > 0 off the two branch
// cuts emanating from z = +-k, and kappa is even in z.
inline Cplx kappa(Cplx k, Cplx z) {
    return mysqrt(k * k - z * z);
}

enum class RegionKind {
    UHP, LHP, STRIP,          // scalar regions
    Dpp, Dpm, Dmm, Dmp,       // half-plane x half-plane
    DpCirc, DmCirc, DCircp, DCircm  // half-plane x strip / strip x half-plane
};

// Open region of C or C^2. For STRIP, (kappa1, kappa2) are the strip bounds.
// For the half-plane product regions D_{++}(k1,k2) = UHP(k1) x UHP(k2) etc,
// slot i uses kappa_i. For the mixed kinds the 'circ' slot is the strip
// S(kappa1, kappa2), a '+' slot is UHP(kappa1) and a '-' slot is LHP(kappa2);
// with (-eps, eps) this reproduces D_{+circ} = UHP(-eps) x S(-eps, eps) etc.
struct RegionSpec {
    RegionKind kind;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
};

inline bool region_contains(const RegionSpec& r, Cplx z) {
    switch (r.kind) {
        case RegionKind::UHP: return z.imag() > r.kappa1;
        case RegionKind::LHP: return z.imag() < r.kappa1;
        case RegionKind::STRIP:
            if (!(r.kappa1 < r.kappa2))
                throw UsageError("region_contains: STRIP requires kappa1 < kappa2");
            return z.imag() > r.kappa1 && z.imag() < r.kappa2;
        default:
            throw UsageError("region_contains: scalar point given for a C^2 region");
    }
}

inline bool region_contains(const RegionSpec& r, const SpectralPoint& a) {
    const double im1 = a.alpha1.imag();
    const double im2 = a.alpha2.imag();
    const auto strip = [&](double im) { return im > r.kappa1 && im < r.kappa2; };
    switch (r.kind) {
        case RegionKind::Dpp: return im1 > r.kappa1 && im2 > r.kappa2;
        case RegionKind::Dpm: return im1 > r.kappa1 && im2 < r.kappa2;
        case RegionKind::Dmm: return im1 < r.kappa1 && im2 < r.kappa2;
        case RegionKind::Dmp: return im1 < r.kappa1 && im2 > r.kappa2;
        case RegionKind::DpCirc: return im1 > r.kappa1 && strip(im2);
        case RegionKind::DmCirc: return im1 < r.kappa2 && strip(im2);
        case RegionKind::DCircp: return strip(im1) && im2 > r.kappa1;
        case RegionKind::DCircm: return strip(im1) && im2 < r.kappa2;
        default:
            throw UsageError("region_contains: C^2 point given for a scalar region");
    }
}

}  // namespace wedge

#endif
