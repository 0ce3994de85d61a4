#ifndef WEDGE_KERNEL_HPP
#define WEDGE_KERNEL_HPP

// Problem configuration, the forcing P, the kernel K and its explicit
// one-variable factors K_{+circ}, K_{-circ}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "wedge/complexfn.hpp"
#include "wedge/errors.hpp"

namespace wedge {

// Physical configuration and derived spectral constants. Immutable after
// construction via make_params.
struct WaveParams {
    Cplx k1;             // wavenumber outside the wedge
    Cplx k2;             // wavenumber inside the wedge
    double theta0;       // incident angle, restricted to (pi, 3pi/2)
    Cplx a1;             // k1 cos(theta0)
    Cplx a2;             // k1 sin(theta0)
    double delta;        // min(Im(k1)|cos t0|, Im(k1)|sin t0|)
    double epsilon_strip;  // half-width of the common analyticity strip

    bool degenerate() const { return k1 == k2; }
};

namespace detail {

// Minimum of Im(kappa(k1, z)) over the strip S(-delta/2, delta/2) restricted
// to |Re z| <= 10 |k2|: coarse grid followed by local shrinking-grid
// refinement. Im(kappa) grows at infinity so the minimum is interior.
inline double min_im_kappa(Cplx k1, Cplx k2, double delta) {
    const double re_max = 10.0 * std::abs(k2);
    const double im_max = delta / 2.0;
    const int nre = 241, nim = 21;

    double best = std::numeric_limits<double>::infinity();
    double bre = 0.0, bim = 0.0;
    for (int i = 0; i < nre; ++i) {
        const double re = -re_max + 2.0 * re_max * i / (nre - 1);
        for (int j = 0; j < nim; ++j) {
            const double im = -im_max + 2.0 * im_max * j / (nim - 1);
            const double v = kappa(k1, Cplx(re, im)).imag();
            if (v < best) { best = v; bre = re; bim = im; }
        }
    }
    double hre = 2.0 * re_max / (nre - 1);
    double him = 2.0 * im_max / (nim - 1);
    for (int iter = 0; iter < 40; ++iter) {
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                const double re = bre + i * hre / 2.0;
                double im = bim + j * him / 2.0;
                im = std::clamp(im, -im_max, im_max);
                const double v = kappa(k1, Cplx(re, im)).imag();
                if (v < best) { best = v; bre = re; bim = im; }
            }
        }
        hre /= 2.0;
        him /= 2.0;
    }
    return best;
}

}  // namespace detail

inline WaveParams make_params(Cplx k1, Cplx k2, double theta0) {
    if (!(k1.imag() > 0.0) || !(k2.imag() > 0.0))
        throw ConfigError("make_params: Im(k1), Im(k2) must be > 0");
    if (!(k1.real() > 0.0) || !(k2.real() > 0.0))
        throw ConfigError("make_params: Re(k1), Re(k2) must be > 0");
    if (!(theta0 > pi && theta0 < 1.5 * pi))
        throw ConfigError("make_params: theta0 must lie strictly in (pi, 3pi/2)");

    WaveParams p;
    p.k1 = k1;
    p.k2 = k2;
    p.theta0 = theta0;
    p.a1 = k1 * std::cos(theta0);
    p.a2 = k1 * std::sin(theta0);
    p.delta = std::min(k1.imag() * std::abs(std::cos(theta0)),
                       k1.imag() * std::abs(std::sin(theta0)));
    const double delta1 = detail::min_im_kappa(k1, k2, p.delta);
    p.epsilon_strip = std::min(p.delta / 2.0, delta1);
    if (!(p.epsilon_strip > 0.0))
        throw ConfigError("make_params: derived strip width is not positive");
    return p;
}

// P(alpha) = 1 / ((alpha1 - a1)(alpha2 - a2)), the ++ forcing.
inline Cplx forcing_P(const WaveParams& p, const SpectralPoint& a) {
    const Cplx d1 = a.alpha1 - p.a1;
    const Cplx d2 = a.alpha2 - p.a2;
    if (d1 == Cplx(0, 0) || d2 == Cplx(0, 0))
        throw PoleError("forcing_P: evaluation at a pole of P");
    return 1.0 / (d1 * d2);
}

// K(alpha) = (k2^2 - alpha1^2 - alpha2^2) / (k1^2 - alpha1^2 - alpha2^2).
inline Cplx kernel_K(const WaveParams& p, const SpectralPoint& a) {
    const Cplx s = a.alpha1 * a.alpha1 + a.alpha2 * a.alpha2;
    const Cplx den = p.k1 * p.k1 - s;
    if (den == Cplx(0, 0))
        throw PoleError("kernel_K: alpha1^2 + alpha2^2 = k1^2");
    return (p.k2 * p.k2 - s) / den;
}

// K_{+circ} = (kappa(k2, alpha2) + alpha1) / (kappa(k1, alpha2) + alpha1),
// analytic on UHP(-eps) x S(-eps, eps).
inline Cplx K_plus_circ(const WaveParams& p, const SpectralPoint& a) {
    const Cplx den = kappa(p.k1, a.alpha2) + a.alpha1;
    if (den == Cplx(0, 0))
        throw PoleError("K_plus_circ: alpha1 = -kappa(k1, alpha2)");
    return (kappa(p.k2, a.alpha2) + a.alpha1) / den;
}

// K_{-circ} = (kappa(k2, alpha2) - alpha1) / (kappa(k1, alpha2) - alpha1),
// analytic on LHP(eps) x S(-eps, eps). K = K_{+circ} K_{-circ}.
inline Cplx K_minus_circ(const WaveParams& p, const SpectralPoint& a) {
    const Cplx den = kappa(p.k1, a.alpha2) - a.alpha1;
    if (den == Cplx(0, 0))
        throw PoleError("K_minus_circ: alpha1 = kappa(k1, alpha2)");
    return (kappa(p.k2, a.alpha2) - a.alpha1) / den;
}

// JSON form {k1:[re,im], k2:[re,im], theta0:t}; derived fields are always
// recomputed on load.
inline nlohmann::json params_to_json(const WaveParams& p) {
    return {{"k1", {p.k1.real(), p.k1.imag()}},
            {"k2", {p.k2.real(), p.k2.imag()}},
            {"theta0", p.theta0}};
}

inline WaveParams params_from_json(const nlohmann::json& j) {
    const auto c = [](const nlohmann::json& v) {
        return Cplx(v.at(0).get<double>(), v.at(1).get<double>());
    };
    return make_params(c(j.at("k1")), c(j.at("k2")), j.at("theta0").get<double>());
}

}  // namespace wedge

#endif
