#ifndef WEDGE_SPECTRA_HPP
#define WEDGE_SPECTRA_HPP

// The reduced Wiener-Hopf system: Radlow's ansatz plus correction, the
// compatibility residual, pole-removal splits, and the Liouville
// diagnostics E1/E2.

#include <cmath>
#include <complex>
#include <functional>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "wedge/cauchy.hpp"
#include "wedge/complexfn.hpp"
#include "wedge/contour.hpp"
#include "wedge/errors.hpp"
#include "wedge/kernel.hpp"

namespace wedge {

using Function2D = std::function<Cplx(const SpectralPoint&)>;

// One rational basis term coeff / ((a1-pole1)^order1 (a2-pole2)^order2).
// pole1 sits below the strip (plus-type in alpha1), pole2 above it
// (minus-type in alpha2), so every term is a decaying +- function.
struct CandidateTerm {
    Cplx coeff;
    Cplx pole1;
    int order1 = 1;
    Cplx pole2;
    int order2 = 1;
};

// Parametric trial Phi_{+-}.
struct SpectralCandidate {
    enum Kind { ZERO, RATIONAL_BASIS } kind = ZERO;
    std::vector<CandidateTerm> terms;

    void validate(const WaveParams& p) const {
        if (kind == ZERO) return;
        for (const auto& t : terms) {
            if (!(t.pole1.imag() < -p.epsilon_strip))
                throw ConfigError("SpectralCandidate: pole1 must satisfy Im < -eps");
            if (!(t.pole2.imag() > p.epsilon_strip))
                throw ConfigError("SpectralCandidate: pole2 must satisfy Im > eps");
            if (t.order1 < 1 || t.order2 < 1)
                throw ConfigError("SpectralCandidate: orders must be >= 1");
        }
    }

    Cplx eval(const SpectralPoint& a) const {
        if (kind == ZERO) return {0.0, 0.0};
        Cplx s{0.0, 0.0};
        for (const auto& t : terms)
            s += t.coeff / (std::pow(a.alpha1 - t.pole1, t.order1) *
                            std::pow(a.alpha2 - t.pole2, t.order2));
        return s;
    }
};

inline nlohmann::json candidate_to_json(const SpectralCandidate& c) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms)
        terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                         {"pole1", {t.pole1.real(), t.pole1.imag()}},
                         {"order1", t.order1},
                         {"pole2", {t.pole2.real(), t.pole2.imag()}},
                         {"order2", t.order2}});
    return {{"kind", c.kind == SpectralCandidate::ZERO ? "ZERO" : "RATIONAL_BASIS"},
            {"terms", terms}};
}

inline SpectralCandidate candidate_from_json(const nlohmann::json& j) {
    SpectralCandidate c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ZERO") c.kind = SpectralCandidate::ZERO;
    else if (kind == "RATIONAL_BASIS") c.kind = SpectralCandidate::RATIONAL_BASIS;
    else throw UsageError("candidate_from_json: unknown kind " + kind);
    const auto cx = [](const nlohmann::json& v) {
        return Cplx(v.at(0).get<double>(), v.at(1).get<double>());
    };
    for (const auto& t : j.value("terms", nlohmann::json::array())) {
        CandidateTerm term;
        term.coeff = cx(t.at("coeff"));
        term.pole1 = cx(t.at("pole1"));
        term.order1 = t.at("order1").get<int>();
        term.pole2 = cx(t.at("pole2"));
        term.order2 = t.at("order2").get<int>();
        c.terms.push_back(term);
    }
    return c;
}

// The spectral unknowns as evaluables; phi_34 = phi_pm + phi_mm + phi_mp.
struct SpectralFunctions {
    Function2D psi_pp;
    Function2D phi_mp;
    Function2D phi_mm;
    Function2D phi_pm;
    Function2D phi_34;
};

// Exact degenerate-contrast (k1 = k2) spectra: Psi_{++} = -P_{++}, all
// scattered parts vanish.
inline SpectralFunctions degenerate_spectra(const WaveParams& p) {
    SpectralFunctions s;
    s.psi_pp = [p](const SpectralPoint& a) { return -forcing_P(p, a); };
    const Function2D zero = [](const SpectralPoint&) { return Cplx(0.0, 0.0); };
    s.phi_mp = s.phi_mm = s.phi_pm = zero;
    s.phi_34 = zero;
    return s;
}

// Psi_{++} candidate with zero correction:
//   -P_{++} / (K_{++}(a) K_{-+}(a1, a2') K_{--}(a1, a2) K_{+-}(a1', a2)).
// The sign of "-Psi_{++} = ..." is folded in, so this returns Psi_{++}.
inline Cplx radlow_ansatz(const WaveParams& p, const SpectralPoint& a,
                          double abs_tol = 1e-9) {
    const Cplx P = forcing_P(p, a);
    const Cplx kpp = K_factor(p, FactorKind::PP, a, abs_tol);
    const Cplx kmp = K_factor(p, FactorKind::MP, {p.a1, a.alpha2}, abs_tol);
    const Cplx kmm = K_factor(p, FactorKind::MM, {p.a1, p.a2}, abs_tol);
    const Cplx kpm = K_factor(p, FactorKind::PM, {a.alpha1, p.a2}, abs_tol);
    return -P / (kpp * kmp * kmm * kpm);
}

namespace detail {

// [Phi_{+-} / K_{-circ}]_{+circ} at (alpha1, z): a Cauchy split in the
// alpha1 plane with alpha2 frozen at z.
inline Cplx inner_bracket(const WaveParams& p, const SpectralCandidate& cand,
                          Cplx alpha1, Cplx z, double abs_tol) {
    Function1D f;
    f.eval = [&](Cplx w) {
        const SpectralPoint pt{w, z};
        return cand.eval(pt) / K_minus_circ(p, pt);
    };
    f.strip_lo = -p.epsilon_strip;
    f.strip_hi = p.epsilon_strip;
    const ContourSpec c = factor_contour(p, SplitSign::PLUS, alpha1);
    return cauchy_integral(f, c, alpha1, SplitSign::PLUS, abs_tol).value;
}

// G(alpha1, z) = (K_{-+}(a1, z) / K_{+-}(alpha1, z)) [Phi_{+-}/K_{-circ}]_{+circ},
// the integrand of the outer alpha2-plane brackets. Values are memoized on
// the outer quadrature nodes (keyed by z quantised to 1e-12).
struct OuterIntegrand {
    const WaveParams& p;
    const SpectralCandidate& cand;
    Cplx alpha1;
    double abs_tol;
    mutable std::unordered_map<long long, Cplx> memo;

    Cplx operator()(Cplx z) const {
        const long long key = quant(z.real());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Cplx b = inner_bracket(p, cand, alpha1, z, abs_tol);
        const Cplx kmp = K_factor(p, FactorKind::MP, {p.a1, z}, abs_tol);
        const Cplx kpm = K_factor(p, FactorKind::PM, {alpha1, z}, abs_tol);
        const Cplx v = kmp / kpm * b;
        memo.emplace(key, v);
        return v;
    }
};

// [G]_{circ +} or [G]_{circ -} at alpha.
inline Cplx outer_bracket(const WaveParams& p, const SpectralCandidate& cand,
                          const SpectralPoint& a, SplitSign sign, double abs_tol) {
    if (cand.kind == SpectralCandidate::ZERO) return {0.0, 0.0};
    OuterIntegrand G{p, cand, a.alpha1, abs_tol * 0.1, {}};
    Function1D f{[&](Cplx z) { return G(z); }, -p.epsilon_strip, p.epsilon_strip};
    const ContourSpec c = factor_contour(p, sign, a.alpha2);
    return cauchy_integral(f, c, a.alpha2, sign, abs_tol).value;
}

}  // namespace detail

// The nested double-bracket term, signed so that
// psi_pp = radlow_ansatz + correction_term.
inline Cplx correction_term(const WaveParams& p, const SpectralCandidate& cand,
                            const SpectralPoint& a, double abs_tol = 1e-7) {
    cand.validate(p);
    if (cand.kind == SpectralCandidate::ZERO) return {0.0, 0.0};
    const Cplx g = detail::outer_bracket(p, cand, a, SplitSign::PLUS, abs_tol);
    const Cplx kpp = K_factor(p, FactorKind::PP, a);
    const Cplx kmp = K_factor(p, FactorKind::MP, {p.a1, a.alpha2});
    return -g / (kpp * kmp);
}

// Right-hand side of the compatibility equation; zero for an exact Phi_{+-}.
inline Cplx compatibility_residual(const WaveParams& p, const SpectralCandidate& cand,
                                   const SpectralPoint& a, double abs_tol = 1e-7) {
    cand.validate(p);
    const Cplx P = forcing_P(p, a);
    const Cplx kmm_a = K_factor(p, FactorKind::MM, {p.a1, a.alpha2});
    const Cplx kpm = K_factor(p, FactorKind::PM, a);
    const Cplx kmm_aa = K_factor(p, FactorKind::MM, {p.a1, p.a2});
    const Cplx kpm_a = K_factor(p, FactorKind::PM, {a.alpha1, p.a2});
    const Cplx mismatch = P * (1.0 / (kmm_a * kpm) - 1.0 / (kmm_aa * kpm_a));
    const Cplx b = detail::outer_bracket(p, cand, a, SplitSign::MINUS, abs_tol);
    return mismatch + b;
}

// Pole removal in the alpha1 plane:
//   P_{++}/K_{-circ} = P_{++}/K_{-circ}(a1, alpha2)           (+circ part)
//                    + P_{++}(1/K_{-circ} - 1/K_{-circ}(a1, alpha2))  (-circ part)
inline std::pair<Cplx, Cplx> pole_removal_split_alpha1(const WaveParams& p,
                                                       const SpectralPoint& a) {
    const Cplx P = forcing_P(p, a);
    const Cplx km_frozen = K_minus_circ(p, {p.a1, a.alpha2});
    const Cplx km = K_minus_circ(p, a);
    return {P / km_frozen, P * (1.0 / km - 1.0 / km_frozen)};
}

// E1 diagnostic: (UHP branch expression) - (LHP branch expression) on the
// overlap strip; zero for a consistent (psi_pp, phi_pm, phi_mcirc) triple.
inline Cplx E1_residual(const WaveParams& p, const SpectralCandidate& cand,
                        const Function2D& psi_pp, const Function2D& phi_mcirc,
                        const SpectralPoint& a, double abs_tol = 1e-8) {
    cand.validate(p);
    const Cplx P = forcing_P(p, a);
    const Cplx km = K_minus_circ(p, a);
    const Cplx km_frozen = K_minus_circ(p, {p.a1, a.alpha2});
    Cplx b_plus{0.0, 0.0}, b_minus{0.0, 0.0};
    if (cand.kind != SpectralCandidate::ZERO) {
        Function1D f;
        f.eval = [&](Cplx w) {
            const SpectralPoint pt{w, a.alpha2};
            return cand.eval(pt) / K_minus_circ(p, pt);
        };
        f.strip_lo = -p.epsilon_strip;
        f.strip_hi = p.epsilon_strip;
        b_plus = cauchy_integral(f, factor_contour(p, SplitSign::PLUS, a.alpha1),
                                 a.alpha1, SplitSign::PLUS, abs_tol).value;
        b_minus = cauchy_integral(f, factor_contour(p, SplitSign::MINUS, a.alpha1),
                                  a.alpha1, SplitSign::MINUS, abs_tol).value;
    }
    const Cplx upper = -K_plus_circ(p, a) * psi_pp(a) - b_plus - P / km_frozen;
    const Cplx lower = phi_mcirc(a) / km + b_minus + P * (1.0 / km - 1.0 / km_frozen);
    return upper - lower;
}

// E2 diagnostic, analogous in the alpha2 plane.
inline Cplx E2_residual(const WaveParams& p, const SpectralCandidate& cand,
                        const Function2D& psi_pp, const SpectralPoint& a,
                        double abs_tol = 1e-7) {
    cand.validate(p);
    const Cplx P = forcing_P(p, a);
    const Cplx kpp = K_factor(p, FactorKind::PP, a);
    const Cplx kmp = K_factor(p, FactorKind::MP, {p.a1, a.alpha2});
    const Cplx kmm_a = K_factor(p, FactorKind::MM, {p.a1, a.alpha2});
    const Cplx kpm = K_factor(p, FactorKind::PM, a);
    const Cplx kmm_aa = K_factor(p, FactorKind::MM, {p.a1, p.a2});
    const Cplx kpm_a = K_factor(p, FactorKind::PM, {a.alpha1, p.a2});
    const Cplx g_plus = detail::outer_bracket(p, cand, a, SplitSign::PLUS, abs_tol);
    const Cplx g_minus = detail::outer_bracket(p, cand, a, SplitSign::MINUS, abs_tol);
    const Cplx upper =
        -psi_pp(a) * kpp * kmp - P / (kmm_aa * kpm_a) - g_plus;
    const Cplx lower =
        P * (1.0 / (kmm_a * kpm) - 1.0 / (kmm_aa * kpm_a)) + g_minus;
    return upper - lower;
}

// Phi_{3/4} recovered from the Wiener-Hopf equation: -K Psi_{++} - P_{++}.
inline Cplx phi_34_from_psi(const WaveParams& p, const Function2D& psi_pp,
                            const SpectralPoint& a) {
    return -kernel_K(p, a) * psi_pp(a) - forcing_P(p, a);
}

enum class RayDirection { ALPHA1, ALPHA2, JOINT };

// Log-log slope of |f| along imaginary rays i*t, t in [1e2, 1e4]; the
// frozen coordinate is held at 2i.
inline double decay_rate_probe(const Function2D& f, RayDirection direction,
                               const WaveParams& p) {
    (void)p;
    const Cplx frozen(0.0, 2.0);
    const int n = 9;
    std::vector<double> lt, lv;
    for (int j = 0; j < n; ++j) {
        const double t = 1e2 * std::pow(1e2, static_cast<double>(j) / (n - 1));
        SpectralPoint a;
        switch (direction) {
            case RayDirection::ALPHA1: a = {Cplx(0.0, t), frozen}; break;
            case RayDirection::ALPHA2: a = {frozen, Cplx(0.0, t)}; break;
            case RayDirection::JOINT: a = {Cplx(0.0, t), Cplx(0.0, t)}; break;
        }
        const double v = std::abs(f(a));
        if (!(v > 0.0) || !std::isfinite(v))
            throw AccuracyError("decay_rate_probe: evaluation failed along the ray",
                                0.0, 0.0, 0.0);
        lt.push_back(std::log(t));
        lv.push_back(std::log(v));
    }
    double st = 0, sv = 0, stt = 0, stv = 0;
    for (int j = 0; j < n; ++j) {
        st += lt[j];
        sv += lv[j];
        stt += lt[j] * lt[j];
        stv += lt[j] * lv[j];
    }
    return (n * stv - st * sv) / (n * stt - st * st);
}

// Deterministic probe set for candidate fitting: 32 points of D_{+-} just
// outside the strip, where the compatibility residual is most constraining.
inline std::vector<SpectralPoint> compatibility_probes(const WaveParams& p) {
    std::vector<SpectralPoint> probes;
    const double eps = p.epsilon_strip;
    const double s = std::max(std::abs(p.k1), std::abs(p.k2));
    const double re1[8] = {-3.0, -2.0, -1.0, -0.4, 0.4, 1.0, 2.0, 3.0};
    const double re2[4] = {-2.0, -0.6, 0.6, 2.0};
    for (double r1 : re1)
        for (double r2 : re2)
            probes.push_back({Cplx(r1 * s, 0.3 * eps), Cplx(r2 * s, -1.3 * eps)});
    return probes;
}

// Least-squares fit of candidate coefficients against the probe residuals.
// The residual is affine in the coefficients, so each unit basis term
// contributes a fixed column. Exploratory convenience, not a solver.
inline SpectralCandidate fit_candidate_coefficients(
    const WaveParams& p, const std::vector<CandidateTerm>& basis,
    const std::vector<SpectralPoint>& probes, double abs_tol = 1e-6) {
    const size_t m = probes.size(), n = basis.size();
    std::vector<Cplx> r0(m);
    SpectralCandidate zero;
    for (size_t i = 0; i < m; ++i)
        r0[i] = compatibility_residual(p, zero, probes[i], abs_tol);
    std::vector<std::vector<Cplx>> col(n, std::vector<Cplx>(m));
    for (size_t j = 0; j < n; ++j) {
        SpectralCandidate unit;
        unit.kind = SpectralCandidate::RATIONAL_BASIS;
        CandidateTerm t = basis[j];
        t.coeff = {1.0, 0.0};
        unit.terms = {t};
        for (size_t i = 0; i < m; ++i)
            col[j][i] = compatibility_residual(p, unit, probes[i], abs_tol) - r0[i];
    }
    // normal equations A^H A c = -A^H r0
    std::vector<std::vector<Cplx>> M(n, std::vector<Cplx>(n + 1, Cplx{0, 0}));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            for (size_t q = 0; q < m; ++q)
                M[i][j] += std::conj(col[i][q]) * col[j][q];
        for (size_t q = 0; q < m; ++q) M[i][n] -= std::conj(col[i][q]) * r0[q];
    }
    // Gaussian elimination with partial pivoting
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (std::abs(M[r][i]) > std::abs(M[piv][i])) piv = r;
        std::swap(M[i], M[piv]);
        if (std::abs(M[i][i]) < 1e-300)
            throw AccuracyError("fit_candidate_coefficients: singular normal equations",
                                0.0, 0.0, 0.0);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            const Cplx factor = M[r][i] / M[i][i];
            for (size_t cidx = i; cidx <= n; ++cidx) M[r][cidx] -= factor * M[i][cidx];
        }
    }
    SpectralCandidate out;
    out.kind = SpectralCandidate::RATIONAL_BASIS;
    for (size_t j = 0; j < n; ++j) {
        CandidateTerm t = basis[j];
        t.coeff = M[j][n] / M[j][j];
        out.terms.push_back(t);
    }
    return out;
}

}  // namespace wedge

#endif
