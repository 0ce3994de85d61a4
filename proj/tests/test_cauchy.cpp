#include "doctest.h"

#include <cmath>
#include <random>

#include "wedge/cauchy.hpp"

using namespace wedge;

namespace {

ContourSpec line(double offset, double truncation = 2000.0) {
    ContourSpec c;
    c.offset = offset;
    c.truncation = truncation;
    return c;
}

}  // namespace

TEST_CASE("sum split of 1/(z^2+c^2) matches partial fractions") {
    // oracle: 1/(z^2+c^2) = [-1/(2ic(z+ic))]  (analytic above)
    //                     + [ 1/(2ic(z-ic))]  (analytic below)
    for (double c : {1.0, 2.0, 5.0}) {
        Function1D f;
        f.eval = [c](Cplx z) { return 1.0 / (z * z + c * c); };
        f.strip_lo = -0.5;
        f.strip_hi = 0.5;
        const Cplx alpha{0.2, 0.1};
        const Cplx ic{0.0, c};
        const Cplx plus = cauchy_integral(f, line(-0.3), alpha, SplitSign::PLUS).value;
        const Cplx minus = cauchy_integral(f, line(0.3), alpha, SplitSign::MINUS).value;
        const Cplx plus_exact = -1.0 / (2.0 * ic * (alpha + ic));
        const Cplx minus_exact = 1.0 / (2.0 * ic * (alpha - ic));
        CHECK(std::abs(plus - plus_exact) < 1e-8);
        CHECK(std::abs(minus - minus_exact) < 1e-8);
        CHECK(std::abs(plus + minus - f.eval(alpha)) < 1e-8);
    }
}

TEST_CASE("sum split guards") {
    Function1D f;
    f.eval = [](Cplx z) { return 1.0 / (z * z + 1.0); };
    f.strip_lo = -0.5;
    f.strip_hi = 0.5;
    // contour outside the declared strip
    CHECK_THROWS_AS(cauchy_integral(f, line(0.7), {0.0, 0.9}, SplitSign::MINUS),
                    UsageError);
    // evaluation point on the contour
    CHECK_THROWS_AS(cauchy_integral(f, line(0.3), {0.0, 0.3}, SplitSign::MINUS),
                    ProximityError);
    // integrand not decayed at the truncation
    Function1D slow;
    slow.eval = [](Cplx) { return Cplx(1.0, 0.0); };
    CHECK_THROWS_AS(cauchy_integral(slow, line(0.3), {0.0, 0.6}, SplitSign::MINUS),
                    AccuracyError);
}

TEST_CASE("bracket operator freezes the other variable") {
    Function1D dummy;
    const auto F = [](const SpectralPoint& a) {
        return 1.0 / ((a.alpha1 * a.alpha1 + 4.0) * (a.alpha2 - Cplx(0, 3)));
    };
    const SpectralPoint a{{0.1, 0.05}, {1.0, 0.0}};
    const Cplx got =
        bracket(F, Plane::ALPHA1, SplitSign::PLUS, {}, a, line(-0.3)).value;
    const Cplx ic{0.0, 2.0};
    const Cplx expect =
        -1.0 / (2.0 * ic * (a.alpha1 + ic)) / (a.alpha2 - Cplx(0, 3));
    CHECK(std::abs(got - expect) < 1e-8);
}

TEST_CASE("multiplicative factorisation of a rational symbol") {
    // g = (z^2+4)/(z^2+1) factorises as (z+2i)/(z+i) * (z-2i)/(z-i)
    Function1D g;
    g.eval = [](Cplx z) { return (z * z + 4.0) / (z * z + 1.0); };
    g.strip_lo = -0.5;
    g.strip_hi = 0.5;
    const Cplx alpha{0.1, 0.05};
    const auto [fp, fm] = factorize_log(g, line(-0.3), line(0.3), alpha, 1e-9);
    const Cplx plus_exact = (alpha + Cplx(0, 2)) / (alpha + Cplx(0, 1));
    const Cplx minus_exact = (alpha - Cplx(0, 2)) / (alpha - Cplx(0, 1));
    CHECK(std::abs(fp - plus_exact) < 1e-6);
    CHECK(std::abs(fm - minus_exact) < 1e-6);
    CHECK(std::abs(fp * fm - g.eval(alpha)) < 1e-6);
}

TEST_CASE("winding across the log cut is detected") {
    // |g| = 1 and arg(g) sweeps a full turn along the line, crossing the
    // mylog cut at arg = -3pi/4
    Function1D g;
    g.eval = [](Cplx z) { return (z - Cplx(0, 0.5)) / (z + Cplx(0, 0.5)); };
    g.strip_lo = -0.4;
    g.strip_hi = 0.4;
    CHECK_THROWS_AS(factorize_log(g, line(-0.3), line(0.3), {0.1, 0.0}),
                    BranchCrossingError);
}

TEST_CASE("kernel factors degenerate to 1") {
    clear_factor_cache();
    const WaveParams p = make_params({1.0, 1.0}, {1.0, 1.0}, 1.25 * pi);
    const SpectralPoint pts[] = {{{0.3, 0.0}, {-0.8, 0.0}},
                                 {{-2.0, 0.1 * p.epsilon_strip}, {1.5, 0.0}}};
    for (const auto& a : pts)
        for (FactorKind k : {FactorKind::MM, FactorKind::MP, FactorKind::PM,
                             FactorKind::PP})
            CHECK(std::abs(K_factor(p, k, a) - 1.0) < 1e-10);
}

TEST_CASE("four factors reconstruct K on the strip") {
    clear_factor_cache();
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    const double e = p.epsilon_strip;
    const SpectralPoint pts[] = {{{0.4, 0.1 * e}, {-0.7, -0.1 * e}},
                                 {{-1.3, 0.0}, {2.1, 0.2 * e}},
                                 {{3.0, -0.2 * e}, {0.2, 0.0}}};
    for (const auto& a : pts) {
        const Cplx prod = K_factor(p, FactorKind::MM, a) * K_factor(p, FactorKind::MP, a) *
                          K_factor(p, FactorKind::PM, a) * K_factor(p, FactorKind::PP, a);
        const Cplx k = kernel_K(p, a);
        CHECK(std::abs(prod - k) < 1e-6 * std::abs(k));
    }
}

TEST_CASE("factors approach 1 for large alpha2") {
    clear_factor_cache();
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    const Cplx a1{0.5, 0.0};
    CHECK(std::abs(K_factor(p, FactorKind::PP, {a1, {0.0, 300.0}}) - 1.0) < 1e-2);
    CHECK(std::abs(K_factor(p, FactorKind::MP, {a1, {0.0, 300.0}}) - 1.0) < 1e-2);
    CHECK(std::abs(K_factor(p, FactorKind::PM, {a1, {0.0, -300.0}}) - 1.0) < 1e-2);
    CHECK(std::abs(K_factor(p, FactorKind::MM, {a1, {0.0, -300.0}}) - 1.0) < 1e-2);
}

TEST_CASE("factor evaluations are memoized") {
    clear_factor_cache();
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    const SpectralPoint a{{0.4, 0.0}, {-0.7, 0.0}};
    const Cplx v1 = K_factor(p, FactorKind::PP, a);
    const Cplx v2 = K_factor(p, FactorKind::PP, a);
    CHECK(v1 == v2);  // cache hit must be bitwise identical
}

TEST_CASE("factor domain guards") {
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    const double e = p.epsilon_strip;
    // minus factors live below the upper contour, plus factors above the lower
    CHECK_THROWS_AS(K_factor(p, FactorKind::MM, {{0.0, 0.0}, {0.0, 2.0 * e}}),
                    ProximityError);
    CHECK_THROWS_AS(K_factor(p, FactorKind::PP, {{0.0, 0.0}, {0.0, -2.0 * e}}),
                    ProximityError);
}
