#include "doctest.h"

#include <cmath>
#include <random>

#include "wedge/kernel.hpp"

using namespace wedge;

TEST_CASE("make_params validation") {
    CHECK_THROWS_AS(make_params({1.0, 0.0}, {2.0, 1.0}, 1.25 * pi), ConfigError);
    CHECK_THROWS_AS(make_params({1.0, 1.0}, {2.0, -0.1}, 1.25 * pi), ConfigError);
    CHECK_THROWS_AS(make_params({-1.0, 1.0}, {2.0, 1.0}, 1.25 * pi), ConfigError);
    CHECK_THROWS_AS(make_params({1.0, 1.0}, {2.0, 1.0}, pi), ConfigError);
    CHECK_THROWS_AS(make_params({1.0, 1.0}, {2.0, 1.0}, 1.5 * pi), ConfigError);
    CHECK_THROWS_AS(make_params({1.0, 1.0}, {2.0, 1.0}, 0.3), ConfigError);
}

TEST_CASE("derived incident-wave constants") {
    const WaveParams p = make_params({1.0, 1.0}, {1.0, 1.0}, 1.25 * pi);
    const double s = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(p.a1 - Cplx(-s, -s)) < 1e-14);
    CHECK(std::abs(p.a2 - Cplx(-s, -s)) < 1e-14);
    CHECK(p.delta == doctest::Approx(s));
    CHECK(p.epsilon_strip > 0.0);
    CHECK(p.epsilon_strip <= p.delta / 2.0 + 1e-15);
    CHECK(p.degenerate());
}

TEST_CASE("forcing P values and poles") {
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    const SpectralPoint a{{1.0, 0.5}, {-0.5, 1.0}};
    const Cplx expect = 1.0 / ((a.alpha1 - p.a1) * (a.alpha2 - p.a2));
    CHECK(std::abs(forcing_P(p, a) - expect) < 1e-15);
    CHECK_THROWS_AS(forcing_P(p, {p.a1, a.alpha2}), PoleError);
    CHECK_THROWS_AS(forcing_P(p, {a.alpha1, p.a2}), PoleError);
}

TEST_CASE("kernel degenerates to 1 when contrast vanishes") {
    const WaveParams p = make_params({1.0, 1.0}, {1.0, 1.0}, 1.25 * pi);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-8.0, 8.0);
    std::uniform_real_distribution<double> im(-0.9, 0.9);
    for (int i = 0; i < 50; ++i) {
        const SpectralPoint a{{re(rng), im(rng) * p.epsilon_strip},
                              {re(rng), im(rng) * p.epsilon_strip}};
        CHECK(std::abs(kernel_K(p, a) - 1.0) < 1e-12);
        CHECK(std::abs(K_plus_circ(p, a) - 1.0) < 1e-12);
        CHECK(std::abs(K_minus_circ(p, a) - 1.0) < 1e-12);
    }
}

TEST_CASE("one-variable factorisation identity on the strip") {
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(-10.0, 10.0);
    std::uniform_real_distribution<double> im(-0.9, 0.9);
    for (int i = 0; i < 200; ++i) {
        const SpectralPoint a{{re(rng), im(rng) * p.epsilon_strip},
                              {re(rng), im(rng) * p.epsilon_strip}};
        const Cplx k = kernel_K(p, a);
        const Cplx prod = K_plus_circ(p, a) * K_minus_circ(p, a);
        CHECK(std::abs(k - prod) <= 1e-12 * std::abs(k));
    }
}

TEST_CASE("factor limits at large alpha1") {
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.25 * pi);
    // K_{+circ} -> 1 as alpha1 -> +i inf, K_{-circ} -> 1 as alpha1 -> -i inf
    CHECK(std::abs(K_plus_circ(p, {{0.0, 1e7}, {0.3, 0.0}}) - 1.0) < 1e-6);
    CHECK(std::abs(K_minus_circ(p, {{0.0, -1e7}, {0.3, 0.0}}) - 1.0) < 1e-6);
}

TEST_CASE("params JSON round trip recomputes derived fields") {
    const WaveParams p = make_params({1.0, 1.0}, {2.0, 1.0}, 1.2 * pi);
    const WaveParams q = params_from_json(params_to_json(p));
    CHECK(q.k1 == p.k1);
    CHECK(q.k2 == p.k2);
    CHECK(q.theta0 == p.theta0);
    CHECK(q.a1 == p.a1);
    CHECK(q.epsilon_strip == doctest::Approx(p.epsilon_strip));

    nlohmann::json bad = params_to_json(p);
    bad["theta0"] = 0.5;
    CHECK_THROWS_AS(params_from_json(bad), ConfigError);
}
