#include "doctest.h"

#include <cmath>
#include <complex>

#include "wedge/contour.hpp"
#include "wedge/errors.hpp"

using namespace wedge;

namespace {

// reference integrator: composite Simpson at a fixed fine resolution,
// independent of the adaptive Gauss-Legendre code under test
Cplx simpson_line(const std::function<Cplx(Cplx)>& f, double lo, double hi,
                  double offset, int n) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    Cplx s = f({lo, offset}) + f({hi, offset});
    for (int i = 1; i < n; ++i)
        s += f({lo + i * h, offset}) * (i % 2 ? 4.0 : 2.0);
    return s * (h / 3.0);
}

}  // namespace

TEST_CASE("plain line integral against closed form") {
    ContourSpec c;
    c.truncation = 100.0;
    const auto f = [](Cplx z) { return 1.0 / (z * z + 1.0); };
    const QuadratureResult r = integrate_contour(f, c, 1e-12);
    const double exact = 2.0 * std::atan(100.0);
    CHECK(std::abs(r.value - exact) < 1e-10);
    CHECK(r.evaluations > 0);
}

TEST_CASE("line integral against independent Simpson reference") {
    ContourSpec c;
    c.truncation = 30.0;
    c.offset = 0.2;
    const auto f = [](Cplx z) { return std::exp(-z * z / 100.0) * std::cos(z); };
    const QuadratureResult r = integrate_contour(f, c, 1e-10);
    const Cplx ref = simpson_line(f, -30.0, 30.0, 0.2, 200000);
    CHECK(std::abs(r.value - ref) < 1e-8);
}

TEST_CASE("indentation arcs pick up the correct half residue") {
    const auto f = [](Cplx z) { return 1.0 / z; };
    ContourSpec above;
    above.truncation = 10.0;
    above.indentations = {{Cplx(0.0, 0.0), 1.0, IndentSide::ABOVE}};
    ContourSpec below = above;
    below.indentations[0].side = IndentSide::BELOW;
    const Cplx va = integrate_contour(f, above, 1e-10).value;
    const Cplx vb = integrate_contour(f, below, 1e-10).value;
    CHECK(std::abs(va - Cplx(0.0, -pi)) < 1e-9);
    CHECK(std::abs(vb - Cplx(0.0, pi)) < 1e-9);
}

TEST_CASE("overlapping indentations rejected") {
    ContourSpec c;
    c.truncation = 10.0;
    c.indentations = {{Cplx(0.0, 0.0), 1.0, IndentSide::ABOVE},
                      {Cplx(0.5, 0.0), 1.0, IndentSide::BELOW}};
    CHECK_THROWS_AS(contour_path(c), UsageError);
    c.indentations[1].radius = -1.0;
    c.indentations[1].center = Cplx(5.0, 0.0);
    CHECK_THROWS_AS(contour_path(c), UsageError);
}

TEST_CASE("contour distance") {
    ContourSpec c;
    c.truncation = 10.0;
    CHECK(contour_distance(c, {0.0, 0.5}) == doctest::Approx(0.5));
    CHECK(contour_distance(c, {12.0, 0.0}) == doctest::Approx(2.0));
    c.indentations = {{Cplx(0.0, 0.0), 1.0, IndentSide::ABOVE}};
    CHECK(contour_distance(c, {0.0, 0.5}) == doctest::Approx(0.5));
    CHECK(contour_distance(c, {0.0, 2.0}) == doctest::Approx(1.0));
    // nearest points are the arc endpoints at (+-1, 0)
    CHECK(contour_distance(c, {0.0, -0.25}) == doctest::Approx(std::sqrt(1.0625)));
}

TEST_CASE("node budget exhaustion raises with best value") {
    ContourSpec c;
    c.truncation = 50.0;
    c.node_budget = 200;
    const auto f = [](Cplx z) { return std::cos(40.0 * z) / (z * z + 1.0); };
    CHECK_THROWS_AS(integrate_contour(f, c, 1e-14), AccuracyError);
}

TEST_CASE("contour JSON round trip") {
    ContourSpec c;
    c.offset = -0.25;
    c.truncation = 123.0;
    c.node_budget = 777;
    c.tail_model = TailModel::NONE;
    c.indentations = {{Cplx(1.5, 0.0), 0.25, IndentSide::BELOW}};
    const ContourSpec d = contour_from_json(contour_to_json(c));
    CHECK(d.offset == c.offset);
    CHECK(d.truncation == c.truncation);
    CHECK(d.node_budget == c.node_budget);
    CHECK(d.tail_model == TailModel::NONE);
    REQUIRE(d.indentations.size() == 1);
    CHECK(d.indentations[0].center == c.indentations[0].center);
    CHECK(d.indentations[0].side == IndentSide::BELOW);

    nlohmann::json bad = contour_to_json(c);
    bad["tail_model"] = "CUBIC";
    CHECK_THROWS_AS(contour_from_json(bad), UsageError);
    bad = contour_to_json(c);
    bad["truncation"] = -2.0;
    CHECK_THROWS_AS(contour_from_json(bad), UsageError);
}
