#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wedge/complexfn.hpp"
#include "wedge/kernel.hpp"
#include "wedge/portraits.hpp"

using namespace wedge;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("render samples pixel centers") {
    const auto id = [](Cplx z) { return z; };
    const PhaseRaster r = render(id, 0.0, 1.0, -0.5, 0.5, 16, 16);
    // the pixel just right of (0.5, 0) on the positive real side: small phase
    CHECK(std::abs(r.phase[r.idx(7, 7)]) < 0.15);
    CHECK(r.modulus[r.idx(7, 7)] == doctest::Approx(std::abs(Cplx(0.46875, 0.03125))));
    CHECK(r.re_at(0) == doctest::Approx(1.0 / 32.0));
    CHECK(r.im_at(0) == doctest::Approx(0.5 - 1.0 / 32.0));

    const PhaseRaster c = render([](Cplx) { return Cplx(1.0, 0.0); }, -1, 1, -1, 1, 16, 16);
    for (double ph : c.phase) CHECK(ph == 0.0);

    CHECK_THROWS_AS(render(id, 0, 1, 0, 1, 8, 16), UsageError);
    CHECK_THROWS_AS(render(id, 1, 0, 0, 1, 16, 16), UsageError);
}

TEST_CASE("failures are recorded per pixel, not fatal") {
    const auto f = [](Cplx z) {
        if (z.real() > 0.0) throw PoleError("boom");
        return z;
    };
    const PhaseRaster r = render(f, -1.0, 1.0, -1.0, 1.0, 16, 16);
    size_t failed = 0;
    for (uint8_t b : r.failed) failed += b;
    CHECK(failed == 16 * 8);
}

TEST_CASE("PPM output is bit-exact and invertible") {
    const PhaseRaster r = render([](Cplx) { return Cplx(1.0, 0.0); }, -1, 1, -1, 1, 16, 16);
    write_image(r, "const.ppm", ImageFormat::PPM);
    const std::string bytes = slurp("const.ppm");
    // header "P6\n16 16\n255\n" is 13 bytes, payload 3 bytes per pixel
    CHECK(bytes.size() == 13 + 3 * 256);
    CHECK(bytes.substr(0, 13) == "P6\n16 16\n255\n");

    // determinism: rendering and writing again gives identical bytes
    const PhaseRaster r2 = render([](Cplx) { return Cplx(1.0, 0.0); }, -1, 1, -1, 1, 16, 16);
    write_image(r2, "const2.ppm", ImageFormat::PPM);
    CHECK(slurp("const2.ppm") == bytes);

    // round trip: phase 0 maps to hue 0.5 (cyan); recover it from the pixels
    const unsigned char* px = reinterpret_cast<const unsigned char*>(bytes.data() + 13);
    CHECK(px[0] == 0);
    CHECK(px[1] == 255);
    CHECK(px[2] == 255);

    // failure pixels are black
    const auto fail = [](Cplx) -> Cplx { throw PoleError("x"); };
    const PhaseRaster rf = render(fail, -1, 1, -1, 1, 16, 16);
    write_image(rf, "fail.ppm", ImageFormat::PPM);
    const std::string fb = slurp("fail.ppm");
    for (size_t i = 13; i < fb.size(); ++i) CHECK(fb[i] == 0);

    std::remove("const.ppm");
    std::remove("const2.ppm");
    std::remove("fail.ppm");
}

TEST_CASE("PNG output carries the signature and nonempty payload") {
    const PhaseRaster r = render([](Cplx z) { return z; }, -1, 1, -1, 1, 16, 16);
    write_image(r, "id.png", ImageFormat::PNG);
    const std::string bytes = slurp("id.png");
    REQUIRE(bytes.size() > 50);
    const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
    for (int i = 0; i < 8; ++i)
        CHECK(static_cast<unsigned char>(bytes[i]) == sig[i]);
    CHECK(bytes.find("IHDR") != std::string::npos);
    CHECK(bytes.find("IDAT") != std::string::npos);
    CHECK(bytes.find("IEND") != std::string::npos);
    std::remove("id.png");
}

TEST_CASE("phase jumps are measured as hue distance") {
    // arg(z) wraps by 2pi across the negative real axis, which is the same
    // hue on both sides: no discontinuity in the portrait
    const PhaseRaster r = render([](Cplx z) { return z; }, -1, 1, -1, 1, 64, 64);
    CHECK(discontinuity_detect(r, 3.0).empty());
    CHECK_THROWS_AS(discontinuity_detect(r, 4.0), UsageError);

    // a genuine branch cut flips the sign of mysqrt: hue distance pi
    const PhaseRaster rs = render([](Cplx z) { return mysqrt(z); }, -1, 1, -1, 1, 64, 64);
    const auto edges = discontinuity_detect(rs, 3.0);
    CHECK(!edges.empty());
    for (const PixelEdge& e : edges) {
        const double re = 0.5 * (rs.re_at(e.col1) + rs.re_at(e.col2));
        const double im = 0.5 * (rs.im_at(e.row1) + rs.im_at(e.row2));
        CHECK(re > 0.0);             // cut locus is the positive real axis
        CHECK(std::abs(im) < 0.04);  // within one pixel of it
    }
}

TEST_CASE("no spurious discontinuities for an analytic nonvanishing function") {
    const PhaseRaster r = render([](Cplx z) { return std::exp(z); }, -2, 2, -2, 2, 128, 128);
    CHECK(discontinuity_detect(r, pi / 2).empty());
}

TEST_CASE("mylog cut shows up only along its defining ray") {
    const PhaseRaster r = render([](Cplx z) { return mylog(z); }, -2, 2, -2, 2, 96, 96);
    const auto edges = discontinuity_detect(r, 2.5);
    CHECK(!edges.empty());
    for (const PixelEdge& e : edges) {
        const double re = 0.5 * (r.re_at(e.col1) + r.re_at(e.col2));
        const double im = 0.5 * (r.im_at(e.row1) + r.im_at(e.row2));
        // on the ray arg = -3pi/4: im = re < 0
        CHECK(re < 0.05);
        CHECK(im < 0.05);
        CHECK(std::abs(im - re) < 0.1);
    }
}

TEST_CASE("kappa cuts emanate from plus and minus k only") {
    const Cplx k{3.0, 1.0};
    const PhaseRaster r = render([&](Cplx z) { return kappa(k, z); }, -6, 6, -6, 6, 128, 128);
    const auto edges = discontinuity_detect(r, 3.0);
    CHECK(!edges.empty());
    bool near_plus = false, near_minus = false;
    for (const PixelEdge& e : edges) {
        const Cplx z(0.5 * (r.re_at(e.col1) + r.re_at(e.col2)),
                     0.5 * (r.im_at(e.row1) + r.im_at(e.row2)));
        // the cut locus satisfies k^2 - z^2 in [0, inf): Im(z^2) = Im(k^2),
        // Re(z^2) <= Re(k^2)
        const Cplx z2 = z * z;
        CHECK(std::abs(z2.imag() - (k * k).imag()) < 1.6);
        CHECK(z2.real() < (k * k).real() + 0.7);
        if (std::abs(z - k) < 0.5) near_plus = true;
        if (std::abs(z + k) < 0.5) near_minus = true;
    }
    CHECK(near_plus);
    CHECK(near_minus);
}
