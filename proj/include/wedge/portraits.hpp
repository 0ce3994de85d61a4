#ifndef WEDGE_PORTRAITS_HPP
#define WEDGE_PORTRAITS_HPP

// Domain-coloring phase portraits: raster sampling, deterministic PPM/PNG
// output, and a phase-jump detector standing in for visual branch-cut checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <zlib.h>

#include "wedge/complexfn.hpp"
#include "wedge/errors.hpp"

namespace wedge {

struct PhaseRaster {
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    int width = 0, height = 0;
    std::vector<double> phase;    // row-major, row 0 at im_max
    std::vector<double> modulus;
    std::vector<uint8_t> failed;  // 1 where evaluation threw

    size_t idx(int row, int col) const {
        return static_cast<size_t>(row) * width + col;
    }
    // pixel centers
    double re_at(int col) const {
        return re_min + (col + 0.5) * (re_max - re_min) / width;
    }
    double im_at(int row) const {
        return im_max - (row + 0.5) * (im_max - im_min) / height;
    }
};

inline PhaseRaster render(const std::function<Cplx(Cplx)>& f, double re_min,
                          double re_max, double im_min, double im_max, int width,
                          int height) {
    if (width < 16 || height < 16)
        throw UsageError("render: raster must be at least 16x16");
    if (!(re_max > re_min) || !(im_max > im_min))
        throw UsageError("render: degenerate window");
    PhaseRaster r;
    r.re_min = re_min; r.re_max = re_max;
    r.im_min = im_min; r.im_max = im_max;
    r.width = width; r.height = height;
    const size_t n = static_cast<size_t>(width) * height;
    r.phase.assign(n, 0.0);
    r.modulus.assign(n, 0.0);
    r.failed.assign(n, 0);
    for (int row = 0; row < height; ++row)
        for (int col = 0; col < width; ++col) {
            const size_t q = r.idx(row, col);
            try {
                const Cplx v = f(Cplx(r.re_at(col), r.im_at(row)));
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw AccuracyError("render: non-finite value", 0, 0, 0);
                double ph = std::arg(v);  // (-pi, pi]
                if (ph <= -pi) ph = pi;
                r.phase[q] = ph;
                r.modulus[q] = std::abs(v);
            } catch (const WedgeError&) {
                r.failed[q] = 1;
            }
        }
    return r;
}

namespace detail {

// hue in [0,1), full saturation and value; failures are painted black by
// the callers before this is reached.
inline void hue_to_rgb(double hue, uint8_t rgb[3]) {
    double h = hue * 6.0;
    if (h >= 6.0) h -= 6.0;
    const int sector = static_cast<int>(h);
    const double f = h - sector;
    const auto u8 = [](double v) {
        return static_cast<uint8_t>(std::lround(255.0 * std::min(1.0, std::max(0.0, v))));
    };
    const uint8_t p = 0, q = u8(1.0 - f), t = u8(f), v = 255;
    switch (sector) {
        case 0: rgb[0] = v; rgb[1] = t; rgb[2] = p; break;
        case 1: rgb[0] = q; rgb[1] = v; rgb[2] = p; break;
        case 2: rgb[0] = p; rgb[1] = v; rgb[2] = t; break;
        case 3: rgb[0] = p; rgb[1] = q; rgb[2] = v; break;
        case 4: rgb[0] = t; rgb[1] = p; rgb[2] = v; break;
        default: rgb[0] = v; rgb[1] = p; rgb[2] = q; break;
    }
}

inline std::vector<uint8_t> raster_rgb(const PhaseRaster& r) {
    std::vector<uint8_t> out(static_cast<size_t>(r.width) * r.height * 3, 0);
    for (int row = 0; row < r.height; ++row)
        for (int col = 0; col < r.width; ++col) {
            const size_t q = r.idx(row, col);
            if (r.failed[q]) continue;  // black
            hue_to_rgb((r.phase[q] + pi) / (2.0 * pi), &out[q * 3]);
        }
    return out;
}

inline void png_chunk(std::ostream& os, const char type[4],
                      const std::vector<uint8_t>& data) {
    const auto be32 = [&](uint32_t v) {
        const uint8_t b[4] = {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
                              static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
        os.write(reinterpret_cast<const char*>(b), 4);
    };
    be32(static_cast<uint32_t>(data.size()));
    os.write(type, 4);
    if (!data.empty()) os.write(reinterpret_cast<const char*>(data.data()), data.size());
    uLong crc = crc32(0L, reinterpret_cast<const Bytef*>(type), 4);
    if (!data.empty()) crc = crc32(crc, data.data(), static_cast<uInt>(data.size()));
    be32(static_cast<uint32_t>(crc));
}

}  // namespace detail

enum class ImageFormat { PPM, PNG };

// PPM is binary P6, maxval 255, bit-exact across platforms. PNG uses zlib
// with filter type 0 on every scanline.
inline void write_image(const PhaseRaster& r, const std::string& path,
                        ImageFormat format) {
    const std::vector<uint8_t> rgb = detail::raster_rgb(r);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("write_image: cannot open " + path);

    if (format == ImageFormat::PPM) {
        os << "P6\n" << r.width << ' ' << r.height << "\n255\n";
        os.write(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    } else {
        static const uint8_t sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
        os.write(reinterpret_cast<const char*>(sig), 8);
        std::vector<uint8_t> ihdr(13);
        const auto put32 = [&](size_t at, uint32_t v) {
            ihdr[at] = v >> 24; ihdr[at + 1] = v >> 16;
            ihdr[at + 2] = v >> 8; ihdr[at + 3] = v;
        };
        put32(0, r.width);
        put32(4, r.height);
        ihdr[8] = 8;   // bit depth
        ihdr[9] = 2;   // truecolor
        ihdr[10] = ihdr[11] = ihdr[12] = 0;
        detail::png_chunk(os, "IHDR", ihdr);

        std::vector<uint8_t> raw;
        raw.reserve((static_cast<size_t>(r.width) * 3 + 1) * r.height);
        for (int row = 0; row < r.height; ++row) {
            raw.push_back(0);  // filter: none
            raw.insert(raw.end(), rgb.begin() + static_cast<size_t>(row) * r.width * 3,
                       rgb.begin() + static_cast<size_t>(row + 1) * r.width * 3);
        }
        uLongf zlen = compressBound(static_cast<uLong>(raw.size()));
        std::vector<uint8_t> zdata(zlen);
        if (compress2(zdata.data(), &zlen, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK)
            throw UsageError("write_image: zlib compression failed for " + path);
        zdata.resize(zlen);
        detail::png_chunk(os, "IDAT", zdata);
        detail::png_chunk(os, "IEND", {});
    }
    if (!os) throw UsageError("write_image: write failed for " + path);
}

struct PixelEdge {
    int row1, col1, row2, col2;
};

// Pixel-adjacent pairs whose phase difference, folded to (-pi, pi], exceeds
// the threshold in magnitude. Failed pixels are skipped.
inline std::vector<PixelEdge> discontinuity_detect(const PhaseRaster& r,
                                                   double threshold) {
    if (!(threshold > 0.0 && threshold < pi))
        throw UsageError("discontinuity_detect: threshold must lie in (0, pi)");
    std::vector<PixelEdge> edges;
    const auto fold = [](double d) {
        while (d > pi) d -= 2.0 * pi;
        while (d <= -pi) d += 2.0 * pi;
        return d;
    };
    for (int row = 0; row < r.height; ++row)
        for (int col = 0; col < r.width; ++col) {
            const size_t q = r.idx(row, col);
            if (r.failed[q]) continue;
            if (col + 1 < r.width && !r.failed[q + 1]) {
                if (std::abs(fold(r.phase[q + 1] - r.phase[q])) > threshold)
                    edges.push_back({row, col, row, col + 1});
            }
            if (row + 1 < r.height && !r.failed[r.idx(row + 1, col)]) {
                if (std::abs(fold(r.phase[r.idx(row + 1, col)] - r.phase[q])) > threshold)
                    edges.push_back({row, col, row + 1, col});
            }
        }
    return edges;
}

}  // namespace wedge

#endif
