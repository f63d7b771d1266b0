#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rustic {

using cplx = std::complex<double>;

/// Dense real matrix, row-major.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return data.size(); }
};

/// M grayscale frames of shape H x W, row-major within each frame.
struct VideoTensor {
    std::size_t frames = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> data;

    VideoTensor() = default;
    VideoTensor(std::size_t m, std::size_t h, std::size_t w, double fill = 0.0)
        : frames(m), height(h), width(w), data(m * h * w, fill) {}

    double& at(std::size_t m, std::size_t h, std::size_t w) {
        return data[(m * height + h) * width + w];
    }
    double at(std::size_t m, std::size_t h, std::size_t w) const {
        return data[(m * height + h) * width + w];
    }
    std::span<double> frame(std::size_t m) {
        return {data.data() + m * height * width, height * width};
    }
    std::span<const double> frame(std::size_t m) const {
        return {data.data() + m * height * width, height * width};
    }
    bool same_shape(const VideoTensor& o) const {
        return frames == o.frames && height == o.height && width == o.width;
    }
};

/// M frames of complex IF samples shaped Ns x Na x Nc
/// (samples x antennas x chirps), row-major over (m, s, a, c).
struct RadarCube {
    std::size_t frames = 0;
    std::size_t samples = 0;
    std::size_t antennas = 0;
    std::size_t chirps = 0;
    std::vector<cplx> data;

    RadarCube() = default;
    RadarCube(std::size_t m, std::size_t ns, std::size_t na, std::size_t nc)
        : frames(m), samples(ns), antennas(na), chirps(nc),
          data(m * ns * na * nc, cplx{0.0, 0.0}) {}

    std::size_t frame_size() const { return samples * antennas * chirps; }
    cplx& at(std::size_t m, std::size_t s, std::size_t a, std::size_t c) {
        return data[((m * samples + s) * antennas + a) * chirps + c];
    }
    cplx at(std::size_t m, std::size_t s, std::size_t a, std::size_t c) const {
        return data[((m * samples + s) * antennas + a) * chirps + c];
    }
    std::span<cplx> frame(std::size_t m) {
        return {data.data() + m * frame_size(), frame_size()};
    }
    std::span<const cplx> frame(std::size_t m) const {
        return {data.data() + m * frame_size(), frame_size()};
    }
};

/// One radar frame viewed on its own; indexing matches RadarCube.
struct RadarFrame {
    std::size_t samples = 0;
    std::size_t antennas = 0;
    std::size_t chirps = 0;
    std::vector<cplx> data;

    RadarFrame() = default;
    RadarFrame(std::size_t ns, std::size_t na, std::size_t nc)
        : samples(ns), antennas(na), chirps(nc), data(ns * na * nc, cplx{0.0, 0.0}) {}

    cplx& at(std::size_t s, std::size_t a, std::size_t c) {
        return data[(s * antennas + a) * chirps + c];
    }
    cplx at(std::size_t s, std::size_t a, std::size_t c) const {
        return data[(s * antennas + a) * chirps + c];
    }
};

enum class WeightMode { Direct, Inverted };

/// Per-column radar weights: M rows of length W, entries in [0, 1] after
/// normalization. Broadcast to H x W lazily at the point of use.
struct WeightMap {
    std::size_t frames = 0;
    std::size_t width = 0;
    std::vector<double> data;
    WeightMode mode = WeightMode::Direct;
    double raw_min = 0.0;
    double raw_max = 0.0;

    WeightMap() = default;
    WeightMap(std::size_t m, std::size_t w, double fill = 0.0)
        : frames(m), width(w), data(m * w, fill) {}

    static WeightMap ones(std::size_t m, std::size_t w) { return WeightMap(m, w, 1.0); }

    double& at(std::size_t m, std::size_t w) { return data[m * width + w]; }
    double at(std::size_t m, std::size_t w) const { return data[m * width + w]; }
    std::span<const double> row(std::size_t m) const {
        return {data.data() + m * width, width};
    }
    std::span<double> row(std::size_t m) { return {data.data() + m * width, width}; }
};

/// Paired low-rank and sparse tensors matching the input video shape.
struct Decomposition {
    VideoTensor low_rank;
    VideoTensor sparse;
};

/// Square 2D kernel with odd side, row-major taps; applied in correlation
/// orientation (no flip).
struct Kernel2D {
    std::size_t side = 0;
    std::vector<double> taps;

    Kernel2D() = default;
    explicit Kernel2D(std::size_t k, double fill = 0.0) : side(k), taps(k * k, fill) {}

    static Kernel2D delta(std::size_t k) {
        Kernel2D out(k);
        out.taps[(k / 2) * k + k / 2] = 1.0;
        return out;
    }
    double& at(std::size_t u, std::size_t v) { return taps[u * side + v]; }
    double at(std::size_t u, std::size_t v) const { return taps[u * side + v]; }
};

/// 1D kernel with odd length, correlation orientation.
struct Kernel1D {
    std::size_t side = 0;
    std::vector<double> taps;

    Kernel1D() = default;
    explicit Kernel1D(std::size_t k, double fill = 0.0) : side(k), taps(k, fill) {}

    static Kernel1D delta(std::size_t k) {
        Kernel1D out(k);
        out.taps[k / 2] = 1.0;
        return out;
    }
};

/// Stack a video into the (HW, M) matrix whose column m is frame m
/// flattened row-major, so pixel (h, w) lands in row h*W + w.
inline RealMatrix stack_frames(const VideoTensor& v) {
    RealMatrix out(v.height * v.width, v.frames);
    for (std::size_t m = 0; m < v.frames; ++m) {
        auto f = v.frame(m);
        for (std::size_t i = 0; i < f.size(); ++i) out.at(i, m) = f[i];
    }
    return out;
}

/// Inverse of stack_frames.
inline VideoTensor unstack_frames(const RealMatrix& x, std::size_t height, std::size_t width) {
    if (x.rows != height * width)
        throw std::invalid_argument("unstack_frames: rows != H*W");
    VideoTensor out(x.cols, height, width);
    for (std::size_t m = 0; m < x.cols; ++m) {
        auto f = out.frame(m);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = x.at(i, m);
    }
    return out;
}

} // namespace rustic
