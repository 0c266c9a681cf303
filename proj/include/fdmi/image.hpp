#ifndef FDMI_IMAGE_HPP
#define FDMI_IMAGE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fdmi/errors.hpp"

namespace fdmi {

/// Real-valued 2D intensity grid, row-major, nominal range [0,1].
/// Values may leave [0,1] transiently (filter ringing); encoding inputs
/// must be non-negative.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw ValidationError("Image dimensions must be positive, got " +
                                  std::to_string(w) + "x" + std::to_string(h));
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t size() const { return data.size(); }

    bool same_size(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

/// Complex 2D frequency grid, DC-centered: the DC bin sits at index
/// (width/2, height/2). Bin (ix, iy) holds frequency
/// u = (ix - width/2)/width, v = (iy - height/2)/height, u,v in [-0.5, 0.5).
///
/// Transform convention: the forward transform is unnormalized
/// (DC bin = width*height*mean), the inverse divides by width*height.
/// All demodulation gains in the codec reference this convention.
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> data;

    Spectrum() = default;
    Spectrum(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw ValidationError("Spectrum dimensions must be positive, got " +
                                  std::to_string(w) + "x" + std::to_string(h));
        data.assign(static_cast<std::size_t>(w) * h, {0.0, 0.0});
    }

    std::complex<double>& at(int ix, int iy) {
        return data[static_cast<std::size_t>(iy) * width + ix];
    }
    std::complex<double> at(int ix, int iy) const {
        return data[static_cast<std::size_t>(iy) * width + ix];
    }

    int dc_x() const { return width / 2; }
    int dc_y() const { return height / 2; }

    double freq_u(int ix) const { return static_cast<double>(ix - dc_x()) / width; }
    double freq_v(int iy) const { return static_cast<double>(iy - dc_y()) / height; }
};

inline double mean(const Image& img) {
    double s = 0.0;
    for (double v : img.data) s += v;
    return s / static_cast<double>(img.size());
}

inline double rms_diff(const Image& a, const Image& b) {
    if (!a.same_size(b))
        throw ValidationError("rms_diff: dimension mismatch " + std::to_string(a.width) + "x" +
                              std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                              std::to_string(b.height));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

} // namespace fdmi

#endif
