#include "fdmi/mask.hpp"

#include <cmath>

namespace fdmi {

std::string to_string(Waveform w) {
    switch (w) {
        case Waveform::Cosine: return "cosine";
        case Waveform::Square: return "square";
        case Waveform::Constant: return "constant";
    }
    return "unknown";
}

Waveform waveform_from_string(const std::string& s) {
    if (s == "cosine") return Waveform::Cosine;
    if (s == "square") return Waveform::Square;
    if (s == "constant") return Waveform::Constant;
    throw ValidationError("unknown waveform '" + s + "' (expected cosine, square or constant)");
}

void MaskSpec::validate() const {
    if (!(amplitude >= 0.0))
        throw ValidationError("mask amplitude must be non-negative, got " +
                              std::to_string(amplitude));
    if (!(offset >= amplitude))
        throw ValidationError("mask offset must be >= amplitude for a non-negative mask (a=" +
                              std::to_string(offset) + ", b=" + std::to_string(amplitude) + ")");
    const double fmax = std::max(std::abs(u0), std::abs(v0));
    if (waveform == Waveform::Square) {
        if (fmax > 0.5)
            throw ValidationError("square carrier beyond Nyquist: max(|u0|,|v0|)=" +
                                  std::to_string(fmax) + " > 0.5");
    } else if (waveform == Waveform::Cosine) {
        // Equality reserved for the square one-on/one-off pattern.
        if (fmax >= 0.5 && fmax > 0.0)
            throw ValidationError("cosine carrier at or beyond Nyquist: max(|u0|,|v0|)=" +
                                  std::to_string(fmax) + " >= 0.5");
    } else {
        if (amplitude != 0.0)
            throw ValidationError("constant waveform requires amplitude b = 0, got " +
                                  std::to_string(amplitude));
    }
    if (!std::isfinite(offset) || !std::isfinite(amplitude) || !std::isfinite(u0) ||
        !std::isfinite(v0) || !std::isfinite(phase))
        throw ValidationError("mask parameters must be finite");
}

Image make_mask(const MaskSpec& spec, int width, int height) {
    spec.validate();
    Image out(width, height);
    const double a = spec.offset;
    const double b = spec.amplitude;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double value = a;
            if (spec.waveform == Waveform::Cosine) {
                const double arg =
                    2.0 * M_PI * (spec.u0 * x + spec.v0 * y) + spec.phase;
                value = a + b * std::cos(arg);
            } else if (spec.waveform == Waveform::Square) {
                // Decide the sign in phase space so exact zero crossings of
                // cos (quarter/three-quarter phase) deterministically give +1.
                double t = std::fmod(
                    spec.u0 * x + spec.v0 * y + spec.phase / (2.0 * M_PI), 1.0);
                if (t < 0.0) t += 1.0;
                value = a + ((t <= 0.25 || t >= 0.75) ? b : -b);
            }
            out.at(x, y) = value;
        }
    }
    return out;
}

} // namespace fdmi
