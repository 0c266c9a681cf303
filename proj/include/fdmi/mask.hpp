#ifndef FDMI_MASK_HPP
#define FDMI_MASK_HPP

#include <string>

#include "fdmi/image.hpp"

namespace fdmi {

enum class Waveform { Cosine, Square, Constant };

std::string to_string(Waveform w);
Waveform waveform_from_string(const std::string& s);

/// Declarative exposure mask: offset + amplitude * waveform at a spatial
/// carrier. Non-negativity (offset >= amplitude) keeps it optically
/// realizable.
struct MaskSpec {
    Waveform waveform = Waveform::Cosine;
    double u0 = 0.0;    // cycles/pixel, horizontal
    double v0 = 0.0;    // cycles/pixel, vertical
    double offset = 0.5;     // a
    double amplitude = 0.5;  // b
    double phase = 0.0;      // radians

    /// Throws ValidationError naming the violated invariant.
    void validate() const;

    bool has_carrier() const { return u0 != 0.0 || v0 != 0.0; }
};

/// Samples the mask at integer pixel centers x in [0,width), y in [0,height).
/// cosine:   a + b*cos(2*pi*(u0*x + v0*y) + phase)
/// square:   a + b*sgn(cos(...)), sgn(0) = +1
/// constant: a
Image make_mask(const MaskSpec& spec, int width, int height);

} // namespace fdmi

#endif
