#ifndef FDMI_IMAGEIO_HPP
#define FDMI_IMAGEIO_HPP

#include <string>

#include "fdmi/image.hpp"
#include "fdmi/plan.hpp"

namespace fdmi {

enum class ImageFormat { P5_8bit, P5_16bit, PFM_gray };

/// Picks the format from the file magic: P5 (8 or 16 bit by maxval) or Pf.
/// P5 samples map to [0,1]; PFM floats are taken verbatim.
Image read_image(const std::string& path);

/// P5 writes clamp to [0,1] and quantize round-half-up (big-endian samples
/// for 16 bit). PFM writes are lossless up to the float32 representation:
/// negative scale header, little-endian, rows bottom-to-top.
void write_image(const std::string& path, const Image& img, ImageFormat format);

ImageFormat image_format_from_string(const std::string& s);

SidebandPlan read_plan(const std::string& path);
void write_plan(const std::string& path, const SidebandPlan& plan);

} // namespace fdmi

#endif
