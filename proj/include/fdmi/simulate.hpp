#ifndef FDMI_SIMULATE_HPP
#define FDMI_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "fdmi/codec.hpp"

namespace fdmi {

/// Full description of one coded capture: which masks run for how long,
/// how coarse the modulator grid is relative to the sensor, and how much
/// read noise to add.
struct CaptureConfig {
    SidebandPlan plan;
    std::vector<double> durations; // ms, one per entry; empty = equal weights
    double pitch_ratio = 1.0;      // sensor pixels per SLM pixel
    double noise_sigma = 0.0;      // additive Gaussian, intensity units
    Normalization normalization = Normalization::Average;
    std::uint64_t seed = 0;
};

/// Renders each mask on the SLM grid (sensor dims / pitch_ratio, rounded
/// up), block-replicates to sensor resolution, encodes the frames, adds
/// zero-mean Gaussian noise and clamps to >= 0. With pitch_ratio = 1 and
/// noise_sigma = 0 this is exactly `encode`.
Image simulate_capture(const CaptureConfig& config, const std::vector<Image>& frames);

/// The sensor-resolution mask for one entry under the config's pitch model.
Image render_sensor_mask(const MaskSpec& mask, int sensor_width, int sensor_height,
                         double pitch_ratio);

} // namespace fdmi

#endif
