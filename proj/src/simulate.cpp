#include "fdmi/simulate.hpp"

#include <cmath>
#include <random>

namespace fdmi {

Image render_sensor_mask(const MaskSpec& mask, int sensor_width, int sensor_height,
                         double pitch_ratio) {
    if (!(pitch_ratio >= 1.0))
        throw ValidationError("pitch_ratio must be >= 1, got " + std::to_string(pitch_ratio));
    if (pitch_ratio == 1.0) return make_mask(mask, sensor_width, sensor_height);

    const int slm_w = static_cast<int>(std::ceil(sensor_width / pitch_ratio));
    const int slm_h = static_cast<int>(std::ceil(sensor_height / pitch_ratio));
    const Image slm = make_mask(mask, slm_w, slm_h);

    Image out(sensor_width, sensor_height);
    for (int y = 0; y < sensor_height; ++y) {
        const int sy = std::min(slm_h - 1, static_cast<int>(y / pitch_ratio));
        for (int x = 0; x < sensor_width; ++x) {
            const int sx = std::min(slm_w - 1, static_cast<int>(x / pitch_ratio));
            out.at(x, y) = slm.at(sx, sy);
        }
    }
    return out;
}

Image simulate_capture(const CaptureConfig& config, const std::vector<Image>& frames) {
    if (frames.size() != config.plan.entries.size())
        throw ValidationError("simulate_capture: " + std::to_string(frames.size()) +
                              " frames for " + std::to_string(config.plan.entries.size()) +
                              " plan entries");
    if (frames.empty()) throw ValidationError("simulate_capture: no frames");
    if (!(config.pitch_ratio >= 1.0))
        throw ValidationError("simulate_capture: pitch_ratio must be >= 1, got " +
                              std::to_string(config.pitch_ratio));
    if (config.noise_sigma < 0.0)
        throw ValidationError("simulate_capture: noise_sigma must be >= 0");

    const int w = frames[0].width;
    const int h = frames[0].height;
    std::vector<Image> masks;
    masks.reserve(frames.size());
    for (const PlanEntry& e : config.plan.entries)
        masks.push_back(render_sensor_mask(e.mask, w, h, config.pitch_ratio));

    std::optional<std::vector<double>> durations;
    if (!config.durations.empty()) durations = config.durations;
    Image coded = encode(frames, masks, config.normalization, durations);

    if (config.noise_sigma > 0.0) {
        std::mt19937_64 rng(config.seed);
        std::normal_distribution<double> noise(0.0, config.noise_sigma);
        for (double& p : coded.data) p += noise(rng);
    }
    for (double& p : coded.data) p = std::max(0.0, p);
    return coded;
}

} // namespace fdmi
