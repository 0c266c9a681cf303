#include "fdmi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace fdmi {

StarChart siemens_star(int width, int height, int cycles, double contrast) {
    if (cycles < 4)
        throw ValidationError("siemens_star: cycles must be >= 4, got " + std::to_string(cycles));
    if (contrast < 0.0 || contrast > 1.0)
        throw ValidationError("siemens_star: contrast must be in [0,1]");
    StarChart chart;
    chart.cycles = cycles;
    chart.center_x = width / 2;
    chart.center_y = height / 2;
    chart.image = Image(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double theta = std::atan2(y - chart.center_y, x - chart.center_x);
            chart.image.at(x, y) = 0.5 + 0.5 * contrast * std::cos(cycles * theta);
        }
    }
    return chart;
}

namespace {

double sample_bilinear(const Image& img, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
    const int x0 = std::min(img.width - 2, static_cast<int>(x));
    const int y0 = std::min(img.height - 2, static_cast<int>(y));
    const double fx = x - x0;
    const double fy = y - y0;
    return (1 - fx) * (1 - fy) * img.at(x0, y0) + fx * (1 - fy) * img.at(x0 + 1, y0) +
           (1 - fx) * fy * img.at(x0, y0 + 1) + fx * fy * img.at(x0 + 1, y0 + 1);
}

} // namespace

ResolutionReport measure_limiting_radius(const StarChart& chart, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ValidationError("measure_limiting_radius: threshold must be in (0,1)");
    const Image& img = chart.image;
    if (chart.center_x < 0 || chart.center_x > img.width - 1 || chart.center_y < 0 ||
        chart.center_y > img.height - 1)
        throw ValidationError("measure_limiting_radius: star center outside the image");

    const double max_radius =
        std::min({chart.center_x, chart.center_y, img.width - 1 - chart.center_x,
                  img.height - 1 - chart.center_y}) -
        1.0;
    if (max_radius < 3.0)
        throw ValidationError("measure_limiting_radius: image too small for an annulus sweep");

    // 8 angular samples per cycle: 4x the finest (half-cycle) feature.
    const int n_theta = std::max(64, 8 * chart.cycles);

    // Ring contrast = amplitude of the cycles-th angular harmonic over the
    // ring mean. Unlike a min/max measure this collapses both when the
    // pattern blurs away and when it aliases into an uncorrelated pattern,
    // and ringing overshoot cannot inflate it.
    ResolutionReport report;
    for (double radius = 2.0; radius <= max_radius; radius += 1.0) {
        double re = 0.0, im = 0.0, sum = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const double theta = 2.0 * M_PI * k / n_theta;
            const double s = sample_bilinear(img, chart.center_x + radius * std::cos(theta),
                                             chart.center_y + radius * std::sin(theta));
            re += s * std::cos(chart.cycles * theta);
            im += s * std::sin(chart.cycles * theta);
            sum += s;
        }
        const double amp = 2.0 * std::hypot(re, im) / n_theta;
        const double mean_ring = sum / n_theta;
        const double contrast = mean_ring > 1e-12 ? amp / mean_ring : 0.0;
        report.contrast_profile.emplace_back(radius, contrast);
    }

    // Smallest radius that meets the threshold and never drops below it
    // again further out.
    double limiting = -1.0;
    for (auto it = report.contrast_profile.rbegin(); it != report.contrast_profile.rend(); ++it) {
        if (it->second >= threshold)
            limiting = it->first;
        else
            break;
    }
    if (limiting < 0.0)
        throw ComputationError("unresolvable: no annulus reaches ring contrast " +
                               std::to_string(threshold));
    report.limiting_radius = limiting;
    report.resolution = chart.cycles * img.height / (2.0 * M_PI * limiting);
    return report;
}

double psnr(const Image& a, const Image& b, double peak) {
    if (!a.same_size(b))
        throw ValidationError("psnr: dimension mismatch " + std::to_string(a.width) + "x" +
                              std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                              std::to_string(b.height));
    double mse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

std::vector<SpectrumPeak> spectrum_report(const Image& coded, double min_peak_ratio,
                                          double dc_exclusion_radius) {
    const Spectrum spec = forward_spectrum(coded);
    const int w = spec.width;
    const int h = spec.height;
    auto mag = [&](int ix, int iy) {
        return std::abs(spec.at(((ix % w) + w) % w, ((iy % h) + h) % h));
    };
    const double dc = std::abs(spec.at(spec.dc_x(), spec.dc_y()));
    const double floor_mag = min_peak_ratio * dc;

    std::vector<SpectrumPeak> peaks;
    for (int iy = 0; iy < h; ++iy) {
        const double v = spec.freq_v(iy);
        for (int ix = 0; ix < w; ++ix) {
            const double u = spec.freq_u(ix);
            if (std::hypot(u, v) <= dc_exclusion_radius) continue;
            const double m = mag(ix, iy);
            if (m < floor_mag) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (mag(ix + dx, iy + dy) >= m) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max) peaks.push_back({u, v, m});
        }
    }

    // Conjugate pairs report once, in the u > 0 half-plane.
    std::vector<SpectrumPeak> dedup;
    for (const SpectrumPeak& p : peaks) {
        SpectrumPeak q = p;
        if (q.u < 0.0 || (q.u == 0.0 && q.v < 0.0)) {
            q.u = -q.u;
            q.v = -q.v;
        }
        bool seen = false;
        for (SpectrumPeak& d : dedup)
            if (std::abs(d.u - q.u) < 0.5 / w && std::abs(d.v - q.v) < 0.5 / h) {
                d.magnitude = std::max(d.magnitude, q.magnitude);
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(q);
    }
    std::sort(dedup.begin(), dedup.end(),
              [](const SpectrumPeak& a, const SpectrumPeak& b) { return a.magnitude > b.magnitude; });
    return dedup;
}

Image log_magnitude(const Spectrum& spec) {
    Image out(spec.width, spec.height);
    double peak = 0.0;
    for (std::size_t i = 0; i < spec.data.size(); ++i) {
        out.data[i] = std::log1p(std::abs(spec.data[i]));
        peak = std::max(peak, out.data[i]);
    }
    if (peak > 0.0)
        for (double& p : out.data) p /= peak;
    return out;
}

std::string resolution_report_to_json(const ResolutionReport& report, int cycles) {
    nlohmann::json j;
    j["cycles"] = cycles;
    j["limiting_radius_px"] = report.limiting_radius;
    j["resolution_lw_per_ph"] = report.resolution;
    j["contrast_profile"] = nlohmann::json::array();
    for (const auto& [radius, contrast] : report.contrast_profile)
        j["contrast_profile"].push_back({{"radius", radius}, {"contrast", contrast}});
    return j.dump(2) + "\n";
}

std::string contrast_profile_to_csv(const ResolutionReport& report) {
    std::ostringstream os;
    os << "radius,contrast\n";
    os.precision(12);
    for (const auto& [radius, contrast] : report.contrast_profile)
        os << radius << "," << contrast << "\n";
    return os.str();
}

} // namespace fdmi
