#ifndef FDMI_ANALYSIS_HPP
#define FDMI_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "fdmi/fft.hpp"
#include "fdmi/image.hpp"

namespace fdmi {

/// Radial test chart: cycles sinusoidal line pairs around the center.
struct StarChart {
    Image image;
    int cycles = 0;
    double center_x = 0.0;
    double center_y = 0.0;
};

struct ResolutionReport {
    double limiting_radius = 0.0; // pixels
    double resolution = 0.0;      // line widths per picture height
    std::vector<std::pair<double, double>> contrast_profile; // (radius, harmonic contrast)
};

/// I(x,y) = 0.5 + (contrast/2) * cos(cycles * atan2(y-cy, x-cx)), centered on
/// the pixel (width/2, height/2).
StarChart siemens_star(int width, int height, int cycles, double contrast);

/// Sweeps 1-px annuli outward, resampling each ring to a uniform angular
/// grid. Ring contrast is the amplitude of the cycles-th angular harmonic
/// divided by the ring mean, so aliased or blurred rings both read low. The
/// limiting radius is the smallest radius whose contrast meets the threshold
/// and keeps meeting it at every larger measured radius. resolution =
/// cycles * height / (2*pi*limiting_radius).
/// Throws ComputationError("unresolvable...") when no radius qualifies.
ResolutionReport measure_limiting_radius(const StarChart& chart, double threshold);

/// 10*log10(peak^2 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b, double peak = 1.0);

struct SpectrumPeak {
    double u = 0.0;
    double v = 0.0;
    double magnitude = 0.0;
};

/// Conjugate-deduplicated local maxima of the capture's spectrum magnitude,
/// outside a small DC exclusion disk, at least min_peak_ratio of the DC
/// magnitude, strongest first. Supports decoding captures whose plan is
/// unknown.
std::vector<SpectrumPeak> spectrum_report(const Image& coded, double min_peak_ratio,
                                          double dc_exclusion_radius = 0.01);

/// log(1 + |S|) normalized to [0,1]; the usual way to look at a capture's
/// Fourier magnitude.
Image log_magnitude(const Spectrum& spec);

std::string resolution_report_to_json(const ResolutionReport& report, int cycles);
std::string contrast_profile_to_csv(const ResolutionReport& report);

} // namespace fdmi

#endif
