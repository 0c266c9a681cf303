#ifndef FDMI_CODEC_HPP
#define FDMI_CODEC_HPP

#include <optional>
#include <vector>

#include "fdmi/fft.hpp"
#include "fdmi/plan.hpp"

namespace fdmi {

enum class Normalization { Average, Sum };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

/// Radial pass weight of the band filters: 1 inside 90% of the radius, a
/// raised-cosine rolloff over the outer 10%, 0 beyond. The rolloff tames
/// ringing on natural images while the stop band stays exactly zero.
double band_taper(double rho, double radius);

/// Low-pass to the disk of `radius` cycles/pixel. Preserves DC exactly.
Image prefilter(const Image& img, double radius);

/// Forward model of Eq.-style coded capture: pixel-wise sum of
/// w_i * mask_i * frame_i, where w_i = duration_i / total when durations are
/// given (else 1), divided by the frame count under Average normalization.
Image encode(const std::vector<Image>& frames, const std::vector<Image>& masks,
             Normalization normalization = Normalization::Average,
             const std::optional<std::vector<double>>& durations = std::nullopt);

/// Band-pass demodulation of one sideband: translate the disk at +carrier to
/// DC, enforce Hermitian symmetry, inverse-transform and rescale by the
/// analytic demodulation gain (2/b cosine, pi/(2b) square first harmonic,
/// 1/b when +/-carrier coincide on the grid). `scale` undoes encoding
/// normalization (pass the frame count for Average-normalized captures).
Image extract_sideband(const Image& coded, const PlanEntry& entry, double scale = 1.0);

/// Low-pass recovery of the full-exposure image: the baseband holds the
/// duration-weighted average of the sub-exposure frames scaled by the
/// effective DC gain of the masks, which this divides back out.
Image extract_baseband(const Image& coded, double baseband_radius, const SidebandPlan& plan,
                       const std::optional<std::vector<double>>& durations = std::nullopt,
                       Normalization normalization = Normalization::Average);

} // namespace fdmi

#endif
