#include "fdmi/codec.hpp"

#include <cmath>

namespace fdmi {

std::string to_string(Normalization n) {
    return n == Normalization::Average ? "average" : "sum";
}

Normalization normalization_from_string(const std::string& s) {
    if (s == "average") return Normalization::Average;
    if (s == "sum") return Normalization::Sum;
    throw ValidationError("unknown normalization '" + s + "' (expected average or sum)");
}

double band_taper(double rho, double radius) {
    const double inner = 0.9 * radius;
    if (rho <= inner) return 1.0;
    if (rho >= radius) return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI * (rho - inner) / (radius - inner)));
}

Image prefilter(const Image& img, double radius) {
    if (!(radius > 0.0))
        throw ValidationError("prefilter: radius must be positive, got " + std::to_string(radius));
    if (radius > 0.5 * std::sqrt(2.0) + 1e-12)
        throw ValidationError("prefilter: radius exceeds the Nyquist diagonal 0.5*sqrt(2)");
    if (radius >= 0.5 * std::sqrt(2.0) - 1e-12) return img; // whole grid passes
    Spectrum spec = forward_spectrum(img);
    for (int iy = 0; iy < spec.height; ++iy) {
        const double v = spec.freq_v(iy);
        for (int ix = 0; ix < spec.width; ++ix) {
            const double u = spec.freq_u(ix);
            spec.at(ix, iy) *= band_taper(std::hypot(u, v), radius);
        }
    }
    return inverse_spectrum(spec);
}

Image encode(const std::vector<Image>& frames, const std::vector<Image>& masks,
             Normalization normalization, const std::optional<std::vector<double>>& durations) {
    if (frames.empty() || frames.size() != masks.size())
        throw ValidationError("encode: need equal non-zero counts of frames and masks, got " +
                              std::to_string(frames.size()) + " frames and " +
                              std::to_string(masks.size()) + " masks");
    const std::size_t n = frames.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!frames[i].same_size(frames[0]) || !masks[i].same_size(frames[0]))
            throw ValidationError("encode: frame/mask " + std::to_string(i) +
                                  " dimensions differ from frame 0");
        for (double v : frames[i].data)
            if (v < 0.0)
                throw ValidationError("encode: frame " + std::to_string(i) +
                                      " has negative intensities");
    }

    std::vector<double> weights(n, 1.0);
    if (durations) {
        if (durations->size() != n)
            throw ValidationError("encode: durations count " + std::to_string(durations->size()) +
                                  " != frame count " + std::to_string(n));
        double total = 0.0;
        for (double d : *durations) {
            if (d < 0.0) throw ValidationError("encode: durations must be >= 0");
            total += d;
        }
        if (!(total > 0.0)) throw ValidationError("encode: total exposure duration must be > 0");
        for (std::size_t i = 0; i < n; ++i) weights[i] = (*durations)[i] / total;
    }

    Image out(frames[0].width, frames[0].height);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights[i];
        for (std::size_t p = 0; p < out.size(); ++p)
            out.data[p] += w * masks[i].data[p] * frames[i].data[p];
    }
    if (normalization == Normalization::Average) {
        const double inv = 1.0 / static_cast<double>(n);
        for (double& v : out.data) v *= inv;
    }
    return out;
}

namespace {

// Carrier bin offsets on the W x H grid; the decoder works on bin-exact
// carriers (plans snap at planning time, stray fractions snap here).
struct CarrierBins {
    int ku, kv;
};

CarrierBins carrier_bins(const MaskSpec& m, int w, int h) {
    return {static_cast<int>(std::lround(m.u0 * w)), static_cast<int>(std::lround(m.v0 * h))};
}

int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

} // namespace

Image extract_sideband(const Image& coded, const PlanEntry& entry, double scale) {
    const MaskSpec& m = entry.mask;
    m.validate();
    if (!m.has_carrier())
        throw ValidationError("extract_sideband: zero carrier; use extract_baseband for the DC band");
    if (!(m.amplitude > 0.0))
        throw ValidationError("extract_sideband: mask amplitude must be > 0 to demodulate");
    const double r = entry.band_radius;
    if (!(r > 0.0) || r > 0.5)
        throw ValidationError("extract_sideband: band_radius must be in (0, 0.5], got " +
                              std::to_string(r));
    if (m.waveform == Waveform::Cosine &&
        (std::abs(m.u0) + r > 0.5 + 1e-12 || std::abs(m.v0) + r > 0.5 + 1e-12))
        throw ValidationError("extract_sideband: band disk at the carrier exceeds the Nyquist square");

    const int w = coded.width;
    const int h = coded.height;
    const Spectrum spec = forward_spectrum(coded);
    const auto [ku, kv] = carrier_bins(m, w, h);
    const int cx = spec.dc_x();
    const int cy = spec.dc_y();

    // Translate the +carrier disk to DC (wrapping; for the one-on/one-off
    // Nyquist pattern the disk legitimately folds across the boundary).
    Spectrum shifted(w, h);
    for (int iy = 0; iy < h; ++iy) {
        const double v = shifted.freq_v(iy);
        for (int ix = 0; ix < w; ++ix) {
            const double u = shifted.freq_u(ix);
            const double t = band_taper(std::hypot(u, v), r);
            if (t == 0.0) continue;
            shifted.at(ix, iy) = t * spec.at(wrap(ix + ku, w), wrap(iy + kv, h));
        }
    }

    // Average with the conjugate mirror; for a real capture this combines
    // the +carrier and -carrier copies and makes the result exactly real.
    Spectrum sym(w, h);
    for (int iy = 0; iy < h; ++iy) {
        const int my = wrap(2 * cy - iy, h);
        for (int ix = 0; ix < w; ++ix) {
            const int mx = wrap(2 * cx - ix, w);
            sym.at(ix, iy) = 0.5 * (shifted.at(ix, iy) + std::conj(shifted.at(mx, my)));
        }
    }

    // Demodulation gain from the carrier's Fourier coefficient: a raised
    // cosine puts b/2 in each sideband, a square wave 2b/pi in each first
    // harmonic. When +carrier and -carrier land on the same bin (Nyquist
    // pattern) the copies coincide and the full coefficient b sits there.
    const bool self_conjugate = wrap(2 * ku, w) == 0 && wrap(2 * kv, h) == 0;
    double gain;
    if (self_conjugate)
        gain = 1.0 / m.amplitude;
    else if (m.waveform == Waveform::Square)
        gain = M_PI / (2.0 * m.amplitude);
    else
        gain = 2.0 / m.amplitude;

    Image out = inverse_spectrum(sym);
    const double g = gain * scale;
    for (double& p : out.data) p *= g;
    return out;
}

Image extract_baseband(const Image& coded, double baseband_radius, const SidebandPlan& plan,
                       const std::optional<std::vector<double>>& durations,
                       Normalization normalization) {
    if (!(baseband_radius > 0.0) || baseband_radius > 0.5)
        throw ValidationError("extract_baseband: baseband_radius must be in (0, 0.5]");
    const std::size_t n = plan.entries.size();
    if (durations && durations->size() != n)
        throw ValidationError("extract_baseband: durations count mismatch");

    // The requested baseband disk must clear every sideband disk.
    SidebandPlan probe = plan;
    probe.baseband_radius = baseband_radius;
    for (const PlanViolation& v : check_plan(probe))
        if (v.disk_a.find("baseband") != std::string::npos ||
            v.disk_b.find("baseband") != std::string::npos)
            throw ValidationError("extract_baseband: baseband disk overlaps a sideband: " +
                                  v.message);

    std::vector<double> weights(n, 1.0);
    if (durations) {
        double total = 0.0;
        for (double d : *durations) {
            if (d < 0.0) throw ValidationError("extract_baseband: durations must be >= 0");
            total += d;
        }
        if (!(total > 0.0)) throw ValidationError("extract_baseband: total duration must be > 0");
        for (std::size_t i = 0; i < n; ++i) weights[i] = (*durations)[i] / total;
    }
    double a_eff = 0.0;
    for (std::size_t i = 0; i < n; ++i) a_eff += weights[i] * plan.entries[i].mask.offset;
    if (normalization == Normalization::Average && n > 0) a_eff /= static_cast<double>(n);
    if (!(a_eff > 0.0))
        throw ValidationError("extract_baseband: effective DC gain is zero (all offsets zero?)");

    Image out = prefilter(coded, baseband_radius);
    const double g = 1.0 / a_eff;
    for (double& p : out.data) p *= g;
    return out;
}

} // namespace fdmi
