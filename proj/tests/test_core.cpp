#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdmi/analysis.hpp"
#include "fdmi/codec.hpp"
#include "fdmi/fft.hpp"
#include "fdmi/mask.hpp"
#include "fdmi/plan.hpp"
#include "fdmi/simulate.hpp"
#include "test_support.hpp"

using namespace fdmi;
using test::natural_texture;
using test::white_noise;

TEST_CASE("make_mask: DC cosine is all ones") {
    MaskSpec spec{Waveform::Cosine, 0.0, 0.0, 0.5, 0.5, 0.0};
    const Image m = make_mask(spec, 4, 4);
    for (double v : m.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_mask: Nyquist square is one-pixel-on one-pixel-off") {
    MaskSpec spec{Waveform::Square, 0.5, 0.0, 0.5, 0.5, 0.0};
    const Image m = make_mask(spec, 4, 1);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(1, 0) == 0.0);
    CHECK(m.at(2, 0) == 1.0);
    CHECK(m.at(3, 0) == 0.0);
}

TEST_CASE("make_mask: analytic cosine sample") {
    MaskSpec spec{Waveform::Cosine, 0.125, 0.0, 0.5, 0.5, 0.0};
    const Image m = make_mask(spec, 8, 1);
    // x=4: 0.5 + 0.5*cos(pi) = 0
    CHECK(m.at(4, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("make_mask: invalid specs name the violated invariant") {
    CHECK_THROWS_AS(make_mask({Waveform::Cosine, 0.1, 0.0, 0.3, 0.5, 0.0}, 4, 4),
                    ValidationError); // a < b
    CHECK_THROWS_AS(make_mask({Waveform::Cosine, 0.5, 0.0, 0.5, 0.5, 0.0}, 4, 4),
                    ValidationError); // cosine at Nyquist
    CHECK_THROWS_AS(make_mask({Waveform::Cosine, 0.1, 0.0, 0.5, -0.1, 0.0}, 4, 4),
                    ValidationError); // negative amplitude
    CHECK_THROWS_AS(make_mask({Waveform::Constant, 0.0, 0.0, 0.5, 0.1, 0.0}, 4, 4),
                    ValidationError); // constant with b != 0
}

TEST_CASE("make_mask: realizability over random valid specs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        MaskSpec spec;
        spec.waveform = trial % 2 == 0 ? Waveform::Cosine : Waveform::Square;
        spec.offset = 0.2 + 0.8 * uni(rng);
        spec.amplitude = spec.offset * uni(rng);
        const double fmax = spec.waveform == Waveform::Cosine ? 0.49 : 0.5;
        spec.u0 = fmax * (2.0 * uni(rng) - 1.0);
        spec.v0 = fmax * (2.0 * uni(rng) - 1.0);
        spec.phase = 2.0 * M_PI * uni(rng);
        const Image m = make_mask(spec, 16, 16);
        for (double v : m.data) {
            CHECK(v >= -1e-12);
            CHECK(v <= 2.0 * spec.offset + 1e-12);
        }
    }
}

TEST_CASE("fft: unit impulse has a flat unit-magnitude spectrum") {
    Image img(8, 8);
    img.at(0, 0) = 1.0;
    const Spectrum s = forward_spectrum(img);
    for (const auto& c : s.data) CHECK(std::abs(c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fft: round-trip, Parseval, DC convention") {
    const Image img = white_noise(37, 23, 99); // odd sizes too
    const Spectrum s = forward_spectrum(img);
    const Image back = inverse_spectrum(s);
    CHECK(rms_diff(img, back) < 1e-12);

    double pix_energy = 0.0;
    for (double v : img.data) pix_energy += v * v;
    double bin_energy = 0.0;
    for (const auto& c : s.data) bin_energy += std::norm(c);
    bin_energy /= static_cast<double>(img.size());
    CHECK(std::abs(pix_energy - bin_energy) / pix_energy < 1e-12);

    CHECK(std::abs(s.at(s.dc_x(), s.dc_y()) -
                   std::complex<double>(img.size() * mean(img), 0.0)) /
              (img.size() * mean(img)) <
          1e-12);
}

TEST_CASE("fft: Hermitian symmetry of real-image spectra") {
    const Image img = white_noise(32, 16, 3);
    const Spectrum s = forward_spectrum(img);
    double max_mag = 0.0;
    for (const auto& c : s.data) max_mag = std::max(max_mag, std::abs(c));
    for (int iy = 0; iy < s.height; ++iy)
        for (int ix = 0; ix < s.width; ++ix) {
            const int mx = ((2 * s.dc_x() - ix) % s.width + s.width) % s.width;
            const int my = ((2 * s.dc_y() - iy) % s.height + s.height) % s.height;
            CHECK(std::abs(s.at(ix, iy) - std::conj(s.at(mx, my))) <= 1e-9 * max_mag);
        }
}

TEST_CASE("fft: on-grid cosine image has exactly three nonzero bins") {
    const double a = 0.6, b = 0.3;
    const int w = 64, h = 32;
    MaskSpec spec{Waveform::Cosine, 4.0 / w, 0.0, a, b, 0.0};
    const Spectrum s = forward_spectrum(make_mask(spec, w, h));
    const double wh = static_cast<double>(w) * h;
    int nonzero = 0;
    for (int iy = 0; iy < h; ++iy)
        for (int ix = 0; ix < w; ++ix) {
            const double mag = std::abs(s.at(ix, iy));
            if (mag > 1e-6 * wh) ++nonzero;
        }
    CHECK(nonzero == 3);
    CHECK(std::abs(s.at(s.dc_x(), s.dc_y())) == doctest::Approx(a * wh).epsilon(1e-9));
    CHECK(std::abs(s.at(s.dc_x() + 4, s.dc_y())) == doctest::Approx(0.5 * b * wh).epsilon(1e-9));
    CHECK(std::abs(s.at(s.dc_x() - 4, s.dc_y())) == doctest::Approx(0.5 * b * wh).epsilon(1e-9));
}

TEST_CASE("square-wave harmonic law on a long-period on-grid carrier") {
    // Half-sample phase keeps the duty cycle exactly 1/2, so even harmonics
    // vanish and odd ones track 1/k up to weak alias terms.
    const int w = 1024;
    const double b = 0.5;
    MaskSpec spec{Waveform::Square, 1.0 / w, 0.0, 0.5, b, M_PI / w};
    const Spectrum s = forward_spectrum(make_mask(spec, w, 2));
    auto bin_mag = [&](int k) { return std::abs(s.at(s.dc_x() + k, s.dc_y())); };
    const double fundamental = bin_mag(1);
    const double expected1 = 2.0 * b / M_PI * w * 2; // per-side coefficient * W*H
    CHECK(fundamental == doctest::Approx(expected1).epsilon(0.02));
    for (int k : {3, 5, 7}) {
        CHECK(bin_mag(k) * k == doctest::Approx(fundamental).epsilon(0.02));
    }
    for (int k : {2, 4, 6, 8}) {
        CHECK(bin_mag(k) < 1e-6 * fundamental);
    }
}

TEST_CASE("prefilter: constant image is pure DC") {
    Image img(16, 16, 0.7);
    CHECK(rms_diff(prefilter(img, 0.1), img) < 1e-9);
}

TEST_CASE("prefilter: full-diagonal radius passes everything") {
    const Image img = white_noise(32, 32, 5);
    CHECK(rms_diff(prefilter(img, 0.5 * std::sqrt(2.0)), img) < 1e-6);
}

TEST_CASE("prefilter: stop-band energy measured through the forward transform") {
    const Image img = white_noise(64, 64, 11);
    const double radius = 1.0 / 18.0;
    const Spectrum s = forward_spectrum(prefilter(img, radius));
    double inside = 0.0, outside = 0.0;
    for (int iy = 0; iy < s.height; ++iy)
        for (int ix = 0; ix < s.width; ++ix) {
            const double rho = std::hypot(s.freq_u(ix), s.freq_v(iy));
            (rho <= radius ? inside : outside) += std::norm(s.at(ix, iy));
        }
    CHECK(outside < 1e-6 * (inside + outside));
}

TEST_CASE("prefilter: DC preserved and bad radius rejected") {
    const Image img = white_noise(32, 32, 17);
    const Image filtered = prefilter(img, 0.2);
    CHECK(std::abs(mean(filtered) - mean(img)) / mean(img) < 1e-6);
    CHECK_THROWS_AS(prefilter(img, 0.0), ValidationError);
    CHECK_THROWS_AS(prefilter(img, -0.1), ValidationError);
}

TEST_CASE("encode: identity mask reproduces the frame") {
    const Image frame = white_noise(16, 16, 1);
    const Image mask = make_mask({Waveform::Constant, 0, 0, 1.0, 0.0, 0.0}, 16, 16);
    const Image coded = encode({frame}, {mask});
    CHECK(rms_diff(coded, frame) == 0.0);
}

TEST_CASE("encode: two Nyquist square masks partition the pixel parity grid") {
    Image ones(8, 8, 1.0);
    const Image mv = make_mask({Waveform::Square, 0.5, 0.0, 0.5, 0.5, 0.0}, 8, 8);
    const Image mh = make_mask({Waveform::Square, 0.0, 0.5, 0.5, 0.5, 0.0}, 8, 8);
    const Image coded = encode({ones, ones}, {mv, mh}, Normalization::Average);
    CHECK(coded.at(1, 1) == 0.0); // both masks off
    CHECK(coded.at(0, 0) == 1.0); // both masks on
    CHECK(coded.at(1, 0) == 0.5);
    CHECK(coded.at(0, 1) == 0.5);
}

TEST_CASE("encode: validation errors") {
    Image a(8, 8, 0.5), b(4, 4, 0.5);
    const Image mask = make_mask({Waveform::Constant, 0, 0, 1.0, 0.0, 0.0}, 8, 8);
    CHECK_THROWS_AS(encode({a, a}, {mask}), ValidationError);
    CHECK_THROWS_AS(encode({b}, {mask}), ValidationError);
    Image neg(8, 8, -0.1);
    CHECK_THROWS_AS(encode({neg}, {mask}), ValidationError);
    CHECK_THROWS_AS(encode({a}, {mask}, Normalization::Average, std::vector<double>{0.0}),
                    ValidationError);
}

TEST_CASE("extract_sideband: single-tone modulation of a constant recovers it") {
    const int w = 64, h = 64;
    const double c = 0.37;
    MaskSpec spec{Waveform::Cosine, 8.0 / w, 0.0, 0.5, 0.5, 0.0};
    Image coded = make_mask(spec, w, h);
    for (double& p : coded.data) p *= c;
    const Image rec = extract_sideband(coded, {spec, 0.05});
    Image want(w, h, c);
    CHECK(rms_diff(rec, want) < 1e-6);
}

TEST_CASE("extract_sideband: two prefiltered textures on axis carriers") {
    const int w = 128, h = 128;
    const SidebandPlan plan = plan_sidebands(2, Waveform::Cosine, std::nullopt, w);
    const double r = plan.entries[0].band_radius;
    std::vector<Image> frames{prefilter(natural_texture(w, h, 21), r),
                              prefilter(natural_texture(w, h, 22), r)};
    std::vector<Image> masks;
    for (const auto& e : plan.entries) masks.push_back(make_mask(e.mask, w, h));
    const Image coded = encode(frames, masks, Normalization::Average);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const Image rec = extract_sideband(coded, plan.entries[i], 2.0);
        CHECK(psnr(rec, frames[i]) >= 35.0);
    }
}

TEST_CASE("extract_sideband: four-mask layout (axes plus diagonals)") {
    const int w = 128, h = 128;
    const SidebandPlan plan = plan_sidebands(4, Waveform::Cosine, std::nullopt, w);
    const double r = plan.entries[0].band_radius;
    std::vector<Image> frames, masks;
    for (int i = 0; i < 4; ++i) {
        frames.push_back(prefilter(natural_texture(w, h, 30 + i), r));
        masks.push_back(make_mask(plan.entries[i].mask, w, h));
    }
    const Image coded = encode(frames, masks, Normalization::Average);
    for (int i = 0; i < 4; ++i) {
        const Image rec = extract_sideband(coded, plan.entries[i], 4.0);
        CHECK(psnr(rec, frames[i]) >= 35.0);
    }
}

TEST_CASE("extract_sideband: error paths") {
    const Image coded = white_noise(32, 32, 2);
    CHECK_THROWS_AS(extract_sideband(coded, {{Waveform::Cosine, 0.0, 0.0, 0.5, 0.5, 0.0}, 0.1}),
                    ValidationError); // zero carrier
    CHECK_THROWS_AS(extract_sideband(coded, {{Waveform::Cosine, 0.4, 0.0, 0.5, 0.5, 0.0}, 0.2}),
                    ValidationError); // disk exceeds Nyquist
}

TEST_CASE("extract linearity: power-of-two scaling is exact") {
    const int w = 64, h = 64;
    MaskSpec spec{Waveform::Cosine, 8.0 / w, 0.0, 0.5, 0.5, 0.0};
    Image coded = make_mask(spec, w, h);
    const Image frame = natural_texture(w, h, 8);
    for (std::size_t i = 0; i < coded.size(); ++i) coded.data[i] *= frame.data[i];
    Image doubled = coded;
    for (double& p : doubled.data) p *= 2.0;
    const Image a = extract_sideband(doubled, {spec, 0.1});
    Image b = extract_sideband(coded, {spec, 0.1});
    for (double& p : b.data) p *= 2.0;
    CHECK(a.data == b.data);
}

TEST_CASE("extract_baseband: single constant mask recovers the prefiltered input") {
    const int w = 64, h = 64;
    const Image frame = natural_texture(w, h, 40);
    const Image mask = make_mask({Waveform::Constant, 0, 0, 1.0, 0.0, 0.0}, w, h);
    const Image coded = encode({frame}, {mask});
    SidebandPlan plan;
    plan.baseband_radius = 0.1;
    plan.entries.push_back({{Waveform::Constant, 0, 0, 1.0, 0.0, 0.0}, 0.1});
    const Image rec = extract_baseband(coded, 0.1, plan);
    CHECK(rms_diff(rec, prefilter(frame, 0.1)) < 1e-9);
}

TEST_CASE("extract_baseband: consistency with the low-passed frame average") {
    const int w = 128, h = 128;
    const SidebandPlan plan = plan_sidebands(2, Waveform::Cosine, std::nullopt, w);
    const double r = plan.entries[0].band_radius;
    std::vector<Image> frames{prefilter(natural_texture(w, h, 51), r),
                              prefilter(natural_texture(w, h, 52), r)};
    std::vector<Image> masks;
    for (const auto& e : plan.entries) masks.push_back(make_mask(e.mask, w, h));
    const Image coded = encode(frames, masks, Normalization::Average);

    Image avg(w, h);
    for (std::size_t i = 0; i < avg.size(); ++i)
        avg.data[i] = 0.5 * (frames[0].data[i] + frames[1].data[i]);
    const Image want = prefilter(avg, plan.baseband_radius);
    const Image rec = extract_baseband(coded, plan.baseband_radius, plan);
    CHECK(rms_diff(rec, want) < 1e-6);
    CHECK(psnr(rec, want) >= 40.0);
}

TEST_CASE("extract_baseband: overlapping baseband rejected") {
    SidebandPlan plan;
    plan.baseband_radius = 0.05;
    plan.entries.push_back({{Waveform::Cosine, 0.1, 0.0, 0.5, 0.5, 0.0}, 0.05});
    const Image coded = white_noise(32, 32, 1);
    CHECK_THROWS_AS(extract_baseband(coded, 0.3, plan), ValidationError);
}

TEST_CASE("plan_sidebands: presets match the published layouts") {
    const SidebandPlan two = plan_sidebands(2, Waveform::Cosine);
    REQUIRE(two.entries.size() == 2);
    CHECK(two.entries[0].mask.v0 == 0.0);
    CHECK(two.entries[0].mask.u0 > 0.0);
    CHECK(two.entries[1].mask.u0 == 0.0);
    CHECK(two.entries[1].mask.v0 > 0.0);

    const SidebandPlan four = plan_sidebands(4, Waveform::Cosine);
    REQUIRE(four.entries.size() == 4);
    CHECK(four.entries[2].mask.u0 == four.entries[2].mask.v0);  // right diagonal
    CHECK(four.entries[3].mask.u0 == -four.entries[3].mask.v0); // left diagonal
    CHECK(check_plan(four).empty());
}

TEST_CASE("plan_sidebands: twelve-sideband auto plan is valid") {
    const SidebandPlan plan = plan_sidebands(12, Waveform::Cosine);
    REQUIRE(plan.entries.size() == 12);
    CHECK(check_plan(plan).empty());
    CHECK(plan.entries[0].band_radius > 0.01);
}

TEST_CASE("plan_sidebands: infeasible request reports the max feasible radius") {
    try {
        plan_sidebands(12, Waveform::Cosine, 0.2);
        FAIL("expected PlanningError");
    } catch (const PlanningError& e) {
        CHECK(e.max_feasible_radius > 0.0);
        CHECK(e.max_feasible_radius < 0.2);
    }
}

TEST_CASE("check_plan: identical carriers collide with overlap 2r") {
    SidebandPlan plan;
    plan.baseband_radius = 0.02;
    const double r = 0.05;
    plan.entries.push_back({{Waveform::Cosine, 0.25, 0.0, 0.5, 0.5, 0.0}, r});
    plan.entries.push_back({{Waveform::Cosine, 0.25, 0.0, 0.5, 0.5, 0.0}, r});
    const auto violations = check_plan(plan);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations)
        if (std::abs(v.overlap - 2.0 * r) < 1e-12) found = true;
    CHECK(found);
}

TEST_CASE("check_plan: square harmonics fold back into the Nyquist square") {
    // Carrier (0.2, 0): 3rd harmonic folds to -0.4, 5th to DC where it hits
    // the baseband disk.
    SidebandPlan plan;
    plan.baseband_radius = 0.05;
    plan.entries.push_back({{Waveform::Square, 0.2, 0.0, 0.5, 0.5, 0.0}, 0.05});
    const auto violations = check_plan(plan);
    REQUIRE(!violations.empty());
    bool harmonic_vs_baseband = false;
    for (const auto& v : violations) {
        const bool mentions_harmonic = v.message.find("harmonic") != std::string::npos;
        const bool mentions_baseband = v.message.find("baseband") != std::string::npos;
        if (mentions_harmonic && mentions_baseband) harmonic_vs_baseband = true;
    }
    CHECK(harmonic_vs_baseband);
}

TEST_CASE("planner soundness: auto plans pass check_plan for n in [1,16]") {
    for (int n = 1; n <= 16; ++n) {
        for (Waveform w : {Waveform::Cosine, Waveform::Square}) {
            const SidebandPlan plan = plan_sidebands(n, w);
            CAPTURE(n);
            CAPTURE(to_string(w));
            CHECK(static_cast<int>(plan.entries.size()) == n);
            CHECK(check_plan(plan).empty());
        }
    }
}

TEST_CASE("round-trip property: random carriers, prefiltered textures") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int w = 96, h = 96;
    for (int trial = 0; trial < 8; ++trial) {
        // Random single carrier with a clear band around it.
        const double r = 0.03 + 0.04 * uni(rng);
        const double rho = 2.5 * r + (0.5 - 3.6 * r) * uni(rng);
        const double theta = M_PI * (uni(rng) - 0.5);
        double u0 = std::round(rho * std::cos(theta) * w) / w;
        double v0 = std::round(rho * std::sin(theta) * h) / h;
        if (std::abs(u0) + r > 0.5 || std::abs(v0) + r > 0.5) continue;
        if (u0 == 0.0 && v0 == 0.0) continue;
        MaskSpec spec{Waveform::Cosine, u0, v0, 0.5, 0.5, 0.0};
        SidebandPlan plan;
        plan.baseband_radius = r;
        plan.entries.push_back({spec, r});
        if (!check_plan(plan).empty()) continue;

        const Image frame = prefilter(natural_texture(w, h, 100 + trial), r);
        const Image coded = encode({frame}, {make_mask(spec, w, h)});
        const Image rec = extract_sideband(coded, plan.entries[0], 1.0);
        CAPTURE(trial);
        CAPTURE(u0);
        CAPTURE(v0);
        CHECK(psnr(rec, frame) >= 35.0);
    }
}

TEST_CASE("plan JSON: round-trip and strictness") {
    const SidebandPlan plan = plan_sidebands(4, Waveform::Cosine);
    const SidebandPlan back = plan_from_json(plan_to_json(plan));
    REQUIRE(back.entries.size() == plan.entries.size());
    CHECK(back.baseband_radius == plan.baseband_radius);
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
        CHECK(back.entries[i].mask.u0 == plan.entries[i].mask.u0);
        CHECK(back.entries[i].mask.v0 == plan.entries[i].mask.v0);
        CHECK(back.entries[i].band_radius == plan.entries[i].band_radius);
    }
    CHECK(check_plan(back).empty());

    CHECK_THROWS_AS(plan_from_json(R"({"baseband_radius":0.1,"entries":[],"extra":1})"),
                    ValidationError);
    CHECK_THROWS_AS(
        plan_from_json(
            R"({"baseband_radius":0.1,"entries":[{"waveform":"cosine","u0":0.1,"v0":0,"a":0.3,"b":0.5,"phase":0,"band_radius":0.05}]})"),
        ValidationError); // a < b
    CHECK_THROWS_AS(plan_from_json("{not json"), ParseError);

    SidebandPlan empty;
    empty.baseband_radius = 0.25;
    const SidebandPlan empty_back = plan_from_json(plan_to_json(empty));
    CHECK(empty_back.entries.empty());
    CHECK(empty_back.baseband_radius == 0.25);
}

TEST_CASE("simulate_capture: degenerate simulator equals encode") {
    const int w = 64, h = 64;
    CaptureConfig config;
    config.plan = plan_sidebands(2, Waveform::Cosine, std::nullopt, w);
    const double r = config.plan.entries[0].band_radius;
    std::vector<Image> frames{prefilter(natural_texture(w, h, 61), r),
                              prefilter(natural_texture(w, h, 62), r)};
    std::vector<Image> masks;
    for (const auto& e : config.plan.entries) masks.push_back(make_mask(e.mask, w, h));
    const Image direct = encode(frames, masks, Normalization::Average);
    const Image sim = simulate_capture(config, frames);
    CHECK(rms_diff(direct, sim) < 1e-12);
}

TEST_CASE("simulate_capture: pitch 3 moves the Nyquist SLM carrier to 1/6") {
    const int w = 240, h = 240;
    CaptureConfig config;
    config.pitch_ratio = 3.0;
    config.plan.baseband_radius = 0.03;
    config.plan.entries.push_back({{Waveform::Square, 0.5, 0.0, 0.5, 0.5, 0.0}, 0.05});
    std::vector<Image> frames{Image(w, h, 0.8)};
    const Image coded = simulate_capture(config, frames);
    const auto peaks = spectrum_report(coded, 0.05);
    REQUIRE(!peaks.empty());
    CHECK(std::abs(peaks[0].u) == doctest::Approx(0.5 / 3.0).epsilon(0.02));
    CHECK(peaks[0].v == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("simulate_capture: noise statistics on a flat scene") {
    const int w = 128, h = 128;
    CaptureConfig config;
    config.noise_sigma = 0.01;
    config.seed = 5;
    config.plan.baseband_radius = 0.1;
    config.plan.entries.push_back({{Waveform::Constant, 0, 0, 0.5, 0.0, 0.0}, 0.1});
    std::vector<Image> frames{Image(w, h, 0.8)};
    const Image coded = simulate_capture(config, frames);
    double m = mean(coded), var = 0.0;
    for (double v : coded.data) var += (v - m) * (v - m);
    const double sd = std::sqrt(var / coded.size());
    CHECK(sd == doctest::Approx(0.01).epsilon(0.2));
}

TEST_CASE("simulate_capture: validation") {
    CaptureConfig config;
    config.plan.entries.push_back({{Waveform::Constant, 0, 0, 0.5, 0.0, 0.0}, 0.1});
    config.pitch_ratio = 0.5;
    std::vector<Image> frames{Image(8, 8, 0.5)};
    CHECK_THROWS_AS(simulate_capture(config, frames), ValidationError);
    config.pitch_ratio = 1.0;
    CHECK_THROWS_AS(simulate_capture(config, {}), ValidationError);
}
