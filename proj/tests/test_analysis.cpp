#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fdmi/analysis.hpp"
#include "fdmi/codec.hpp"
#include "fdmi/mask.hpp"
#include "test_support.hpp"

using namespace fdmi;
using test::natural_texture;

TEST_CASE("siemens_star: zero contrast is uniform gray") {
    const StarChart chart = siemens_star(64, 64, 8, 0.0);
    for (double v : chart.image.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("siemens_star: theta=0 ray sits at the bright extreme") {
    const double contrast = 0.8;
    const StarChart chart = siemens_star(65, 65, 12, contrast);
    const int cy = static_cast<int>(chart.center_y);
    for (int x = static_cast<int>(chart.center_x) + 1; x < 65; ++x)
        CHECK(chart.image.at(x, cy) == doctest::Approx(0.5 + contrast / 2).epsilon(1e-12));
}

TEST_CASE("siemens_star: validation") {
    CHECK_THROWS_AS(siemens_star(64, 64, 3, 0.5), ValidationError);
    CHECK_THROWS_AS(siemens_star(0, 64, 8, 0.5), ValidationError);
    CHECK_THROWS_AS(siemens_star(64, 64, 8, 1.5), ValidationError);
}

TEST_CASE("measure_limiting_radius: full-band star resolves down to ~Nyquist") {
    const int cycles = 36;
    StarChart chart = siemens_star(512, 512, cycles, 1.0);
    chart.image = prefilter(chart.image, 0.5); // sensor-band capture
    const ResolutionReport report = measure_limiting_radius(chart, 0.1);
    const double nyquist_radius = cycles / M_PI; // local angular period = 2 px
    CHECK(report.limiting_radius == doctest::Approx(nyquist_radius).epsilon(0.15));
    // Formula exactness.
    CHECK(report.resolution * 2.0 * M_PI * report.limiting_radius ==
          doctest::Approx(static_cast<double>(cycles) * 512).epsilon(1e-12));
}

TEST_CASE("resolution formula arithmetic") {
    CHECK(36.0 * 1024.0 / (2.0 * M_PI * 42.2) == doctest::Approx(139.0).epsilon(0.01));
}

TEST_CASE("measure_limiting_radius: monotone in low-pass degradation") {
    const int cycles = 36;
    StarChart chart = siemens_star(256, 256, cycles, 1.0);
    StarChart soft = chart;
    StarChart softer = chart;
    soft.image = prefilter(chart.image, 0.25);
    softer.image = prefilter(chart.image, 0.125);
    const double r_soft = measure_limiting_radius(soft, 0.1).limiting_radius;
    const double r_softer = measure_limiting_radius(softer, 0.1).limiting_radius;
    CHECK(r_softer >= r_soft);
}

TEST_CASE("measure_limiting_radius: unresolvable chart") {
    StarChart chart;
    chart.cycles = 8;
    chart.center_x = 32;
    chart.center_y = 32;
    chart.image = Image(64, 64, 0.5);
    CHECK_THROWS_AS(measure_limiting_radius(chart, 0.1), ComputationError);
    CHECK_THROWS_AS(measure_limiting_radius(chart, 0.0), ValidationError);
}

TEST_CASE("psnr: sentinels, arithmetic, symmetry") {
    const Image a = natural_texture(32, 32, 1);
    CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());

    Image c1(16, 16, 0.4), c2(16, 16, 0.5);
    CHECK(psnr(c1, c2, 1.0) == doctest::Approx(20.0).epsilon(1e-12));

    const Image b = natural_texture(32, 32, 2);
    CHECK(psnr(a, b) == doctest::Approx(psnr(b, a)).epsilon(1e-12));

    Image shifted = b;
    for (double& v : shifted.data) v += 0.01;
    CHECK(psnr(a, shifted) < psnr(a, b));

    Image wrong(8, 8, 0.0);
    CHECK_THROWS_AS(psnr(a, wrong), ValidationError);
}

TEST_CASE("spectrum_report: single cosine carrier on a constant scene") {
    const int w = 128;
    MaskSpec spec{Waveform::Cosine, 16.0 / w, 0.0, 0.5, 0.5, 0.0};
    Image coded = make_mask(spec, w, w);
    for (double& v : coded.data) v *= 0.7;
    const auto peaks = spectrum_report(coded, 0.01);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].u == doctest::Approx(16.0 / w).epsilon(1e-12));
    CHECK(peaks[0].v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spectrum_report: four-mask capture reports all four carriers") {
    const int w = 128;
    const SidebandPlan plan = plan_sidebands(4, Waveform::Cosine, std::nullopt, w);
    const double r = plan.entries[0].band_radius;
    std::vector<Image> frames, masks;
    for (int i = 0; i < 4; ++i) {
        frames.push_back(prefilter(natural_texture(w, w, 70 + i), r));
        masks.push_back(make_mask(plan.entries[i].mask, w, w));
    }
    const Image coded = encode(frames, masks);
    const auto peaks = spectrum_report(coded, 0.02, plan.baseband_radius);
    for (const auto& e : plan.entries) {
        bool found = false;
        for (const auto& p : peaks) {
            const double du = std::min(std::abs(p.u - e.mask.u0), std::abs(p.u + e.mask.u0));
            const double dv1 = std::abs(p.v - e.mask.v0), dv2 = std::abs(p.v + e.mask.v0);
            if (du <= 1.0 / w + 1e-12 && std::min(dv1, dv2) <= 1.0 / w + 1e-12) found = true;
        }
        CAPTURE(e.mask.u0);
        CAPTURE(e.mask.v0);
        CHECK(found);
    }
}

TEST_CASE("log_magnitude: normalized to [0,1] with the peak at DC for a flat scene") {
    const Image img(16, 16, 0.5);
    const Image vis = log_magnitude(forward_spectrum(img));
    double lo = 1e9, hi = -1e9;
    for (double v : vis.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= 0.0);
    CHECK(hi == doctest::Approx(1.0));
    CHECK(vis.at(8, 8) == doctest::Approx(1.0));
}
