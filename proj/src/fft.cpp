#include "fdmi/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace fdmi {
namespace {

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* ptr;
    explicit FftwBuffer(std::size_t n)
        : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct FftwPlan {
    fftw_plan plan;
    FftwPlan(int w, int h, fftw_complex* in, fftw_complex* out, int sign) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW's row dimension comes first.
        plan = fftw_plan_dft_2d(h, w, in, out, sign, FFTW_ESTIMATE);
        if (!plan) throw ComputationError("FFTW plan creation failed");
    }
    ~FftwPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;
};

} // namespace

Spectrum forward_spectrum(const Image& img) {
    const int w = img.width;
    const int h = img.height;
    if (w <= 0 || h <= 0) throw ValidationError("forward_spectrum: empty image");
    const std::size_t n = static_cast<std::size_t>(w) * h;

    FftwBuffer in(n);
    FftwBuffer out(n);
    FftwPlan plan(w, h, in.ptr, out.ptr, FFTW_FORWARD);

    for (std::size_t i = 0; i < n; ++i) {
        in.ptr[i][0] = img.data[i];
        in.ptr[i][1] = 0.0;
    }
    fftw_execute(plan.plan);

    Spectrum spec(w, h);
    const int cx = spec.dc_x();
    const int cy = spec.dc_y();
    for (int ky = 0; ky < h; ++ky) {
        const int iy = (ky + cy) % h;
        for (int kx = 0; kx < w; ++kx) {
            const int ix = (kx + cx) % w;
            const fftw_complex& c = out.ptr[static_cast<std::size_t>(ky) * w + kx];
            spec.at(ix, iy) = {c[0], c[1]};
        }
    }
    return spec;
}

Image inverse_spectrum(const Spectrum& spec) {
    const int w = spec.width;
    const int h = spec.height;
    if (w <= 0 || h <= 0) throw ValidationError("inverse_spectrum: empty spectrum");
    const std::size_t n = static_cast<std::size_t>(w) * h;

    FftwBuffer in(n);
    FftwBuffer out(n);
    FftwPlan plan(w, h, in.ptr, out.ptr, FFTW_BACKWARD);

    const int cx = spec.dc_x();
    const int cy = spec.dc_y();
    for (int ky = 0; ky < h; ++ky) {
        const int iy = (ky + cy) % h;
        for (int kx = 0; kx < w; ++kx) {
            const int ix = (kx + cx) % w;
            const std::complex<double> c = spec.at(ix, iy);
            fftw_complex& dst = in.ptr[static_cast<std::size_t>(ky) * w + kx];
            dst[0] = c.real();
            dst[1] = c.imag();
        }
    }
    fftw_execute(plan.plan);

    Image img(w, h);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) img.data[i] = out.ptr[i][0] * scale;
    return img;
}

} // namespace fdmi
