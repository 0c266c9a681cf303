#ifndef FDMI_FLOW_HPP
#define FDMI_FLOW_HPP

#include <string>
#include <vector>

#include "fdmi/image.hpp"

namespace fdmi {

/// Dense per-pixel displacement mapping frame-1 coordinates toward frame 2.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<double> dx;
    std::vector<double> dy;
    bool low_texture = false; // set when the inputs carried too little gradient

    FlowField() = default;
    FlowField(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0) throw ValidationError("FlowField dimensions must be positive");
        dx.assign(static_cast<std::size_t>(w) * h, 0.0);
        dy.assign(static_cast<std::size_t>(w) * h, 0.0);
    }

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

struct FlowParams {
    double smoothness = 0.05; // quadratic smoothness weight (alpha^2), for [0,1] intensities
    int iterations = 100;     // Jacobi sweeps per pyramid level
    int warps = 3;            // warp updates per level
    int min_level_size = 16;  // coarsest pyramid level edge, pixels
};

/// Coarse-to-fine Horn-Schunck estimate (downscale factor 0.5 per level).
/// Deterministic for fixed params. Constant inputs yield zero flow with the
/// low_texture flag set.
FlowField estimate_flow(const Image& img1, const Image& img2, const FlowParams& params = {});

/// Backward warp by t * flow with bilinear sampling, clamp-to-edge.
Image warp(const Image& img, const FlowField& flow, double t);

/// n frames at t_k = k/(n-1): the first is img1 bit-exactly, the rest are
/// one-sided warps of img1 along the scaled flow. img2 is accepted for
/// interface symmetry and future bidirectional blending.
std::vector<Image> interpolate_frames(const Image& img1, const Image& img2,
                                      const FlowField& flow, int n);

/// Two-band float flow file ("PIEH" magic, little-endian interleaved f32).
void write_flow(const std::string& path, const FlowField& flow);
FlowField read_flow(const std::string& path);

} // namespace fdmi

#endif
