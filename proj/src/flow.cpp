#include "fdmi/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace fdmi {
namespace {

double sample_clamped(const Image& img, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
    const int x0 = std::min(img.width - 2, static_cast<int>(x));
    const int y0 = std::min(img.height - 2, static_cast<int>(y));
    const double fx = x - x0;
    const double fy = y - y0;
    return (1 - fx) * (1 - fy) * img.at(x0, y0) + fx * (1 - fy) * img.at(x0 + 1, y0) +
           (1 - fx) * fy * img.at(x0, y0 + 1) + fx * fy * img.at(x0 + 1, y0 + 1);
}

Image downsample_half(const Image& img) {
    const int w = std::max(1, img.width / 2);
    const int h = std::max(1, img.height / 2);
    Image out(w, h);
    for (int y = 0; y < h; ++y) {
        const int y1 = std::min(img.height - 1, 2 * y + 1);
        for (int x = 0; x < w; ++x) {
            const int x1 = std::min(img.width - 1, 2 * x + 1);
            out.at(x, y) = 0.25 * (img.at(2 * x, 2 * y) + img.at(x1, 2 * y) +
                                   img.at(2 * x, y1) + img.at(x1, y1));
        }
    }
    return out;
}

FlowField upsample_double(const FlowField& flow, int w, int h) {
    FlowField out(w, h);
    const double sx = static_cast<double>(flow.width) / w;
    const double sy = static_cast<double>(flow.height) / h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, flow.width - 1.0);
            const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, flow.height - 1.0);
            const int x0 = std::min(flow.width - 1, static_cast<int>(fx));
            const int y0 = std::min(flow.height - 1, static_cast<int>(fy));
            const int x1 = std::min(flow.width - 1, x0 + 1);
            const int y1 = std::min(flow.height - 1, y0 + 1);
            const double ax = fx - x0;
            const double ay = fy - y0;
            auto lerp2 = [&](const std::vector<double>& c) {
                return (1 - ax) * (1 - ay) * c[flow.index(x0, y0)] +
                       ax * (1 - ay) * c[flow.index(x1, y0)] +
                       (1 - ax) * ay * c[flow.index(x0, y1)] + ax * ay * c[flow.index(x1, y1)];
            };
            // Vectors are in pixels, so they scale with the resolution.
            out.dx[out.index(x, y)] = lerp2(flow.dx) / sx;
            out.dy[out.index(x, y)] = lerp2(flow.dy) / sy;
        }
    }
    return out;
}

// One Horn-Schunck incremental solve at a single pyramid level. Jacobi
// updates keep the result independent of traversal order.
void hs_refine(const Image& img1, const Image& img2, FlowField& flow, const FlowParams& p) {
    const int w = img1.width;
    const int h = img1.height;
    const std::size_t n = img1.size();

    std::vector<double> du(n), dv(n), du_next(n), dv_next(n);
    std::vector<double> ix(n), iy(n), it(n);

    for (int pass = 0; pass < p.warps; ++pass) {
        // Warp img1 along the current flow and linearize the residual
        // against img2: img1(x + flow + d) ~ warped(x) + grad . d.
        Image warped(w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t i = flow.index(x, y);
                warped.at(x, y) = sample_clamped(img1, x + flow.dx[i], y + flow.dy[i]);
            }
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t i = flow.index(x, y);
                const int xm = std::max(0, x - 1), xp = std::min(w - 1, x + 1);
                const int ym = std::max(0, y - 1), yp = std::min(h - 1, y + 1);
                ix[i] = 0.25 * (img2.at(xp, y) - img2.at(xm, y) + warped.at(xp, y) -
                                warped.at(xm, y));
                iy[i] = 0.25 * (img2.at(x, yp) - img2.at(x, ym) + warped.at(x, yp) -
                                warped.at(x, ym));
                it[i] = warped.at(x, y) - img2.at(x, y);
            }

        std::fill(du.begin(), du.end(), 0.0);
        std::fill(dv.begin(), dv.end(), 0.0);
        for (int iter = 0; iter < p.iterations; ++iter) {
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const std::size_t i = flow.index(x, y);
                    const int xm = std::max(0, x - 1), xp = std::min(w - 1, x + 1);
                    const int ym = std::max(0, y - 1), yp = std::min(h - 1, y + 1);
                    const double ubar = 0.25 * (du[flow.index(xm, y)] + du[flow.index(xp, y)] +
                                                du[flow.index(x, ym)] + du[flow.index(x, yp)]);
                    const double vbar = 0.25 * (dv[flow.index(xm, y)] + dv[flow.index(xp, y)] +
                                                dv[flow.index(x, ym)] + dv[flow.index(x, yp)]);
                    const double denom = p.smoothness + ix[i] * ix[i] + iy[i] * iy[i];
                    const double common = (ix[i] * ubar + iy[i] * vbar + it[i]) / denom;
                    du_next[i] = ubar - ix[i] * common;
                    dv_next[i] = vbar - iy[i] * common;
                }
            du.swap(du_next);
            dv.swap(dv_next);
        }
        for (std::size_t i = 0; i < n; ++i) {
            flow.dx[i] += du[i];
            flow.dy[i] += dv[i];
        }
    }
}

} // namespace

FlowField estimate_flow(const Image& img1, const Image& img2, const FlowParams& params) {
    if (!img1.same_size(img2))
        throw ValidationError("estimate_flow: image dimensions differ");
    if (params.iterations < 1 || params.warps < 1 || !(params.smoothness > 0.0))
        throw ValidationError("estimate_flow: invalid solver parameters");

    // Gradient energy gate for degenerate inputs.
    double grad = 0.0;
    for (int y = 0; y + 1 < img1.height; ++y)
        for (int x = 0; x + 1 < img1.width; ++x) {
            grad += std::abs(img1.at(x + 1, y) - img1.at(x, y));
            grad += std::abs(img1.at(x, y + 1) - img1.at(x, y));
        }
    if (grad / static_cast<double>(img1.size()) < 1e-9) {
        FlowField zero(img1.width, img1.height);
        zero.low_texture = true;
        return zero;
    }

    std::vector<Image> pyr1{img1}, pyr2{img2};
    while (std::min(pyr1.back().width, pyr1.back().height) / 2 >= params.min_level_size) {
        pyr1.push_back(downsample_half(pyr1.back()));
        pyr2.push_back(downsample_half(pyr2.back()));
    }

    FlowField flow(pyr1.back().width, pyr1.back().height);
    for (int level = static_cast<int>(pyr1.size()) - 1; level >= 0; --level) {
        if (flow.width != pyr1[level].width || flow.height != pyr1[level].height)
            flow = upsample_double(flow, pyr1[level].width, pyr1[level].height);
        hs_refine(pyr1[level], pyr2[level], flow, params);
    }
    return flow;
}

Image warp(const Image& img, const FlowField& flow, double t) {
    if (img.width != flow.width || img.height != flow.height)
        throw ValidationError("warp: image and flow dimensions differ");
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("warp: t must be in [0,1], got " + std::to_string(t));
    if (t == 0.0) return img;
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const std::size_t i = flow.index(x, y);
            out.at(x, y) = sample_clamped(img, x + t * flow.dx[i], y + t * flow.dy[i]);
        }
    return out;
}

std::vector<Image> interpolate_frames(const Image& img1, const Image& img2,
                                      const FlowField& flow, int n) {
    if (n < 2) throw ValidationError("interpolate_frames: need n >= 2 frames");
    if (!img1.same_size(img2))
        throw ValidationError("interpolate_frames: image dimensions differ");
    std::vector<Image> frames;
    frames.reserve(n);
    frames.push_back(img1);
    for (int k = 1; k < n; ++k)
        frames.push_back(warp(img1, flow, static_cast<double>(k) / (n - 1)));
    return frames;
}

namespace {
constexpr float kFlowMagic = 202021.25f; // spells "PIEH" in little-endian bytes
}

void write_flow(const std::string& path, const FlowField& flow) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const std::int32_t w = flow.width, h = flow.height;
    out.write(reinterpret_cast<const char*>(&kFlowMagic), 4);
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const float fx = static_cast<float>(flow.dx[flow.index(x, y)]);
            const float fy = static_cast<float>(flow.dy[flow.index(x, y)]);
            out.write(reinterpret_cast<const char*>(&fx), 4);
            out.write(reinterpret_cast<const char*>(&fy), 4);
        }
    if (!out) throw IoError("write failed for '" + path + "'");
}

FlowField read_flow(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    float magic = 0.0f;
    std::int32_t w = 0, h = 0;
    in.read(reinterpret_cast<char*>(&magic), 4);
    if (!in || magic != kFlowMagic) throw ParseError("not a PIEH flow file", 0);
    in.read(reinterpret_cast<char*>(&w), 4);
    in.read(reinterpret_cast<char*>(&h), 4);
    if (!in || w <= 0 || h <= 0) throw ParseError("invalid flow dimensions", 4);
    FlowField flow(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            float fx, fy;
            in.read(reinterpret_cast<char*>(&fx), 4);
            in.read(reinterpret_cast<char*>(&fy), 4);
            if (!in)
                throw ParseError("truncated flow payload",
                                 12 + 8 * (static_cast<std::size_t>(y) * w + x));
            flow.dx[flow.index(x, y)] = fx;
            flow.dy[flow.index(x, y)] = fy;
        }
    return flow;
}

} // namespace fdmi
