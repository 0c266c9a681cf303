#include "fdmi/imageio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fdmi {
namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in && !in.eof()) throw IoError("read failed for '" + path + "'");
    return buf.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

// Tracks a cursor through the ASCII header; netpbm allows '#' comments.
struct HeaderCursor {
    const std::string& bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::string token(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
               bytes[pos] != '#')
            ++pos;
        if (pos == start) throw ParseError(std::string("missing ") + what + " in header", start);
        return bytes.substr(start, pos - start);
    }

    long integer(const char* what) {
        const std::size_t at = pos;
        const std::string t = token(what);
        try {
            std::size_t used = 0;
            const long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("invalid ") + what + " '" + t + "'", at);
        }
    }

    double number(const char* what) {
        const std::size_t at = pos;
        const std::string t = token(what);
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("invalid ") + what + " '" + t + "'", at);
        }
    }

    // Exactly one whitespace byte separates the header from the payload.
    void expect_single_space(const char* where) {
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
            throw ParseError(std::string("expected whitespace before ") + where, pos);
        ++pos;
    }
};

Image read_p5(const std::string& bytes) {
    HeaderCursor cur{bytes, 2};
    const long w = cur.integer("width");
    const long h = cur.integer("height");
    const long maxval = cur.integer("maxval");
    if (w <= 0 || h <= 0)
        throw ParseError("non-positive dimensions " + std::to_string(w) + "x" + std::to_string(h),
                         2);
    if (maxval != 255 && maxval != 65535)
        throw ParseError("unsupported maxval " + std::to_string(maxval) + " (expected 255 or 65535)",
                         cur.pos);
    cur.expect_single_space("pixel data");

    const std::size_t bytes_per = maxval == 255 ? 1 : 2;
    const std::size_t need = static_cast<std::size_t>(w) * h * bytes_per;
    if (bytes.size() - cur.pos < need)
        throw ParseError("truncated P5 payload: need " + std::to_string(need) + " bytes, have " +
                             std::to_string(bytes.size() - cur.pos),
                         bytes.size());

    Image img(static_cast<int>(w), static_cast<int>(h));
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + cur.pos;
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (bytes_per == 1) {
            img.data[i] = p[i] * scale;
        } else {
            img.data[i] = ((p[2 * i] << 8) | p[2 * i + 1]) * scale; // big-endian
        }
    }
    return img;
}

Image read_pfm(const std::string& bytes) {
    HeaderCursor cur{bytes, 2};
    const long w = cur.integer("width");
    const long h = cur.integer("height");
    const double scale = cur.number("scale");
    if (w <= 0 || h <= 0)
        throw ParseError("non-positive dimensions " + std::to_string(w) + "x" + std::to_string(h),
                         2);
    if (scale == 0.0) throw ParseError("PFM scale must be nonzero", cur.pos);
    cur.expect_single_space("pixel data");

    const bool little_endian = scale < 0.0;
    const std::size_t need = static_cast<std::size_t>(w) * h * 4;
    if (bytes.size() - cur.pos < need)
        throw ParseError("truncated PFM payload: need " + std::to_string(need) + " bytes, have " +
                             std::to_string(bytes.size() - cur.pos),
                         bytes.size());

    Image img(static_cast<int>(w), static_cast<int>(h));
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + cur.pos;
    for (long row = 0; row < h; ++row) {
        const long y = h - 1 - row; // PFM rows run bottom-to-top
        for (long x = 0; x < w; ++x) {
            std::uint32_t bits = 0;
            const unsigned char* s = p + 4 * (static_cast<std::size_t>(row) * w + x);
            if (little_endian)
                bits = s[0] | (s[1] << 8) | (std::uint32_t(s[2]) << 16) |
                       (std::uint32_t(s[3]) << 24);
            else
                bits = s[3] | (s[2] << 8) | (std::uint32_t(s[1]) << 16) |
                       (std::uint32_t(s[0]) << 24);
            img.at(static_cast<int>(x), static_cast<int>(y)) = std::bit_cast<float>(bits);
        }
    }
    return img;
}

} // namespace

Image read_image(const std::string& path) {
    const std::string bytes = slurp(path);
    if (bytes.size() < 2) throw ParseError("file too short for a magic number", 0);
    const std::string magic = bytes.substr(0, 2);
    if (magic == "P5") return read_p5(bytes);
    if (magic == "Pf") return read_pfm(bytes);
    throw ParseError("unsupported magic '" + magic + "' (expected P5 or Pf)", 0);
}

ImageFormat image_format_from_string(const std::string& s) {
    if (s == "p5-8" || s == "pgm8") return ImageFormat::P5_8bit;
    if (s == "p5-16" || s == "pgm16") return ImageFormat::P5_16bit;
    if (s == "pfm") return ImageFormat::PFM_gray;
    throw ValidationError("unknown image format '" + s + "' (expected p5-8, p5-16 or pfm)");
}

void write_image(const std::string& path, const Image& img, ImageFormat format) {
    if (img.width <= 0 || img.height <= 0)
        throw ValidationError("write_image: empty image");
    for (double v : img.data)
        if (!std::isfinite(v)) throw ValidationError("write_image: non-finite pixel value");

    std::ostringstream out;
    if (format == ImageFormat::PFM_gray) {
        out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
        for (int row = img.height - 1; row >= 0; --row)
            for (int x = 0; x < img.width; ++x) {
                const std::uint32_t bits =
                    std::bit_cast<std::uint32_t>(static_cast<float>(img.at(x, row)));
                const char le[4] = {static_cast<char>(bits & 0xff),
                                    static_cast<char>((bits >> 8) & 0xff),
                                    static_cast<char>((bits >> 16) & 0xff),
                                    static_cast<char>((bits >> 24) & 0xff)};
                out.write(le, 4);
            }
    } else {
        const int maxval = format == ImageFormat::P5_8bit ? 255 : 65535;
        out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
        for (double v : img.data) {
            const double clamped = std::clamp(v, 0.0, 1.0);
            const long q = static_cast<long>(std::floor(clamped * maxval + 0.5));
            if (maxval == 255) {
                out.put(static_cast<char>(q));
            } else {
                out.put(static_cast<char>((q >> 8) & 0xff)); // big-endian
                out.put(static_cast<char>(q & 0xff));
            }
        }
    }
    spill(path, out.str());
}

SidebandPlan read_plan(const std::string& path) { return plan_from_json(slurp(path)); }

void write_plan(const std::string& path, const SidebandPlan& plan) {
    spill(path, plan_to_json(plan));
}

} // namespace fdmi
