#include "fdmi/plan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace fdmi {
namespace {

constexpr double kTouchEps = 1e-9;
constexpr int kHarmonicCap = 64;

// Fold a frequency into [-0.5, 0.5).
double fold(double f) {
    double t = f - std::round(f);
    if (t >= 0.5) t -= 1.0;
    if (t < -0.5) t += 1.0;
    return t;
}

struct Disk {
    double u, v, r;
    int entry; // -1 for the baseband
    std::string label;
};

double torus_distance(const Disk& a, const Disk& b) {
    return std::hypot(fold(a.u - b.u), fold(a.v - b.v));
}

// All pass-band disks an entry contributes, folded into the Nyquist square.
// Square entries add odd harmonics until the harmonic amplitude 2b/(pi*k)
// drops below 1% of b. Coincident centers within one entry collapse into a
// single disk (e.g. the one-on/one-off pattern, whose harmonics all fold
// onto the carrier).
std::vector<Disk> entry_disks(const PlanEntry& e, int index) {
    std::vector<Disk> disks;
    auto add = [&](double u, double v, const std::string& label) {
        u = fold(u);
        v = fold(v);
        for (const Disk& d : disks)
            if (std::hypot(fold(d.u - u), fold(d.v - v)) < kTouchEps) return;
        disks.push_back({u, v, e.band_radius, index, label});
    };
    const std::string base = "entry " + std::to_string(index);
    // Carrier-free masks (constant, or zero-frequency cosine) only feed the
    // baseband; they own no sideband disks.
    if (e.mask.waveform == Waveform::Constant || !e.mask.has_carrier()) return disks;
    add(e.mask.u0, e.mask.v0, base + " (+carrier)");
    add(-e.mask.u0, -e.mask.v0, base + " (-carrier)");
    if (e.mask.waveform == Waveform::Square) {
        for (int k = 3; k < kHarmonicCap; k += 2) {
            if (2.0 / (M_PI * k) < 0.01) break;
            add(k * e.mask.u0, k * e.mask.v0, base + " (harmonic " + std::to_string(k) + "+)");
            add(-k * e.mask.u0, -k * e.mask.v0, base + " (harmonic " + std::to_string(k) + "-)");
        }
    }
    return disks;
}

std::vector<Disk> all_disks(const SidebandPlan& plan) {
    std::vector<Disk> disks;
    disks.push_back({0.0, 0.0, plan.baseband_radius, -1, "baseband"});
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
        auto d = entry_disks(plan.entries[i], static_cast<int>(i));
        disks.insert(disks.end(), d.begin(), d.end());
    }
    return disks;
}

std::string describe(const Disk& d) {
    std::ostringstream os;
    os << d.label << " at (" << d.u << ", " << d.v << ") radius " << d.r;
    return os.str();
}

std::optional<PlanViolation> collide(const Disk& a, const Disk& b) {
    const double dist = torus_distance(a, b);
    if (a.entry == b.entry && a.entry >= 0 && dist < kTouchEps) return std::nullopt;
    const double overlap = (a.r + b.r) - dist;
    if (overlap <= kTouchEps) return std::nullopt;
    PlanViolation v;
    v.disk_a = describe(a);
    v.disk_b = describe(b);
    v.overlap = overlap;
    std::ostringstream os;
    os << "disks overlap by " << overlap << ": " << v.disk_a << " vs " << v.disk_b;
    v.message = os.str();
    return v;
}

} // namespace

std::vector<PlanViolation> check_plan(const SidebandPlan& plan) {
    std::vector<PlanViolation> violations;
    const auto disks = all_disks(plan);
    for (const Disk& d : disks) {
        if (d.r > 0.5 + kTouchEps) {
            PlanViolation v;
            v.disk_a = describe(d);
            v.overlap = d.r - 0.5;
            v.message = "disk escapes the folded Nyquist square: " + v.disk_a;
            violations.push_back(v);
        }
    }
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
            if (auto v = collide(disks[i], disks[j])) violations.push_back(*v);
    return violations;
}

namespace {

double snap(double f, int grid) { return std::round(f * grid) / grid; }

PlanEntry make_entry(Waveform w, double u0, double v0, double r) {
    PlanEntry e;
    e.mask.waveform = w;
    e.mask.u0 = u0;
    e.mask.v0 = v0;
    e.mask.offset = 0.5;
    e.mask.amplitude = 0.5;
    e.mask.phase = 0.0;
    e.band_radius = r;
    return e;
}

bool candidate_fits(const PlanEntry& cand, int index, const std::vector<Disk>& placed) {
    const auto cand_disks = entry_disks(cand, index);
    for (std::size_t i = 0; i < cand_disks.size(); ++i) {
        for (const Disk& d : placed)
            if (collide(cand_disks[i], d)) return false;
        for (std::size_t j = i + 1; j < cand_disks.size(); ++j)
            if (collide(cand_disks[i], cand_disks[j])) return false;
    }
    return true;
}

bool inside_square(const MaskSpec& m, double r) {
    return std::abs(m.u0) + r <= 0.5 + kTouchEps && std::abs(m.v0) + r <= 0.5 + kTouchEps;
}

std::optional<SidebandPlan> try_pack(int n, Waveform w, double r, int grid) {
    SidebandPlan plan;
    plan.baseband_radius = r;

    auto push_if_fits = [&](double u0, double v0, double phase = 0.0) {
        PlanEntry e = make_entry(w, u0, v0, r);
        e.mask.phase = phase;
        if (w == Waveform::Cosine) {
            if (std::max(std::abs(u0), std::abs(v0)) >= 0.5) return false;
            if (!inside_square(e.mask, r)) return false;
        }
        std::vector<Disk> placed = all_disks(plan);
        if (!candidate_fits(e, static_cast<int>(plan.entries.size()), placed)) return false;
        plan.entries.push_back(e);
        return true;
    };

    if (n <= 4 && w == Waveform::Square) {
        // Presets whose harmonics fold onto their own carriers: the
        // one-on/one-off axis patterns plus quarter-frequency diagonals.
        // The diagonals get a quarter-period phase shift so the sampled
        // pattern keeps exact half duty (zero DC leakage).
        const double preset[4][3] = {{0.5, 0.0, 0.0},
                                     {0.0, 0.5, 0.0},
                                     {0.25, 0.25, M_PI / 4},
                                     {0.25, -0.25, M_PI / 4}};
        for (int i = 0; i < n; ++i)
            if (!push_if_fits(preset[i][0], preset[i][1], preset[i][2])) return std::nullopt;
    } else if (n <= 4) {
        // Axis carriers pushed to the edge, then the two diagonals.
        const double u0 = snap(0.5 - r, grid);
        const double d = snap(u0 / std::sqrt(2.0), grid);
        const double preset[4][2] = {{u0, 0.0}, {0.0, u0}, {d, d}, {d, -d}};
        for (int i = 0; i < n; ++i)
            if (!push_if_fits(preset[i][0], preset[i][1])) return std::nullopt;
    } else {
        // Concentric rings in the half-plane u > 0; conjugate sidebands are
        // implicit. Ring spacing 2r, innermost ring clears the baseband.
        const double rho0 = plan.baseband_radius + r;
        for (int ring = 0; static_cast<int>(plan.entries.size()) < n; ++ring) {
            const double rho = rho0 + 2.0 * r * ring;
            if (rho - r > 0.5 * std::sqrt(2.0)) return std::nullopt; // rings exhausted
            const double hg = std::asin(std::min(1.0, r / rho));
            const double step = 2.0 * hg;
            for (double theta = -M_PI / 2 + hg; theta <= M_PI / 2 - hg + 1e-12;
                 theta += step) {
                const double u = snap(rho * std::cos(theta), grid);
                const double v = snap(rho * std::sin(theta), grid);
                if (u < 0.0 || (u == 0.0 && v <= 0.0)) continue;
                if (push_if_fits(u, v) && static_cast<int>(plan.entries.size()) >= n) break;
            }
        }
    }

    if (static_cast<int>(plan.entries.size()) != n) return std::nullopt;
    if (!check_plan(plan).empty()) return std::nullopt;
    return plan;
}

// Largest feasible radius and its plan, or nullopt when nothing packs.
std::optional<std::pair<double, SidebandPlan>> pack_auto(int n, Waveform w, int grid) {
    double lo = 0.25;
    std::optional<SidebandPlan> best;
    while (lo > 1e-5) {
        if (auto p = try_pack(n, w, lo, grid)) {
            best = *p;
            break;
        }
        lo *= 0.5;
    }
    if (!best) return std::nullopt;
    if (lo >= 0.25) return std::make_pair(lo, *best);
    double hi = 2.0 * lo;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (auto p = try_pack(n, w, mid, grid)) {
            best = *p;
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::make_pair(lo, *best);
}

} // namespace

SidebandPlan plan_sidebands(int n, Waveform waveform, std::optional<double> band_radius,
                            int grid) {
    if (n < 1) throw ValidationError("plan_sidebands: n must be >= 1, got " + std::to_string(n));
    if (grid < 2) throw ValidationError("plan_sidebands: grid must be >= 2");
    if (waveform == Waveform::Constant)
        throw ValidationError("plan_sidebands: constant masks carry no sideband");
    if (band_radius) {
        if (!(*band_radius > 0.0) || *band_radius > 0.5)
            throw ValidationError("plan_sidebands: band_radius must be in (0, 0.5], got " +
                                  std::to_string(*band_radius));
        if (auto p = try_pack(n, waveform, *band_radius, grid)) return *p;
        const auto fallback = pack_auto(n, waveform, grid);
        const double max_r = fallback ? fallback->first : 0.0;
        throw PlanningError("plan_sidebands: cannot pack " + std::to_string(n) +
                                " sidebands at radius " + std::to_string(*band_radius) +
                                "; maximum feasible radius is " + std::to_string(max_r),
                            max_r);
    }
    const auto packed = pack_auto(n, waveform, grid);
    if (!packed)
        throw PlanningError(
            "plan_sidebands: cannot pack " + std::to_string(n) + " sidebands at any radius", 0.0);
    return packed->second;
}

std::string plan_to_json(const SidebandPlan& plan) {
    nlohmann::json j;
    j["baseband_radius"] = plan.baseband_radius;
    j["entries"] = nlohmann::json::array();
    for (const PlanEntry& e : plan.entries) {
        j["entries"].push_back({{"waveform", to_string(e.mask.waveform)},
                                {"u0", e.mask.u0},
                                {"v0", e.mask.v0},
                                {"a", e.mask.offset},
                                {"b", e.mask.amplitude},
                                {"phase", e.mask.phase},
                                {"band_radius", e.band_radius}});
    }
    return j.dump(2) + "\n";
}

namespace {

void reject_unknown_fields(const nlohmann::json& j, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return it.key() == k;
            }) == known.end())
            throw ValidationError("unknown field '" + it.key() + "' in " + where);
    }
}

double require_number(const nlohmann::json& j, const char* field, const std::string& where) {
    if (!j.contains(field))
        throw ValidationError("missing field '" + std::string(field) + "' in " + where);
    if (!j[field].is_number())
        throw ValidationError("field '" + std::string(field) + "' in " + where +
                              " must be a number");
    return j[field].get<double>();
}

} // namespace

SidebandPlan plan_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("plan JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ValidationError("plan JSON root must be an object");
    reject_unknown_fields(j, {"entries", "baseband_radius"}, "plan");

    SidebandPlan plan;
    plan.baseband_radius = require_number(j, "baseband_radius", "plan");
    if (plan.baseband_radius < 0.0)
        throw ValidationError("field 'baseband_radius' must be >= 0");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ValidationError("field 'entries' must be an array");
    int idx = 0;
    for (const auto& je : j["entries"]) {
        const std::string where = "entries[" + std::to_string(idx) + "]";
        if (!je.is_object()) throw ValidationError(where + " must be an object");
        reject_unknown_fields(je, {"waveform", "u0", "v0", "a", "b", "phase", "band_radius"},
                              where);
        if (!je.contains("waveform") || !je["waveform"].is_string())
            throw ValidationError("field 'waveform' in " + where + " must be a string");
        PlanEntry e;
        e.mask.waveform = waveform_from_string(je["waveform"].get<std::string>());
        e.mask.u0 = require_number(je, "u0", where);
        e.mask.v0 = require_number(je, "v0", where);
        e.mask.offset = require_number(je, "a", where);
        e.mask.amplitude = require_number(je, "b", where);
        e.mask.phase = require_number(je, "phase", where);
        e.band_radius = require_number(je, "band_radius", where);
        e.mask.validate();
        if (!(e.band_radius > 0.0))
            throw ValidationError("field 'band_radius' in " + where + " must be > 0");
        plan.entries.push_back(e);
        ++idx;
    }
    return plan;
}

} // namespace fdmi
