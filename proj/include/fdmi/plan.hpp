#ifndef FDMI_PLAN_HPP
#define FDMI_PLAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdmi/mask.hpp"

namespace fdmi {

struct PlanEntry {
    MaskSpec mask;
    double band_radius = 0.0; // cycles/pixel
};

/// Carrier layout for one capture: each entry owns a pass-band disk pair at
/// +/- its carrier, the baseband owns a disk at DC. A valid plan has no
/// overlapping disks after aliasing folds everything into [-0.5,0.5)^2.
struct SidebandPlan {
    std::vector<PlanEntry> entries;
    double baseband_radius = 0.0;
};

/// One detected overlap (or escape) between pass-band disks.
struct PlanViolation {
    std::string disk_a;
    std::string disk_b;   // empty for single-disk violations
    double overlap = 0.0; // (r_a + r_b) - center distance, > 0 when colliding
    std::string message;
};

/// Diagnoses a plan. Empty result iff the plan is collision-free. Square
/// entries contribute folded odd harmonics up to order 63 (amplitude below
/// 1% of the fundamental beyond that).
std::vector<PlanViolation> check_plan(const SidebandPlan& plan);

/// Packs n carriers with the given per-entry band radius (baseband radius
/// equals the band radius). Carriers are snapped to the frequency grid of
/// `grid` samples, so plans decode without fractional-bin interpolation.
/// band_radius = nullopt selects the largest radius that still packs,
/// bisected to 1e-4 cycles/pixel.
/// Throws PlanningError when infeasible, reporting the max feasible radius.
SidebandPlan plan_sidebands(int n, Waveform waveform,
                            std::optional<double> band_radius = std::nullopt,
                            int grid = 512);

std::string plan_to_json(const SidebandPlan& plan);
SidebandPlan plan_from_json(const std::string& text);

} // namespace fdmi

#endif
