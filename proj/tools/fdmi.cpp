// fdmi: plan, simulate, decode and analyze frequency-division-multiplexed
// captures from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "fdmi/analysis.hpp"
#include "fdmi/codec.hpp"
#include "fdmi/flow.hpp"
#include "fdmi/imageio.hpp"
#include "fdmi/simulate.hpp"

namespace fs = std::filesystem;
using namespace fdmi;

namespace {

constexpr const char* kVersion = "fdmi 1.0.0";

// usage 2, validation 3, computation 4, I/O 5
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;
constexpr int kExitIo = 5;

int worker_threads(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* cap = std::getenv("FDMI_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<int>(std::min<std::size_t>(n, jobs));
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open '" + tmp + "' for writing");
        out << text;
        if (!out) throw IoError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

// Every run leaves a manifest next to its outputs; re-running with the same
// parameters (seed included) reproduces the outputs bit-exactly.
class Manifest {
public:
    Manifest(std::string subcommand, std::string path)
        : path_(std::move(path)), start_(std::chrono::steady_clock::now()) {
        doc_["subcommand"] = std::move(subcommand);
        doc_["tool_version"] = kVersion;
        doc_["parameters"] = nlohmann::json::object();
        doc_["inputs"] = nlohmann::json::array();
        doc_["outputs"] = nlohmann::json::array();
    }
    template <typename T>
    void param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
    }
    void input(const std::string& p) { doc_["inputs"].push_back(p); }
    void output(const std::string& p) { doc_["outputs"].push_back(p); }
    void commit() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        doc_["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        write_text_atomic(path_, doc_.dump(2) + "\n");
    }

private:
    std::string path_;
    nlohmann::json doc_;
    std::chrono::steady_clock::time_point start_;
};

void save_spectrum_view(const std::string& path, const Image& img) {
    write_image(path, log_magnitude(forward_spectrum(img)), ImageFormat::P5_16bit);
}

ImageFormat format_of_path(const std::string& path) {
    const auto ext = fs::path(path).extension().string();
    if (ext == ".pgm") return ImageFormat::P5_16bit;
    return ImageFormat::PFM_gray;
}

// ---- subcommand payloads -------------------------------------------------

struct PlanArgs {
    int n = 1;
    std::string waveform = "cosine";
    std::string radius = "auto";
    int grid = 512;
    std::string out = "plan.json";
};

int cmd_plan(const PlanArgs& a) {
    std::optional<double> radius;
    if (a.radius != "auto") {
        try {
            radius = std::stod(a.radius);
        } catch (const std::exception&) {
            throw ValidationError("--radius must be a number or 'auto', got '" + a.radius + "'");
        }
    }
    const SidebandPlan plan = plan_sidebands(a.n, waveform_from_string(a.waveform), radius, a.grid);
    write_plan(a.out, plan);

    Manifest manifest("plan", a.out + ".manifest.json");
    manifest.param("n", a.n);
    manifest.param("waveform", a.waveform);
    manifest.param("radius", a.radius);
    manifest.param("packed_radius", plan.entries.empty() ? 0.0 : plan.entries[0].band_radius);
    manifest.param("grid", a.grid);
    manifest.output(a.out);
    manifest.commit();
    std::cout << "planned " << plan.entries.size() << " sidebands, band radius "
              << (plan.entries.empty() ? 0.0 : plan.entries[0].band_radius) << "\n";
    return 0;
}

struct MaskArgs {
    std::string plan;
    int index = 0;
    int width = 512;
    int height = 512;
    std::string out = "mask.pfm";
};

int cmd_mask(const MaskArgs& a) {
    const SidebandPlan plan = read_plan(a.plan);
    if (a.index < 0 || a.index >= static_cast<int>(plan.entries.size()))
        throw ValidationError("--index " + std::to_string(a.index) + " out of range; plan has " +
                              std::to_string(plan.entries.size()) + " entries");
    const Image mask = make_mask(plan.entries[a.index].mask, a.width, a.height);
    write_image(a.out, mask, format_of_path(a.out));

    Manifest manifest("mask", a.out + ".manifest.json");
    manifest.param("index", a.index);
    manifest.param("width", a.width);
    manifest.param("height", a.height);
    manifest.input(a.plan);
    manifest.output(a.out);
    manifest.commit();
    return 0;
}

struct SimulateArgs {
    std::string plan;
    std::vector<std::string> frames;
    std::vector<double> durations;
    double pitch = 1.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string normalization = "average";
    std::string out = "coded.pfm";
    std::string spectrum_out;
};

int cmd_simulate(const SimulateArgs& a) {
    CaptureConfig config;
    config.plan = read_plan(a.plan);
    config.durations = a.durations;
    config.pitch_ratio = a.pitch;
    config.noise_sigma = a.noise;
    config.seed = a.seed;
    config.normalization = normalization_from_string(a.normalization);

    std::vector<Image> frames;
    for (const std::string& path : a.frames) frames.push_back(read_image(path));
    const Image coded = simulate_capture(config, frames);
    write_image(a.out, coded, format_of_path(a.out));
    if (!a.spectrum_out.empty()) save_spectrum_view(a.spectrum_out, coded);

    Manifest manifest("simulate", a.out + ".manifest.json");
    manifest.param("pitch", a.pitch);
    manifest.param("noise", a.noise);
    manifest.param("seed", a.seed);
    manifest.param("normalization", a.normalization);
    manifest.param("durations", a.durations);
    manifest.input(a.plan);
    for (const std::string& f : a.frames) manifest.input(f);
    manifest.output(a.out);
    if (!a.spectrum_out.empty()) manifest.output(a.spectrum_out);
    manifest.commit();
    return 0;
}

struct DecodeArgs {
    std::string plan;
    bool auto_detect = false;
    std::string coded;
    std::string outdir = ".";
    bool baseband = false;
    std::vector<double> durations;
    std::string normalization = "average";
    std::string spectrum_out;
};

SidebandPlan detect_plan(const Image& coded) {
    const auto peaks = spectrum_report(coded, 0.02);
    if (peaks.empty())
        throw ComputationError("auto-detect: no carriers found in the capture spectrum");
    // Band radius: stay clear of DC and of the nearest neighboring carrier.
    SidebandPlan plan;
    for (const SpectrumPeak& p : peaks) {
        double clearance = std::hypot(p.u, p.v);
        for (const SpectrumPeak& q : peaks) {
            if (&q == &p) continue;
            clearance = std::min(clearance, std::hypot(p.u - q.u, p.v - q.v));
            clearance = std::min(clearance, std::hypot(p.u + q.u, p.v + q.v));
        }
        if (clearance < 0.01) continue; // crowded spurious peak
        PlanEntry e;
        e.mask = {Waveform::Cosine, p.u, p.v, 0.5, 0.5, 0.0};
        e.band_radius = 0.45 * clearance;
        plan.entries.push_back(e);
    }
    if (plan.entries.empty())
        throw ComputationError("auto-detect: no usable carriers in the capture spectrum");
    plan.baseband_radius = plan.entries.front().band_radius;
    return plan;
}

int cmd_decode(const DecodeArgs& a) {
    if (a.plan.empty() == !a.auto_detect)
        throw ValidationError("decode: pass exactly one of --plan or --auto-detect");
    const Image coded = read_image(a.coded);
    const SidebandPlan plan = a.auto_detect ? detect_plan(coded) : read_plan(a.plan);
    const Normalization norm = normalization_from_string(a.normalization);
    fs::create_directories(a.outdir);

    std::vector<int> sideband_indices;
    for (std::size_t i = 0; i < plan.entries.size(); ++i)
        if (plan.entries[i].mask.has_carrier()) sideband_indices.push_back(static_cast<int>(i));

    const double scale =
        norm == Normalization::Average ? static_cast<double>(plan.entries.size()) : 1.0;

    // Sidebands are independent; decode them in parallel.
    std::vector<Image> recovered(sideband_indices.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int threads = worker_threads(sideband_indices.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < sideband_indices.size();) {
            try {
                recovered[j] = extract_sideband(coded, plan.entries[sideband_indices[j]], scale);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Manifest manifest("decode", (fs::path(a.outdir) / "manifest.json").string());
    manifest.param("auto_detect", a.auto_detect);
    manifest.param("normalization", a.normalization);
    manifest.param("baseband", a.baseband);
    manifest.param("durations", a.durations);
    manifest.input(a.coded);
    if (!a.plan.empty()) manifest.input(a.plan);

    for (std::size_t j = 0; j < sideband_indices.size(); ++j) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%02d.pfm", sideband_indices[j]);
        const std::string path = (fs::path(a.outdir) / name).string();
        write_image(path, recovered[j], ImageFormat::PFM_gray);
        manifest.output(path);
    }
    if (a.baseband) {
        std::optional<std::vector<double>> durations;
        if (!a.durations.empty()) durations = a.durations;
        const Image base =
            extract_baseband(coded, plan.baseband_radius, plan, durations, norm);
        const std::string path = (fs::path(a.outdir) / "baseband.pfm").string();
        write_image(path, base, ImageFormat::PFM_gray);
        manifest.output(path);
    }
    if (!a.spectrum_out.empty()) {
        save_spectrum_view(a.spectrum_out, coded);
        manifest.output(a.spectrum_out);
    }
    if (a.auto_detect) {
        const std::string path = (fs::path(a.outdir) / "detected_plan.json").string();
        write_plan(path, plan);
        manifest.output(path);
    }
    manifest.commit();
    return 0;
}

struct StarArgs {
    int cycles = 36;
    int size = 512;
    double contrast = 1.0;
    double threshold = 0.1;
    std::string through_plan;
    std::string out;
    std::string csv;
    std::string image_out;
};

int cmd_star(const StarArgs& a) {
    if (a.out.empty() && a.csv.empty() && a.image_out.empty())
        throw ValidationError("star: pass at least one of --out, --csv, --image-out");
    StarChart chart = siemens_star(a.size, a.size, a.cycles, a.contrast);
    if (!a.through_plan.empty()) {
        const SidebandPlan plan = read_plan(a.through_plan);
        if (plan.entries.empty() || !plan.entries[0].mask.has_carrier())
            throw ValidationError("--through-plan needs a first entry with a nonzero carrier");
        const Image mask = make_mask(plan.entries[0].mask, a.size, a.size);
        const Image coded = encode({chart.image}, {mask});
        chart.image = extract_sideband(coded, plan.entries[0], 1.0);
    }
    ResolutionReport report;
    if (!a.out.empty() || !a.csv.empty()) {
        report = measure_limiting_radius(chart, a.threshold);
        if (!a.out.empty()) write_text_atomic(a.out, resolution_report_to_json(report, a.cycles));
        if (!a.csv.empty()) write_text_atomic(a.csv, contrast_profile_to_csv(report));
    }
    if (!a.image_out.empty()) write_image(a.image_out, chart.image, format_of_path(a.image_out));

    const std::string anchor = a.out.empty() ? a.image_out : a.out;
    Manifest manifest("star", anchor + ".manifest.json");
    manifest.param("cycles", a.cycles);
    manifest.param("size", a.size);
    manifest.param("contrast", a.contrast);
    manifest.param("threshold", a.threshold);
    if (!a.through_plan.empty()) manifest.input(a.through_plan);
    if (!a.out.empty()) manifest.output(a.out);
    if (!a.csv.empty()) manifest.output(a.csv);
    if (!a.image_out.empty()) manifest.output(a.image_out);
    manifest.commit();
    if (!a.out.empty() || !a.csv.empty())
        std::cout << "resolution " << report.resolution << " lw/ph at radius "
                  << report.limiting_radius << " px\n";
    return 0;
}

struct FlowArgs {
    std::string a;
    std::string b;
    int frames = 16;
    std::string outdir = ".";
    std::string flow_out;
};

int cmd_flow(const FlowArgs& args) {
    const Image img1 = read_image(args.a);
    const Image img2 = read_image(args.b);
    const FlowField flow = estimate_flow(img1, img2);
    if (flow.low_texture)
        std::cerr << "warning: low-texture inputs, flow fixed to zero\n";
    const auto frames = interpolate_frames(img1, img2, flow, args.frames);
    fs::create_directories(args.outdir);

    Manifest manifest("flow", (fs::path(args.outdir) / "manifest.json").string());
    manifest.param("frames", args.frames);
    manifest.param("low_texture", flow.low_texture);
    manifest.input(args.a);
    manifest.input(args.b);
    for (std::size_t k = 0; k < frames.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "interp_%02zu.pfm", k);
        const std::string path = (fs::path(args.outdir) / name).string();
        write_image(path, frames[k], ImageFormat::PFM_gray);
        manifest.output(path);
    }
    if (!args.flow_out.empty()) {
        write_flow(args.flow_out, flow);
        manifest.output(args.flow_out);
    }
    manifest.commit();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency-division multiplexed imaging toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "pack sidebands into a plan file");
    plan_cmd->add_option("n", plan_args.n, "number of sub-exposure masks")->required();
    plan_cmd->add_option("--waveform", plan_args.waveform, "cosine or square");
    plan_cmd->add_option("--radius", plan_args.radius, "band radius in cycles/pixel, or 'auto'");
    plan_cmd->add_option("--grid", plan_args.grid, "frequency grid for carrier snapping");
    plan_cmd->add_option("--out", plan_args.out, "output plan JSON");

    MaskArgs mask_args;
    auto* mask_cmd = app.add_subcommand("mask", "render one mask of a plan");
    mask_cmd->add_option("--plan", mask_args.plan)->required();
    mask_cmd->add_option("--index", mask_args.index);
    mask_cmd->add_option("--width", mask_args.width);
    mask_cmd->add_option("--height", mask_args.height);
    mask_cmd->add_option("--out", mask_args.out);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "simulate a coded capture");
    sim_cmd->add_option("--plan", sim_args.plan)->required();
    sim_cmd->add_option("--frames", sim_args.frames, "sub-exposure frame images")
        ->required()
        ->expected(-1);
    sim_cmd->add_option("--durations", sim_args.durations, "per-frame exposure durations (ms)")
        ->expected(-1);
    sim_cmd->add_option("--pitch", sim_args.pitch, "sensor pixels per SLM pixel");
    sim_cmd->add_option("--noise", sim_args.noise, "additive Gaussian sigma");
    sim_cmd->add_option("--seed", sim_args.seed, "noise seed");
    sim_cmd->add_option("--normalization", sim_args.normalization, "average or sum");
    sim_cmd->add_option("--out", sim_args.out, "coded capture output");
    sim_cmd->add_option("--spectrum-out", sim_args.spectrum_out, "log-magnitude spectrum image");

    DecodeArgs dec_args;
    auto* dec_cmd = app.add_subcommand("decode", "recover sub-exposure images");
    dec_cmd->add_option("--plan", dec_args.plan);
    dec_cmd->add_flag("--auto-detect", dec_args.auto_detect, "detect carriers from the spectrum");
    dec_cmd->add_option("--coded", dec_args.coded)->required();
    dec_cmd->add_option("--outdir", dec_args.outdir);
    dec_cmd->add_flag("--baseband", dec_args.baseband, "also extract the full-exposure baseband");
    dec_cmd->add_option("--durations", dec_args.durations)->expected(-1);
    dec_cmd->add_option("--normalization", dec_args.normalization, "average or sum");
    dec_cmd->add_option("--spectrum-out", dec_args.spectrum_out);

    StarArgs star_args;
    auto* star_cmd = app.add_subcommand("star", "Siemens-star resolution measurement");
    star_cmd->add_option("--cycles", star_args.cycles);
    star_cmd->add_option("--size", star_args.size);
    star_cmd->add_option("--contrast", star_args.contrast);
    star_cmd->add_option("--threshold", star_args.threshold);
    star_cmd->add_option("--through-plan", star_args.through_plan,
                         "modulate/demodulate through the plan's first mask");
    star_cmd->add_option("--out", star_args.out, "resolution report JSON");
    star_cmd->add_option("--csv", star_args.csv, "contrast profile CSV");
    star_cmd->add_option("--image-out", star_args.image_out, "measured chart image");

    FlowArgs flow_args;
    auto* flow_cmd = app.add_subcommand("flow", "flow-based frame interpolation");
    flow_cmd->add_option("--a", flow_args.a)->required();
    flow_cmd->add_option("--b", flow_args.b)->required();
    flow_cmd->add_option("--frames", flow_args.frames);
    flow_cmd->add_option("--outdir", flow_args.outdir);
    flow_cmd->add_option("--flow-out", flow_args.flow_out, "estimated flow (.flo)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (plan_cmd->parsed()) return cmd_plan(plan_args);
        if (mask_cmd->parsed()) return cmd_mask(mask_args);
        if (sim_cmd->parsed()) return cmd_simulate(sim_args);
        if (dec_cmd->parsed()) return cmd_decode(dec_args);
        if (star_cmd->parsed()) return cmd_star(star_args);
        if (flow_cmd->parsed()) return cmd_flow(flow_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PlanningError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return kExitIo;
    } catch (const ComputationError& e) {
        std::cerr << "error: computation: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: computation: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
