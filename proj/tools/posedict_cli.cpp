// posedict command-line front end.
//
//   posedict bench sweep    --data <root> | --synthetic   proportion sweep, aggregate CSV
//   posedict bench eval     --data <root> | --synthetic   one proportion, aggregate CSV
//   posedict bench profile  --data <root>                 per-class errors of one query
//   posedict synth render   --ply <file> | --head <id>    one view as binary PGM
//   posedict synth augment  --ply <file> | --head <id>    sweep of views, one PGM each
//   posedict data check     --data <root>                 dataset summary
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 1 anything else.

#include "posedict/bench.hpp"
#include "posedict/data.hpp"
#include "posedict/errors.hpp"
#include "posedict/image.hpp"
#include "posedict/ply.hpp"
#include "posedict/synth.hpp"
#include "posedict/synthetic_benchmark.hpp"
#include "posedict/synthetic_head.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace posedict;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> resolution;
    double mu = CrcConfig{}.mu;
    double lambda = SrcConfig{}.lambda;
    bool lambda_absolute = false;
    double proportion = 0.0;
    int theta = 2;
    int repeats = 10;
    std::string out;
    unsigned threads = 0;
};

struct Source {
    std::string data;
    bool synthetic = false;
    int subjects = SyntheticPoseConfig{}.subjects;
    std::string clouds;
};

Resolution parse_resolution(const std::string& text)
{
    int w = 0;
    int h = 0;
    char x = 0;
    char rest = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c", &w, &x, &h, &rest) != 3 || (x != 'x' && x != 'X') ||
        w <= 0 || h <= 0)
        throw ConfigError(fmt::format("resolution '{}' is not of the form WxH", text));
    return {w, h};
}

Resolution resolution_or(const Globals& g, Resolution fallback)
{
    return g.resolution ? parse_resolution(*g.resolution) : fallback;
}

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty() || g.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary);
    if (!(out << text))
        throw DataError(fmt::format("cannot write '{}'", g.out));
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!(out << text))
        throw DataError(fmt::format("cannot write '{}'", path));
}

EvalOptions eval_options(const Globals& g)
{
    EvalOptions opts;
    opts.crc.mu = g.mu;
    opts.src.lambda = g.lambda;
    opts.src.lambda_relative = !g.lambda_absolute;
    opts.crc.validate();
    opts.src.validate();
    opts.threads = g.threads;
    return opts;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names)
{
    std::vector<Method> out;
    for (const auto& n : names)
        out.push_back(parse_method(n));
    if (out.empty())
        throw ConfigError("no methods given");
    return out;
}

bool uses_augmentation(const std::vector<Method>& methods)
{
    return std::find(methods.begin(), methods.end(), Method::PDCRC) != methods.end();
}

/// Theta near-frontal poses spread over [-3, 3] degrees.
std::vector<double> frontal_poses(int theta)
{
    if (theta < 1)
        throw ConfigError(fmt::format("theta must be at least 1, got {}", theta));
    if (theta == 1)
        return {0.0};
    std::vector<double> yaw;
    for (int i = 0; i < theta; ++i)
        yaw.push_back(-3.0 + 6.0 * i / (theta - 1));
    return yaw;
}

struct Prepared {
    std::vector<Split> splits;
    Augmenter augmenter;
};

Prepared prepare(const Source& src, const Globals& g, bool need_augmenter)
{
    if (src.synthetic == !src.data.empty())
        throw ConfigError("give exactly one of --data <root> or --synthetic");
    if (src.synthetic) {
        SyntheticPoseConfig cfg;
        cfg.subjects = src.subjects;
        cfg.seed = g.seed.value_or(cfg.seed);
        cfg.repeats = g.repeats;
        cfg.train_yaw = frontal_poses(g.theta);
        cfg.working = resolution_or(g, cfg.working);
        auto data = make_synthetic_pose_benchmark(cfg);
        return {std::move(data.splits), std::move(data.augmenter)};
    }
    const auto samples = load_dataset({src.data, resolution_or(g, {32, 32})});
    Prepared p;
    p.splits = make_splits(samples, {g.theta, g.repeats, g.seed.value_or(0)});
    if (need_augmenter) {
        if (src.clouds.empty())
            throw ConfigError("3DPD-CRC on image data needs --clouds <root>");
        CloudAugmentation aug;
        aug.cloud_root = src.clouds;
        aug.working = resolution_or(g, {32, 32});
        p.augmenter = make_cloud_augmenter(aug);
    }
    return p;
}

void add_source_options(CLI::App& cmd, Source& src)
{
    cmd.add_option("--data", src.data, "Image dataset root (<root>/<class>/<image>)");
    cmd.add_flag("--synthetic", src.synthetic, "Use the built-in synthetic pose benchmark");
    cmd.add_option("--subjects", src.subjects, "Subjects in the synthetic benchmark")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--clouds", src.clouds, "Cloud root (<root>/<class>/<stem>.ply) for 3DPD-CRC");
}

struct BenchArgs {
    Source source;
    std::vector<std::string> methods{"CRC", "SRC", "3DPD-CRC"};
    std::vector<double> proportions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::string raw;
    std::string query;
    bool elimination = false;
};

void run_sweep(const BenchArgs& a, const Globals& g, std::vector<double> proportions)
{
    const auto methods = parse_methods(a.methods);
    auto opts = eval_options(g);
    auto prepared = prepare(a.source, g, uses_augmentation(methods));
    opts.augmenter = prepared.augmenter;
    const auto table = sweep_proportions(prepared.splits, proportions, methods, opts);
    emit(g, aggregate_csv(table));
    if (!a.raw.empty())
        write_text(a.raw, raw_csv(table));
    for (Method m : methods)
        if (const auto best = best_report(table, m))
            fmt::print(stderr, "{}: best {:.2f} +- {:.2f} at proportion {}\n", method_name(m),
                       best->mean_rate, best->std_rate, best->proportion);
}

void run_profile(const BenchArgs& a, const Globals& g)
{
    if (a.source.data.empty())
        throw ConfigError("bench profile needs --data <root>");
    const auto samples = load_dataset({a.source.data, resolution_or(g, {32, 32})});
    const auto splits = make_splits(samples, {g.theta, 1, g.seed.value_or(0)});
    const auto& split = splits.front();
    const LabeledSample* query = &split.test.front();
    if (!a.query.empty()) {
        query = nullptr;
        for (const auto& s : split.test)
            if (s.sample.source_id() == a.query)
                query = &s;
        if (query == nullptr)
            throw ConfigError(fmt::format("'{}' is not a test sample of the first split", a.query));
    }
    EliminationConfig cfg;
    cfg.proportion = g.proportion;
    cfg.solver = CrcConfig{g.mu};
    const auto dict = build_dictionary(split.train);
    const auto rows = error_profile(dict, query->sample, a.elimination, cfg);
    emit(g, profile_csv(rows));
    fmt::print(stderr, "query {} (class {})\n", query->sample.source_id(), query->label);
}

struct SynthArgs {
    std::string ply;
    std::optional<std::uint64_t> head;
    double yaw = 0.0;
    double pitch = 0.0;
    double focal = 1000.0;
    std::vector<double> sweep;
    std::string label = "cloud";
};

TexturedCloud load_cloud(const SynthArgs& a, const Globals& g)
{
    if (a.ply.empty() == !a.head.has_value())
        throw ConfigError("give exactly one of --ply <file> or --head <subject>");
    if (a.head)
        return synthetic_head(*a.head, g.seed.value_or(SyntheticPoseConfig{}.seed));
    return read_ply(a.ply);
}

void run_render(const SynthArgs& a, const Globals& g)
{
    if (g.out.empty())
        throw ConfigError("synth render needs --out <file.pgm>");
    const auto cloud = load_cloud(a, g);
    const auto base = Camera::framing(cloud, resolution_or(g, {128, 128}), a.focal);
    const auto cam = rotated_about(base, rotation_ypr(a.yaw, a.pitch, 0.0), cloud.centroid());
    write_pgm(g.out, render(cloud, cam));
}

void run_augment(const SynthArgs& a, const Globals& g)
{
    if (g.out.empty())
        throw ConfigError("synth augment needs --out <directory>");
    const auto cloud = load_cloud(a, g);
    const PoseSweep sweep = a.sweep.empty() ? PoseSweep::ten_view() : PoseSweep(a.sweep);
    const auto base = Camera::framing(cloud, resolution_or(g, {128, 128}), a.focal);
    fs::create_directories(g.out);
    for (double yaw : sweep.yaw_degrees()) {
        const auto img = render(cloud, rotated_about(base, rotation_y(yaw), cloud.centroid()));
        const auto path = fs::path(g.out) / fmt::format("{}_yaw{:+06.1f}.pgm", a.label, yaw);
        write_pgm(path, img);
        fmt::print("{}\n", path.string());
    }
}

void run_check(const Source& src, const Globals& g)
{
    if (src.data.empty())
        throw ConfigError("data check needs --data <root>");
    const auto working = resolution_or(g, {32, 32});
    const auto samples = load_dataset({src.data, working});
    const auto sizes = class_sizes(samples);
    std::size_t smallest = sizes.front().second;
    std::size_t largest = smallest;
    for (const auto& [id, n] : sizes) {
        smallest = std::min(smallest, n);
        largest = std::max(largest, n);
    }
    fmt::print("root: {}\nclasses: {}\nsamples: {}\nper class: {}..{}\nworking resolution: {}x{}\n",
               src.data, sizes.size(), samples.size(), smallest, largest, working.width,
               working.height);
    SplitSpec{g.theta, g.repeats, g.seed.value_or(0)}.validate();
    if (static_cast<std::size_t>(g.theta) >= smallest)
        throw ConfigError(fmt::format("theta {} leaves no test samples in the smallest class ({})",
                                      g.theta, smallest));
    fmt::print("theta {}: {} train / {} test per split\n", g.theta,
               sizes.size() * static_cast<std::size_t>(g.theta),
               samples.size() - sizes.size() * static_cast<std::size_t>(g.theta));
    if (!src.clouds.empty()) {
        const CloudTree tree(src.clouds);
        std::size_t missing = 0;
        for (const auto& s : samples)
            if (!tree.contains(s)) {
                if (missing < 10)
                    fmt::print(stderr, "missing cloud: {}\n", tree.path_for(s).string());
                ++missing;
            }
        fmt::print("clouds: {} of {} present\n", samples.size() - missing, samples.size());
        if (missing > 0)
            throw DataError(fmt::format("{} samples have no cloud under '{}'", missing, src.clouds));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Collaborative/sparse representation face classification with pose synthesis"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "Seed for splits and synthetic data");
    app.add_option("--resolution", g.resolution,
                   "WxH: working resolution for bench/data, image size for synth");
    app.add_option("--mu", g.mu, "CRC ridge weight");
    app.add_option("--lambda", g.lambda, "SRC l1 weight (multiplier of ||X^T y||_inf)");
    app.add_flag("--lambda-absolute", g.lambda_absolute, "Use --lambda as an absolute weight");
    app.add_option("--proportion", g.proportion, "Elimination proportion in [0, 1)");
    app.add_option("--theta", g.theta, "Training samples per class");
    app.add_option("--repeats", g.repeats, "Random split repeats");
    app.add_option("--out", g.out, "Output file (bench: CSV, '-' for stdout) or directory");
    app.add_option("--threads", g.threads, "Worker threads (0: hardware concurrency)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Evaluation harness")->require_subcommand(1)->fallthrough();
    auto* sweep_cmd = bench_cmd->add_subcommand("sweep", "Sweep elimination proportions");
    auto* eval_cmd = bench_cmd->add_subcommand("eval", "Evaluate one proportion (--proportion)");
    auto* profile_cmd = bench_cmd->add_subcommand("profile", "Per-class errors of one test query");
    for (auto* cmd : {sweep_cmd, eval_cmd, profile_cmd}) {
        cmd->fallthrough();
        add_source_options(*cmd, bench.source);
    }
    for (auto* cmd : {sweep_cmd, eval_cmd}) {
        cmd->add_option("--methods", bench.methods, "CRC, SRC, 3DPD-CRC")->delimiter(',');
        cmd->add_option("--raw", bench.raw, "Also write per-repeat rates to this CSV");
    }
    sweep_cmd->add_option("--proportions", bench.proportions, "Comma-separated proportions")
        ->delimiter(',');
    profile_cmd->add_option("--query", bench.query, "Source id of the query (default: first test sample)");
    profile_cmd->add_flag("--elimination", bench.elimination, "Emit one block per elimination round");

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Virtual-view rendering")->require_subcommand(1)->fallthrough();
    auto* render_cmd = synth_cmd->add_subcommand("render", "Render one view to a PGM");
    auto* augment_cmd = synth_cmd->add_subcommand("augment", "Render a yaw sweep to PGMs");
    for (auto* cmd : {render_cmd, augment_cmd}) {
        cmd->fallthrough();
        cmd->add_option("--ply", synth.ply, "ASCII PLY cloud (x, y, z, gray)");
        cmd->add_option("--head", synth.head, "Synthetic head subject id (uses --seed)");
        cmd->add_option("--focal", synth.focal, "Focal length in pixels")->check(CLI::PositiveNumber);
    }
    render_cmd->add_option("--yaw", synth.yaw, "Yaw in degrees");
    render_cmd->add_option("--pitch", synth.pitch, "Pitch in degrees");
    augment_cmd->add_option("--sweep", synth.sweep, "Comma-separated yaw angles (default +-4..+-20)")
        ->delimiter(',');
    augment_cmd->add_option("--label", synth.label, "File name prefix");

    Source check;
    auto* data_cmd = app.add_subcommand("data", "Dataset utilities")->require_subcommand(1)->fallthrough();
    auto* check_cmd = data_cmd->add_subcommand("check", "Load a dataset and report its shape");
    check_cmd->fallthrough();
    check_cmd->add_option("--data", check.data, "Image dataset root");
    check_cmd->add_option("--clouds", check.clouds, "Cloud root to verify against the dataset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (sweep_cmd->parsed())
            run_sweep(bench, g, bench.proportions);
        else if (eval_cmd->parsed())
            run_sweep(bench, g, {g.proportion});
        else if (profile_cmd->parsed())
            run_profile(bench, g);
        else if (render_cmd->parsed())
            run_render(synth, g);
        else if (augment_cmd->parsed())
            run_augment(synth, g);
        else if (check_cmd->parsed())
            run_check(check, g);
    } catch (const DataError& e) {
        fmt::print(stderr, "data error: {}\n", e.what());
        return kExitData;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
