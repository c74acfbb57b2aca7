// Acceptance gate: one PASS/FAIL/SKIP line per criterion; exit status 1 on any FAIL.
//
//   posedict_acceptance [--orl <root>]        (or POSEDICT_ORL_ROOT=<root>)

#include "oracles.hpp"
#include "test_util.hpp"

#include "posedict/bench.hpp"
#include "posedict/classify.hpp"
#include "posedict/data.hpp"
#include "posedict/errors.hpp"
#include "posedict/solvers.hpp"
#include "posedict/synth.hpp"
#include "posedict/synthetic_benchmark.hpp"

#include <fmt/format.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>

using namespace posedict;

namespace {

// Tolerances and limits.
constexpr double kCrcResidualTol = 1e-8;
constexpr double kCrcFormTol = 1e-8;
constexpr double kSrcObjectiveTol = 1e-6;
constexpr double kProjectionTol = 1e-9;
constexpr double kMinPoseGain = 5.0;   // percentage points
constexpr double kOrlTolerance = 4.0;  // percentage points
constexpr double kOrlCrcReference = 86.2;
constexpr double kOrlSrcReference = 85.7;
constexpr double kPinnedRateTol = 1e-9;

// Plain ISTA needs a tight stopping rule to land within kSrcObjectiveTol of the optimum.
const SrcConfig kSrcOracleConfig{0.1, false, 200000, 1e-12};

// Synthetic pose benchmark rates at the default configuration (first audited run).
constexpr double kPinnedPoseCrc = 58.333333333333336;
constexpr double kPinnedPosePdcrcBest = 100.0;

const std::vector<double> kSweep{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status;
    std::string detail;
};

Outcome pass_if(bool ok, std::string detail)
{
    return {ok ? Status::Pass : Status::Fail, std::move(detail)};
}

Outcome crc_correctness()
{
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> dim(4, 64);
    std::uniform_int_distribution<int> cols(2, 128);
    const std::array<double, 3> mus{1e-4, 1e-2, 1.0};
    double worst_residual = 0.0;
    double worst_form = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = dim(gen);
        const int n = cols(gen);
        const auto d = testutil::random_columns(gen, p, n, std::min(n, 5));
        const Eigen::VectorXd y = testutil::random_vector(gen, p);
        const double mu = mus[static_cast<std::size_t>(trial) % mus.size()];
        const Eigen::MatrixXd& x = d.columns();
        const Eigen::VectorXd xty = x.transpose() * y;
        const auto a = solve_crc(d, Sample(y), CrcConfig{mu}).values;
        const Eigen::VectorXd residual = x.transpose() * (x * a) + mu * a - xty;
        worst_residual = std::max(worst_residual, residual.lpNorm<Eigen::Infinity>() /
                                                      (1.0 + xty.lpNorm<Eigen::Infinity>()));
        const auto g = solve_crc(d, Sample(y), CrcConfig{mu}, CrcForm::Gram).values;
        const auto w = solve_crc(d, Sample(y), CrcConfig{mu}, CrcForm::Dual).values;
        worst_form = std::max(worst_form, (g - w).norm() / std::max(1.0, g.norm()));
    }
    return pass_if(worst_residual <= kCrcResidualTol && worst_form <= kCrcFormTol,
                   fmt::format("200 instances, max scaled residual {:.2e}, max form gap {:.2e}",
                               worst_residual, worst_form));
}

Outcome src_oracle()
{
    std::mt19937_64 gen(2);
    double worst_gap = 0.0;
    int increases = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = testutil::random_columns(gen, 8, 12, 4);
        Eigen::VectorXd y = 1.2 * d.columns().col(trial % 12) - 0.8 * d.columns().col((trial + 5) % 12);
        y += 0.05 * testutil::random_vector(gen, 8);
        const auto r = solve_src(d, Sample(y), kSrcOracleConfig);
        const auto cols = testutil::to_cols(d);
        const auto yv = testutil::to_vec(y);
        const auto ref = oracle::lasso_coordinate_descent(cols, yv, r.lambda);
        const double f_ref = oracle::lasso_objective(cols, yv, ref, r.lambda);
        const double f = oracle::lasso_objective(cols, yv, testutil::to_vec(r.coefficients.values),
                                                 r.lambda);
        worst_gap = std::max(worst_gap, std::abs(f - f_ref));
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
            if (r.objective_trace[k] > r.objective_trace[k - 1])
                ++increases;
    }
    return pass_if(worst_gap <= kSrcObjectiveTol && increases == 0,
                   fmt::format("50 instances, max objective gap {:.2e}, {} increases", worst_gap,
                               increases));
}

Outcome label_oracle()
{
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> classes(1, 5);
    std::uniform_int_distribution<int> per_class(1, 3);
    std::uniform_int_distribution<int> dim(2, 16);
    int agree = 0;
    int identical_reports = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = testutil::random_dictionary(gen, dim(gen), classes(gen), per_class(gen));
        const Eigen::VectorXd y = testutil::random_vector(gen, static_cast<int>(d.dim()));
        const auto report = classify_query(d, Sample(y), CrcConfig{});
        const auto label = oracle::crc_label(testutil::to_cols(d), d.labels(), testutil::to_vec(y),
                                             CrcConfig{}.mu);
        agree += report.predicted == label ? 1 : 0;
        EliminationConfig none;
        none.proportion = 0.0;
        identical_reports +=
            identical(classify_with_elimination(d, Sample(y), none).final_report, report) ? 1 : 0;
    }
    return pass_if(agree == 100 && identical_reports == 100,
                   fmt::format("labels agree {}/100, proportion-0 reports identical {}/100", agree,
                               identical_reports));
}

Outcome elimination_fixture()
{
    // Same instance as the unit fixture (seed 7, attempt 35 of the search tool).
    const double cols[6][4] = {
        {0.092990717423755101, 0.33521089111239294, 0.6257793642785997, 0.69813077012528402},
        {-0.51373038089322065, -0.85616044124212209, 0.038243850771101533, -0.040097412355398251},
        {0.23016218586239859, 0.84509877567389147, 0.42691434574490056, 0.22489457296861551},
        {0.26640845170872657, -0.27922413096283205, 0.8778580634880756, -0.28359415000168137},
        {-0.10276927594471548, 0.33203581404433757, -0.42294489386920808, -0.83684425723289591},
        {0.40006287828936171, -0.15481180025099506, -0.90271488497499219, 0.032997520550243194},
    };
    Eigen::MatrixXd x(4, 6);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 4; ++i)
            x(i, j) = cols[j][i];
    const auto d = Dictionary::from_parts(x, {"a", "a", "b", "b", "c", "c"}, true);
    const Sample y(Eigen::Vector4d(-0.3857785374038184, -0.43330195033822438,
                                   0.74098130898031511, 0.64000347429391424));
    const auto plain = classify_query(d, y, CrcConfig{});
    EliminationConfig cfg;
    cfg.proportion = 0.34;
    const auto first = classify_with_elimination(d, y, cfg);
    const auto second = classify_with_elimination(d, y, cfg);
    const bool ok = plain.predicted != "a" && first.final_report.predicted == "a" &&
                    identical(first.final_report, second.final_report);
    return pass_if(ok, fmt::format("truth a, plain CRC {}, elimination {} (removed {})",
                                   plain.predicted, first.final_report.predicted,
                                   first.rounds.empty() ? "-" : first.rounds[0].removed));
}

Outcome renderer_exactness()
{
    double worst = 0.0;
    Camera axis;
    axis.focal = 100;
    axis.principal = {64, 64};
    worst = std::max(worst, (project_point({0, 0, 1}, axis) - Eigen::Vector2d(64, 64)).norm());
    Camera plain;
    plain.focal = 100;
    plain.principal = {0, 0};
    worst = std::max(worst, (project_point({1, 0, 5}, plain) - Eigen::Vector2d(20, 0)).norm());
    Camera yawed = plain;
    yawed.rotation = rotation_y(90);
    yawed.translation = {0, 0, 2};
    worst = std::max(worst, (project_point({0, 0, 1}, yawed) - Eigen::Vector2d(50, 0)).norm());

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int roundtrip_failures = 0;
    int depth_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Eigen::Matrix3Xd pts(3, 64);
        Eigen::VectorXd gray(64);
        for (int i = 0; i < 64; ++i) {
            pts.col(i) = Eigen::Vector3d(u(gen), u(gen), u(gen));
            gray[i] = unit(gen);
        }
        const TexturedCloud cloud(pts, gray);
        const auto base = Camera::framing(cloud, {16, 16}, 40.0);
        const double psi = 60.0 * u(gen);
        const auto c = cloud.centroid();
        const auto back = rotated_about(rotated_about(base, rotation_y(psi), c), rotation_y(-psi), c);
        roundtrip_failures += render(cloud, back).pixels() == render(cloud, base).pixels() ? 0 : 1;

        const Eigen::Vector3d dir(0.4 * u(gen), 0.4 * u(gen), 1.0);
        const double z1 = 1.0 + 9.0 * unit(gen);
        const double z2 = z1 + 0.01 + 5.0 * unit(gen);
        const bool near_first = unit(gen) < 0.5;
        Eigen::Matrix3Xd pair(3, 2);
        pair.col(0) = dir * (near_first ? z1 : z2);
        pair.col(1) = dir * (near_first ? z2 : z1);
        const TexturedCloud two(pair, Eigen::Vector2d(0.25, 0.75));
        Camera cam = plain;
        cam.focal = 5;
        cam.principal = {4, 4};
        cam.image = {9, 9};
        const auto s = project_point(pair.col(0), cam);
        const int col = static_cast<int>(std::floor(s.x() + 0.5));
        const int row = static_cast<int>(std::floor(s.y() + 0.5));
        depth_failures += render(two, cam).at(row, col) == (near_first ? 0.25 : 0.75) ? 0 : 1;
    }
    return pass_if(worst <= kProjectionTol && roundtrip_failures == 0 && depth_failures == 0,
                   fmt::format("examples max error {:.1e}, round-trip failures {}/1000, depth-buffer "
                               "failures {}/1000",
                               worst, roundtrip_failures, depth_failures));
}

Outcome synthetic_pose()
{
    const SyntheticPoseConfig cfg;
    const auto data = make_synthetic_pose_benchmark(cfg);
    EvalOptions opts;
    opts.augmenter = data.augmenter;
    const std::vector<Method> crc{Method::CRC};
    const std::vector<Method> pd{Method::PDCRC};
    const std::vector<double> zero{0.0};
    const auto crc_table = sweep_proportions(data.splits, zero, crc, opts);
    auto pd_props = kSweep;
    pd_props.insert(pd_props.begin(), 0.0);
    const auto pd_table = sweep_proportions(data.splits, pd_props, pd, opts);
    const double crc_rate = crc_table[0].mean_rate;
    const double pd_zero = pd_table[0].mean_rate;
    const std::vector<EvalReport> swept(pd_table.begin() + 1, pd_table.end());
    const auto best = best_report(swept, Method::PDCRC);
    const double gain = best->mean_rate - crc_rate;
    const bool pinned = std::abs(crc_rate - kPinnedPoseCrc) <= kPinnedRateTol &&
                        std::abs(best->mean_rate - kPinnedPosePdcrcBest) <= kPinnedRateTol;
    const bool ok = gain >= kMinPoseGain && pd_zero >= crc_rate && pinned;
    return pass_if(ok, fmt::format("CRC {:.2f}%, 3DPD-CRC best {:.2f}% at p={:.1f} (gain {:.2f} pp), "
                                   "3DPD-CRC p=0 {:.2f}%, pinned {}",
                                   crc_rate, best->mean_rate, best->proportion, gain, pd_zero,
                                   pinned ? "yes" : "no"));
}

Outcome orl_reproduction(const std::optional<std::string>& root)
{
    if (!root)
        return {Status::Skip, "no ORL root (set POSEDICT_ORL_ROOT or pass --orl)"};
    const auto samples = load_dataset({*root, {32, 32}});
    const auto splits = make_splits(samples, {2, 10, 0});
    const std::vector<Method> methods{Method::CRC, Method::SRC};
    const auto table = sweep_proportions(splits, kSweep, methods, {});
    const auto crc = best_report(table, Method::CRC);
    const auto src = best_report(table, Method::SRC);
    const bool ok = std::abs(crc->mean_rate - kOrlCrcReference) <= kOrlTolerance &&
                    std::abs(src->mean_rate - kOrlSrcReference) <= kOrlTolerance;
    return pass_if(ok, fmt::format("{} samples; CRC best {:.2f}±{:.2f} at p={:.1f} (ref {}), SRC best "
                                   "{:.2f}±{:.2f} at p={:.1f} (ref {})",
                                   samples.size(), crc->mean_rate, crc->std_rate, crc->proportion,
                                   kOrlCrcReference, src->mean_rate, src->std_rate, src->proportion,
                                   kOrlSrcReference));
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    std::optional<std::string> orl;
    if (const char* env = std::getenv("POSEDICT_ORL_ROOT"); env != nullptr && *env != '\0')
        orl = env;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--orl" && i + 1 < argc) {
            orl = argv[++i];
        } else {
            fmt::print(stderr, "usage: {} [--orl <root>]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "CRC normal equations and solution forms", 10.0, crc_correctness},
        {2, "SRC against coordinate-descent oracle", 30.0, src_oracle},
        {3, "label oracle equivalence", 60.0, label_oracle},
        {4, "elimination fixture", 1.0, elimination_fixture},
        {5, "renderer exactness", 5.0, renderer_exactness},
        {6, "synthetic pose benchmark", 300.0, synthetic_pose},
        {7, "ORL reproduction", 3600.0, [&] { return orl_reproduction(orl); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {Status::Fail, fmt::format("exception: {}", e.what())};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.status != Status::Skip && seconds > c.limit_seconds) {
            out.status = Status::Fail;
            out.detail += fmt::format("; over the {:.0f} s limit", c.limit_seconds);
        }
        const char* tag = out.status == Status::Pass ? "PASS" : out.status == Status::Fail ? "FAIL" : "SKIP";
        fmt::print("{} [{}] {}: {} ({:.2f} s)\n", tag, c.id, c.name, out.detail, seconds);
        std::fflush(stdout);
        failures += out.status == Status::Fail ? 1 : 0;
    }
    return failures == 0 ? 0 : 1;
}
