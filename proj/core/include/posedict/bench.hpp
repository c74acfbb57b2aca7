#pragma once

#include "posedict/classify.hpp"
#include "posedict/data.hpp"
#include "posedict/synth.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posedict {

enum class Method {
    CRC,   ///< collaborative representation on the original dictionary
    SRC,   ///< l1 representation on the original dictionary
    PDCRC, ///< collaborative representation on the extended dictionary ("3DPD-CRC")
};

std::string_view method_name(Method m) noexcept;
/// Accepts "CRC", "SRC" and "3DPD-CRC" (case-insensitive); ConfigError otherwise.
Method parse_method(std::string_view name);

/// Builds the auxiliary (virtual-sample) dictionary for one training set.
using Augmenter =
    std::function<Dictionary(std::span<const LabeledSample> train, bool normalize)>;

struct EvalOptions {
    CrcConfig crc;
    SrcConfig src;
    bool normalize = true;
    /// Used by Method::PDCRC only; without one the method reduces to elimination CRC.
    Augmenter augmenter;
    /// Worker threads for test queries; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct EvalReport {
    Method method = Method::CRC;
    int theta = 0;
    double proportion = 0.0;
    double mean_rate = 0.0; ///< percent
    double std_rate = 0.0;  ///< percent, sample (n-1) standard deviation
    std::vector<double> per_repeat_rates;
};

/// Mean and sample standard deviation (0 for a single value).
std::pair<double, double> mean_and_std(std::span<const double> values);

/// Percent of `test` classified correctly against `dict`.
double recognition_rate(const Dictionary& dict, std::span<const LabeledSample> test,
                        const EliminationConfig& cfg, unsigned threads = 0);

/// Builds each repeat's dictionary from its training samples only (extended for PDCRC),
/// classifies every test sample with elimination at `proportion`, and aggregates.
EvalReport evaluate(std::span<const Split> splits, Method method, double proportion,
                    const EvalOptions& options);

/// One report per (method, proportion), method-major. Empty lists are a ConfigError.
std::vector<EvalReport> sweep_proportions(std::span<const Split> splits,
                                          std::span<const double> proportions,
                                          std::span<const Method> methods,
                                          const EvalOptions& options);

/// Best mean rate over the reports for one method.
std::optional<EvalReport> best_report(std::span<const EvalReport> reports, Method method);

/// `method,theta,proportion,mean,std`
std::string aggregate_csv(std::span<const EvalReport> reports);
/// `method,theta,proportion,repeat,rate`
std::string raw_csv(std::span<const EvalReport> reports);

struct ProfileRow {
    /// Elimination round the errors were measured in; the final labeling step is the
    /// block after the last removal.
    std::size_t round = 0;
    ClassId id;
    double error = 0.0;
    bool removed = false;
};

/// Per-class reconstruction errors for plotting. Without elimination there is a single
/// block (round 0); with it, one block per round plus the final block.
std::vector<ProfileRow> error_profile(const Dictionary& dict, const Sample& query,
                                      bool with_elimination, const EliminationConfig& cfg);

/// `round,class,error,removed`
std::string profile_csv(std::span<const ProfileRow> rows);

/// Virtual views from a CloudTree: every training sample's cloud is framed by
/// Camera::framing and rendered at each sweep angle.
struct CloudAugmentation {
    std::filesystem::path cloud_root;
    PoseSweep sweep = PoseSweep::ten_view();
    Resolution render{128, 128};
    double focal = 1000.0;
    Resolution working{32, 32};
};

Augmenter make_cloud_augmenter(CloudAugmentation spec);

} // namespace posedict
