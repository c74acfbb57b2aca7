#include "posedict/bench.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace posedict {

namespace {

// Runs fn(i) for i in [0, count); results must be written by index.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::CRC:
        return "CRC";
    case Method::SRC:
        return "SRC";
    case Method::PDCRC:
        return "3DPD-CRC";
    }
    return "?";
}

Method parse_method(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "CRC")
        return Method::CRC;
    if (upper == "SRC")
        return Method::SRC;
    if (upper == "3DPD-CRC" || upper == "PDCRC")
        return Method::PDCRC;
    throw ConfigError(fmt::format("unknown method '{}'", name));
}

std::pair<double, double> mean_and_std(std::span<const double> values)
{
    if (values.empty())
        return {0.0, 0.0};
    double sum = 0.0;
    for (double v : values)
        sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

double recognition_rate(const Dictionary& dict, std::span<const LabeledSample> test,
                        const EliminationConfig& cfg, unsigned threads)
{
    if (test.empty())
        throw ConfigError("no test samples to evaluate");
    cfg.validate();
    RepresentationSolver solver(dict);
    std::vector<char> correct(test.size(), 0);
    parallel_for(test.size(), threads, [&](std::size_t i) {
        const auto trace = classify_with_elimination(solver, test[i].sample, cfg);
        correct[i] = trace.final_report.predicted == test[i].label;
    });
    const auto hits = std::count(correct.begin(), correct.end(), 1);
    return 100.0 * static_cast<double>(hits) / static_cast<double>(test.size());
}

namespace {

struct PreparedSplit {
    const Split* split;
    Dictionary original;
    std::optional<Dictionary> extended;
};

std::vector<PreparedSplit> prepare(std::span<const Split> splits, bool extend,
                                   const EvalOptions& options)
{
    if (splits.empty())
        throw ConfigError("no splits to evaluate");
    std::vector<PreparedSplit> out;
    out.reserve(splits.size());
    for (const auto& split : splits) {
        PreparedSplit p{&split, build_dictionary(split.train, options.normalize), std::nullopt};
        if (extend && options.augmenter)
            p.extended = merge_dictionaries(p.original,
                                            options.augmenter(split.train, options.normalize));
        out.push_back(std::move(p));
    }
    return out;
}

EvalReport evaluate_prepared(std::span<const PreparedSplit> prepared, Method method,
                             double proportion, const EvalOptions& options)
{
    EliminationConfig cfg;
    cfg.proportion = proportion;
    if (method == Method::SRC)
        cfg.solver = options.src;
    else
        cfg.solver = options.crc;
    cfg.validate();

    EvalReport report;
    report.method = method;
    report.theta = prepared.front().split->theta;
    report.proportion = proportion;
    for (const auto& p : prepared) {
        const Dictionary& dict =
            method == Method::PDCRC && p.extended ? *p.extended : p.original;
        report.per_repeat_rates.push_back(
            recognition_rate(dict, p.split->test, cfg, options.threads));
    }
    std::tie(report.mean_rate, report.std_rate) = mean_and_std(report.per_repeat_rates);
    return report;
}

} // namespace

EvalReport evaluate(std::span<const Split> splits, Method method, double proportion,
                    const EvalOptions& options)
{
    const auto prepared = prepare(splits, method == Method::PDCRC, options);
    return evaluate_prepared(prepared, method, proportion, options);
}

std::vector<EvalReport> sweep_proportions(std::span<const Split> splits,
                                          std::span<const double> proportions,
                                          std::span<const Method> methods,
                                          const EvalOptions& options)
{
    if (proportions.empty())
        throw ConfigError("proportion list is empty");
    if (methods.empty())
        throw ConfigError("method list is empty");
    const bool extend = std::find(methods.begin(), methods.end(), Method::PDCRC) != methods.end();
    // Shared across every cell so method columns are paired on identical dictionaries.
    const auto prepared = prepare(splits, extend, options);

    std::vector<EvalReport> out;
    out.reserve(methods.size() * proportions.size());
    for (Method m : methods)
        for (double p : proportions)
            out.push_back(evaluate_prepared(prepared, m, p, options));
    return out;
}

std::optional<EvalReport> best_report(std::span<const EvalReport> reports, Method method)
{
    std::optional<EvalReport> best;
    for (const auto& r : reports)
        if (r.method == method && (!best || r.mean_rate > best->mean_rate))
            best = r;
    return best;
}

std::string aggregate_csv(std::span<const EvalReport> reports)
{
    std::string out = "method,theta,proportion,mean,std\n";
    for (const auto& r : reports)
        out += fmt::format("{},{},{},{:.4f},{:.4f}\n", method_name(r.method), r.theta, r.proportion,
                           r.mean_rate, r.std_rate);
    return out;
}

std::string raw_csv(std::span<const EvalReport> reports)
{
    std::string out = "method,theta,proportion,repeat,rate\n";
    for (const auto& r : reports)
        for (std::size_t i = 0; i < r.per_repeat_rates.size(); ++i)
            out += fmt::format("{},{},{},{},{:.4f}\n", method_name(r.method), r.theta, r.proportion,
                               i, r.per_repeat_rates[i]);
    return out;
}

std::vector<ProfileRow> error_profile(const Dictionary& dict, const Sample& query,
                                      bool with_elimination, const EliminationConfig& cfg)
{
    EliminationConfig effective = cfg;
    if (!with_elimination) {
        effective.rounds = 0;
        effective.proportion = 0.0;
    }
    const auto trace = classify_with_elimination(dict, query, effective);
    std::vector<ProfileRow> rows;
    for (std::size_t r = 0; r < trace.rounds.size(); ++r)
        for (const auto& e : trace.rounds[r].report.per_class)
            rows.push_back({r, e.id, e.error, e.id == trace.rounds[r].removed});
    for (const auto& e : trace.final_report.per_class)
        rows.push_back({trace.rounds.size(), e.id, e.error, false});
    return rows;
}

std::string profile_csv(std::span<const ProfileRow> rows)
{
    std::string out = "round,class,error,removed\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{:.17g},{}\n", r.round, r.id, r.error, r.removed ? 1 : 0);
    return out;
}

Augmenter make_cloud_augmenter(CloudAugmentation spec)
{
    return [spec = std::move(spec)](std::span<const LabeledSample> train, bool normalize) {
        CloudTree tree(spec.cloud_root);
        Dictionary aux;
        for (const auto& sample : train) {
            std::vector<std::pair<TexturedCloud, ClassId>> one;
            one.emplace_back(tree.load(sample), sample.label);
            const Camera cam = Camera::framing(one.front().first, spec.render, spec.focal);
            AuxiliaryOptions opts;
            opts.resolution = spec.working;
            opts.normalize = normalize;
            aux = merge_dictionaries(aux, synthesize_auxiliary(one, cam, spec.sweep, opts));
        }
        return aux;
    };
}

} // namespace posedict
