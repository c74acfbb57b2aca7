#include "posedict/data.hpp"

#include "posedict/ply.hpp"
#include "posedict/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <numeric>

namespace fs = std::filesystem;

namespace posedict {

namespace {

bool is_image(const fs::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext == ".pgm" || ext == ".png";
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories)
{
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.empty() || name.front() == '.')
            continue;
        if (directories ? entry.is_directory() : entry.is_regular_file())
            out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// source ids are "<class>/<stem>"
std::string stem_of(const LabeledSample& s)
{
    const auto& id = s.sample.source_id();
    const auto slash = id.rfind('/');
    return slash == std::string::npos ? id : id.substr(slash + 1);
}

} // namespace

std::vector<LabeledSample> load_dataset(const DatasetSpec& spec)
{
    if (spec.working.width <= 0 || spec.working.height <= 0)
        throw ConfigError("working resolution must be positive");
    std::error_code ec;
    if (!fs::is_directory(spec.root, ec))
        throw DataError(fmt::format("dataset root '{}' is not a directory", spec.root.string()));

    std::vector<LabeledSample> samples;
    const auto classes = sorted_entries(spec.root, true);
    if (classes.empty())
        throw DataError(fmt::format("dataset root '{}' has no class folders", spec.root.string()));
    for (const auto& dir : classes) {
        const ClassId label = dir.filename().string();
        std::size_t count = 0;
        for (const auto& file : sorted_entries(dir, false)) {
            if (!is_image(file))
                continue;
            Image img = resize_bilinear(read_image(file), spec.working);
            samples.push_back({vectorize(img, label + "/" + file.stem().string()), label});
            ++count;
        }
        if (count == 0)
            throw DataError(fmt::format("class folder '{}' contains no images", dir.string()));
    }
    return samples;
}

void SplitSpec::validate() const
{
    if (theta < 1)
        throw ConfigError(fmt::format("theta must be at least 1, got {}", theta));
    if (repeats < 1)
        throw ConfigError(fmt::format("repeats must be at least 1, got {}", repeats));
}

std::vector<std::pair<ClassId, std::size_t>> class_sizes(std::span<const LabeledSample> samples)
{
    std::map<ClassId, std::size_t> counts;
    for (const auto& s : samples)
        ++counts[s.label];
    return {counts.begin(), counts.end()};
}

std::vector<Split> make_splits(std::span<const LabeledSample> samples, const SplitSpec& spec)
{
    spec.validate();
    if (samples.empty())
        throw ConfigError("cannot split an empty sample list");

    std::map<ClassId, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < samples.size(); ++i)
        members[samples[i].label].push_back(i);
    // Draw over source-id order so the split does not depend on input order.
    for (auto& [label, idx] : members)
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return samples[a].sample.source_id() < samples[b].sample.source_id();
        });
    for (const auto& [label, idx] : members)
        if (static_cast<std::size_t>(spec.theta) >= idx.size())
            throw ConfigError(fmt::format("theta {} leaves no test samples in class '{}' ({} samples)",
                                          spec.theta, label, idx.size()));

    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(spec.repeats));
    for (int rep = 0; rep < spec.repeats; ++rep) {
        std::vector<bool> is_train(samples.size(), false);
        for (const auto& [label, idx] : members) {
            KeyedStream rng(mix_key(mix_key(spec.seed, static_cast<std::uint64_t>(rep)),
                                    hash_string(label)));
            std::vector<std::size_t> pool = idx;
            // Partial Fisher-Yates: the first theta slots end up a uniform sample.
            for (std::size_t k = 0; k < static_cast<std::size_t>(spec.theta); ++k) {
                const std::size_t pick = k + rng.below(pool.size() - k);
                std::swap(pool[k], pool[pick]);
                is_train[pool[k]] = true;
            }
        }
        Split split;
        split.theta = spec.theta;
        for (std::size_t i = 0; i < samples.size(); ++i)
            (is_train[i] ? split.train : split.test).push_back(samples[i]);
        splits.push_back(std::move(split));
    }
    return splits;
}

CloudTree::CloudTree(fs::path root) : root_(std::move(root)) {}

fs::path CloudTree::path_for(const LabeledSample& sample) const
{
    return root_ / sample.label / (stem_of(sample) + ".ply");
}

bool CloudTree::contains(const LabeledSample& sample) const
{
    std::error_code ec;
    return fs::is_regular_file(path_for(sample), ec);
}

TexturedCloud CloudTree::load(const LabeledSample& sample) const
{
    if (!contains(sample))
        throw DataError(fmt::format("missing cloud '{}' for training sample '{}'",
                                    path_for(sample).string(), sample.sample.source_id()));
    return read_ply(path_for(sample));
}

} // namespace posedict
