#pragma once

#include "posedict/dictionary.hpp"
#include "posedict/image.hpp"
#include "posedict/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace posedict {

/// Image-directory dataset: root/<class-id>/<image>.{pgm,png}.
struct DatasetSpec {
    std::filesystem::path root;
    Resolution working{32, 32};
};

/// Decodes every image, resizes it bilinearly to the working resolution and vectorizes it
/// row-major. Classes and files are visited in sorted path order; source ids are
/// "<class-id>/<file stem>". Throws DataError on unreadable files or an empty class folder.
std::vector<LabeledSample> load_dataset(const DatasetSpec& spec);

struct SplitSpec {
    /// Training samples drawn per class.
    int theta = 2;
    int repeats = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Split {
    int theta = 0;
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
};

/**
 * Per repeat and class, draws theta samples uniformly without replacement from a stream
 * keyed on (seed, repeat, class id); the rest of the class is test data. Both sides keep
 * input order. Throws ConfigError if theta is not smaller than every class size.
 */
std::vector<Split> make_splits(std::span<const LabeledSample> samples, const SplitSpec& spec);

/// Sample counts per class, lexicographic order.
std::vector<std::pair<ClassId, std::size_t>> class_sizes(std::span<const LabeledSample> samples);

/// Optional per-class 3D clouds pairing training images: root/<class-id>/<stem>.ply.
class CloudTree {
public:
    explicit CloudTree(std::filesystem::path root);

    std::filesystem::path path_for(const LabeledSample& sample) const;
    bool contains(const LabeledSample& sample) const;
    /// Throws DataError when the matching cloud does not exist or fails to parse.
    TexturedCloud load(const LabeledSample& sample) const;

    const std::filesystem::path& root() const noexcept { return root_; }

private:
    std::filesystem::path root_;
};

} // namespace posedict
