#pragma once

#include "posedict/errors.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace posedict {

/// Opaque class identifier. Where an order is needed, ids compare lexicographically.
using ClassId = std::string;

/// A vectorized observation: pixel intensities in [0,1] after normalization.
class Sample {
public:
    Sample() = default;
    /// Throws ConfigError if values is empty or contains a non-finite entry.
    explicit Sample(Eigen::VectorXd values, std::string source_id = {});

    const Eigen::VectorXd& values() const noexcept { return values_; }
    Eigen::Index size() const noexcept { return values_.size(); }
    const std::string& source_id() const noexcept { return source_id_; }

private:
    Eigen::VectorXd values_;
    std::string source_id_;
};

struct LabeledSample {
    Sample sample;
    ClassId label;
};

/// Representation coefficients aligned with the columns of a Dictionary.
struct Coefficients {
    Eigen::VectorXd values;
};

/**
 * Column matrix of training samples with their class labels.
 *
 * Columns keep insertion order. The class index maps each id to the positions of its
 * columns, ascending. A default-constructed Dictionary is empty (no rows, no columns);
 * every other instance has at least one column and one row.
 */
class Dictionary {
public:
    Dictionary() = default;

    const Eigen::MatrixXd& columns() const noexcept { return columns_; }
    const std::vector<ClassId>& labels() const noexcept { return labels_; }
    const std::map<ClassId, std::vector<std::size_t>>& class_index() const noexcept
    {
        return class_index_;
    }
    bool normalized() const noexcept { return normalized_; }

    Eigen::Index dim() const noexcept { return columns_.rows(); }
    Eigen::Index size() const noexcept { return columns_.cols(); }
    bool empty() const noexcept { return columns_.cols() == 0; }
    std::size_t class_count() const noexcept { return class_index_.size(); }

    /// Class ids in lexicographic order.
    std::vector<ClassId> classes() const;

    /// Columns belonging to the given classes, in original column order.
    /// Unknown ids are a ConfigError.
    Dictionary restrict_to(std::span<const ClassId> keep) const;

    /// Checked construction from raw parts; validates every invariant.
    static Dictionary from_parts(Eigen::MatrixXd columns, std::vector<ClassId> labels,
                                 bool normalized);

private:
    Eigen::MatrixXd columns_;
    std::vector<ClassId> labels_;
    std::map<ClassId, std::vector<std::size_t>> class_index_;
    bool normalized_ = false;
};

/// Stacks samples as columns in input order, optionally scaling each to unit l2 norm.
/// Throws ConfigError on empty input or a zero column under normalize, DimensionError on
/// mismatched lengths.
Dictionary build_dictionary(std::span<const LabeledSample> samples, bool normalize = true);

/// Columns of original followed by columns of auxiliary. An empty auxiliary returns
/// original unchanged (and vice versa).
Dictionary merge_dictionaries(const Dictionary& original, const Dictionary& auxiliary);

/// Scales a copy of v to unit l2 norm; throws ConfigError on a zero vector.
Eigen::VectorXd unit_normalized(const Eigen::VectorXd& v);

} // namespace posedict
