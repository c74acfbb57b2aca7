#include "posedict/dictionary.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace posedict {

namespace {

constexpr double kUnitNormTolerance = 1e-9;

std::map<ClassId, std::vector<std::size_t>> index_labels(const std::vector<ClassId>& labels)
{
    std::map<ClassId, std::vector<std::size_t>> index;
    for (std::size_t j = 0; j < labels.size(); ++j)
        index[labels[j]].push_back(j);
    return index;
}

} // namespace

Sample::Sample(Eigen::VectorXd values, std::string source_id)
    : values_(std::move(values)), source_id_(std::move(source_id))
{
    if (values_.size() == 0)
        throw ConfigError("sample has no entries");
    if (!values_.allFinite())
        throw ConfigError(fmt::format("sample '{}' has non-finite entries", source_id_));
}

std::vector<ClassId> Dictionary::classes() const
{
    std::vector<ClassId> ids;
    ids.reserve(class_index_.size());
    for (const auto& [id, cols] : class_index_)
        ids.push_back(id);
    return ids;
}

Dictionary Dictionary::restrict_to(std::span<const ClassId> keep) const
{
    std::set<ClassId> wanted(keep.begin(), keep.end());
    std::vector<std::size_t> cols;
    for (const auto& id : wanted) {
        auto it = class_index_.find(id);
        if (it == class_index_.end())
            throw ConfigError(fmt::format("class '{}' is not in the dictionary", id));
        cols.insert(cols.end(), it->second.begin(), it->second.end());
    }
    std::sort(cols.begin(), cols.end());

    Dictionary out;
    out.columns_.resize(columns_.rows(), static_cast<Eigen::Index>(cols.size()));
    out.labels_.reserve(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        out.columns_.col(static_cast<Eigen::Index>(k)) =
            columns_.col(static_cast<Eigen::Index>(cols[k]));
        out.labels_.push_back(labels_[cols[k]]);
    }
    out.class_index_ = index_labels(out.labels_);
    out.normalized_ = normalized_;
    return out;
}

Dictionary Dictionary::from_parts(Eigen::MatrixXd columns, std::vector<ClassId> labels,
                                  bool normalized)
{
    if (columns.cols() == 0 || columns.rows() == 0)
        throw ConfigError("dictionary needs at least one row and one column");
    if (static_cast<std::size_t>(columns.cols()) != labels.size())
        detail::throw_dimension("dictionary labels", columns.cols(),
                                static_cast<long>(labels.size()));
    if (!columns.allFinite())
        throw ConfigError("dictionary has non-finite entries");
    if (normalized) {
        for (Eigen::Index j = 0; j < columns.cols(); ++j) {
            if (std::abs(columns.col(j).norm() - 1.0) > kUnitNormTolerance)
                throw ConfigError(fmt::format("column {} is flagged normalized but has norm {}",
                                              j, columns.col(j).norm()));
        }
    }
    Dictionary d;
    d.columns_ = std::move(columns);
    d.labels_ = std::move(labels);
    d.class_index_ = index_labels(d.labels_);
    d.normalized_ = normalized;
    return d;
}

Eigen::VectorXd unit_normalized(const Eigen::VectorXd& v)
{
    const double n = v.norm();
    if (!(n > 0.0))
        throw ConfigError("cannot normalize a zero-norm column");
    return v / n;
}

Dictionary build_dictionary(std::span<const LabeledSample> samples, bool normalize)
{
    if (samples.empty())
        throw ConfigError("cannot build a dictionary from no samples");
    const Eigen::Index p = samples.front().sample.size();
    Eigen::MatrixXd cols(p, static_cast<Eigen::Index>(samples.size()));
    std::vector<ClassId> labels;
    labels.reserve(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const auto& s = samples[j].sample;
        if (s.size() != p)
            detail::throw_dimension(fmt::format("sample {}", j), p, s.size());
        if (normalize) {
            if (!(s.values().norm() > 0.0))
                throw ConfigError(fmt::format("sample {} ('{}') has zero norm", j, s.source_id()));
            cols.col(static_cast<Eigen::Index>(j)) = unit_normalized(s.values());
        } else {
            cols.col(static_cast<Eigen::Index>(j)) = s.values();
        }
        labels.push_back(samples[j].label);
    }
    return Dictionary::from_parts(std::move(cols), std::move(labels), normalize);
}

Dictionary merge_dictionaries(const Dictionary& original, const Dictionary& auxiliary)
{
    if (auxiliary.empty())
        return original;
    if (original.empty())
        return auxiliary;
    if (original.dim() != auxiliary.dim())
        detail::throw_dimension("auxiliary dictionary rows", original.dim(), auxiliary.dim());
    if (original.normalized() != auxiliary.normalized())
        throw ConfigError("cannot merge dictionaries with different normalization flags");

    Eigen::MatrixXd cols(original.dim(), original.size() + auxiliary.size());
    cols << original.columns(), auxiliary.columns();
    std::vector<ClassId> labels = original.labels();
    labels.insert(labels.end(), auxiliary.labels().begin(), auxiliary.labels().end());
    return Dictionary::from_parts(std::move(cols), std::move(labels), original.normalized());
}

} // namespace posedict
