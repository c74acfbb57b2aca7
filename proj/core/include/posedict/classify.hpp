#pragma once

#include "posedict/dictionary.hpp"
#include "posedict/solvers.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace posedict {

struct ClassError {
    ClassId id;
    /// Sum of this class's columns weighted by their coefficients.
    Eigen::VectorXd reconstruction;
    /// ||y - reconstruction||_2
    double error = 0.0;
};

/// Per-class reconstruction errors for one query, classes in lexicographic order.
struct ClassReport {
    std::vector<ClassError> per_class;
    ClassId predicted;

    const ClassError* find(const ClassId& id) const;
};

/// Bitwise equality of every reconstruction, error and the predicted label.
bool identical(const ClassReport& a, const ClassReport& b);

/// c_k for every class k, lexicographic class order.
std::vector<std::pair<ClassId, Eigen::VectorXd>>
class_reconstructions(const Dictionary& dict, const Coefficients& alpha);

/// Label of the class with the smallest reconstruction error; ties go to the first
/// class id in lexicographic order.
ClassReport classify_query(const Dictionary& dict, const Sample& query,
                           const SolverConfig& solver);
ClassReport classify_query(const RepresentationSolver& solver, const Sample& query,
                           const SolverConfig& cfg);

struct EliminationConfig {
    /// Fraction of the initial classes to remove, in [0, 1).
    double proportion = 0.0;
    /// Explicit round count; overrides proportion when set.
    std::optional<std::size_t> rounds;
    SolverConfig solver = CrcConfig{};

    /// floor(proportion * class_count), or the explicit count.
    std::size_t rounds_for(std::size_t class_count) const;
    void validate() const;
};

struct EliminationRound {
    ClassId removed;
    double error = 0.0;
    /// Errors on the dictionary as it stood before this removal.
    ClassReport report;
};

struct EliminationTrace {
    std::vector<EliminationRound> rounds;
    std::vector<ClassId> surviving;
    ClassReport final_report;
};

/**
 * Classifies a query while pruning the dictionary one class at a time.
 *
 * Each round re-solves the coefficients over the surviving columns and drops every column
 * of the class with the largest reconstruction error (ties: lexicographically last id).
 * The round count is fixed from the initial class count. With zero rounds the final report
 * is bit-identical to classify_query.
 */
EliminationTrace classify_with_elimination(const Dictionary& dict, const Sample& query,
                                           const EliminationConfig& cfg);
EliminationTrace classify_with_elimination(const RepresentationSolver& solver,
                                           const Sample& query, const EliminationConfig& cfg);

} // namespace posedict
