#pragma once

#include "posedict/dictionary.hpp"

#include <Eigen/Core>

#include <memory>
#include <mutex>
#include <span>
#include <variant>
#include <vector>

namespace posedict {

/// Ridge parameter of the collaborative (l2) representation.
struct CrcConfig {
    double mu = 0.01;

    void validate() const;
};

/// l1-regularized least squares: minimize 0.5*||y - X a||^2 + lambda*||a||_1.
struct SrcConfig {
    /// Absolute l1 weight, or a multiplier of ||X^T y||_inf when lambda_relative is set.
    double lambda = 0.01;
    bool lambda_relative = true;
    int max_iters = 2000;
    /// Stop once the relative objective change between iterations drops below tol.
    double tol = 1e-8;

    void validate() const;
};

using SolverConfig = std::variant<CrcConfig, SrcConfig>;

struct SrcResult {
    Coefficients coefficients;
    /// False when max_iters was reached before the tolerance test passed.
    bool converged = false;
    int iterations = 0;
    /// The l1 weight actually used (resolved from a relative setting).
    double lambda = 0.0;
    /// Step size reciprocal, the estimated largest eigenvalue of X^T X.
    double lipschitz = 0.0;
    /// Objective at the starting point followed by the value after every iteration.
    std::vector<double> objective_trace;
};

/// Which linear system solve_crc factorizes.
enum class CrcForm {
    Automatic, ///< N x N Gram system when N <= P, else the P x P dual system
    Gram,      ///< (X^T X + mu I) a = X^T y
    Dual,      ///< a = X^T (X X^T + mu I)^{-1} y
};

/**
 * Per-dictionary state for repeated solves over column subsets.
 *
 * The Gram matrix X^T X is computed on first use and reused for any subset of columns,
 * so shrinking-dictionary loops pay only for the factorization of the active block.
 * Instances are safe to share between threads once constructed; the referenced
 * Dictionary must outlive the solver.
 */
class RepresentationSolver {
public:
    explicit RepresentationSolver(const Dictionary& dict);

    RepresentationSolver(const RepresentationSolver&) = delete;
    RepresentationSolver& operator=(const RepresentationSolver&) = delete;

    const Dictionary& dictionary() const noexcept { return dict_; }

    /// X^T y over all columns.
    Eigen::VectorXd correlate(const Eigen::VectorXd& y) const;

    /// CRC coefficients restricted to `active` (ascending column positions); the result is
    /// aligned with `active`. `xty` must be correlate(y).
    Eigen::VectorXd crc(std::span<const Eigen::Index> active, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& xty, const CrcConfig& cfg,
                        CrcForm form = CrcForm::Automatic) const;

    SrcResult src(std::span<const Eigen::Index> active, const Eigen::VectorXd& y,
                  const Eigen::VectorXd& xty, const SrcConfig& cfg) const;

    const Eigen::MatrixXd& gram() const;

private:
    const Dictionary& dict_;
    mutable std::once_flag gram_once_;
    mutable Eigen::MatrixXd gram_;
};

Coefficients solve_crc(const Dictionary& dict, const Sample& query, const CrcConfig& cfg,
                       CrcForm form = CrcForm::Automatic);

SrcResult solve_src(const Dictionary& dict, const Sample& query, const SrcConfig& cfg);

/// 0.5*||y - X a||^2 + lambda*||a||_1, evaluated directly from X.
double l1_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& alpha, double lambda);

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power iteration.
double largest_eigenvalue(const Eigen::MatrixXd& sym, int max_steps = 100, double tol = 1e-10);

/// Componentwise sign(v) * max(|v| - t, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t);

} // namespace posedict
