#include "posedict/solvers.hpp"

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace posedict {

namespace {

void check_query(const Dictionary& dict, const Eigen::VectorXd& y)
{
    if (dict.empty())
        throw ConfigError("cannot solve against an empty dictionary");
    if (y.size() != dict.dim())
        detail::throw_dimension("query", dict.dim(), y.size());
    if (!y.allFinite())
        throw ConfigError("query has non-finite entries");
}

// Factorizes an SPD system; mu > 0 keeps it definite, LDLT covers roundoff at tiny mu.
Eigen::VectorXd spd_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs)
{
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success)
        return llt.solve(rhs);
    return a.ldlt().solve(rhs);
}

std::vector<Eigen::Index> all_columns(const Dictionary& dict)
{
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(dict.size()));
    std::iota(cols.begin(), cols.end(), Eigen::Index{0});
    return cols;
}

} // namespace

void CrcConfig::validate() const
{
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ConfigError(fmt::format("mu must be a positive finite number, got {}", mu));
}

void SrcConfig::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ConfigError(fmt::format("lambda must be a positive finite number, got {}", lambda));
    if (max_iters < 1)
        throw ConfigError(fmt::format("max_iters must be at least 1, got {}", max_iters));
    if (!(tol > 0.0))
        throw ConfigError(fmt::format("tol must be positive, got {}", tol));
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t)
{
    return v.unaryExpr([t](double x) {
        const double m = std::abs(x) - t;
        return m > 0.0 ? std::copysign(m, x) : 0.0;
    });
}

double l1_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& alpha, double lambda)
{
    return 0.5 * (y - x * alpha).squaredNorm() + lambda * alpha.lpNorm<1>();
}

double largest_eigenvalue(const Eigen::MatrixXd& sym, int max_steps, double tol)
{
    const Eigen::Index n = sym.rows();
    if (n == 0)
        return 0.0;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double estimate = 0.0;
    for (int step = 0; step < max_steps; ++step) {
        Eigen::VectorXd w = sym * v;
        const double next = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0)
            return 0.0;
        v = w / wn;
        if (std::abs(next - estimate) <= tol * std::abs(next)) {
            estimate = next;
            break;
        }
        estimate = next;
    }
    // Rayleigh quotient of the last iterate.
    return std::max(estimate, v.dot(sym * v));
}

RepresentationSolver::RepresentationSolver(const Dictionary& dict) : dict_(dict) {}

const Eigen::MatrixXd& RepresentationSolver::gram() const
{
    std::call_once(gram_once_, [this] {
        const auto& x = dict_.columns();
        gram_.noalias() = x.transpose() * x;
    });
    return gram_;
}

Eigen::VectorXd RepresentationSolver::correlate(const Eigen::VectorXd& y) const
{
    check_query(dict_, y);
    return dict_.columns().transpose() * y;
}

Eigen::VectorXd RepresentationSolver::crc(std::span<const Eigen::Index> active,
                                          const Eigen::VectorXd& y, const Eigen::VectorXd& xty,
                                          const CrcConfig& cfg, CrcForm form) const
{
    cfg.validate();
    check_query(dict_, y);
    const auto n = static_cast<Eigen::Index>(active.size());
    if (n == 0)
        return {};
    if (form == CrcForm::Automatic)
        form = n <= dict_.dim() ? CrcForm::Gram : CrcForm::Dual;

    if (form == CrcForm::Gram) {
        Eigen::MatrixXd system = gram()(active, active);
        system.diagonal().array() += cfg.mu;
        return spd_solve(system, xty(active));
    }

    const Eigen::MatrixXd xs = dict_.columns()(Eigen::all, active);
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(xs.rows(), xs.rows()) * cfg.mu;
    system.selfadjointView<Eigen::Lower>().rankUpdate(xs);
    system.triangularView<Eigen::StrictlyUpper>() = system.transpose();
    return xs.transpose() * spd_solve(system, y);
}

// Proximal gradient (ISTA) with step 1/L on the active block of the Gram matrix.
SrcResult RepresentationSolver::src(std::span<const Eigen::Index> active,
                                    const Eigen::VectorXd& y, const Eigen::VectorXd& xty,
                                    const SrcConfig& cfg) const
{
    cfg.validate();
    check_query(dict_, y);
    const auto n = static_cast<Eigen::Index>(active.size());

    SrcResult result;
    const Eigen::VectorXd b = xty(active);
    const double b_inf = n > 0 ? b.lpNorm<Eigen::Infinity>() : 0.0;
    const double lambda = cfg.lambda_relative ? cfg.lambda * b_inf : cfg.lambda;
    const double half_yy = 0.5 * y.squaredNorm();
    result.lambda = lambda;
    result.coefficients.values = Eigen::VectorXd::Zero(n);
    result.objective_trace.push_back(half_yy);

    // Zero is optimal whenever ||X^T y||_inf <= lambda (covers y = 0).
    if (n == 0 || b_inf <= lambda) {
        result.converged = true;
        return result;
    }

    const Eigen::MatrixXd g = gram()(active, active);
    double lipschitz = largest_eigenvalue(g);
    result.lipschitz = lipschitz;

    auto objective = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& ga) {
        return half_yy - a.dot(b) + 0.5 * a.dot(ga) + lambda * a.lpNorm<1>();
    };

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd g_alpha = Eigen::VectorXd::Zero(n);
    double f = half_yy;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        result.iterations = it;
        const Eigen::VectorXd next = soft_threshold(alpha - (g_alpha - b) / lipschitz,
                                                    lambda / lipschitz);
        Eigen::VectorXd g_next = g * next;
        const double f_next = objective(next, g_next);
        if (f_next > f + 1e-12 * std::max(1.0, std::abs(f))) {
            // Underestimated Lipschitz constant; shrink the step and retry.
            lipschitz *= 2.0;
            result.lipschitz = lipschitz;
            continue;
        }
        const double change = f - f_next;
        alpha = next;
        g_alpha = std::move(g_next);
        f = f_next;
        result.objective_trace.push_back(f);
        if (change <= cfg.tol * std::max(std::abs(f), std::numeric_limits<double>::min())) {
            result.converged = true;
            break;
        }
    }
    result.coefficients.values = std::move(alpha);
    return result;
}

Coefficients solve_crc(const Dictionary& dict, const Sample& query, const CrcConfig& cfg,
                       CrcForm form)
{
    RepresentationSolver solver(dict);
    const auto cols = all_columns(dict);
    return {solver.crc(cols, query.values(), solver.correlate(query.values()), cfg, form)};
}

SrcResult solve_src(const Dictionary& dict, const Sample& query, const SrcConfig& cfg)
{
    RepresentationSolver solver(dict);
    const auto cols = all_columns(dict);
    return solver.src(cols, query.values(), solver.correlate(query.values()), cfg);
}

} // namespace posedict
