#include "posedict/classify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <iterator>

namespace posedict {

namespace {

bool same_bits(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

std::vector<Eigen::Index> columns_of(const Dictionary& dict, const std::vector<ClassId>& classes)
{
    std::vector<Eigen::Index> cols;
    for (const auto& id : classes) {
        const auto& idx = dict.class_index().at(id);
        cols.insert(cols.end(), idx.begin(), idx.end());
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

Eigen::VectorXd solve_active(const RepresentationSolver& solver,
                             const std::vector<Eigen::Index>& active, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& xty, const SolverConfig& cfg)
{
    if (const auto* crc = std::get_if<CrcConfig>(&cfg))
        return solver.crc(active, y, xty, *crc);
    return solver.src(active, y, xty, std::get<SrcConfig>(cfg)).coefficients.values;
}

// Reconstructions and errors for `classes` from coefficients aligned with `active`.
ClassReport report_for(const Dictionary& dict, const std::vector<ClassId>& classes,
                       const std::vector<Eigen::Index>& active, const Eigen::VectorXd& alpha,
                       const Eigen::VectorXd& y)
{
    std::vector<Eigen::Index> position(static_cast<std::size_t>(dict.size()), -1);
    for (std::size_t i = 0; i < active.size(); ++i)
        position[static_cast<std::size_t>(active[i])] = static_cast<Eigen::Index>(i);

    ClassReport report;
    report.per_class.reserve(classes.size());
    double best = 0.0;
    for (const auto& id : classes) {
        ClassError entry{id, Eigen::VectorXd::Zero(dict.dim()), 0.0};
        for (std::size_t col : dict.class_index().at(id)) {
            const Eigen::Index pos = position[col];
            entry.reconstruction.noalias() +=
                alpha[pos] * dict.columns().col(static_cast<Eigen::Index>(col));
        }
        entry.error = (y - entry.reconstruction).norm();
        if (report.per_class.empty() || entry.error < best) {
            best = entry.error;
            report.predicted = id;
        }
        report.per_class.push_back(std::move(entry));
    }
    return report;
}

} // namespace

const ClassError* ClassReport::find(const ClassId& id) const
{
    auto it = std::find_if(per_class.begin(), per_class.end(),
                           [&](const ClassError& e) { return e.id == id; });
    return it == per_class.end() ? nullptr : &*it;
}

bool identical(const ClassReport& a, const ClassReport& b)
{
    if (a.predicted != b.predicted || a.per_class.size() != b.per_class.size())
        return false;
    for (std::size_t i = 0; i < a.per_class.size(); ++i) {
        const auto& x = a.per_class[i];
        const auto& z = b.per_class[i];
        if (x.id != z.id || std::bit_cast<std::uint64_t>(x.error) != std::bit_cast<std::uint64_t>(z.error) ||
            !same_bits(x.reconstruction, z.reconstruction))
            return false;
    }
    return true;
}

std::vector<std::pair<ClassId, Eigen::VectorXd>>
class_reconstructions(const Dictionary& dict, const Coefficients& alpha)
{
    if (alpha.values.size() != dict.size())
        detail::throw_dimension("coefficients", dict.size(), alpha.values.size());
    std::vector<std::pair<ClassId, Eigen::VectorXd>> out;
    out.reserve(dict.class_count());
    for (const auto& [id, cols] : dict.class_index()) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(dict.dim());
        for (std::size_t col : cols)
            c.noalias() += alpha.values[static_cast<Eigen::Index>(col)] *
                           dict.columns().col(static_cast<Eigen::Index>(col));
        out.emplace_back(id, std::move(c));
    }
    return out;
}

std::size_t EliminationConfig::rounds_for(std::size_t class_count) const
{
    if (rounds)
        return *rounds;
    // The epsilon absorbs products such as 0.29 * 100 = 28.999999999999996.
    return static_cast<std::size_t>(std::floor(proportion * static_cast<double>(class_count) + 1e-9));
}

void EliminationConfig::validate() const
{
    if (!(proportion >= 0.0 && proportion < 1.0))
        throw ConfigError(fmt::format("elimination proportion must lie in [0, 1), got {}", proportion));
    std::visit([](const auto& c) { c.validate(); }, solver);
}

ClassReport classify_query(const RepresentationSolver& solver, const Sample& query,
                           const SolverConfig& cfg)
{
    EliminationConfig none;
    none.rounds = 0;
    none.solver = cfg;
    return classify_with_elimination(solver, query, none).final_report;
}

ClassReport classify_query(const Dictionary& dict, const Sample& query, const SolverConfig& cfg)
{
    RepresentationSolver solver(dict);
    return classify_query(solver, query, cfg);
}

EliminationTrace classify_with_elimination(const RepresentationSolver& solver,
                                           const Sample& query, const EliminationConfig& cfg)
{
    cfg.validate();
    const Dictionary& dict = solver.dictionary();
    if (dict.empty())
        throw ConfigError("cannot classify against an empty dictionary");
    const std::size_t initial = dict.class_count();
    const std::size_t rounds = cfg.rounds_for(initial);
    if (rounds > 0 && initial < 2)
        throw ConfigError("elimination needs at least two classes");
    if (rounds + 1 > initial)
        throw ConfigError(fmt::format("{} elimination rounds would remove every one of {} classes",
                                      rounds, initial));

    const Eigen::VectorXd& y = query.values();
    const Eigen::VectorXd xty = solver.correlate(y);

    EliminationTrace trace;
    std::vector<ClassId> surviving = dict.classes();
    for (std::size_t round = 0; round < rounds; ++round) {
        const auto active = columns_of(dict, surviving);
        ClassReport report =
            report_for(dict, surviving, active, solve_active(solver, active, y, xty, cfg.solver), y);

        // Largest error; `>=` hands ties to the later id.
        std::size_t worst = 0;
        for (std::size_t k = 1; k < report.per_class.size(); ++k)
            if (report.per_class[k].error >= report.per_class[worst].error)
                worst = k;
        EliminationRound entry{report.per_class[worst].id, report.per_class[worst].error, {}};
        surviving.erase(std::find(surviving.begin(), surviving.end(), entry.removed));
        entry.report = std::move(report);
        trace.rounds.push_back(std::move(entry));
    }

    const auto active = columns_of(dict, surviving);
    trace.final_report =
        report_for(dict, surviving, active, solve_active(solver, active, y, xty, cfg.solver), y);
    trace.surviving = std::move(surviving);
    return trace;
}

EliminationTrace classify_with_elimination(const Dictionary& dict, const Sample& query,
                                           const EliminationConfig& cfg)
{
    RepresentationSolver solver(dict);
    return classify_with_elimination(solver, query, cfg);
}

} // namespace posedict
