#include "paaa/fit.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace paaa
{
void validate(const FitConfig &config)
{
    if (!(config.tol > 0) || !std::isfinite(config.tol))
        throw std::invalid_argument("tolerance must be positive and finite");
    if (config.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
}

const char *to_string(FitStatus status)
{
    switch (status)
    {
    case FitStatus::Converged:
        return "converged";
    case FitStatus::MaxIterations:
        return "max_iterations";
    case FitStatus::Exhausted:
        return "exhausted";
    }
    return "unknown";
}

GreedyPick greedy_argmax(const SampleSet &samples, const CVector &approx)
{
    if (samples.size() < 1)
        throw std::invalid_argument("greedy selection over an empty sample set");
    if (approx.size() != samples.size())
        throw std::invalid_argument("approximation length does not match sample count");
    GreedyPick pick;
    pick.abs_error = -1;
    for (Index k = 0; k < samples.size(); ++k)
    {
        const bool finite = all_finite(approx(k));
        const Real err = finite ? std::abs(samples.values(k) - approx(k)) : std::numeric_limits<Real>::infinity();
        if (err > pick.abs_error)
        {
            pick.index = k;
            pick.abs_error = err;
            pick.pole = !finite;
        }
    }
    pick.point = samples.point(pick.index);
    return pick;
}

GreedyPick greedy_argmax(const SampleSet &samples, const BarycentricModel &model)
{
    return greedy_argmax(samples, eval_batch(model, samples.points).values);
}

Real relative_max_error(const CVector &values, const CVector &approx)
{
    Real num = 0;
    Real den = 0;
    for (Index k = 0; k < values.size(); ++k)
    {
        const Real e = all_finite(approx(k)) ? std::abs(values(k) - approx(k)) : std::numeric_limits<Real>::infinity();
        num = std::max(num, e);
        den = std::max(den, std::abs(values(k)));
    }
    return den > 0 ? num / den : num;
}

namespace
{
using Solver = std::function<ConstrainedFit(const NodeAxes &, const InterpSet &)>;

/// Shared greedy loop. `solve` turns the current nodes and interpolation set
/// into a model.
FitResult run_greedy(const SampleSet &samples, const FitConfig &config, InterpUpdate update, const Solver &solve)
{
    validate(config);
    validate(samples);
    const Index K = samples.size();
    const Index d = samples.dim();

    NodeAxes nodes(d);
    std::vector<char> interpolated(static_cast<std::size_t>(K), 0);
    std::vector<Index> interp_indices;
    CVector approx = CVector::Constant(K, samples.values.mean());
    std::optional<BarycentricModel> model;
    FitReport report;
    Index prev_pick = -1;
    Real prev_error = std::numeric_limits<Real>::quiet_NaN();

    auto stagnate = [&](const std::string &why) {
        report.final_error = report.history.empty() ? relative_max_error(samples.values, approx)
                                                    : report.history.back().rel_error;
        throw StagnationError(why, FitResult{*model, report});
    };

    for (Index it = 1; it <= config.max_iter; ++it)
    {
        const GreedyPick pick = greedy_argmax(samples, approx);
        if (pick.pole)
            report.warnings.push_back("iteration " + std::to_string(it) + ": pole at sample " +
                                      std::to_string(pick.index) + " selected for repair");
        if (interpolated[static_cast<std::size_t>(pick.index)])
            stagnate("greedy point " + format_point(pick.point) + " is already interpolated; no progress possible");

        for (Index j = 0; j < d; ++j)
            nodes.insert(j, pick.point(j));

        auto add = [&](Index k) {
            if (!interpolated[static_cast<std::size_t>(k)])
            {
                interpolated[static_cast<std::size_t>(k)] = 1;
                interp_indices.push_back(k);
            }
        };
        if (update == InterpUpdate::AllAvailable)
        {
            for (Index k = 0; k < K; ++k)
                if (!interpolated[static_cast<std::size_t>(k)] && nodes.flat_index_of(samples.point(k)))
                    add(k);
        }
        else
        {
            add(pick.index);
        }

        InterpSet interp{CMatrix(Index(interp_indices.size()), d), CVector(Index(interp_indices.size()))};
        for (std::size_t i = 0; i < interp_indices.size(); ++i)
        {
            interp.points.row(Index(i)) = samples.points.row(interp_indices[i]);
            interp.values(Index(i)) = samples.values(interp_indices[i]);
        }

        ConstrainedFit solved = solve(nodes, interp);
        for (auto &w : solved.warnings)
            report.warnings.push_back("iteration " + std::to_string(it) + ": " + w);
        model.emplace(std::move(solved.model));

        BatchEval batch = eval_batch(*model, samples.points);
        for (const auto &f : batch.failures)
            report.warnings.push_back("iteration " + std::to_string(it) + ": " + f.message);
        approx = std::move(batch.values);
        const Real err = relative_max_error(samples.values, approx);

        IterationRecord rec;
        rec.iteration = it;
        rec.sample_index = pick.index;
        rec.point = pick.point;
        rec.rel_error = err;
        rec.node_counts = nodes.counts();
        rec.interp_count = Index(interp_indices.size());
        report.history.push_back(rec);
        report.iterations = it;
        report.final_error = err;
        report.interp_indices = interp_indices;
        if (config.on_iteration)
            config.on_iteration(rec, *model);

        if (pick.index == prev_pick && std::abs(err - prev_error) <= 1e-15)
            stagnate("greedy point " + format_point(pick.point) + " selected twice with unchanged error");
        prev_pick = pick.index;
        prev_error = err;

        if (err <= config.tol)
        {
            report.status = FitStatus::Converged;
            break;
        }
        if (Index(interp_indices.size()) == K)
        {
            report.status = FitStatus::Exhausted;
            break;
        }
        report.status = FitStatus::MaxIterations;
    }
    return FitResult{std::move(*model), std::move(report)};
}
} // namespace

FitResult fit_scattered(const SampleSet &samples, const FitConfig &config)
{
    return run_greedy(samples, config, config.interp_update,
                      [&](const NodeAxes &nodes, const InterpSet &interp) {
                          return solve_constrained(samples, nodes, interp);
                      });
}

FitResult fit_grid(const GridSampleSet &grid, const FitConfig &config)
{
    const SampleSet flat = grid.flatten();
    return run_greedy(flat, config, InterpUpdate::AllAvailable,
                      [&](const NodeAxes &nodes, const InterpSet &) { return solve_grid_interp(grid, nodes); });
}

FitResult fit(const SampleSet &samples, const FitConfig &config)
{
    validate(config);
    if (config.mode == FitMode::Scattered)
        return fit_scattered(samples, config);
    auto grid = as_grid(samples);
    if (!grid)
    {
        if (config.mode == FitMode::Grid)
            throw std::invalid_argument("grid mode requested but the samples do not form a full lattice "
                                        "(every coordinate combination exactly once)");
        return fit_scattered(samples, config);
    }
    return fit_grid(*grid, config);
}
} // namespace paaa
