#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "paaa/lsq.hpp"

namespace paaa
{
enum class InterpUpdate
{
    AllAvailable,   ///< I <- I u (S n node product)
    GreedyPointOnly ///< I <- I u {greedy point}
};

enum class FitMode
{
    Grid,
    Scattered,
    Auto
};

struct IterationRecord
{
    Index iteration = 0; ///< 1-based
    Index sample_index = 0;
    Point point;
    Real rel_error = 0;
    std::vector<Index> node_counts;
    Index interp_count = 0;
};

struct FitConfig
{
    Real tol = 1e-8;
    Index max_iter = 100;
    InterpUpdate interp_update = InterpUpdate::AllAvailable;
    FitMode mode = FitMode::Auto;
    /// Called after every completed iteration with the model it produced.
    std::function<void(const IterationRecord &, const BarycentricModel &)> on_iteration;
};

/// Throws std::invalid_argument unless tol > 0 and max_iter >= 1.
void validate(const FitConfig &config);

enum class FitStatus
{
    Converged,
    MaxIterations,
    Exhausted ///< every sample is an interpolation point
};

struct FitReport
{
    Index iterations = 0;
    std::vector<IterationRecord> history;
    Real final_error = 0;
    FitStatus status = FitStatus::MaxIterations;
    std::vector<std::string> warnings;
    /// Sample indices interpolated by the final model.
    std::vector<Index> interp_indices;
};

struct FitResult
{
    BarycentricModel model;
    FitReport report;
};

/// Thrown when the loop stops making progress; carries the last model.
class StagnationError : public std::runtime_error
{
  public:
    StagnationError(const std::string &what, FitResult result)
        : std::runtime_error(what), result_(std::make_shared<FitResult>(std::move(result)))
    {
    }
    const FitResult &result() const noexcept { return *result_; }

  private:
    std::shared_ptr<FitResult> result_;
};

struct GreedyPick
{
    Index index = 0;
    Point point;
    Real abs_error = 0;
    bool pole = false;
};

/// argmax_k |f(Z_k) - approx_k|, ties to the lowest index. Non-finite
/// approximations count as infinite error.
GreedyPick greedy_argmax(const SampleSet &samples, const CVector &approx);

/// Same, evaluating `model` at the samples. Poles are selected as +inf error.
GreedyPick greedy_argmax(const SampleSet &samples, const BarycentricModel &model);

/// max|f - r| / max|f| over the samples (absolute when all samples vanish).
Real relative_max_error(const CVector &values, const CVector &approx);

/// Greedy p-AAA on scattered samples with constrained LS updates.
FitResult fit_scattered(const SampleSet &samples, const FitConfig &config = {});

/// Grid p-AAA: interpolates at the whole node product every iteration.
FitResult fit_grid(const GridSampleSet &grid, const FitConfig &config = {});

/// Dispatches on config.mode; Auto picks the grid path for exact lattices.
/// Throws std::invalid_argument for FitMode::Grid on non-lattice data.
FitResult fit(const SampleSet &samples, const FitConfig &config = {});

const char *to_string(FitStatus status);
} // namespace paaa
