#pragma once

#include <string>
#include <vector>

#include "paaa/barycentric.hpp"
#include "paaa/selection.hpp"

namespace paaa
{
/// K scattered samples in C^d.
struct SampleSet
{
    CMatrix points; ///< K x d
    CVector values; ///< K

    Index size() const noexcept { return points.rows(); }
    Index dim() const noexcept { return points.cols(); }
    Point point(Index k) const { return points.row(k).transpose(); }
};

/// Throws std::invalid_argument on empty sets, shape mismatch, non-finite data
/// or repeated points.
void validate(const SampleSet &samples);

/// Samples on a full lattice axes[0] x ... x axes[d-1]; values are stored
/// row-major (last axis fastest).
struct GridSampleSet
{
    std::vector<CVector> axes;
    CVector values;

    Index dim() const noexcept { return static_cast<Index>(axes.size()); }
    std::vector<Index> shape() const;
    /// Scattered view in row-major lattice order.
    SampleSet flatten() const;
};

/// Detects lattice structure exactly: every combination of the distinct
/// per-axis coordinates appears exactly once. Returns the regrouped grid.
std::optional<GridSampleSet> as_grid(const SampleSet &samples);

/// Dense LS matrix. Columns [0, n_alpha) hold vec(alpha); the following
/// n_beta columns hold beta_u (or vec(beta) when nothing is constrained).
struct LsSystem
{
    CMatrix matrix;
    Index n_alpha = 0;
    Index n_beta = 0;
};

/// [D C^T - C^T H, -C^T S_u^T] with C the Khatri-Rao product of the per-axis
/// Cauchy matrices. `aligned_values` are the interpolation values in
/// plan.constrained_idx order.
LsSystem assemble_scattered_interp(const SampleSet &samples, const NodeAxes &nodes, const SelectionPlan &plan,
                                   const CVector &aligned_values);

/// [D C^T, -C^T] (no interpolation constraints).
LsSystem assemble_scattered_free(const SampleSet &samples, const NodeAxes &nodes);

/// [D (C_1 x ... x C_d)^T, -(C_1 x ... x C_d)^T] built from Kronecker products.
LsSystem assemble_grid_free(const GridSampleSet &grid, const NodeAxes &nodes);

/// Loewner matrix D (C_1 x ... x C_d)^T - (C_1 x ... x C_d)^T diag(vec(H)).
/// `node_values` holds the samples at the node product; every node must be a
/// sample coordinate of its axis.
LsSystem assemble_grid_interp(const GridSampleSet &grid, const NodeAxes &nodes, const CoeffTensor &node_values);

struct UnitNormSolution
{
    CVector vector;
    Real residual = 0;
};

/// Right singular vector of the smallest singular value, phase-normalized so
/// the largest-magnitude entry (lowest index on ties) is real and positive.
/// With a null space of dimension > 1 the projection of the all-ones vector
/// onto it is returned instead.
UnitNormSolution min_unit_norm(const LsSystem &system);

struct ConstrainedFit
{
    BarycentricModel model;
    Real residual;
    std::vector<std::string> warnings;
};

/// Assembles and solves the constrained problem, then rebuilds beta from
/// alpha_c o H and beta_u.
ConstrainedFit solve_constrained(const SampleSet &samples, const NodeAxes &nodes, const InterpSet &interp);

/// Grid path: alpha from the Loewner matrix, beta = alpha o H.
ConstrainedFit solve_grid_interp(const GridSampleSet &grid, const NodeAxes &nodes);
} // namespace paaa
