#pragma once

#include <vector>

#include "paaa/barycentric.hpp"

namespace paaa
{
/// Scattered interpolation set: k points in the node product with their samples.
struct InterpSet
{
    CMatrix points; ///< k x d
    CVector values; ///< k

    Index size() const noexcept { return points.rows(); }
};

/// Selection operators S_c, S_u stored as index lists into vec(beta).
///
/// Gather with S_c picks vec(.)[constrained_idx]; S_c^T scatters back.
/// `order[i]` is the position in the originating InterpSet of the point whose
/// flat index is constrained_idx[i], so interpolation values can be aligned.
struct SelectionPlan
{
    std::vector<Index> dims;
    std::vector<Index> constrained_idx;
    std::vector<Index> unconstrained_idx;
    std::vector<Index> order;

    Index k() const noexcept { return static_cast<Index>(constrained_idx.size()); }
    Index total() const { return product(dims); }

    /// Reorders user-ordered interpolation values into constrained_idx order.
    CVector align(const CVector &interp_values) const;
};

/// Throws std::invalid_argument naming the point if it is not in the node
/// product or appears twice.
SelectionPlan build_plan(const NodeAxes &nodes, const InterpSet &interp);

CVector gather(const CVector &v, const std::vector<Index> &idx);
/// Writes `values` into `out` at `idx`.
void scatter(const CVector &values, const std::vector<Index> &idx, CVector &out);

/// beta_c = alpha_c o H, with `aligned_values` in constrained_idx order.
CVector constrained_beta(const SelectionPlan &plan, const CoeffTensor &alpha, const CVector &aligned_values);

/// vec(beta) = S_c^T beta_c + S_u^T beta_u.
CoeffTensor reconstruct_beta(const SelectionPlan &plan, const CVector &beta_c, const CVector &beta_u);
} // namespace paaa
