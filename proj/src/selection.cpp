#include "paaa/selection.hpp"

#include <algorithm>
#include <numeric>

namespace paaa
{
CVector SelectionPlan::align(const CVector &interp_values) const
{
    if (interp_values.size() != k())
        throw std::invalid_argument("expected " + std::to_string(k()) + " interpolation values, got " +
                                    std::to_string(interp_values.size()));
    CVector out(k());
    for (Index i = 0; i < k(); ++i)
        out(i) = interp_values(order[static_cast<std::size_t>(i)]);
    return out;
}

SelectionPlan build_plan(const NodeAxes &nodes, const InterpSet &interp)
{
    if (interp.size() > 0 && interp.points.cols() != nodes.dim())
        throw std::invalid_argument("interpolation points have wrong dimension");
    if (interp.values.size() != interp.size())
        throw std::invalid_argument("interpolation set has mismatched point/value counts");

    SelectionPlan plan;
    plan.dims = nodes.counts();
    const Index total = plan.total();

    std::vector<Index> flat(static_cast<std::size_t>(interp.size()));
    for (Index i = 0; i < interp.size(); ++i)
    {
        const Point p = interp.points.row(i).transpose();
        auto idx = nodes.flat_index_of(p);
        if (!idx)
            throw std::invalid_argument("interpolation point " + format_point(p) + " is not in the node product");
        flat[static_cast<std::size_t>(i)] = *idx;
    }

    plan.order.resize(flat.size());
    std::iota(plan.order.begin(), plan.order.end(), Index{0});
    std::sort(plan.order.begin(), plan.order.end(), [&](Index a, Index b) {
        return flat[static_cast<std::size_t>(a)] < flat[static_cast<std::size_t>(b)];
    });
    plan.constrained_idx.reserve(flat.size());
    for (Index o : plan.order)
    {
        const Index f = flat[static_cast<std::size_t>(o)];
        if (!plan.constrained_idx.empty() && plan.constrained_idx.back() == f)
            throw std::invalid_argument("interpolation point " + format_point(interp.points.row(o).transpose()) +
                                        " appears twice");
        plan.constrained_idx.push_back(f);
    }

    plan.unconstrained_idx.reserve(static_cast<std::size_t>(total) - flat.size());
    auto c = plan.constrained_idx.begin();
    for (Index i = 0; i < total; ++i)
    {
        if (c != plan.constrained_idx.end() && *c == i)
            ++c;
        else
            plan.unconstrained_idx.push_back(i);
    }
    return plan;
}

CVector gather(const CVector &v, const std::vector<Index> &idx)
{
    CVector out(static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out(static_cast<Index>(i)) = v(idx[i]);
    return out;
}

void scatter(const CVector &values, const std::vector<Index> &idx, CVector &out)
{
    if (values.size() != static_cast<Index>(idx.size()))
        throw std::invalid_argument("scatter length mismatch: " + std::to_string(values.size()) + " values for " +
                                    std::to_string(idx.size()) + " slots");
    for (std::size_t i = 0; i < idx.size(); ++i)
        out(idx[i]) = values(static_cast<Index>(i));
}

CVector constrained_beta(const SelectionPlan &plan, const CoeffTensor &alpha, const CVector &aligned_values)
{
    if (aligned_values.size() != plan.k())
        throw std::invalid_argument("interpolation value count does not match plan");
    return gather(alpha.data, plan.constrained_idx).cwiseProduct(aligned_values);
}

CoeffTensor reconstruct_beta(const SelectionPlan &plan, const CVector &beta_c, const CVector &beta_u)
{
    if (beta_c.size() != plan.k() || beta_u.size() != plan.total() - plan.k())
        throw std::invalid_argument("beta_c/beta_u lengths (" + std::to_string(beta_c.size()) + ", " +
                                    std::to_string(beta_u.size()) + ") do not match plan (" +
                                    std::to_string(plan.k()) + ", " + std::to_string(plan.total() - plan.k()) + ")");
    CoeffTensor beta = CoeffTensor::zeros(plan.dims);
    scatter(beta_c, plan.constrained_idx, beta.data);
    scatter(beta_u, plan.unconstrained_idx, beta.data);
    return beta;
}
} // namespace paaa
