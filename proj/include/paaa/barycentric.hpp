#pragma once

#include <optional>
#include <vector>

#include "paaa/types.hpp"

namespace paaa
{
/// Per-variable barycentric node lists. The full node set is their Cartesian
/// product. Nodes within an axis are pairwise distinct (exact comparison).
struct NodeAxes
{
    std::vector<CVector> axes;

    NodeAxes() = default;
    explicit NodeAxes(std::vector<CVector> a) : axes(std::move(a)) {}
    explicit NodeAxes(Index d) : axes(static_cast<std::size_t>(d)) {}

    Index dim() const noexcept { return static_cast<Index>(axes.size()); }
    std::vector<Index> counts() const;
    /// n_1 * ... * n_d (1 when d == 0).
    Index total() const;

    /// Position of `value` in axis `j`, exact match.
    std::optional<Index> find(Index j, const Complex &value) const;
    /// Row-major flat index of `point` in the node product, if it is a member.
    std::optional<Index> flat_index_of(const Point &point) const;

    /// Appends `value` to axis `j` unless already present. Returns true if inserted.
    bool insert(Index j, const Complex &value);
};

/// Dense d-way tensor stored ROW-MAJOR: entry (i_1,...,i_d) sits at
/// ((i_1 n_2 + i_2) n_3 + ...) n_d + i_d. This matches Kronecker ordering of the
/// per-axis Cauchy matrices and is part of the model file format.
struct CoeffTensor
{
    std::vector<Index> dims;
    CVector data;

    CoeffTensor() = default;
    CoeffTensor(std::vector<Index> d, CVector values);
    static CoeffTensor zeros(std::vector<Index> d);

    Index size() const noexcept { return data.size(); }
    Index flat_index(const std::vector<Index> &multi) const;
    std::vector<Index> multi_index(Index flat) const;

    const Complex &operator[](Index flat) const { return data[flat]; }
    Complex &operator[](Index flat) { return data[flat]; }
};

Index product(const std::vector<Index> &dims);

/// Immutable barycentric rational function n(z)/d(z) in d variables.
class BarycentricModel
{
  public:
    /// Throws std::invalid_argument if shapes disagree, an axis is empty, nodes
    /// repeat, or any value is non-finite.
    BarycentricModel(NodeAxes nodes, CoeffTensor alpha, CoeffTensor beta);

    const NodeAxes &nodes() const noexcept { return nodes_; }
    const CoeffTensor &alpha() const noexcept { return alpha_; }
    const CoeffTensor &beta() const noexcept { return beta_; }
    Index dim() const noexcept { return nodes_.dim(); }

  private:
    NodeAxes nodes_;
    CoeffTensor alpha_;
    CoeffTensor beta_;
};

/// Throws std::invalid_argument when two entries compare exactly equal.
template <typename Derived>
void check_distinct_nodes(const Eigen::MatrixBase<Derived> &nodes)
{
    for (Index a = 0; a < nodes.size(); ++a)
        for (Index b = a + 1; b < nodes.size(); ++b)
            if (exactly_equal(nodes(a), nodes(b)))
                throw std::invalid_argument("duplicate barycentric node at positions " + std::to_string(a) + " and " +
                                            std::to_string(b));
}

/// Value of the modified Cauchy basis function g^{(i)} at z: 1/(z - node_i) off
/// the node set, 1 at node_i and 0 at any other node.
template <typename Derived>
auto cauchy_basis(const Eigen::MatrixBase<Derived> &nodes, const typename Derived::Scalar &z)
{
    using Scalar = typename Derived::Scalar;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    for (Index i = 0; i < nodes.size(); ++i)
        if (exactly_equal(z, nodes(i)))
        {
            Vec out = Vec::Zero(nodes.size());
            out(i) = Scalar(1);
            return out;
        }
    Vec out(nodes.size());
    for (Index i = 0; i < nodes.size(); ++i)
        out(i) = Scalar(1) / (z - nodes(i));
    return out;
}

/// Cauchy matrix C_lambda(points): entry (i, p) = g^{(i)}(points[p]).
template <typename DerivedN, typename DerivedP>
auto cauchy_matrix(const Eigen::MatrixBase<DerivedN> &nodes, const Eigen::MatrixBase<DerivedP> &points)
{
    using Scalar = typename DerivedN::Scalar;
    check_distinct_nodes(nodes);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c(nodes.size(), points.size());
    for (Index p = 0; p < points.size(); ++p)
        c.col(p) = cauchy_basis(nodes, points(p));
    return c;
}

/// Kronecker product of the per-axis basis columns at `point`, row-major.
/// d(z) = basis_vector(z)^T vec(alpha), n(z) = basis_vector(z)^T vec(beta).
CVector basis_vector(const NodeAxes &nodes, const Point &point);

/// K x N matrix whose row k is basis_vector(points.row(k)); this is the
/// transposed Khatri-Rao product of the per-axis Cauchy matrices.
CMatrix basis_matrix(const NodeAxes &nodes, const CMatrix &points);

struct NumerDenom
{
    Complex numerator;
    Complex denominator;
};

struct EvalOptions
{
    /// Query coordinates within this distance of a node are moved onto it.
    Real snap_tol = 0.0;
};

NumerDenom eval_numer_denom(const BarycentricModel &model, const Point &point, const EvalOptions &opts = {});

/// n(z)/d(z). Throws PoleError when d == 0 and n != 0, IndeterminateError when
/// both vanish exactly.
Complex eval(const BarycentricModel &model, const Point &point, const EvalOptions &opts = {});

struct PointFailure
{
    Index index;
    std::string message;
    bool pole; ///< false means indeterminate 0/0
};

struct BatchEval
{
    /// NaN at failed points.
    CVector values;
    std::vector<PointFailure> failures;
};

/// Evaluates every row of `points` (K x d). Failures are collected, never thrown.
BatchEval eval_batch(const BarycentricModel &model, const CMatrix &points, const EvalOptions &opts = {});
} // namespace paaa
