#include "paaa/barycentric.hpp"

#include <limits>
#include <sstream>

namespace paaa
{
std::string format_point(const Point &p)
{
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (Index j = 0; j < p.size(); ++j)
    {
        if (j)
            os << ", ";
        os << p(j).real();
        if (p(j).imag() != 0.0)
            os << (p(j).imag() < 0 ? "-" : "+") << std::abs(p(j).imag()) << 'i';
    }
    os << ')';
    return os.str();
}

Index product(const std::vector<Index> &dims)
{
    Index n = 1;
    for (Index d : dims)
        n *= d;
    return n;
}

std::vector<Index> NodeAxes::counts() const
{
    std::vector<Index> c;
    c.reserve(axes.size());
    for (const auto &a : axes)
        c.push_back(a.size());
    return c;
}

Index NodeAxes::total() const { return product(counts()); }

std::optional<Index> NodeAxes::find(Index j, const Complex &value) const
{
    const CVector &axis = axes[static_cast<std::size_t>(j)];
    for (Index i = 0; i < axis.size(); ++i)
        if (exactly_equal(axis(i), value))
            return i;
    return std::nullopt;
}

std::optional<Index> NodeAxes::flat_index_of(const Point &point) const
{
    if (point.size() != dim())
        return std::nullopt;
    Index flat = 0;
    for (Index j = 0; j < dim(); ++j)
    {
        auto i = find(j, point(j));
        if (!i)
            return std::nullopt;
        flat = flat * axes[static_cast<std::size_t>(j)].size() + *i;
    }
    return flat;
}

bool NodeAxes::insert(Index j, const Complex &value)
{
    if (find(j, value))
        return false;
    CVector &axis = axes[static_cast<std::size_t>(j)];
    axis.conservativeResize(axis.size() + 1);
    axis(axis.size() - 1) = value;
    return true;
}

CoeffTensor::CoeffTensor(std::vector<Index> d, CVector values) : dims(std::move(d)), data(std::move(values))
{
    if (data.size() != product(dims))
        throw std::invalid_argument("coefficient tensor has " + std::to_string(data.size()) +
                                    " entries, dims require " + std::to_string(product(dims)));
}

CoeffTensor CoeffTensor::zeros(std::vector<Index> d)
{
    const Index n = product(d);
    return CoeffTensor(std::move(d), CVector::Zero(n));
}

Index CoeffTensor::flat_index(const std::vector<Index> &multi) const
{
    if (multi.size() != dims.size())
        throw std::invalid_argument("multi-index rank mismatch");
    Index flat = 0;
    for (std::size_t j = 0; j < dims.size(); ++j)
    {
        if (multi[j] < 0 || multi[j] >= dims[j])
            throw std::out_of_range("multi-index out of range");
        flat = flat * dims[j] + multi[j];
    }
    return flat;
}

std::vector<Index> CoeffTensor::multi_index(Index flat) const
{
    std::vector<Index> multi(dims.size());
    for (std::size_t j = dims.size(); j-- > 0;)
    {
        multi[j] = flat % dims[j];
        flat /= dims[j];
    }
    return multi;
}

BarycentricModel::BarycentricModel(NodeAxes nodes, CoeffTensor alpha, CoeffTensor beta)
    : nodes_(std::move(nodes)), alpha_(std::move(alpha)), beta_(std::move(beta))
{
    if (nodes_.dim() < 1)
        throw std::invalid_argument("model needs at least one variable");
    for (Index j = 0; j < nodes_.dim(); ++j)
    {
        const CVector &axis = nodes_.axes[static_cast<std::size_t>(j)];
        if (axis.size() == 0)
            throw std::invalid_argument("node axis " + std::to_string(j + 1) + " is empty");
        for (Index i = 0; i < axis.size(); ++i)
            if (!all_finite(axis(i)))
                throw std::invalid_argument("non-finite node on axis " + std::to_string(j + 1));
        check_distinct_nodes(axis);
    }
    const auto counts = nodes_.counts();
    if (alpha_.dims != counts || beta_.dims != counts)
        throw std::invalid_argument("coefficient dims do not match node counts");
    for (Index i = 0; i < alpha_.size(); ++i)
        if (!all_finite(alpha_[i]) || !all_finite(beta_[i]))
            throw std::invalid_argument("non-finite barycentric coefficient at flat index " + std::to_string(i));
}

CVector basis_vector(const NodeAxes &nodes, const Point &point)
{
    if (point.size() != nodes.dim())
        throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, model has " +
                                    std::to_string(nodes.dim()) + " variables");
    CVector acc = CVector::Ones(1);
    for (Index j = 0; j < nodes.dim(); ++j)
    {
        const CVector g = cauchy_basis(nodes.axes[static_cast<std::size_t>(j)], point(j));
        CVector next(acc.size() * g.size());
        for (Index a = 0; a < acc.size(); ++a)
            next.segment(a * g.size(), g.size()) = acc(a) * g;
        acc = std::move(next);
    }
    return acc;
}

CMatrix basis_matrix(const NodeAxes &nodes, const CMatrix &points)
{
    if (points.cols() != nodes.dim())
        throw std::invalid_argument("points have " + std::to_string(points.cols()) + " columns, expected " +
                                    std::to_string(nodes.dim()));
    for (const auto &axis : nodes.axes)
        check_distinct_nodes(axis);
    CMatrix c(points.rows(), nodes.total());
    for (Index k = 0; k < points.rows(); ++k)
        c.row(k) = basis_vector(nodes, points.row(k).transpose()).transpose();
    return c;
}

namespace
{
Point snapped(const NodeAxes &nodes, const Point &point, Real tol)
{
    Point out = point;
    if (tol <= 0)
        return out;
    for (Index j = 0; j < nodes.dim() && j < point.size(); ++j)
    {
        const CVector &axis = nodes.axes[static_cast<std::size_t>(j)];
        Real best = std::numeric_limits<Real>::infinity();
        for (Index i = 0; i < axis.size(); ++i)
        {
            const Real dist = std::abs(point(j) - axis(i));
            if (dist <= tol && dist < best)
            {
                best = dist;
                out(j) = axis(i);
            }
        }
    }
    return out;
}
} // namespace

NumerDenom eval_numer_denom(const BarycentricModel &model, const Point &point, const EvalOptions &opts)
{
    const CVector b = basis_vector(model.nodes(), snapped(model.nodes(), point, opts.snap_tol));
    // Plain transpose: the basis is not conjugated.
    return {(b.transpose() * model.beta().data)(0), (b.transpose() * model.alpha().data)(0)};
}

Complex eval(const BarycentricModel &model, const Point &point, const EvalOptions &opts)
{
    const auto [n, d] = eval_numer_denom(model, point, opts);
    if (d == Complex(0))
    {
        if (n == Complex(0))
            throw IndeterminateError(point, "indeterminate 0/0 at " + format_point(point));
        throw PoleError(point, "pole at " + format_point(point));
    }
    return n / d;
}

BatchEval eval_batch(const BarycentricModel &model, const CMatrix &points, const EvalOptions &opts)
{
    if (points.rows() > 0 && points.cols() != model.dim())
        throw std::invalid_argument("points have " + std::to_string(points.cols()) + " columns, model has " +
                                    std::to_string(model.dim()) + " variables");
    BatchEval out;
    out.values.resize(points.rows());
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    for (Index k = 0; k < points.rows(); ++k)
    {
        try
        {
            out.values(k) = eval(model, points.row(k).transpose(), opts);
        }
        catch (const PoleError &e)
        {
            out.values(k) = Complex(nan, nan);
            out.failures.push_back({k, e.what(), true});
        }
        catch (const IndeterminateError &e)
        {
            out.values(k) = Complex(nan, nan);
            out.failures.push_back({k, e.what(), false});
        }
    }
    return out;
}
} // namespace paaa
