#include "paaa/lsq.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <Eigen/SVD>

namespace paaa
{
namespace
{
struct ComplexLess
{
    bool operator()(const Complex &a, const Complex &b) const
    {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    }
};

struct PointLess
{
    bool operator()(const std::vector<Complex> &a, const std::vector<Complex> &b) const
    {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ComplexLess{});
    }
};

/// Left-folded Kronecker product ((A_1 x A_2) x ...) of the given matrices.
CMatrix kron_all(const std::vector<CMatrix> &factors)
{
    CMatrix acc = CMatrix::Ones(1, 1);
    for (const CMatrix &b : factors)
    {
        CMatrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (Index i = 0; i < acc.rows(); ++i)
            for (Index p = 0; p < acc.cols(); ++p)
                next.block(i * b.rows(), p * b.cols(), b.rows(), b.cols()) = acc(i, p) * b;
        acc = std::move(next);
    }
    return acc;
}

void check_nodes(const NodeAxes &nodes, Index d)
{
    if (nodes.dim() != d)
        throw std::invalid_argument("node axes have " + std::to_string(nodes.dim()) + " variables, samples have " +
                                    std::to_string(d));
    for (Index j = 0; j < d; ++j)
    {
        if (nodes.axes[static_cast<std::size_t>(j)].size() == 0)
            throw std::invalid_argument("node axis " + std::to_string(j + 1) + " is empty");
        check_distinct_nodes(nodes.axes[static_cast<std::size_t>(j)]);
    }
}

void check_grid(const GridSampleSet &grid)
{
    if (grid.dim() < 1)
        throw std::invalid_argument("grid has no axes");
    if (grid.values.size() != product(grid.shape()))
        throw std::invalid_argument("grid has " + std::to_string(grid.values.size()) + " values for " +
                                    std::to_string(product(grid.shape())) + " lattice points");
    for (const auto &axis : grid.axes)
    {
        if (axis.size() == 0)
            throw std::invalid_argument("grid axis is empty");
        for (Index a = 0; a < axis.size(); ++a)
            for (Index b = a + 1; b < axis.size(); ++b)
                if (exactly_equal(axis(a), axis(b)))
                    throw std::invalid_argument("grid axis repeats a coordinate");
    }
}

/// (C_1 x ... x C_d)^T for the grid coordinates.
CMatrix grid_basis(const GridSampleSet &grid, const NodeAxes &nodes)
{
    std::vector<CMatrix> factors;
    for (Index j = 0; j < grid.dim(); ++j)
        factors.push_back(cauchy_matrix(nodes.axes[static_cast<std::size_t>(j)], grid.axes[static_cast<std::size_t>(j)]));
    return kron_all(factors).transpose();
}

CoeffTensor grid_node_values(const GridSampleSet &grid, const NodeAxes &nodes)
{
    const auto shape = grid.shape();
    std::vector<std::vector<Index>> pos(static_cast<std::size_t>(grid.dim()));
    for (Index j = 0; j < grid.dim(); ++j)
    {
        const CVector &axis = nodes.axes[static_cast<std::size_t>(j)];
        const CVector &coords = grid.axes[static_cast<std::size_t>(j)];
        for (Index i = 0; i < axis.size(); ++i)
        {
            Index hit = -1;
            for (Index p = 0; p < coords.size(); ++p)
                if (exactly_equal(axis(i), coords(p)))
                    hit = p;
            if (hit < 0)
                throw std::invalid_argument("node " + format_point(Point::Constant(1, axis(i))) + " on axis " +
                                            std::to_string(j + 1) + " is not a sample coordinate");
            pos[static_cast<std::size_t>(j)].push_back(hit);
        }
    }
    CoeffTensor h = CoeffTensor::zeros(nodes.counts());
    for (Index f = 0; f < h.size(); ++f)
    {
        const auto multi = h.multi_index(f);
        Index flat = 0;
        for (std::size_t j = 0; j < multi.size(); ++j)
            flat = flat * shape[j] + pos[j][static_cast<std::size_t>(multi[j])];
        h[f] = grid.values(flat);
    }
    return h;
}
} // namespace

void validate(const SampleSet &samples)
{
    if (samples.size() < 1)
        throw std::invalid_argument("sample set is empty");
    if (samples.dim() < 1)
        throw std::invalid_argument("sample points have no coordinates");
    if (samples.values.size() != samples.size())
        throw std::invalid_argument("sample set has " + std::to_string(samples.size()) + " points but " +
                                    std::to_string(samples.values.size()) + " values");
    for (Index k = 0; k < samples.size(); ++k)
    {
        if (!all_finite(samples.values(k)))
            throw std::invalid_argument("non-finite sample value at index " + std::to_string(k));
        for (Index j = 0; j < samples.dim(); ++j)
            if (!all_finite(samples.points(k, j)))
                throw std::invalid_argument("non-finite sample coordinate at index " + std::to_string(k));
    }
    std::map<std::vector<Complex>, Index, PointLess> seen;
    for (Index k = 0; k < samples.size(); ++k)
    {
        std::vector<Complex> key(samples.points.row(k).begin(), samples.points.row(k).end());
        auto [it, inserted] = seen.emplace(std::move(key), k);
        if (!inserted)
            throw std::invalid_argument("duplicate sample point at indices " + std::to_string(it->second) + " and " +
                                        std::to_string(k));
    }
}

std::vector<Index> GridSampleSet::shape() const
{
    std::vector<Index> s;
    for (const auto &a : axes)
        s.push_back(a.size());
    return s;
}

SampleSet GridSampleSet::flatten() const
{
    const auto s = shape();
    const Index total = product(s);
    SampleSet out{CMatrix(total, dim()), values};
    CoeffTensor layout = CoeffTensor::zeros(s);
    for (Index f = 0; f < total; ++f)
    {
        const auto multi = layout.multi_index(f);
        for (Index j = 0; j < dim(); ++j)
            out.points(f, j) = axes[static_cast<std::size_t>(j)](multi[static_cast<std::size_t>(j)]);
    }
    return out;
}

std::optional<GridSampleSet> as_grid(const SampleSet &samples)
{
    validate(samples);
    GridSampleSet grid;
    std::vector<std::map<Complex, Index, ComplexLess>> lookup(static_cast<std::size_t>(samples.dim()));
    grid.axes.resize(static_cast<std::size_t>(samples.dim()));
    for (Index j = 0; j < samples.dim(); ++j)
    {
        std::vector<Complex> coords;
        for (Index k = 0; k < samples.size(); ++k)
            if (lookup[static_cast<std::size_t>(j)].emplace(samples.points(k, j), Index(coords.size())).second)
                coords.push_back(samples.points(k, j));
        grid.axes[static_cast<std::size_t>(j)] = Eigen::Map<CVector>(coords.data(), Index(coords.size()));
    }
    const auto shape = grid.shape();
    if (product(shape) != samples.size())
        return std::nullopt;
    // Points are distinct, so K == prod(shape) means every combination occurs once.
    grid.values.resize(samples.size());
    for (Index k = 0; k < samples.size(); ++k)
    {
        Index flat = 0;
        for (Index j = 0; j < samples.dim(); ++j)
            flat = flat * shape[static_cast<std::size_t>(j)] + lookup[static_cast<std::size_t>(j)].at(samples.points(k, j));
        grid.values(flat) = samples.values(k);
    }
    return grid;
}

LsSystem assemble_scattered_interp(const SampleSet &samples, const NodeAxes &nodes, const SelectionPlan &plan,
                                   const CVector &aligned_values)
{
    if (samples.values.size() != samples.size())
        throw std::invalid_argument("sample point/value count mismatch");
    check_nodes(nodes, samples.dim());
    if (plan.dims != nodes.counts())
        throw std::invalid_argument("selection plan was built for different node counts");
    if (aligned_values.size() != plan.k())
        throw std::invalid_argument("interpolation value count does not match plan");

    const CMatrix ct = basis_matrix(nodes, samples.points);
    const Index n = ct.cols();
    LsSystem sys;
    sys.n_alpha = n;
    sys.n_beta = n - plan.k();
    sys.matrix.resize(samples.size(), sys.n_alpha + sys.n_beta);

    // D C^T, then subtract C^T H column by column where H is nonzero.
    sys.matrix.leftCols(n) = samples.values.asDiagonal() * ct;
    for (Index i = 0; i < plan.k(); ++i)
    {
        const Index c = plan.constrained_idx[static_cast<std::size_t>(i)];
        sys.matrix.col(c) -= ct.col(c) * aligned_values(i);
    }
    for (Index i = 0; i < sys.n_beta; ++i)
        sys.matrix.col(n + i) = -ct.col(plan.unconstrained_idx[static_cast<std::size_t>(i)]);
    return sys;
}

LsSystem assemble_scattered_free(const SampleSet &samples, const NodeAxes &nodes)
{
    check_nodes(nodes, samples.dim());
    const SelectionPlan plan = build_plan(nodes, InterpSet{CMatrix(0, nodes.dim()), CVector(0)});
    return assemble_scattered_interp(samples, nodes, plan, CVector(0));
}

LsSystem assemble_grid_free(const GridSampleSet &grid, const NodeAxes &nodes)
{
    check_grid(grid);
    check_nodes(nodes, grid.dim());
    const CMatrix ct = grid_basis(grid, nodes);
    LsSystem sys;
    sys.n_alpha = sys.n_beta = ct.cols();
    sys.matrix.resize(ct.rows(), 2 * ct.cols());
    sys.matrix << grid.values.asDiagonal() * ct, -ct;
    return sys;
}

LsSystem assemble_grid_interp(const GridSampleSet &grid, const NodeAxes &nodes, const CoeffTensor &node_values)
{
    check_grid(grid);
    check_nodes(nodes, grid.dim());
    if (node_values.dims != nodes.counts())
        throw std::invalid_argument("interpolation value tensor does not match node counts");
    (void)grid_node_values(grid, nodes); // nodes must sit on the sample lattice
    const CMatrix ct = grid_basis(grid, nodes);
    LsSystem sys;
    sys.n_alpha = ct.cols();
    sys.n_beta = 0;
    sys.matrix = grid.values.asDiagonal() * ct;
    for (Index c = 0; c < ct.cols(); ++c)
        sys.matrix.col(c) -= ct.col(c) * node_values[c];
    return sys;
}

UnitNormSolution min_unit_norm(const LsSystem &system)
{
    const CMatrix &m = system.matrix;
    if (m.cols() < 1)
        throw std::invalid_argument("LS system has no unknowns");
    if (m.rows() == 0)
    {
        UnitNormSolution s{CVector::Zero(m.cols()), 0.0};
        s.vector(m.cols() - 1) = 1.0;
        return s;
    }
    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge on a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " system (Frobenius norm " + std::to_string(m.norm()) + ")");
    const auto &sv = svd.singularValues();
    UnitNormSolution s;
    s.vector = svd.matrixV().col(m.cols() - 1);
    s.residual = m.rows() >= m.cols() ? sv(m.cols() - 1) : 0.0;

    // Several null directions: take the projection of the all-ones vector so
    // no coefficient is zeroed by the SVD's arbitrary basis choice.
    const Real cutoff = std::numeric_limits<Real>::epsilon() * Real(std::max(m.rows(), m.cols())) *
                        (sv.size() ? sv(0) : 0.0);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff)
        ++rank;
    if (m.cols() - rank > 1)
    {
        const auto null = svd.matrixV().rightCols(m.cols() - rank);
        const CVector proj = null * (null.adjoint() * CVector::Ones(m.cols()));
        if (proj.norm() > 1e-8)
            s.vector = proj.normalized();
    }

    Index lead = 0;
    Real best = -1;
    for (Index i = 0; i < s.vector.size(); ++i)
        if (std::abs(s.vector(i)) > best)
        {
            best = std::abs(s.vector(i));
            lead = i;
        }
    const Complex phase = std::conj(s.vector(lead)) / best;
    s.vector *= phase;
    s.vector(lead) = Complex(s.vector(lead).real(), 0.0);
    s.vector.normalize();
    return s;
}

ConstrainedFit solve_constrained(const SampleSet &samples, const NodeAxes &nodes, const InterpSet &interp)
{
    const SelectionPlan plan = build_plan(nodes, interp);
    const CVector aligned = plan.align(interp.values);
    const LsSystem sys = assemble_scattered_interp(samples, nodes, plan, aligned);
    const UnitNormSolution sol = min_unit_norm(sys);

    CoeffTensor alpha(nodes.counts(), sol.vector.head(sys.n_alpha));
    const CVector beta_c = constrained_beta(plan, alpha, aligned);
    CoeffTensor beta = reconstruct_beta(plan, beta_c, sol.vector.tail(sys.n_beta));

    std::vector<std::string> warnings;
    for (Index i = 0; i < plan.k(); ++i)
    {
        const Index c = plan.constrained_idx[static_cast<std::size_t>(i)];
        if (alpha[c] == Complex(0))
            warnings.push_back("alpha is zero at constrained index " + std::to_string(c) +
                               "; interpolation is not enforced there");
    }
    return {BarycentricModel(nodes, std::move(alpha), std::move(beta)), sol.residual, std::move(warnings)};
}

ConstrainedFit solve_grid_interp(const GridSampleSet &grid, const NodeAxes &nodes)
{
    const CoeffTensor h = grid_node_values(grid, nodes);
    const LsSystem sys = assemble_grid_interp(grid, nodes, h);
    const UnitNormSolution sol = min_unit_norm(sys);
    CoeffTensor alpha(nodes.counts(), sol.vector);
    CoeffTensor beta(nodes.counts(), alpha.data.cwiseProduct(h.data));
    std::vector<std::string> warnings;
    for (Index c = 0; c < alpha.size(); ++c)
        if (alpha[c] == Complex(0))
            warnings.push_back("alpha is zero at node index " + std::to_string(c) +
                               "; interpolation is not enforced there");
    return {BarycentricModel(nodes, std::move(alpha), std::move(beta)), sol.residual, std::move(warnings)};
}
} // namespace paaa
