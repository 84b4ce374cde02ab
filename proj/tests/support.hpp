#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the LS assembly code it is used to check.

#include <array>
#include <utility>
#include <vector>

#include "paaa/paaa.hpp"

namespace paaa::testing
{
/// g^{(i)}(z) written out case by case.
inline Complex basis_term(const CVector &axis, Index i, const Complex &z)
{
    bool on_node = false;
    for (Index p = 0; p < axis.size(); ++p)
        on_node = on_node || (axis(p).real() == z.real() && axis(p).imag() == z.imag());
    if (!on_node)
        return 1.0 / (z - axis(i));
    return (axis(i).real() == z.real() && axis(i).imag() == z.imag()) ? 1.0 : 0.0;
}

/// (n(z), d(z)) by direct summation over every multi-index.
inline std::pair<Complex, Complex> direct_numer_denom(const NodeAxes &nodes, const CVector &alpha, const CVector &beta,
                                                      const Point &z)
{
    const Index d = nodes.dim();
    std::vector<Index> idx(static_cast<std::size_t>(d), 0);
    Complex n = 0, den = 0;
    for (Index flat = 0; flat < alpha.size(); ++flat)
    {
        // idx is the row-major multi-index of `flat`
        Complex term = 1;
        for (Index j = 0; j < d; ++j)
            term *= basis_term(nodes.axes[std::size_t(j)], idx[std::size_t(j)], z(j));
        n += beta(flat) * term;
        den += alpha(flat) * term;
        for (Index j = d - 1; j >= 0; --j)
        {
            if (++idx[std::size_t(j)] < nodes.axes[std::size_t(j)].size())
                break;
            idx[std::size_t(j)] = 0;
        }
    }
    return {n, den};
}

/// sum_k |f_k d(Z_k) - n(Z_k)|^2 through the direct evaluator.
inline Real linearized_objective(const SampleSet &s, const NodeAxes &nodes, const CVector &alpha, const CVector &beta)
{
    Real acc = 0;
    for (Index k = 0; k < s.size(); ++k)
    {
        const auto [n, d] = direct_numer_denom(nodes, alpha, beta, s.point(k));
        acc += std::norm(s.values(k) * d - n);
    }
    return acc;
}

inline Complex random_complex(Rng &rng, Real scale = 1.0)
{
    return {rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline CVector random_vector(Rng &rng, Index n)
{
    CVector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = random_complex(rng);
    return v;
}

inline CVector random_unit_vector(Rng &rng, Index n) { return random_vector(rng, n).normalized(); }

/// Nine-sample two-variable example with nodes {-1,1} x {-1,2} and
/// interpolation at (-1,2), (1,-1); data from f = (x^2+xy+y+1)/(x+y+5).
struct SmallExample
{
    SampleSet samples;
    NodeAxes nodes;
    InterpSet interp;
};

inline Real small_example_f(Real x, Real y) { return (x * x + x * y + y + 1) / (x + y + 5); }

inline SmallExample small_example()
{
    const std::array<std::array<Real, 2>, 9> pts = {
        {{-2, -2}, {-2, 1}, {-1, 1}, {-1, 2}, {0, -1}, {0, 2}, {1, -1}, {2, -2}, {2, 2}}};
    SmallExample ex;
    ex.samples.points.resize(9, 2);
    ex.samples.values.resize(9);
    for (Index k = 0; k < 9; ++k)
    {
        ex.samples.points(k, 0) = pts[std::size_t(k)][0];
        ex.samples.points(k, 1) = pts[std::size_t(k)][1];
        ex.samples.values(k) = small_example_f(pts[std::size_t(k)][0], pts[std::size_t(k)][1]);
    }
    ex.nodes.axes = {CVector(2), CVector(2)};
    ex.nodes.axes[0] << -1.0, 1.0;
    ex.nodes.axes[1] << -1.0, 2.0;
    ex.interp.points.resize(2, 2);
    ex.interp.points << Complex(-1), Complex(2), Complex(1), Complex(-1);
    ex.interp.values.resize(2);
    ex.interp.values << small_example_f(-1, 2), small_example_f(1, -1);
    return ex;
}

/// The 9 x 6 matrix of the worked example as exact fractions.
inline CMatrix small_example_matrix()
{
    CMatrix m(9, 6);
    m << 7.0, 5.0 / 3, 7.0 / 3, 7.0 / 12, -1.0, -1.0 / 12, //
        -1.0 / 2, 2.0 / 3, -1.0 / 6, 1.0 / 3, 1.0 / 2, -1.0 / 3, //
        1.0 / 5, -1.0 / 15, 0, 0, -1.0 / 2, 0, //
        0, 0, 0, 0, 0, 0, //
        0, 0, 0, 0, -1, 0, //
        0, 2.0 / 21, 0, -3.0 / 7, 0, 1, //
        0, 0, 0, 0, 0, 0, //
        1.0 / 15, 2.0 / 45, 1.0 / 5, 1.0 / 20, 1.0 / 3, 1.0 / 4, //
        0, 8.0 / 27, 0, 11.0 / 9, 0, -1;
    return m;
}

/// Random scattered problem: K complex points in C^d, nodes drawn from the
/// coordinates of a few samples (so those samples lie in the node product)
/// plus random extras, interpolation at every sample in the node product.
struct RandomProblem
{
    SampleSet samples;
    NodeAxes nodes;
    InterpSet interp;
};

inline RandomProblem random_problem(Rng &rng, Index d, Index K, Index anchors, Index extra)
{
    RandomProblem p;
    p.samples.points.resize(K, d);
    p.samples.values = random_vector(rng, K);
    for (Index k = 0; k < K; ++k)
        for (Index j = 0; j < d; ++j)
            p.samples.points(k, j) = random_complex(rng, 2.0);
    p.nodes = NodeAxes(d);
    for (Index a = 0; a < anchors; ++a)
        for (Index j = 0; j < d; ++j)
            p.nodes.insert(j, p.samples.points(a, j));
    for (Index e = 0; e < extra; ++e)
        for (Index j = 0; j < d; ++j)
            p.nodes.insert(j, random_complex(rng, 2.0));
    std::vector<Index> hits;
    for (Index k = 0; k < K; ++k)
        if (p.nodes.flat_index_of(p.samples.point(k)))
            hits.push_back(k);
    p.interp.points.resize(Index(hits.size()), d);
    p.interp.values.resize(Index(hits.size()));
    // reversed so plan alignment is exercised
    for (std::size_t i = 0; i < hits.size(); ++i)
    {
        const Index k = hits[hits.size() - 1 - i];
        p.interp.points.row(Index(i)) = p.samples.points.row(k);
        p.interp.values(Index(i)) = p.samples.values(k);
    }
    return p;
}

/// Random lattice with `shape` points per axis and smooth complex values.
inline GridSampleSet random_grid(Rng &rng, const std::vector<Index> &shape)
{
    GridSampleSet g;
    for (Index n : shape)
    {
        CVector axis(n);
        for (Index i = 0; i < n; ++i)
            axis(i) = -1.0 + 2.0 * Real(i) / Real(n - 1) + rng.uniform(-0.2, 0.2) / Real(n);
        g.axes.push_back(axis);
    }
    const SampleSet flat = [&] {
        GridSampleSet tmp = g;
        tmp.values = CVector::Zero(product(shape));
        return tmp.flatten();
    }();
    const Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng);
    g.values.resize(flat.size());
    for (Index k = 0; k < flat.size(); ++k)
    {
        Complex s = 0;
        for (Index j = 0; j < flat.dim(); ++j)
            s += flat.points(k, j) * Real(j + 1);
        g.values(k) = std::exp(a * s) / (1.0 + 0.3 * s * s + c) + b;
    }
    return g;
}
} // namespace paaa::testing
