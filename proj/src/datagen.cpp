#include "paaa/datagen.hpp"

#include <cmath>

namespace paaa
{
Real peaks(Real x, Real y)
{
    return 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0)) -
           10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y) -
           std::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
}

std::vector<Real> linspace(Real lo, Real hi, Index n)
{
    if (n < 2)
        throw std::invalid_argument("linspace needs at least two points");
    std::vector<Real> v(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(n - 1);
    v.back() = hi;
    return v;
}

GridSampleSet gen_peaks_grid(Index n_per_axis, Real lo, Real hi)
{
    if (n_per_axis < 2)
        throw std::invalid_argument("peaks grid needs at least 2 points per axis");
    const auto xs = linspace(lo, hi, n_per_axis);
    GridSampleSet grid;
    CVector axis(n_per_axis);
    for (Index i = 0; i < n_per_axis; ++i)
        axis(i) = xs[static_cast<std::size_t>(i)];
    grid.axes = {axis, axis};
    grid.values.resize(n_per_axis * n_per_axis);
    for (Index i = 0; i < n_per_axis; ++i)
        for (Index j = 0; j < n_per_axis; ++j)
            grid.values(i * n_per_axis + j) = peaks(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
    return grid;
}

GapSpec default_gaps()
{
    GapSpec g;
    g.centers = {{-1.6, 1.4}, {1.5, 1.8}, {1.7, -1.6}};
    g.radii = {1.0, 0.85, 0.95};
    g.target_removed_fraction = 0.22;
    return g;
}

GapSplit gen_peaks_with_gaps(Index n_per_axis, Real lo, Real hi, const GapSpec &gaps)
{
    if (gaps.centers.size() != gaps.radii.size())
        throw std::invalid_argument("gap spec has " + std::to_string(gaps.centers.size()) + " centers and " +
                                    std::to_string(gaps.radii.size()) + " radii");
    for (Real r : gaps.radii)
        if (!(r >= 0))
            throw std::invalid_argument("gap radius must be non-negative");

    const SampleSet full = gen_peaks_grid(n_per_axis, lo, hi).flatten();
    std::vector<Index> keep, drop;
    for (Index k = 0; k < full.size(); ++k)
    {
        const Real x = full.points(k, 0).real();
        const Real y = full.points(k, 1).real();
        bool inside = false;
        for (std::size_t c = 0; c < gaps.centers.size(); ++c)
        {
            const Real dx = x - gaps.centers[c][0];
            const Real dy = y - gaps.centers[c][1];
            inside = inside || dx * dx + dy * dy < gaps.radii[c] * gaps.radii[c];
        }
        (inside ? drop : keep).push_back(k);
    }
    if (keep.empty())
        throw std::invalid_argument("gaps remove every grid point");

    auto pick = [&](const std::vector<Index> &idx) {
        SampleSet s{CMatrix(Index(idx.size()), 2), CVector(Index(idx.size()))};
        for (std::size_t i = 0; i < idx.size(); ++i)
        {
            s.points.row(Index(i)) = full.points.row(idx[i]);
            s.values(Index(i)) = full.values(idx[i]);
        }
        return s;
    };
    return {pick(keep), pick(drop), static_cast<Real>(drop.size()) / static_cast<Real>(full.size())};
}

namespace
{
constexpr Real kMinDenominator = 1e-3;
constexpr int kMaxRedraws = 1000;

SampleSet draw_samples(const BarycentricModel &truth, Index K, Rng &rng)
{
    const Index d = truth.dim();
    SampleSet s{CMatrix(K, d), CVector(K)};
    int redraws = 0;
    for (Index k = 0; k < K; ++k)
    {
        for (;;)
        {
            Point z(d);
            for (Index j = 0; j < d; ++j)
                z(j) = rng.uniform(-1.0, 1.0);
            const auto [n, den] = eval_numer_denom(truth, z);
            if (std::abs(den) >= kMinDenominator)
            {
                s.points.row(k) = z.transpose();
                s.values(k) = n / den;
                break;
            }
            if (++redraws > kMaxRedraws)
                throw std::runtime_error("rational fixture: more than 1000 redraws near poles");
        }
    }
    return s;
}
} // namespace

RationalFixture gen_rational_fixture(const std::vector<Index> &orders, Index K, std::uint64_t seed)
{
    if (orders.empty())
        throw std::invalid_argument("rational fixture needs at least one variable");
    Rng rng(seed);
    NodeAxes nodes;
    std::vector<Index> counts;
    for (Index order : orders)
    {
        if (order < 0)
            throw std::invalid_argument("orders must be non-negative");
        const Index n = order + 1;
        CVector axis(n);
        for (Index i = 0; i < n; ++i)
        {
            const Real base = n == 1 ? 0.0 : -1.0 + 2.0 * static_cast<Real>(i) / static_cast<Real>(n - 1);
            axis(i) = Complex(base + rng.uniform(-0.1, 0.1), rng.uniform(0.3, 0.7));
        }
        nodes.axes.push_back(axis);
        counts.push_back(n);
    }
    if (K < 2 * product(counts))
        throw std::invalid_argument("rational fixture needs K >= 2 * number of nodes");
    CVector a(product(counts)), b(product(counts));
    for (Index i = 0; i < a.size(); ++i)
    {
        a(i) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        b(i) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    BarycentricModel truth(nodes, CoeffTensor(counts, a), CoeffTensor(counts, b));
    SampleSet samples = draw_samples(truth, K, rng);
    return {std::move(samples), std::move(truth)};
}

SampleSet sample_model(const BarycentricModel &truth, Index K, std::uint64_t seed)
{
    Rng rng(seed);
    return draw_samples(truth, K, rng);
}
} // namespace paaa
