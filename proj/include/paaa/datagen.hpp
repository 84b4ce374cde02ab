#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "paaa/lsq.hpp"

namespace paaa
{
/// Portable uniform draws: std::mt19937_64 (fully specified by the standard)
/// with a 53-bit mantissa mapping, so fixtures match across platforms.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1).
    Real uniform() { return static_cast<Real>(engine_() >> 11) * 0x1.0p-53; }
    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 engine_;
};

/// MATLAB "peaks":
/// 3(1-x)^2 e^{-x^2-(y+1)^2} - 10(x/5 - x^3 - y^5) e^{-x^2-y^2} - e^{-(x+1)^2-y^2}/3.
Real peaks(Real x, Real y);

/// n points lo + (hi - lo) i / (n - 1), endpoints exact.
std::vector<Real> linspace(Real lo, Real hi, Index n);

GridSampleSet gen_peaks_grid(Index n_per_axis, Real lo = -3.0, Real hi = 3.0);

struct GapSpec
{
    std::vector<std::array<Real, 2>> centers;
    std::vector<Real> radii;
    Real target_removed_fraction = 0.22;
};

/// Three circular gaps removing about 22% of the 40 x 40 peaks grid on [-3, 3]^2.
GapSpec default_gaps();

struct GapSplit
{
    SampleSet train;
    SampleSet heldout;
    Real removed_fraction = 0;
};

/// Grid points strictly inside any gap circle go to `heldout`, the rest to
/// `train`; both keep row-major lattice order.
GapSplit gen_peaks_with_gaps(Index n_per_axis, Real lo, Real hi, const GapSpec &gaps);

struct RationalFixture
{
    SampleSet samples;
    BarycentricModel truth;
};

/// Random d-variate rational function of the given per-axis orders (nodes per
/// axis = order + 1, set off the real box by an imaginary shift) sampled at K
/// uniform points of [-1, 1]^d. Points with |denominator| < 1e-3 are redrawn.
RationalFixture gen_rational_fixture(const std::vector<Index> &orders, Index K, std::uint64_t seed);

/// K further uniform points of [-1, 1]^d evaluated through `truth`, using the
/// same rejection rule.
SampleSet sample_model(const BarycentricModel &truth, Index K, std::uint64_t seed);
} // namespace paaa
