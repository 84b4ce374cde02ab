#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace paaa
{
template <typename Real>
using ComplexT = std::complex<Real>;
template <typename Real>
using CVectorT = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrixT = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Real = double;
using Complex = ComplexT<Real>;
using CVector = CVectorT<Real>;
using CMatrix = CMatrixT<Real>;
using Index = Eigen::Index;

/// A point in C^d.
using Point = CVector;

/// Raised when evaluation hits a zero denominator with a nonzero numerator.
class PoleError : public std::domain_error
{
  public:
    PoleError(Point point, const std::string &what) : std::domain_error(what), point_(std::move(point)) {}
    const Point &point() const noexcept { return point_; }

  private:
    Point point_;
};

/// Raised when numerator and denominator are both exactly zero.
class IndeterminateError : public std::domain_error
{
  public:
    IndeterminateError(Point point, const std::string &what) : std::domain_error(what), point_(std::move(point)) {}
    const Point &point() const noexcept { return point_; }

  private:
    Point point_;
};

/// SVD failure or similar numerical breakdown.
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string format_point(const Point &p);

/// Exact complex equality on both parts.
inline bool exactly_equal(const Complex &a, const Complex &b) noexcept
{
    return a.real() == b.real() && a.imag() == b.imag();
}

inline bool all_finite(const Complex &z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}
} // namespace paaa
