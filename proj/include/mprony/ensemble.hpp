// Dirac ensembles on the d-torus [0,1)^d and their wrap-around geometry.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mprony {

using Complex = std::complex<double>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sign of the exponent in  z = exp(kExponentSign * 2 pi i t).
///
/// Moments are f(k) = sum_j c_j z_j^k, the Vandermonde matrix holds z_j^k and
/// kernel polynomials are evaluated at z = exp(kExponentSign * 2 pi i t).
/// This is the only place the convention is fixed; the Ingham quadratic form
/// uses the conjugate convention, which has the same Gram spectrum.
inline constexpr int kExponentSign = -1;

/// exp(kExponentSign * 2 pi i phase), with the phase reduced modulo 1 first.
Complex unimodular(double phase);

/// Points closer than this (wrap-around max-norm) are treated as coincident.
inline constexpr double kPointEqualityTolerance = 1e-12;

/// A point on the torus, stored by its canonical representative in [0,1)^d.
class TorusPoint {
public:
    /// Reduces every coordinate modulo 1. Throws on empty or non-finite input.
    explicit TorusPoint(std::vector<double> raw);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t s) const { return coords_[s]; }
    std::span<const double> coords() const { return coords_; }

    /// Shift by an arbitrary real vector, result reduced modulo 1.
    TorusPoint shifted(std::span<const double> offset) const;

private:
    std::vector<double> coords_;
};

/// Reduce a raw real vector modulo 1 into [0,1)^d.
TorusPoint canonicalize(std::span<const double> raw);

/// Per-coordinate wrap distance min_r |a - b + r|, always in [0, 1/2].
double wrap_distance_1d(double a, double b);

/// max_s min_{r in Z} |a_s - b_s + r|.
double wrap_distance(const TorusPoint& a, const TorusPoint& b);

/// Weighted sum of point masses  tau = sum_j c_j delta_{t_j}  on the torus.
///
/// Construction enforces M >= 1, a common dimension, nonzero coefficients and
/// pairwise distinct points (wrap distance >= kPointEqualityTolerance).
class DiracEnsemble {
public:
    DiracEnsemble(std::vector<TorusPoint> points, std::vector<Complex> coefficients);

    std::size_t dim() const { return points_.front().dim(); }
    std::size_t size() const { return points_.size(); }

    const std::vector<TorusPoint>& points() const { return points_; }
    const std::vector<Complex>& coefficients() const { return coefficients_; }

    /// Parameters z_j, one row per point (z_{j,s} = exp(sign * 2 pi i t_{j,s})).
    std::vector<std::vector<Complex>> parameters() const;

    /// All points translated by offset (mod 1), coefficients unchanged.
    DiracEnsemble shifted(std::span<const double> offset) const;

private:
    std::vector<TorusPoint> points_;
    std::vector<Complex> coefficients_;
};

struct SeparationReport {
    double q = 0.0;
    std::pair<std::size_t, std::size_t> argmin_pair{0, 0};
};

/// Wrap-around max-norm separation over all unordered pairs. Requires M >= 2.
SeparationReport separation(const DiracEnsemble& ensemble);

/// Separation that returns 1/2 for a single point, the largest value possible
/// on the unit torus. Used where a single spike is a legal input.
double separation_or_half(const DiracEnsemble& ensemble);

}  // namespace mprony
