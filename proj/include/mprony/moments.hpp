// Trigonometric moments of a Dirac ensemble and the structured matrices built
// from them: the Vandermonde matrix A_n, the multilevel Toeplitz matrix T_n
// and conditioning diagnostics of A_n A_n^*.
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mprony/ensemble.hpp"

namespace mprony {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using MultiIndex = std::vector<int>;

/// Default relative threshold for numerical rank decisions.
inline constexpr double kDefaultRankTolerance = 1e-8;

class InsufficientOrder : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The max-norm box {k : |k|_inf <= n}, signed ({-n..n}^d) or unsigned
/// ({0..n}^d). Enumeration is colexicographic: the first coordinate runs
/// fastest, so linear index = sum_s (k_s - lo) * w^s with w the side length.
class MultiIndexBox {
public:
    MultiIndexBox(std::size_t dim, int order, bool is_signed);

    std::size_t dim() const { return dim_; }
    int order() const { return order_; }
    bool is_signed() const { return signed_; }
    int lower() const { return signed_ ? -order_ : 0; }
    std::size_t side() const { return side_; }
    std::size_t size() const { return size_; }

    bool contains(std::span<const int> k) const;
    std::size_t linear_index(std::span<const int> k) const;
    MultiIndex multi_index(std::size_t linear) const;
    std::vector<MultiIndex> enumerate() const;

    bool operator==(const MultiIndexBox&) const = default;

private:
    std::size_t dim_;
    int order_;
    bool signed_;
    std::size_t side_;
    std::size_t size_;
};

/// f(k) = sum_j c_j z_j^k over a signed box, in box enumeration order.
struct MomentTable {
    MultiIndexBox box;
    std::vector<Complex> values;

    Complex at(std::span<const int> k) const { return values[box.linear_index(k)]; }
};

/// A_n = (z_j^k), rows j = 1..M, columns k over the unsigned box of order n.
struct VandermondeMatrix {
    MultiIndexBox box;
    CMatrix entries;
};

/// T_n with entry (k, l) = f(l - k), k and l over the unsigned box of order n.
/// With A_n as above this is exactly A_n^* diag(c) A_n.
struct ToeplitzMatrix {
    MultiIndexBox box;
    CMatrix entries;
};

MomentTable compute_moments(const DiracEnsemble& ensemble, int order);

/// Matrix (z_j^k) with rows over points and columns over an arbitrary index list.
CMatrix evaluation_matrix(std::span<const TorusPoint> points, std::span<const MultiIndex> indices);

VandermondeMatrix build_vandermonde(const DiracEnsemble& ensemble, int order);

/// Throws InsufficientOrder if the table is unsigned or of order < `order`.
ToeplitzMatrix build_toeplitz(const MomentTable& moments, int order);

/// ||T_n - A_n^* D A_n||_F for D = diag(coefficients).
double factorization_residual(const DiracEnsemble& ensemble, int order);
double factorization_residual(const ToeplitzMatrix& toeplitz, const VandermondeMatrix& vandermonde,
                              std::span<const Complex> diagonal);

struct RankInfo {
    std::size_t rank = 0;
    Eigen::VectorXd singular_values;  // descending
    double threshold = 0.0;           // rel_tol * sigma_max
    /// sigma_r / sigma_{r+1}; when nothing is discarded, sigma_r / threshold.
    double gap = 0.0;
};

/// Counts singular values strictly above rel_tol * sigma_max.
RankInfo numerical_rank(const CMatrix& matrix, double rel_tol = kDefaultRankTolerance);

/// Summarizes a descending singular spectrum against a relative threshold.
RankInfo rank_from_spectrum(Eigen::VectorXd singular_values, double rel_tol);

struct ConditioningReport {
    std::size_t d = 0;
    int n = 0;
    double q = 0.0;
    double kappa = 0.0;  // +inf when A_n is rank deficient
    bool rank_deficient = false;
    std::optional<std::size_t> grid_points_per_axis;  // set for d-fold equispaced grids
    std::optional<double> theoretical;                // (ceil((n+1)q)/floor((n+1)q))^d
    std::optional<double> relative_deviation;         // |kappa - theoretical| / theoretical
};

/// kappa(A_n A_n^*) as the ratio of its extreme eigenvalues, plus the
/// closed-form value when the points form a Cartesian equispaced grid.
ConditioningReport condition_report(const DiracEnsemble& ensemble, int order,
                                    double rel_tol = kDefaultRankTolerance);

/// Number of points per axis if the ensemble is a d-fold product of m
/// equispaced points (any offset per axis), else nullopt.
std::optional<std::size_t> equispaced_grid_size(const DiracEnsemble& ensemble);

/// (ceil(x)/floor(x))^d for the oversampling factor x = (n+1) q. nullopt when
/// x is an integer or x < 1, where the formula does not apply.
std::optional<double> equispaced_kappa_formula(std::size_t d, double oversampling);

}  // namespace mprony
