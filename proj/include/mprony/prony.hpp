// Multivariate Prony identification: numerical kernel of T_n, its common
// zeros on the torus, least-squares coefficient recovery, and the rank
// stabilization / variety identification property checks.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mprony/ensemble.hpp"
#include "mprony/moments.hpp"

namespace mprony {

/// Orthonormal basis of the numerical null space of a matrix whose columns
/// are indexed by the unsigned box of order n; each column is the coefficient
/// vector of a polynomial of max-degree n.
struct KernelBasis {
    MultiIndexBox box{1, 0, false};
    CMatrix vectors;     // N x K
    CMatrix complement;  // N x (N - K), the retained right singular vectors
    RankInfo rank;

    std::size_t dimension() const { return static_cast<std::size_t>(vectors.cols()); }
    bool empty() const { return vectors.cols() == 0; }
};

/// Right singular vectors with sigma_i <= rel_tol * sigma_max.
KernelBasis kernel_basis(const CMatrix& matrix, const MultiIndexBox& box,
                         double rel_tol = kDefaultRankTolerance);
KernelBasis kernel_basis(const ToeplitzMatrix& toeplitz, double rel_tol = kDefaultRankTolerance);

/// Monomials z^k over the box, z = exp(kExponentSign 2 pi i t).
CVector monomials(const MultiIndexBox& box, const TorusPoint& t);

/// S(t) = sum_i |p_i(z)|^2 over the kernel basis polynomials.
double spectral_function(const KernelBasis& basis, const TorusPoint& t);

/// S on the tensor grid {i / g}^d, colexicographic order, evaluated as
/// N - sum |c(z)|^2 over the complement (clamped at zero). Accurate to
/// roundoff relative to N, which is what coarse screening needs.
std::vector<double> spectral_function_grid(const KernelBasis& basis, std::size_t points_per_axis);

struct ExtractOptions {
    std::size_t points_per_axis = 0;  // 0: 8 n
    double screen_fraction = 0.5;     // keep grid minima with S <= fraction * max S
    int max_iterations = 100;
    double merge_radius = 0.0;        // 0: 1 / (16 n)
    double accept_tolerance = 0.0;    // 0: 1e-16 * sum_i ||p_i||^2 = 1e-16 K
};

struct Variety {
    std::vector<TorusPoint> zeros;
    std::vector<double> residuals;
    std::size_t candidates = 0;  // grid minima passed to refinement
    std::vector<std::string> warnings;

    std::size_t size() const { return zeros.size(); }
};

/// Grid screening of S, damped Gauss-Newton refinement of each candidate on
/// t -> (p_i(z(t)))_i, merge within the merge radius, acceptance by residual.
Variety extract_variety(const KernelBasis& basis, const ExtractOptions& options = {});

class RecoveryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MatchReport {
    /// For each ground-truth point the recovered index, or -1 if unmatched.
    std::vector<std::int64_t> assignment;
    std::vector<double> wrap_errors;
    std::vector<double> coefficient_errors;           // |c_rec - c_true|
    std::vector<double> relative_coefficient_errors;  // |c_rec - c_true| / |c_true|
    double max_wrap_error = 0.0;
    double max_relative_coefficient_error = 0.0;
    std::size_t unmatched_truth = 0;
    std::size_t unmatched_recovered = 0;
};

enum class RecoveryStatus { Success, EmptyKernel, EmptyVariety, CountMismatch, LeastSquaresFailure };

std::string to_string(RecoveryStatus status);

struct RecoveryResult {
    RecoveryStatus status = RecoveryStatus::Success;
    std::string message;
    std::vector<std::string> warnings;
    std::size_t d = 0;
    int n = 0;
    std::size_t kernel_dimension = 0;
    std::size_t estimated_size = 0;  // (n+1)^d - kernel dimension
    RankInfo toeplitz_rank;
    Variety variety;
    std::vector<Complex> coefficients;
    std::vector<bool> spurious;  // |c_j| < 1e-10 max |c|
    double moment_residual = 0.0;
    double relative_moment_residual = 0.0;
    std::optional<MatchReport> matched;

    bool succeeded() const { return status == RecoveryStatus::Success; }
};

/// Least squares for sum_j c_j z_j^k = f(k) over the signed box. Throws
/// RecoveryError when the evaluation matrix is rank deficient.
RecoveryResult recover_coefficients(const MomentTable& moments, const Variety& variety);

/// Optimal assignment under wrap distance (Hungarian method).
MatchReport match_to_truth(const std::vector<TorusPoint>& recovered, const std::vector<Complex>& coefficients,
                           const DiracEnsemble& truth);

struct PipelineOptions {
    std::optional<int> order;  // defaults to the moment table order
    double rel_tol = kDefaultRankTolerance;
    ExtractOptions extract;
};

/// build_toeplitz -> kernel_basis -> extract_variety -> recover_coefficients.
/// Stage failures come back as a non-success status, never as exceptions.
RecoveryResult full_pipeline(const MomentTable& moments, const PipelineOptions& options = {},
                             const DiracEnsemble* truth = nullptr);

struct RankSweepReport {
    std::vector<std::size_t> ranks;  // rank A_l, l = 0..n_max
    std::vector<double> gaps;
    std::size_t ensemble_size = 0;
    bool nondecreasing = true;
    bool strictly_increasing_until_stable = true;
    std::optional<int> first_stable;  // first l with rank A_l = rank A_{l+1}
    bool stable_rank_is_size = false;
    bool constant_after_stable = true;

    bool holds() const
    {
        return nondecreasing && strictly_increasing_until_stable && first_stable && stable_rank_is_size &&
               constant_after_stable;
    }
};

RankSweepReport rank_stabilization_check(const DiracEnsemble& ensemble, int n_max,
                                         double rel_tol = kDefaultRankTolerance);

struct VarietyCheckReport {
    bool applicable = false;  // rank A_n = M
    std::size_t rank_an = 0;
    double max_at_truth = 0.0;          // max_j S(t_j) for ker A_{n+1}
    double min_off_parameter = 0.0;     // min S over probes and grid points >= q/4 away
    std::size_t probes = 0;
    std::size_t grid_points = 0;
    double kernel_inclusion_residual = 0.0;  // max ||T_n v|| / ||T_n|| over v in ker A_n
    bool kernels_equal = false;              // dim ker A_n = dim ker T_n
    bool passed = false;
};

/// Checks that the torus zeros of ker A_{n+1} are exactly the ensemble
/// points, given rank A_n = M.
VarietyCheckReport variety_identification_check(const DiracEnsemble& ensemble, int n, std::size_t probes = 1000,
                                                std::uint64_t seed = 7, double rel_tol = kDefaultRankTolerance);

}  // namespace mprony
