#include "mprony/prony.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace mprony {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// z^k for k = 0..n on the grid points g / G of one axis
std::vector<std::vector<Complex>> axis_powers(int n, std::size_t points_per_axis)
{
    std::vector<std::vector<Complex>> w(points_per_axis, std::vector<Complex>(static_cast<std::size_t>(n) + 1));
    for (std::size_t g = 0; g < points_per_axis; ++g) {
        for (int k = 0; k <= n; ++k) {
            // k g / G reduced exactly in integer arithmetic
            const auto num = (static_cast<std::size_t>(k) * g) % points_per_axis;
            w[g][static_cast<std::size_t>(k)] =
                unimodular(static_cast<double>(num) / static_cast<double>(points_per_axis));
        }
    }
    return w;
}

// Evaluates one polynomial (coefficients over the unsigned box) on the full
// tensor grid by contracting one axis at a time.
std::vector<Complex> evaluate_on_grid(const Complex* coeffs, const MultiIndexBox& box,
                                      const std::vector<std::vector<Complex>>& w)
{
    const std::size_t side = box.side();
    const std::size_t grid = w.size();
    const std::size_t d = box.dim();
    std::vector<Complex> cur(coeffs, coeffs + box.size());
    std::size_t stride = 1;
    std::size_t outer = box.size() / side;
    for (std::size_t s = 0; s < d; ++s) {
        std::vector<Complex> next(stride * grid * outer);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t g = 0; g < grid; ++g) {
                for (std::size_t i = 0; i < stride; ++i) {
                    Complex acc = 0.0;
                    for (std::size_t k = 0; k < side; ++k) acc += cur[i + stride * (k + side * o)] * w[g][k];
                    next[i + stride * (g + grid * o)] = acc;
                }
            }
        }
        cur = std::move(next);
        stride *= grid;
        if (s + 1 < d) outer /= side;
    }
    return cur;
}

std::vector<std::size_t> grid_coordinates(std::size_t flat, std::size_t d, std::size_t grid)
{
    std::vector<std::size_t> idx(d);
    for (std::size_t s = 0; s < d; ++s) {
        idx[s] = flat % grid;
        flat /= grid;
    }
    return idx;
}

bool is_local_minimum(const std::vector<double>& values, std::size_t flat, std::size_t d, std::size_t grid)
{
    const auto center = grid_coordinates(flat, d, grid);
    const double here = values[flat];
    std::size_t neighbours = 1;
    for (std::size_t s = 0; s < d; ++s) neighbours *= 3;
    for (std::size_t code = 0; code < neighbours; ++code) {
        std::size_t rest = code;
        std::size_t other = 0;
        std::size_t weight = 1;
        bool self = true;
        for (std::size_t s = 0; s < d; ++s) {
            const std::size_t step = rest % 3;  // 0: -1, 1: 0, 2: +1
            rest /= 3;
            if (step != 1) self = false;
            const std::size_t coord = (center[s] + grid + step - 1) % grid;
            other += coord * weight;
            weight *= grid;
        }
        if (!self && values[other] < here) return false;
    }
    return true;
}

struct Evaluation {
    double value = 0.0;
    CVector residual;
    CMatrix jacobian;  // K x d
};

Evaluation evaluate_residual(const KernelBasis& basis, const std::vector<MultiIndex>& indices,
                             const std::vector<double>& t, bool with_jacobian)
{
    const std::size_t d = basis.box.dim();
    const auto n_mono = static_cast<Eigen::Index>(indices.size());
    const Eigen::Index cols = with_jacobian ? static_cast<Eigen::Index>(d) + 1 : 1;
    CMatrix probe(n_mono, cols);
    for (Eigen::Index i = 0; i < n_mono; ++i) {
        const auto& k = indices[static_cast<std::size_t>(i)];
        double phase = 0.0;
        for (std::size_t s = 0; s < d; ++s) {
            const double term = k[s] * t[s];
            phase += term - std::round(term);
        }
        const Complex z = unimodular(phase);
        probe(i, 0) = z;
        if (with_jacobian) {
            for (std::size_t s = 0; s < d; ++s) {
                probe(i, static_cast<Eigen::Index>(s) + 1) =
                    z * Complex(0.0, kExponentSign * kTwoPi * k[s]);
            }
        }
    }
    const CMatrix out = basis.vectors.transpose() * probe;
    Evaluation eval;
    eval.residual = out.col(0);
    eval.value = eval.residual.squaredNorm();
    if (with_jacobian) eval.jacobian = out.rightCols(static_cast<Eigen::Index>(d));
    return eval;
}

std::vector<double> wrap_coordinates(std::vector<double> t)
{
    for (double& ts : t) {
        ts -= std::floor(ts);
        if (ts >= 1.0) ts = 0.0;
    }
    return t;
}

struct Refined {
    std::vector<double> t;
    double value = 0.0;
    bool converged = false;
};

// Damped Gauss-Newton on the complex residual map, treated as a real least
// squares problem in t. Stops when the step is negligible or when no step
// length reduces S any further (roundoff floor).
Refined gauss_newton(const KernelBasis& basis, const std::vector<MultiIndex>& indices, std::vector<double> t,
                     int max_iterations)
{
    const auto d = static_cast<Eigen::Index>(basis.box.dim());
    Evaluation eval = evaluate_residual(basis, indices, t, true);
    for (int it = 0; it < max_iterations; ++it) {
        if (eval.value == 0.0) return {t, 0.0, true};
        const Eigen::MatrixXd normal = (eval.jacobian.adjoint() * eval.jacobian).real();
        const Eigen::VectorXd grad = (eval.jacobian.adjoint() * eval.residual).real();
        Eigen::VectorXd step = normal.ldlt().solve(-grad);
        if (!step.allFinite()) {
            const double lambda = 1e-12 * std::max(1.0, normal.diagonal().maxCoeff());
            step = (normal + lambda * Eigen::MatrixXd::Identity(d, d)).ldlt().solve(-grad);
        }
        if (!step.allFinite()) return {t, eval.value, false};

        double alpha = 1.0;
        bool decreased = false;
        std::vector<double> trial(t.size());
        Evaluation trial_eval;
        for (int halving = 0; halving < 40; ++halving) {
            for (Eigen::Index s = 0; s < d; ++s) {
                trial[static_cast<std::size_t>(s)] = t[static_cast<std::size_t>(s)] + alpha * step(s);
            }
            trial = wrap_coordinates(trial);
            trial_eval = evaluate_residual(basis, indices, trial, true);
            if (trial_eval.value < eval.value) {
                decreased = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!decreased) return {t, eval.value, true};
        const double moved = alpha * step.cwiseAbs().maxCoeff();
        t = trial;
        eval = std::move(trial_eval);
        if (moved < 1e-15) return {t, eval.value, true};
    }
    return {t, eval.value, false};
}

}  // namespace

KernelBasis kernel_basis(const CMatrix& matrix, const MultiIndexBox& box, double rel_tol)
{
    if (static_cast<std::size_t>(matrix.cols()) != box.size()) {
        throw DimensionMismatch("kernel_basis: matrix columns do not match the monomial box");
    }
    KernelBasis basis;
    basis.box = box;
    Eigen::BDCSVD<CMatrix> svd(matrix, Eigen::ComputeFullV);
    basis.rank = rank_from_spectrum(svd.singularValues(), rel_tol);
    const auto r = static_cast<Eigen::Index>(basis.rank.rank);
    const CMatrix& v = svd.matrixV();
    basis.complement = v.leftCols(r);
    basis.vectors = v.rightCols(v.cols() - r);
    return basis;
}

KernelBasis kernel_basis(const ToeplitzMatrix& toeplitz, double rel_tol)
{
    return kernel_basis(toeplitz.entries, toeplitz.box, rel_tol);
}

CVector monomials(const MultiIndexBox& box, const TorusPoint& t)
{
    if (t.dim() != box.dim()) throw DimensionMismatch("monomials: point dimension does not match box");
    CVector a(static_cast<Eigen::Index>(box.size()));
    for (std::size_t i = 0; i < box.size(); ++i) {
        const MultiIndex k = box.multi_index(i);
        double phase = 0.0;
        for (std::size_t s = 0; s < k.size(); ++s) {
            const double term = k[s] * t[s];
            phase += term - std::round(term);
        }
        a(static_cast<Eigen::Index>(i)) = unimodular(phase);
    }
    return a;
}

double spectral_function(const KernelBasis& basis, const TorusPoint& t)
{
    if (basis.empty()) return 0.0;
    const CVector a = monomials(basis.box, t);
    return (basis.vectors.transpose() * a).squaredNorm();
}

std::vector<double> spectral_function_grid(const KernelBasis& basis, std::size_t points_per_axis)
{
    const std::size_t d = basis.box.dim();
    std::size_t total = 1;
    for (std::size_t s = 0; s < d; ++s) total *= points_per_axis;
    const auto w = axis_powers(basis.box.order(), points_per_axis);
    const double full = static_cast<double>(basis.box.size());
    std::vector<double> energy(total, 0.0);
    // [vectors complement] is unitary and |z^k| = 1, so S = N - sum |c(z)|^2
    // over the complement; pick whichever side is cheaper.
    const bool use_kernel = basis.vectors.cols() <= basis.complement.cols();
    const CMatrix& side = use_kernel ? basis.vectors : basis.complement;
    for (Eigen::Index c = 0; c < side.cols(); ++c) {
        const CVector col = side.col(c);
        const auto vals = evaluate_on_grid(col.data(), basis.box, w);
        for (std::size_t i = 0; i < total; ++i) energy[i] += std::norm(vals[i]);
    }
    if (use_kernel) return energy;
    for (auto& e : energy) e = std::max(0.0, full - e);
    return energy;
}

Variety extract_variety(const KernelBasis& basis, const ExtractOptions& options)
{
    Variety variety;
    if (basis.empty()) {
        variety.warnings.push_back("empty kernel basis");
        return variety;
    }
    const std::size_t d = basis.box.dim();
    const int n = std::max(1, basis.box.order());
    const std::size_t grid = options.points_per_axis ? options.points_per_axis : static_cast<std::size_t>(8 * n);
    const double merge_radius = options.merge_radius > 0.0 ? options.merge_radius : 1.0 / (16.0 * n);
    const double accept =
        options.accept_tolerance > 0.0 ? options.accept_tolerance : 1e-16 * static_cast<double>(basis.dimension());

    const auto values = spectral_function_grid(basis, grid);
    const double max_value = *std::max_element(values.begin(), values.end());
    const double screen = options.screen_fraction * max_value;

    const auto indices = basis.box.enumerate();
    std::vector<Refined> accepted;
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        if (values[flat] > screen || !is_local_minimum(values, flat, d, grid)) continue;
        ++variety.candidates;
        const auto idx = grid_coordinates(flat, d, grid);
        std::vector<double> start(d);
        for (std::size_t s = 0; s < d; ++s) start[s] = static_cast<double>(idx[s]) / static_cast<double>(grid);
        Refined refined = gauss_newton(basis, indices, start, options.max_iterations);
        if (!refined.converged) {
            variety.warnings.push_back("refinement did not converge from grid point " + std::to_string(flat));
            continue;
        }
        if (refined.value <= accept) accepted.push_back(std::move(refined));
    }

    std::sort(accepted.begin(), accepted.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    std::vector<Refined> merged;
    for (auto& cand : accepted) {
        const TorusPoint point(cand.t);
        const bool duplicate = std::any_of(merged.begin(), merged.end(), [&](const Refined& m) {
            return wrap_distance(TorusPoint(m.t), point) < merge_radius;
        });
        if (!duplicate) merged.push_back(std::move(cand));
    }
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    for (auto& m : merged) {
        variety.zeros.emplace_back(m.t);
        variety.residuals.push_back(m.value);
    }
    if (variety.zeros.empty()) variety.warnings.push_back("no zeros accepted");
    return variety;
}

std::string to_string(RecoveryStatus status)
{
    switch (status) {
    case RecoveryStatus::Success: return "success";
    case RecoveryStatus::EmptyKernel: return "empty_kernel";
    case RecoveryStatus::EmptyVariety: return "empty_variety";
    case RecoveryStatus::CountMismatch: return "count_mismatch";
    case RecoveryStatus::LeastSquaresFailure: return "least_squares_failure";
    }
    return "unknown";
}

RecoveryResult recover_coefficients(const MomentTable& moments, const Variety& variety)
{
    if (variety.zeros.empty()) throw RecoveryError("coefficient recovery needs at least one zero");
    if (variety.size() > moments.values.size()) {
        throw RecoveryError("more zeros (" + std::to_string(variety.size()) + ") than moments (" +
                            std::to_string(moments.values.size()) + ")");
    }
    const auto indices = moments.box.enumerate();
    const CMatrix system = evaluation_matrix(variety.zeros, indices).transpose();
    CVector rhs(static_cast<Eigen::Index>(moments.values.size()));
    for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs(i) = moments.values[static_cast<std::size_t>(i)];

    Eigen::ColPivHouseholderQR<CMatrix> qr(system);
    if (static_cast<std::size_t>(qr.rank()) < variety.size()) {
        throw RecoveryError("least-squares system is rank deficient: rank " + std::to_string(qr.rank()) + " for " +
                            std::to_string(variety.size()) + " zeros (coincident recovered points?)");
    }
    const CVector coef = qr.solve(rhs);

    RecoveryResult result;
    result.variety = variety;
    result.coefficients.assign(coef.data(), coef.data() + coef.size());
    result.moment_residual = (system * coef - rhs).norm();
    const double rhs_norm = rhs.norm();
    result.relative_moment_residual = rhs_norm > 0.0 ? result.moment_residual / rhs_norm : result.moment_residual;
    double max_abs = 0.0;
    for (const auto& c : result.coefficients) max_abs = std::max(max_abs, std::abs(c));
    for (const auto& c : result.coefficients) result.spurious.push_back(std::abs(c) < 1e-10 * max_abs);
    return result;
}

namespace {

// Minimum-cost assignment on a square matrix; returns column for each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost)
{
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

}  // namespace

MatchReport match_to_truth(const std::vector<TorusPoint>& recovered, const std::vector<Complex>& coefficients,
                           const DiracEnsemble& truth)
{
    const std::size_t m_true = truth.size();
    const std::size_t m_rec = recovered.size();
    const std::size_t n = std::max(m_true, m_rec);
    // padded entries cost more than any wrap distance (<= 1/2)
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < m_true; ++i) {
        for (std::size_t j = 0; j < m_rec; ++j) cost[i][j] = wrap_distance(truth.points()[i], recovered[j]);
    }
    const auto assign = hungarian(cost);

    MatchReport report;
    report.assignment.assign(m_true, -1);
    report.wrap_errors.assign(m_true, std::numeric_limits<double>::infinity());
    report.coefficient_errors.assign(m_true, std::numeric_limits<double>::infinity());
    report.relative_coefficient_errors.assign(m_true, std::numeric_limits<double>::infinity());
    std::size_t matched = 0;
    for (std::size_t i = 0; i < m_true; ++i) {
        const std::size_t j = assign[i];
        if (j >= m_rec) {
            ++report.unmatched_truth;
            continue;
        }
        ++matched;
        report.assignment[i] = static_cast<std::int64_t>(j);
        report.wrap_errors[i] = cost[i][j];
        if (j < coefficients.size()) {
            const Complex c_true = truth.coefficients()[i];
            report.coefficient_errors[i] = std::abs(coefficients[j] - c_true);
            report.relative_coefficient_errors[i] = report.coefficient_errors[i] / std::abs(c_true);
        }
    }
    report.unmatched_recovered = m_rec - matched;
    report.max_wrap_error = *std::max_element(report.wrap_errors.begin(), report.wrap_errors.end());
    report.max_relative_coefficient_error =
        *std::max_element(report.relative_coefficient_errors.begin(), report.relative_coefficient_errors.end());
    return report;
}

RecoveryResult full_pipeline(const MomentTable& moments, const PipelineOptions& options, const DiracEnsemble* truth)
{
    const int n = options.order.value_or(moments.box.order());
    const ToeplitzMatrix toeplitz = build_toeplitz(moments, n);
    const KernelBasis basis = kernel_basis(toeplitz, options.rel_tol);

    RecoveryResult result;
    result.d = moments.box.dim();
    result.n = n;
    result.toeplitz_rank = basis.rank;
    result.kernel_dimension = basis.dimension();
    result.estimated_size = toeplitz.box.size() - basis.dimension();

    auto finish = [&](RecoveryResult& out) -> RecoveryResult& {
        if (truth) out.matched = match_to_truth(out.variety.zeros, out.coefficients, *truth);
        return out;
    };

    if (basis.empty()) {
        result.status = RecoveryStatus::EmptyKernel;
        result.message = "T_n has full numerical rank; no kernel polynomials (order too small for the ensemble)";
        return finish(result);
    }

    Variety variety = extract_variety(basis, options.extract);
    result.variety = variety;
    if (variety.zeros.empty()) {
        result.status = RecoveryStatus::EmptyVariety;
        result.message = "kernel polynomials have no common zero on the torus";
        result.warnings = variety.warnings;
        return finish(result);
    }

    try {
        RecoveryResult solved = recover_coefficients(moments, variety);
        solved.d = result.d;
        solved.n = result.n;
        solved.toeplitz_rank = result.toeplitz_rank;
        solved.kernel_dimension = result.kernel_dimension;
        solved.estimated_size = result.estimated_size;
        result = std::move(solved);
    } catch (const RecoveryError& err) {
        result.status = RecoveryStatus::LeastSquaresFailure;
        result.message = err.what();
        result.warnings = variety.warnings;
        return finish(result);
    }
    result.warnings = variety.warnings;

    if (result.variety.size() != result.estimated_size) {
        result.status = RecoveryStatus::CountMismatch;
        result.message = "found " + std::to_string(result.variety.size()) + " zeros but the kernel dimension implies " +
                         std::to_string(result.estimated_size) + " points";
        result.warnings.push_back(result.message);
    } else {
        result.status = RecoveryStatus::Success;
    }
    return finish(result);
}

RankSweepReport rank_stabilization_check(const DiracEnsemble& ensemble, int n_max, double rel_tol)
{
    if (n_max < 1) throw std::invalid_argument("rank sweep needs n_max >= 1");
    RankSweepReport report;
    report.ensemble_size = ensemble.size();
    for (int l = 0; l <= n_max; ++l) {
        const RankInfo info = numerical_rank(build_vandermonde(ensemble, l).entries, rel_tol);
        report.ranks.push_back(info.rank);
        report.gaps.push_back(info.gap);
    }
    for (std::size_t l = 0; l + 1 < report.ranks.size(); ++l) {
        if (report.ranks[l + 1] < report.ranks[l]) report.nondecreasing = false;
        if (!report.first_stable && report.ranks[l + 1] == report.ranks[l]) report.first_stable = static_cast<int>(l);
    }
    if (report.first_stable) {
        const auto first = static_cast<std::size_t>(*report.first_stable);
        report.stable_rank_is_size = report.ranks[first] == ensemble.size();
        for (std::size_t l = first; l < report.ranks.size(); ++l) {
            if (report.ranks[l] != report.ranks[first]) report.constant_after_stable = false;
        }
        for (std::size_t l = 0; l < first; ++l) {
            if (report.ranks[l + 1] <= report.ranks[l]) report.strictly_increasing_until_stable = false;
        }
    }
    return report;
}

VarietyCheckReport variety_identification_check(const DiracEnsemble& ensemble, int n, std::size_t probes,
                                                std::uint64_t seed, double rel_tol)
{
    VarietyCheckReport report;
    const auto an = build_vandermonde(ensemble, n);
    report.rank_an = numerical_rank(an.entries, rel_tol).rank;
    report.applicable = report.rank_an == ensemble.size();
    if (!report.applicable) return report;

    const auto an1 = build_vandermonde(ensemble, n + 1);
    const KernelBasis basis = kernel_basis(an1.entries, an1.box, rel_tol);
    for (const auto& t : ensemble.points()) {
        report.max_at_truth = std::max(report.max_at_truth, spectral_function(basis, t));
    }

    const double q = separation_or_half(ensemble);
    const double exclusion = q / 4.0;
    auto far_from_truth = [&](const TorusPoint& t) {
        return std::all_of(ensemble.points().begin(), ensemble.points().end(),
                           [&](const TorusPoint& tj) { return wrap_distance(t, tj) >= exclusion; });
    };

    report.min_off_parameter = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t d = ensemble.dim();
    while (report.probes < probes) {
        std::vector<double> raw(d);
        for (auto& x : raw) x = unif(rng);
        TorusPoint t(std::move(raw));
        if (!far_from_truth(t)) continue;
        ++report.probes;
        report.min_off_parameter = std::min(report.min_off_parameter, spectral_function(basis, t));
    }

    const std::size_t grid = static_cast<std::size_t>(8 * (n + 1));
    const auto values = spectral_function_grid(basis, grid);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        const auto idx = grid_coordinates(flat, d, grid);
        std::vector<double> raw(d);
        for (std::size_t s = 0; s < d; ++s) raw[s] = static_cast<double>(idx[s]) / static_cast<double>(grid);
        if (!far_from_truth(TorusPoint(raw))) continue;
        ++report.grid_points;
        report.min_off_parameter = std::min(report.min_off_parameter, values[flat]);
    }

    const auto moments = compute_moments(ensemble, n);
    const auto toeplitz = build_toeplitz(moments, n);
    const KernelBasis ker_a = kernel_basis(an.entries, an.box, rel_tol);
    const KernelBasis ker_t = kernel_basis(toeplitz, rel_tol);
    const double t_norm = ker_t.rank.singular_values.size() ? ker_t.rank.singular_values(0) : 0.0;
    for (Eigen::Index c = 0; c < ker_a.vectors.cols(); ++c) {
        const double res = (toeplitz.entries * ker_a.vectors.col(c)).norm();
        report.kernel_inclusion_residual = std::max(report.kernel_inclusion_residual, t_norm > 0 ? res / t_norm : res);
    }
    report.kernels_equal = ker_a.dimension() == ker_t.dimension();

    report.passed = report.max_at_truth <= 1e-18 && report.min_off_parameter > 1e-6 &&
                    report.kernel_inclusion_residual <= 1e-8 && report.kernels_equal;
    return report;
}

}  // namespace mprony
