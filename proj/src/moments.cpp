#include "mprony/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mprony {

MultiIndexBox::MultiIndexBox(std::size_t dim, int order, bool is_signed)
    : dim_(dim), order_(order), signed_(is_signed)
{
    if (dim == 0) throw std::invalid_argument("multi-index box needs dimension >= 1");
    if (order < 0) throw std::invalid_argument("multi-index box needs order >= 0");
    side_ = static_cast<std::size_t>(is_signed ? 2 * order + 1 : order + 1);
    size_ = 1;
    for (std::size_t s = 0; s < dim; ++s) size_ *= side_;
}

bool MultiIndexBox::contains(std::span<const int> k) const
{
    if (k.size() != dim_) return false;
    return std::all_of(k.begin(), k.end(), [&](int ks) { return ks >= lower() && ks <= order_; });
}

std::size_t MultiIndexBox::linear_index(std::span<const int> k) const
{
    if (!contains(k)) throw std::out_of_range("multi-index outside box");
    std::size_t linear = 0;
    for (std::size_t s = dim_; s-- > 0;) {
        linear = linear * side_ + static_cast<std::size_t>(k[s] - lower());
    }
    return linear;
}

MultiIndex MultiIndexBox::multi_index(std::size_t linear) const
{
    MultiIndex k(dim_);
    for (std::size_t s = 0; s < dim_; ++s) {
        k[s] = static_cast<int>(linear % side_) + lower();
        linear /= side_;
    }
    return k;
}

std::vector<MultiIndex> MultiIndexBox::enumerate() const
{
    std::vector<MultiIndex> all;
    all.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) all.push_back(multi_index(i));
    return all;
}

namespace {

// <k, t> accumulated exactly enough for moderate |k|; the phase is reduced
// modulo 1 inside unimodular().
double inner(std::span<const int> k, const TorusPoint& t)
{
    double acc = 0.0;
    for (std::size_t s = 0; s < k.size(); ++s) {
        // k_s t_s reduced per coordinate keeps the summands in (-1, 1)
        const double term = k[s] * t[s];
        acc += term - std::round(term);
    }
    return acc;
}

}  // namespace

MomentTable compute_moments(const DiracEnsemble& ensemble, int order)
{
    MultiIndexBox box(ensemble.dim(), order, true);
    MomentTable table{box, std::vector<Complex>(box.size())};
    const auto& pts = ensemble.points();
    const auto& coef = ensemble.coefficients();
    for (std::size_t i = 0; i < box.size(); ++i) {
        const MultiIndex k = box.multi_index(i);
        Complex acc = 0.0;
        for (std::size_t j = 0; j < pts.size(); ++j) acc += coef[j] * unimodular(inner(k, pts[j]));
        table.values[i] = acc;
    }
    return table;
}

CMatrix evaluation_matrix(std::span<const TorusPoint> points, std::span<const MultiIndex> indices)
{
    CMatrix out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t c = 0; c < indices.size(); ++c) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
                unimodular(inner(indices[c], points[j]));
        }
    }
    return out;
}

VandermondeMatrix build_vandermonde(const DiracEnsemble& ensemble, int order)
{
    MultiIndexBox box(ensemble.dim(), order, false);
    const auto indices = box.enumerate();
    return {box, evaluation_matrix(ensemble.points(), indices)};
}

ToeplitzMatrix build_toeplitz(const MomentTable& moments, int order)
{
    if (!moments.box.is_signed()) {
        throw InsufficientOrder("Toeplitz assembly needs a signed moment table");
    }
    if (moments.box.order() < order) {
        throw InsufficientOrder("Toeplitz matrix of order " + std::to_string(order) +
                                " needs moments of order >= " + std::to_string(order) + ", got " +
                                std::to_string(moments.box.order()));
    }
    MultiIndexBox box(moments.box.dim(), order, false);
    const auto indices = box.enumerate();
    const auto side = static_cast<Eigen::Index>(box.size());
    CMatrix entries(side, side);
    MultiIndex diff(box.dim());
    for (Eigen::Index col = 0; col < side; ++col) {
        for (Eigen::Index row = 0; row < side; ++row) {
            const auto& k = indices[static_cast<std::size_t>(row)];
            const auto& l = indices[static_cast<std::size_t>(col)];
            for (std::size_t s = 0; s < diff.size(); ++s) diff[s] = l[s] - k[s];
            entries(row, col) = moments.at(diff);
        }
    }
    return {box, std::move(entries)};
}

double factorization_residual(const ToeplitzMatrix& toeplitz, const VandermondeMatrix& vandermonde,
                              std::span<const Complex> diagonal)
{
    const CMatrix& a = vandermonde.entries;
    if (static_cast<std::size_t>(a.rows()) != diagonal.size()) {
        throw DimensionMismatch("factorization_residual: diagonal length does not match Vandermonde rows");
    }
    if (a.cols() != toeplitz.entries.cols()) {
        throw DimensionMismatch("factorization_residual: Vandermonde and Toeplitz orders differ");
    }
    CVector dvec(a.rows());
    for (Eigen::Index j = 0; j < a.rows(); ++j) dvec(j) = diagonal[static_cast<std::size_t>(j)];
    const CMatrix product = a.adjoint() * dvec.asDiagonal() * a;
    return (toeplitz.entries - product).norm();
}

double factorization_residual(const DiracEnsemble& ensemble, int order)
{
    const auto moments = compute_moments(ensemble, order);
    return factorization_residual(build_toeplitz(moments, order), build_vandermonde(ensemble, order),
                                  ensemble.coefficients());
}

RankInfo rank_from_spectrum(Eigen::VectorXd singular_values, double rel_tol)
{
    RankInfo info;
    info.singular_values = std::move(singular_values);
    const auto& sv = info.singular_values;
    if (sv.size() == 0 || sv(0) == 0.0) return info;
    info.threshold = rel_tol * sv(0);
    while (info.rank < static_cast<std::size_t>(sv.size()) &&
           sv(static_cast<Eigen::Index>(info.rank)) > info.threshold) {
        ++info.rank;
    }
    const auto r = static_cast<Eigen::Index>(info.rank);
    if (r == 0) {
        info.gap = 0.0;
    } else if (r < sv.size()) {
        info.gap = sv(r) > 0.0 ? sv(r - 1) / sv(r) : std::numeric_limits<double>::infinity();
    } else {
        info.gap = sv(r - 1) / info.threshold;
    }
    return info;
}

RankInfo numerical_rank(const CMatrix& matrix, double rel_tol)
{
    if (!matrix.allFinite()) throw std::invalid_argument("numerical_rank: matrix has non-finite entries");
    if (matrix.size() == 0) return {};
    Eigen::BDCSVD<CMatrix> svd(matrix);
    return rank_from_spectrum(svd.singularValues(), rel_tol);
}

std::optional<std::size_t> equispaced_grid_size(const DiracEnsemble& ensemble)
{
    constexpr double tol = 1e-9;
    const std::size_t d = ensemble.dim();
    std::optional<std::size_t> m_common;
    for (std::size_t s = 0; s < d; ++s) {
        std::vector<double> values;
        for (const auto& p : ensemble.points()) values.push_back(p[s]);
        std::sort(values.begin(), values.end());
        std::vector<double> distinct;
        for (double v : values) {
            if (distinct.empty() || v - distinct.back() > tol) distinct.push_back(v);
        }
        if (distinct.size() > 1 && distinct.front() + 1.0 - distinct.back() <= tol) distinct.pop_back();
        const std::size_t m = distinct.size();
        if (m_common && *m_common != m) return std::nullopt;
        m_common = m;
        const double spacing = 1.0 / static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double next = (i + 1 < m) ? distinct[i + 1] : distinct.front() + 1.0;
            if (std::abs(next - distinct[i] - spacing) > tol) return std::nullopt;
        }
    }
    std::size_t expected = 1;
    for (std::size_t s = 0; s < d; ++s) expected *= *m_common;
    // M distinct points inside an m^d product set with M = m^d fill it.
    if (expected != ensemble.size()) return std::nullopt;
    return m_common;
}

std::optional<double> equispaced_kappa_formula(std::size_t d, double oversampling)
{
    const double lo = std::floor(oversampling);
    const double hi = std::ceil(oversampling);
    if (lo < 1.0 || std::abs(oversampling - std::round(oversampling)) < 1e-9) return std::nullopt;
    return std::pow(hi / lo, static_cast<double>(d));
}

ConditioningReport condition_report(const DiracEnsemble& ensemble, int order, double rel_tol)
{
    ConditioningReport report;
    report.d = ensemble.dim();
    report.n = order;
    report.q = separation_or_half(ensemble);

    const auto vandermonde = build_vandermonde(ensemble, order);
    const RankInfo rank = numerical_rank(vandermonde.entries, rel_tol);
    if (rank.rank < ensemble.size()) {
        report.rank_deficient = true;
        report.kappa = std::numeric_limits<double>::infinity();
    } else {
        // eigenvalues of A A^* are the squared singular values of A
        const double smax = rank.singular_values(0);
        const double smin = rank.singular_values(static_cast<Eigen::Index>(ensemble.size()) - 1);
        report.kappa = (smax * smax) / (smin * smin);
    }

    report.grid_points_per_axis = equispaced_grid_size(ensemble);
    if (report.grid_points_per_axis) {
        const double oversampling =
            static_cast<double>(order + 1) / static_cast<double>(*report.grid_points_per_axis);
        report.theoretical = equispaced_kappa_formula(report.d, oversampling);
        if (report.theoretical && !report.rank_deficient) {
            report.relative_deviation = std::abs(report.kappa - *report.theoretical) / *report.theoretical;
        }
    }
    return report;
}

}  // namespace mprony
