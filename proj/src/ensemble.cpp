#include "mprony/ensemble.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mprony {

Complex unimodular(double phase)
{
    const double frac = phase - std::round(phase);
    return std::polar(1.0, kExponentSign * 2.0 * std::numbers::pi * frac);
}

namespace {

double reduce_mod1(double x)
{
    double r = x - std::floor(x);
    // x slightly below an integer can round to exactly 1.0
    if (r >= 1.0) r = 0.0;
    return r;
}

}  // namespace

TorusPoint::TorusPoint(std::vector<double> raw) : coords_(std::move(raw))
{
    if (coords_.empty()) throw std::invalid_argument("torus point needs dimension >= 1");
    for (double& c : coords_) {
        if (!std::isfinite(c)) throw std::invalid_argument("torus point coordinate is not finite");
        c = reduce_mod1(c);
    }
}

TorusPoint TorusPoint::shifted(std::span<const double> offset) const
{
    if (offset.size() != dim()) throw DimensionMismatch("shift dimension mismatch");
    std::vector<double> out(coords_.begin(), coords_.end());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] += offset[s];
    return TorusPoint(std::move(out));
}

TorusPoint canonicalize(std::span<const double> raw)
{
    return TorusPoint(std::vector<double>(raw.begin(), raw.end()));
}

// For a, b in [0,1) the difference lies in (-1,1), so the minimizing integer
// shift is one of r in {-1,0,1}; |r| >= 2 only moves further away.
double wrap_distance_1d(double a, double b)
{
    const double diff = std::abs(a - b);
    return std::min(diff, 1.0 - diff);
}

double wrap_distance(const TorusPoint& a, const TorusPoint& b)
{
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("wrap_distance: dimensions " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
    double dist = 0.0;
    for (std::size_t s = 0; s < a.dim(); ++s) dist = std::max(dist, wrap_distance_1d(a[s], b[s]));
    return dist;
}

DiracEnsemble::DiracEnsemble(std::vector<TorusPoint> points, std::vector<Complex> coefficients)
    : points_(std::move(points)), coefficients_(std::move(coefficients))
{
    if (points_.empty()) throw std::invalid_argument("ensemble needs at least one point");
    if (points_.size() != coefficients_.size()) {
        throw std::invalid_argument("ensemble: " + std::to_string(points_.size()) + " points but " +
                                    std::to_string(coefficients_.size()) + " coefficients");
    }
    const std::size_t d = points_.front().dim();
    for (const auto& p : points_) {
        if (p.dim() != d) throw DimensionMismatch("ensemble points have mixed dimensions");
    }
    for (const auto& c : coefficients_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("ensemble coefficient is not finite");
        }
        if (std::abs(c) == 0.0) throw std::invalid_argument("ensemble coefficient is zero");
    }
    for (std::size_t j = 0; j < points_.size(); ++j) {
        for (std::size_t l = j + 1; l < points_.size(); ++l) {
            if (wrap_distance(points_[j], points_[l]) < kPointEqualityTolerance) {
                throw std::invalid_argument("ensemble points " + std::to_string(j) + " and " +
                                            std::to_string(l) + " coincide");
            }
        }
    }
}

std::vector<std::vector<Complex>> DiracEnsemble::parameters() const
{
    std::vector<std::vector<Complex>> z(size(), std::vector<Complex>(dim()));
    for (std::size_t j = 0; j < size(); ++j) {
        for (std::size_t s = 0; s < dim(); ++s) z[j][s] = unimodular(points_[j][s]);
    }
    return z;
}

DiracEnsemble DiracEnsemble::shifted(std::span<const double> offset) const
{
    std::vector<TorusPoint> moved;
    moved.reserve(points_.size());
    for (const auto& p : points_) moved.push_back(p.shifted(offset));
    return DiracEnsemble(std::move(moved), coefficients_);
}

SeparationReport separation(const DiracEnsemble& ensemble)
{
    if (ensemble.size() < 2) {
        throw std::domain_error("separation is undefined for fewer than two points");
    }
    SeparationReport report;
    report.q = std::numeric_limits<double>::infinity();
    const auto& pts = ensemble.points();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (std::size_t l = j + 1; l < pts.size(); ++l) {
            const double dist = wrap_distance(pts[j], pts[l]);
            if (dist < report.q) {
                report.q = dist;
                report.argmin_pair = {j, l};
            }
        }
    }
    return report;
}

double separation_or_half(const DiracEnsemble& ensemble)
{
    return ensemble.size() < 2 ? 0.5 : separation(ensemble).q;
}

}  // namespace mprony
