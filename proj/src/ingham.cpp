#include "mprony/ingham.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mprony {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x)
{
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Composite 30-point Gauss-Legendre. The autocorrelation integrands are
// polynomials of degree 4r (exact on one panel up to r = 14) or analytic on
// the overlap, so a fixed rule beats adaptive refinement, which stalls on
// cancellation for the higher derivatives.
template <class F>
double integrate(F f, double a, double b, int panels = 1)
{
    if (b <= a) return 0.0;
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i)
        acc += boost::math::quadrature::gauss<double, 30>::integrate(f, a + h * i, a + h * (i + 1));
    return acc;
}

int autocorr_panels(const WindowFunction& window)
{
    return window.kind() == WindowKind::Polynomial ? 1 + window.r() / 8 : 2;
}

double binomial(int n, int k)
{
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

double falling_factorial(int n, int m)
{
    double out = 1.0;
    for (int i = 0; i < m; ++i) out *= n - i;
    return out;
}

struct BiharmonicShape {
    double sigma;
    double a;  // weight of cos(2 sigma x / q)
    double b;  // weight of cosh(2 sigma x / q)
};

const BiharmonicShape& biharmonic_shape()
{
    static const BiharmonicShape shape = [] {
        const double s = sigma_root();
        const double denom = std::cosh(s) - std::cos(s);
        return BiharmonicShape{s, std::cosh(s) / denom, std::cos(s) / denom};
    }();
    return shape;
}

}  // namespace

WindowFunction::WindowFunction(WindowKind kind, int r, double q) : kind_(kind), r_(r), q_(q)
{
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("window support q must be positive");
    if (r < 1) throw std::invalid_argument("window order r must be >= 1");
}

WindowFunction WindowFunction::polynomial(int r, double q) { return {WindowKind::Polynomial, r, q}; }
WindowFunction WindowFunction::cosine(double q) { return {WindowKind::Cosine, 1, q}; }
WindowFunction WindowFunction::raised_cosine(double q) { return {WindowKind::RaisedCosine, 2, q}; }
WindowFunction WindowFunction::biharmonic(double q) { return {WindowKind::Biharmonic, 2, q}; }

WindowFunction WindowFunction::from_name(const std::string& name, int p, double q)
{
    auto require_p = [&](int expected) {
        if (p != expected) {
            throw std::invalid_argument("window '" + name + "' requires p = " + std::to_string(expected));
        }
    };
    if (name == "poly") {
        if (p < 2 || p % 2 != 0) throw std::invalid_argument("p must be even and >= 2");
        return polynomial(p / 2, q);
    }
    if (name == "cos") {
        require_p(2);
        return cosine(q);
    }
    if (name == "raised-cos") {
        require_p(4);
        return raised_cosine(q);
    }
    if (name == "biharmonic") {
        require_p(4);
        return biharmonic(q);
    }
    throw std::invalid_argument("unknown window '" + name + "' (poly, cos, raised-cos, biharmonic)");
}

std::string WindowFunction::name() const
{
    switch (kind_) {
    case WindowKind::Polynomial: return "poly";
    case WindowKind::Cosine: return "cos";
    case WindowKind::RaisedCosine: return "raised-cos";
    case WindowKind::Biharmonic: return "biharmonic";
    }
    return "unknown";
}

WindowFunction WindowFunction::with_q(double q) const { return {kind_, r_, q}; }

double eval_phi(const WindowFunction& window, double x)
{
    if (std::abs(x) >= 0.5 * window.q()) return 0.0;
    return eval_phi_derivative(window, x, 0);
}

double eval_phi_derivative(const WindowFunction& window, double x, int m)
{
    if (m < 0 || m > window.r()) throw std::invalid_argument("derivative order outside 0..r");
    const double q = window.q();
    if (std::abs(x) > 0.5 * q) return 0.0;
    switch (window.kind()) {
    case WindowKind::Polynomial: {
        // (1 - y^2)^r = sum_j C(r,j) (-1)^j y^{2j},  y = 2x/q
        const int r = window.r();
        const double y = 2.0 * x / q;
        double acc = 0.0;
        for (int j = 0; j <= r; ++j) {
            if (2 * j < m) continue;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binomial(r, j) * falling_factorial(2 * j, m) * std::pow(y, 2 * j - m);
        }
        return acc * std::pow(2.0 / q, m);
    }
    case WindowKind::Cosine: {
        const double w = kPi / q;
        return std::pow(w, m) * std::cos(w * x + m * kPi / 2);
    }
    case WindowKind::RaisedCosine: {
        const double w = 2.0 * kPi / q;
        return (m == 0 ? 1.0 : 0.0) + std::pow(w, m) * std::cos(w * x + m * kPi / 2);
    }
    case WindowKind::Biharmonic: {
        const auto& shape = biharmonic_shape();
        const double w = 2.0 * shape.sigma / q;
        const double hyper = (m % 2 == 0) ? std::cosh(w * x) : std::sinh(w * x);
        return std::pow(w, m) * (shape.a * std::cos(w * x + m * kPi / 2) - shape.b * hyper);
    }
    }
    return 0.0;
}

double eval_phi_hat(const WindowFunction& window, double v)
{
    const double q = window.q();
    const double w = kPi * v * q;
    switch (window.kind()) {
    case WindowKind::Cosine:
        return 0.5 * q * (sinc(w - kPi / 2) + sinc(w + kPi / 2));
    case WindowKind::RaisedCosine:
        return q * sinc(w) + 0.5 * q * (sinc(w - kPi) + sinc(w + kPi));
    case WindowKind::Biharmonic: {
        const auto& shape = biharmonic_shape();
        const double s = shape.sigma;
        const double cos_part = 0.5 * q * (sinc(s - w) + sinc(s + w));
        const double cosh_part =
            q * (s * std::sinh(s) * std::cos(w) + w * std::cosh(s) * std::sin(w)) / (s * s + w * w);
        return shape.a * cos_part - shape.b * cosh_part;
    }
    case WindowKind::Polynomial: {
        // 2 int_0^{q/2} phi(x) cos(2 pi v x) dx on pieces no longer than a
        // quarter period; 20-point Gauss-Legendre is exact to roundoff on each
        // piece for the polynomial degrees in use
        const double half = 0.5 * q;
        const double av = std::abs(v);
        const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(half * 4.0 * av)));
        const double h = half / static_cast<double>(pieces);
        auto f = [&](double x) { return eval_phi_derivative(window, x, 0) * std::cos(2.0 * kPi * v * x); };
        double acc = 0.0;
        for (std::size_t i = 0; i < pieces; ++i) {
            acc += boost::math::quadrature::gauss<double, 20>::integrate(f, h * static_cast<double>(i),
                                                                         h * static_cast<double>(i + 1));
        }
        return 2.0 * acc;
    }
    }
    return 0.0;
}

double autocorr_at_zero(const WindowFunction& window)
{
    const double q = window.q();
    switch (window.kind()) {
    case WindowKind::Polynomial: {
        const int p = window.p();
        // q sqrt(pi) p! / (2 Gamma(p + 3/2))
        return q * std::exp(0.5 * std::log(kPi) + std::lgamma(p + 1.0) - std::lgamma(p + 1.5)) / 2.0;
    }
    case WindowKind::Cosine: return 0.5 * q;
    case WindowKind::RaisedCosine: return 1.5 * q;
    case WindowKind::Biharmonic: {
        const auto& sh = biharmonic_shape();
        const double s = sh.sigma;
        const double cos2 = 1.0 + std::sin(2 * s) / (2 * s);
        const double cosh2 = 1.0 + std::sinh(2 * s) / (2 * s);
        // vanishes at the root sigma; kept for exactness
        const double cross = (std::sin(s) * std::cosh(s) + std::cos(s) * std::sinh(s)) / s;
        return 0.5 * q * (sh.a * sh.a * cos2 - 2 * sh.a * sh.b * cross + sh.b * sh.b * cosh2);
    }
    }
    return 0.0;
}

double deriv_autocorr_at_zero(const WindowFunction& window)
{
    const double q = window.q();
    switch (window.kind()) {
    case WindowKind::Polynomial: {
        const int r = window.r();
        const int p = window.p();
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        // 4^p (r!)^2 (-1)^r / ((p + 1) q^{p-1})
        const double log_mag = p * std::log(4.0) + 2.0 * std::lgamma(r + 1.0) - std::log(p + 1.0) -
                               (p - 1) * std::log(q);
        return sign * std::exp(log_mag);
    }
    case WindowKind::Cosine: return -(kPi * kPi) / (q * q) * autocorr_at_zero(window);
    case WindowKind::RaisedCosine: return 8.0 * std::pow(kPi, 4) / (q * q * q);
    case WindowKind::Biharmonic: {
        const double s = biharmonic_shape().sigma;
        return 16.0 * std::pow(s / q, 4) * autocorr_at_zero(window);
    }
    }
    return 0.0;
}

double autocorr(const WindowFunction& window, double x)
{
    const double ax = std::abs(x);
    if (ax >= window.q()) return 0.0;
    if (ax == 0.0) return autocorr_at_zero(window);
    const double half = 0.5 * window.q();
    return integrate([&](double u) { return eval_phi(window, u) * eval_phi(window, u - ax); }, ax - half,
                     half, autocorr_panels(window));
}

double deriv_autocorr(const WindowFunction& window, double x)
{
    const double ax = std::abs(x);
    if (ax >= window.q()) return 0.0;
    if (ax == 0.0) return deriv_autocorr_at_zero(window);
    const double half = 0.5 * window.q();
    const int r = window.r();
    return integrate(
        [&](double u) { return eval_phi_derivative(window, u, r) * eval_phi_derivative(window, ax - u, r); },
        ax - half, half, autocorr_panels(window));
}

PsiSpec make_psi_spec(const WindowFunction& window, std::size_t d, double n, std::optional<int> p)
{
    if (d == 0) throw std::invalid_argument("psi needs dimension >= 1");
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("psi needs order n > 0");
    if (p && *p != window.p()) {
        throw std::invalid_argument("p = " + std::to_string(*p) + " is inconsistent with window '" +
                                    window.name() + "' (p = " + std::to_string(window.p()) + ")");
    }
    return PsiSpec{window, d, n};
}

double psi_at_zero(const PsiSpec& spec)
{
    const double a0 = autocorr_at_zero(spec.window);
    const double b0 = deriv_autocorr_at_zero(spec.window);
    const double sign_r = (spec.window.r() % 2 == 0) ? 1.0 : -1.0;
    const double bracket = std::pow(2.0 * kPi * spec.n, spec.p()) * a0 - sign_r * static_cast<double>(spec.d) * b0;
    return std::pow(a0, static_cast<double>(spec.d) - 1.0) * bracket;
}

double threshold_nq(const WindowFunction& window, std::size_t d)
{
    const double a0 = autocorr_at_zero(window);
    const double sign_r = (window.r() % 2 == 0) ? 1.0 : -1.0;
    const double energy = sign_r * deriv_autocorr_at_zero(window);  // int (phi^(r))^2 >= 0
    const int p = window.p();
    return window.q() * std::pow(static_cast<double>(d) * energy / a0, 1.0 / p) / (2.0 * kPi);
}

double eval_psi(const PsiSpec& spec, std::span<const double> x)
{
    if (x.size() != spec.d) throw DimensionMismatch("eval_psi: point dimension does not match spec");
    std::vector<double> g(spec.d), h(spec.d);
    for (std::size_t s = 0; s < spec.d; ++s) {
        g[s] = autocorr(spec.window, x[s]);
        h[s] = deriv_autocorr(spec.window, x[s]);
    }
    double prod_all = 1.0;
    for (double gs : g) prod_all *= gs;
    double derivative_sum = 0.0;
    for (std::size_t s = 0; s < spec.d; ++s) {
        double term = h[s];
        for (std::size_t l = 0; l < spec.d; ++l) {
            if (l != s) term *= g[l];
        }
        derivative_sum += term;
    }
    const double sign_r = (spec.window.r() % 2 == 0) ? 1.0 : -1.0;
    return std::pow(2.0 * kPi * spec.n, spec.p()) * prod_all - sign_r * derivative_sum;
}

namespace {

double psi_hat_bracket(const PsiSpec& spec, std::span<const double> v)
{
    double acc = std::pow(2.0 * kPi * spec.n, spec.p());
    for (double vs : v) acc -= std::pow(2.0 * kPi * vs, spec.p());
    return acc;
}

}  // namespace

double eval_psi_hat(const PsiSpec& spec, std::span<const double> v)
{
    if (v.size() != spec.d) throw DimensionMismatch("eval_psi_hat: point dimension does not match spec");
    double prod = 1.0;
    for (double vs : v) {
        const double ph = eval_phi_hat(spec.window, vs);
        prod *= ph * ph;
    }
    return psi_hat_bracket(spec, v) * prod;
}

double constant_Cp(int p)
{
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("C_p requires an even p >= 2");
    const double pd = p;
    const double log_cp = (std::lgamma(pd / 2 + 1) + std::lgamma(pd + 1.5) - pd * std::log(kPi) -
                           std::lgamma((pd + 3) / 2)) /
                          pd;
    const double cp = std::exp(log_cp);
    if (cp > (2 * pd + 3) / (std::numbers::e * kPi)) {
        throw std::logic_error("C_p exceeds (2p+3)/(e pi)");
    }
    return cp;
}

std::vector<CdCandidate> cd_candidates(std::size_t d)
{
    if (d == 0) throw std::invalid_argument("c_d needs d >= 1");
    const double dd = static_cast<double>(d);
    std::vector<CdCandidate> out;
    const int p_max = 2 * static_cast<int>(std::ceil(std::log(dd))) + 8;
    for (int p = 2; p <= p_max; p += 2) {
        const double cp = constant_Cp(p);
        out.push_back({"poly", p, cp, 2.0 * cp * std::pow(dd, 1.0 / p)});
    }
    out.push_back({"cos", 2, 0.5, 2.0 * 0.5 * std::sqrt(dd)});
    const double raised = std::pow(1.0 / 3.0, 0.25);
    out.push_back({"raised-cos", 4, raised, 2.0 * raised * std::pow(dd, 0.25)});
    const double bih = sigma_root() / kPi;
    out.push_back({"biharmonic", 4, bih, 2.0 * bih * std::pow(dd, 0.25)});
    return out;
}

InghamConstants constant_cd(std::size_t d)
{
    const auto candidates = cd_candidates(d);
    const auto best = std::min_element(candidates.begin(), candidates.end(),
                                       [](const auto& a, const auto& b) { return a.value < b.value; });
    return InghamConstants{best->p, best->C_p, d, best->value, best->provenance};
}

LogBound log_bound_cd(std::size_t d)
{
    if (d == 0) throw std::invalid_argument("log bound needs d >= 1");
    const double logd = std::log(static_cast<double>(d));
    LogBound out;
    out.p = std::max(2, 2 * static_cast<int>(std::ceil(logd)));
    out.explicit_bound = (7.0 + 4.0 * logd) / (kPi * std::sqrt(std::numbers::e));
    out.simple = 3.0 + 2.0 * logd;
    return out;
}

double sigma_root()
{
    auto g = [](double t) { return std::cos(t) * std::sinh(t) + std::cosh(t) * std::sin(t); };
    double lo = 2.0;
    double hi = 3.0;
    double g_lo = g(lo);
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double g_mid = g(mid);
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    if (std::abs(g(root)) > 1e-9) throw std::logic_error("sigma bisection did not converge");
    return root;
}

namespace {

std::vector<double> axis_samples(double half_width, std::size_t count)
{
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = 0.0;
        return v;
    }
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

enum class Side { Inside, Outside, Boundary };

Side ball_side(const PsiSpec& spec, std::span<const double> v)
{
    long double norm_p = 0.0L;
    for (double vs : v) norm_p += std::pow(static_cast<long double>(std::abs(vs)), spec.p());
    const long double radius_p = std::pow(static_cast<long double>(spec.n), spec.p());
    const long double rel = (norm_p - radius_p) / radius_p;
    if (std::abs(rel) <= 1e-12L) return Side::Boundary;
    return rel < 0 ? Side::Inside : Side::Outside;
}

void classify(const PsiSpec& spec, std::span<const double> v, double value, double magnitude,
              double floor, SignCheck& check)
{
    ++check.samples;
    if (magnitude <= floor) return;
    ++check.checked;
    switch (ball_side(spec, v)) {
    case Side::Inside:
        if (value < 0.0) ++check.violations;
        break;
    case Side::Outside:
        if (value > 0.0) ++check.violations;
        break;
    case Side::Boundary: break;
    }
}

}  // namespace

SignCheck psi_hat_sign_check(const PsiSpec& spec, std::size_t points_per_axis, double half_width,
                             double magnitude_floor)
{
    SignCheck check;
    if (spec.d <= 2) {
        const auto axis = axis_samples(half_width, points_per_axis);
        std::vector<double> profile(axis.size());
        for (std::size_t i = 0; i < axis.size(); ++i) {
            const double ph = eval_phi_hat(spec.window, axis[i]);
            profile[i] = ph * ph;
        }
        std::vector<double> v(spec.d);
        const std::size_t total = spec.d == 1 ? axis.size() : axis.size() * axis.size();
        for (std::size_t idx = 0; idx < total; ++idx) {
            double magnitude = 1.0;
            std::size_t rest = idx;
            for (std::size_t s = 0; s < spec.d; ++s) {
                const std::size_t i = rest % axis.size();
                rest /= axis.size();
                v[s] = axis[i];
                magnitude *= profile[i];
            }
            classify(spec, v, psi_hat_bracket(spec, v) * magnitude, magnitude, magnitude_floor, check);
        }
        return check;
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-half_width, half_width);
    std::size_t count = 1;
    for (std::size_t s = 0; s < 2; ++s) count *= points_per_axis;
    std::vector<double> v(spec.d);
    for (std::size_t i = 0; i < count; ++i) {
        double magnitude = 1.0;
        for (auto& vs : v) {
            vs = unif(rng);
            const double ph = eval_phi_hat(spec.window, vs);
            magnitude *= ph * ph;
        }
        classify(spec, v, psi_hat_bracket(spec, v) * magnitude, magnitude, magnitude_floor, check);
    }
    return check;
}

double psi_hat_max(const PsiSpec& spec)
{
    constexpr std::size_t kAxisPoints = 201;
    const double half_width = spec.n + 1.0 / spec.window.q();
    const auto axis = axis_samples(half_width, kAxisPoints);
    std::vector<double> profile(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const double ph = eval_phi_hat(spec.window, axis[i]);
        profile[i] = ph * ph;
    }
    const double top = std::pow(2.0 * kPi * spec.n, spec.p());
    auto sampled_value = [&](const std::vector<std::size_t>& idx) {
        double bracket = top;
        double prod = 1.0;
        for (std::size_t i : idx) {
            bracket -= std::pow(2.0 * kPi * axis[i], spec.p());
            prod *= profile[i];
        }
        return bracket * prod;
    };

    // start from the sample nearest the origin, then coordinatewise sweeps over
    // the axis samples; for d <= 2 this is a full grid scan
    std::vector<std::size_t> best_idx(spec.d, kAxisPoints / 2);
    double best = sampled_value(best_idx);
    if (spec.d <= 2) {
        std::vector<std::size_t> idx(spec.d);
        const std::size_t total = spec.d == 1 ? kAxisPoints : kAxisPoints * kAxisPoints;
        for (std::size_t flat = 0; flat < total; ++flat) {
            idx[0] = flat % kAxisPoints;
            if (spec.d == 2) idx[1] = flat / kAxisPoints;
            const double val = sampled_value(idx);
            if (val > best) {
                best = val;
                best_idx = idx;
            }
        }
    } else {
        for (int sweep = 0; sweep < 50; ++sweep) {
            bool moved = false;
            for (std::size_t s = 0; s < spec.d; ++s) {
                auto trial = best_idx;
                for (std::size_t i = 0; i < kAxisPoints; ++i) {
                    trial[s] = i;
                    const double val = sampled_value(trial);
                    if (val > best) {
                        best = val;
                        best_idx = trial;
                        moved = true;
                    }
                }
            }
            if (!moved) break;
        }
    }

    // pattern search on the continuous function around the best sample
    std::vector<double> v(spec.d);
    for (std::size_t s = 0; s < spec.d; ++s) v[s] = axis[best_idx[s]];
    best = eval_psi_hat(spec, v);
    double step = axis[1] - axis[0];
    while (step > 1e-12 * half_width) {
        bool improved = false;
        for (std::size_t s = 0; s < spec.d; ++s) {
            for (double dir : {-1.0, 1.0}) {
                auto trial = v;
                trial[s] += dir * step;
                const double val = eval_psi_hat(spec, trial);
                if (val > best) {
                    best = val;
                    v = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

InghamCertificate certify(const PsiSpec& spec)
{
    InghamCertificate cert;
    cert.variant = spec.window.name();
    cert.p = spec.p();
    cert.d = spec.d;
    cert.n = spec.n;
    cert.q = spec.window.q();
    cert.psi_zero = psi_at_zero(spec);
    cert.autocorr0 = autocorr_at_zero(spec.window);
    cert.deriv_autocorr0 = deriv_autocorr_at_zero(spec.window);
    cert.threshold_nq = threshold_nq(spec.window, spec.d);
    cert.psi_hat_max = psi_hat_max(spec);
    if (cert.psi_zero > 0.0 && cert.psi_hat_max > 0.0) cert.lower_bound_c = cert.psi_zero / cert.psi_hat_max;
    cert.sign_check = psi_hat_sign_check(spec, 101, 2.0 * spec.n);
    return cert;
}

std::vector<MultiIndex> lp_ball_indices(std::size_t d, int p, double n)
{
    if (p < 1) throw std::invalid_argument("l^p ball needs p >= 1");
    if (n < 0.0) return {};
    const int reach = static_cast<int>(std::floor(n));
    const MultiIndexBox box(d, reach, true);
    const long double radius_p = std::pow(static_cast<long double>(n), p);
    std::vector<MultiIndex> out;
    for (std::size_t i = 0; i < box.size(); ++i) {
        MultiIndex k = box.multi_index(i);
        long double norm_p = 0.0L;
        for (int ks : k) norm_p += std::pow(static_cast<long double>(std::abs(ks)), p);
        if (norm_p <= radius_p * (1.0L + 1e-15L)) out.push_back(std::move(k));
    }
    return out;
}

InghamCheck ingham_lower_bound(const DiracEnsemble& ensemble, double n, const WindowFunction& window)
{
    InghamCheck check;
    const double q = separation_or_half(ensemble);
    const PsiSpec spec = make_psi_spec(window.with_q(q), ensemble.dim(), n);
    check.certificate = certify(spec);

    const auto indices = lp_ball_indices(ensemble.dim(), spec.p(), n);
    check.frequencies = indices.size();
    const CMatrix b = evaluation_matrix(ensemble.points(), indices);
    const CMatrix gram = b * b.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    check.empirical_c = eig.eigenvalues()(0);
    check.bound_holds = !check.certificate.lower_bound_c ||
                        check.empirical_c >= *check.certificate.lower_bound_c - 1e-8;
    return check;
}

InghamCheck ingham_lower_bound(const DiracEnsemble& ensemble, double n, int p)
{
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("p must be even and >= 2");
    return ingham_lower_bound(ensemble, n, WindowFunction::polynomial(p / 2, 0.5));
}

}  // namespace mprony
