#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mprony/ingham.hpp"
#include "mprony/random_ensemble.hpp"

using namespace mprony;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent quadrature (double-exponential rule) on [a, b].
template <class F>
double oracle_integral(F f, double a, double b)
{
    static boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b, 1e-14);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<WindowFunction> all_windows(double q)
{
    return {WindowFunction::polynomial(1, q), WindowFunction::polynomial(2, q), WindowFunction::polynomial(3, q),
            WindowFunction::cosine(q),        WindowFunction::raised_cosine(q), WindowFunction::biharmonic(q)};
}

// r-th derivative of the window from independent formulas: Rodrigues'
// formula for the polynomial family, direct differentiation otherwise.
double phi_r_oracle(const WindowFunction& w, double x)
{
    const double q = w.q();
    const int r = w.r();
    switch (w.kind()) {
    case WindowKind::Polynomial: {
        // d^r/dy^r (1 - y^2)^r = (-1)^r 2^r r! P_r(y)
        const double y = 2.0 * x / q;
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(2.0, r) * std::tgamma(r + 1.0) * std::legendre(static_cast<unsigned>(r), y) *
               std::pow(2.0 / q, r);
    }
    case WindowKind::Cosine: return -(kPi / q) * std::sin(kPi * x / q);
    case WindowKind::RaisedCosine: return -std::pow(2.0 * kPi / q, 2) * std::cos(2.0 * kPi * x / q);
    case WindowKind::Biharmonic: {
        const double s = sigma_root();
        const double a = std::cosh(s) / (std::cosh(s) - std::cos(s));
        const double b = std::cos(s) / (std::cosh(s) - std::cos(s));
        const double k = 2.0 * s / q;
        return -k * k * (a * std::cos(k * x) + b * std::cosh(k * x));
    }
    }
    return 0.0;
}

}  // namespace

TEST_CASE("window values")
{
    CHECK(eval_phi(WindowFunction::polynomial(1, 0.2), 0.0) == 1.0);
    for (const auto& w : all_windows(0.3)) {
        CAPTURE(w.name());
        CHECK(eval_phi(w, 0.15) == 0.0);
        CHECK(eval_phi(w, -0.15) == 0.0);
        CHECK(eval_phi(w, 0.4) == 0.0);
        CHECK(eval_phi(w, 0.0) > 0.0);
        CHECK(eval_phi(w, 0.07) == doctest::Approx(eval_phi(w, -0.07)).epsilon(1e-14));
        // continuity at the support edge: the interior limit vanishes
        CHECK(std::abs(eval_phi_derivative(w, 0.15, 0)) < 1e-12);
    }
    const auto b = WindowFunction::biharmonic(0.3);
    CHECK(std::abs(eval_phi_derivative(b, 0.15, 1)) < 1e-10);
    CHECK(std::abs(eval_phi_derivative(b, -0.15, 1)) < 1e-10);
}

TEST_CASE("window factories validate")
{
    CHECK_THROWS_AS(WindowFunction::polynomial(0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(WindowFunction::cosine(0.0), std::invalid_argument);
    CHECK_THROWS_AS(WindowFunction::from_name("poly", 3, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(WindowFunction::from_name("cos", 4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(WindowFunction::from_name("gauss", 2, 0.1), std::invalid_argument);
    CHECK(WindowFunction::from_name("poly", 6, 0.1).r() == 3);
    CHECK(WindowFunction::from_name("biharmonic", 4, 0.1).kind() == WindowKind::Biharmonic);
    CHECK_THROWS_AS(eval_phi_derivative(WindowFunction::cosine(0.1), 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_psi_spec(WindowFunction::cosine(0.1), 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_psi_spec(WindowFunction::cosine(0.1), 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_psi_spec(WindowFunction::cosine(0.1), 1, 1.0, 4), std::invalid_argument);
}

TEST_CASE("r-th derivatives match Rodrigues and direct formulas")
{
    for (const auto& w : all_windows(0.25)) {
        CAPTURE(w.name());
        for (double x = -0.12; x <= 0.12; x += 0.01) {
            const double expected = phi_r_oracle(w, x);
            CHECK(std::abs(eval_phi_derivative(w, x, w.r()) - expected) <= 1e-9 * (1.0 + std::abs(expected)));
        }
    }
    for (int r = 4; r <= 8; ++r) {
        const auto w = WindowFunction::polynomial(r, 0.5);
        for (double x : {-0.2, 0.0, 0.11, 0.24}) {
            CHECK(rel_err(eval_phi_derivative(w, x, r), phi_r_oracle(w, x)) < 1e-9);
        }
    }
}

TEST_CASE("printed autocorrelation values")
{
    CHECK(autocorr_at_zero(WindowFunction::polynomial(1, 1.0)) == doctest::Approx(8.0 / 15.0).epsilon(1e-14));
    CHECK(autocorr_at_zero(WindowFunction::polynomial(2, 1.0)) == doctest::Approx(128.0 / 315.0).epsilon(1e-14));
    CHECK(autocorr_at_zero(WindowFunction::raised_cosine(1.0)) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(deriv_autocorr_at_zero(WindowFunction::polynomial(1, 1.0)) == doctest::Approx(-16.0 / 3.0).epsilon(1e-14));
    CHECK(deriv_autocorr_at_zero(WindowFunction::polynomial(2, 1.0)) == doctest::Approx(1024.0 / 5.0).epsilon(1e-14));
    CHECK(deriv_autocorr_at_zero(WindowFunction::cosine(1.0)) == doctest::Approx(-kPi * kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("closed-form autocorrelations agree with quadrature")
{
    for (double q : {0.05, 0.1, 0.3}) {
        for (const auto& w : all_windows(q)) {
            CAPTURE(w.name());
            CAPTURE(q);
            const double h = 0.5 * q;
            const double a0 = oracle_integral([&](double x) { return std::pow(eval_phi(w, x), 2); }, -h, h);
            const double sign = (w.r() % 2 == 0) ? 1.0 : -1.0;
            const double b0 = sign * oracle_integral([&](double x) { return std::pow(phi_r_oracle(w, x), 2); }, -h, h);
            CHECK(rel_err(autocorr_at_zero(w), a0) < 1e-8);
            CHECK(rel_err(deriv_autocorr_at_zero(w), b0) < 1e-8);
        }
    }
}

TEST_CASE("biharmonic eigenvalue identity")
{
    const double q = 0.2;
    const auto w = WindowFunction::biharmonic(q);
    const double s = sigma_root();
    const double lhs = oracle_integral([&](double x) { return std::pow(phi_r_oracle(w, x), 2); }, -q / 2, q / 2);
    const double rhs = 16.0 * std::pow(s / q, 4) *
                       oracle_integral([&](double x) { return std::pow(eval_phi(w, x), 2); }, -q / 2, q / 2);
    CHECK(rel_err(lhs, rhs) < 1e-8);
}

TEST_CASE("autocorrelation off zero matches direct convolution")
{
    for (const auto& w : all_windows(0.2)) {
        CAPTURE(w.name());
        for (double x : {0.013, 0.07, -0.11, 0.19}) {
            const double lo = std::abs(x) - 0.1;
            const double direct =
                oracle_integral([&](double u) { return eval_phi(w, u) * eval_phi(w, u - std::abs(x)); }, lo, 0.1);
            CHECK(std::abs(autocorr(w, x) - direct) < 1e-12);
        }
        CHECK(autocorr(w, 0.2) == 0.0);
        CHECK(deriv_autocorr(w, -0.25) == 0.0);
        CHECK(std::abs(autocorr(w, 1e-9) - autocorr_at_zero(w)) < 1e-8 * autocorr_at_zero(w));
        CHECK(std::abs(deriv_autocorr(w, 1e-9) - deriv_autocorr_at_zero(w)) <
              1e-6 * std::abs(deriv_autocorr_at_zero(w)));
    }
}

TEST_CASE("polynomial window transform matches the Bessel form")
{
    for (int r : {1, 2, 3, 5}) {
        const double q = 0.2;
        const auto w = WindowFunction::polynomial(r, q);
        const double at_zero = 0.5 * q * std::sqrt(kPi) * std::tgamma(r + 1.0) / std::tgamma(r + 1.5);
        CHECK(rel_err(eval_phi_hat(w, 0.0), at_zero) < 1e-12);
        for (double v : {0.3, 1.0, 7.7, 25.0, 120.5, 400.0, -33.0}) {
            const double om = kPi * std::abs(v) * q;
            const double bessel = 0.5 * q * std::sqrt(kPi) * std::tgamma(r + 1.0) * std::pow(2.0 / om, r + 0.5) *
                                  std::cyl_bessel_j(r + 0.5, om);
            CAPTURE(r);
            CAPTURE(v);
            CHECK(std::abs(eval_phi_hat(w, v) - bessel) <= 1e-9 * at_zero);
        }
    }
}

TEST_CASE("closed-form transforms match quadrature")
{
    for (const auto& w : {WindowFunction::cosine(0.15), WindowFunction::raised_cosine(0.15),
                          WindowFunction::biharmonic(0.15)}) {
        CAPTURE(w.name());
        for (double v : {0.0, 0.5, 3.3, 10.0, 47.0, -12.0, 1.0 / 0.15 * 0.5}) {
            const double direct = oracle_integral(
                [&](double x) { return eval_phi(w, x) * std::cos(2.0 * kPi * v * x); }, -0.075, 0.075);
            CHECK(std::abs(eval_phi_hat(w, v) - direct) < 1e-12);
        }
    }
}

TEST_CASE("transforms decay like (1+|v|)^(-r-1)")
{
    for (const auto& w : all_windows(0.2)) {
        CAPTURE(w.name());
        double early = 0.0;
        double late = 0.0;
        for (double v = 5.0; v < 50.0; v += 0.37) {
            early = std::max(early, std::abs(eval_phi_hat(w, v)) * std::pow(1.0 + v, w.r() + 1));
        }
        for (double v = 50.0; v < 600.0; v += 3.7) {
            late = std::max(late, std::abs(eval_phi_hat(w, v)) * std::pow(1.0 + v, w.r() + 1));
        }
        CHECK(late <= 2.0 * early);
    }
}

TEST_CASE("psi is supported in [-q, q]^d")
{
    std::mt19937_64 rng(3);
    for (const auto& w : all_windows(0.1)) {
        for (std::size_t d : {1u, 2u, 3u}) {
            const auto spec = make_psi_spec(w, d, 10.0);
            const double scale = std::abs(psi_at_zero(spec));
            std::uniform_real_distribution<double> u(-0.2, 0.2);
            for (int i = 0; i < 200; ++i) {
                std::vector<double> x(d);
                for (auto& xs : x) xs = u(rng);
                x[i % d] = (i % 2 ? 1.0 : -1.0) * (0.1 + 0.1 * std::abs(u(rng)) / 0.2);
                CHECK(std::abs(eval_psi(spec, x)) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("psi at the origin")
{
    for (const auto& w : all_windows(0.1)) {
        const auto spec = make_psi_spec(w, 2, 7.0);
        const std::vector<double> zero{0.0, 0.0};
        CHECK(rel_err(eval_psi(spec, zero), psi_at_zero(spec)) < 1e-12);
        const std::vector<double> tiny{1e-10, -1e-10};
        CHECK(rel_err(eval_psi(spec, tiny), psi_at_zero(spec)) < 1e-6);
    }
}

TEST_CASE("psi-hat is the Fourier transform of psi")
{
    for (const auto& w : {WindowFunction::polynomial(1, 0.2), WindowFunction::polynomial(2, 0.2),
                          WindowFunction::raised_cosine(0.2), WindowFunction::biharmonic(0.2)}) {
        CAPTURE(w.name());
        const auto spec = make_psi_spec(w, 1, 4.0);
        for (double v : {0.0, 1.3, 4.0, 6.5}) {
            const double direct = 2.0 * oracle_integral(
                                            [&](double x) {
                                                const std::vector<double> xv{x};
                                                return eval_psi(spec, xv) * std::cos(2.0 * kPi * v * x);
                                            },
                                            0.0, 0.2);
            const std::vector<double> vv{v};
            CHECK(std::abs(eval_psi_hat(spec, vv) - direct) <= 1e-7 * std::abs(psi_at_zero(spec)) + 1e-9);
        }
    }
}

TEST_CASE("psi-hat vanishes on the l^p sphere and has the sign split")
{
    const auto spec = make_psi_spec(WindowFunction::polynomial(2, 0.1), 2, 10.0);
    const double c = std::pow(0.5, 0.25) * 10.0;
    const std::vector<double> on{c, c};
    CHECK(std::abs(eval_psi_hat(spec, on)) < 1e-12);
    for (const auto& [p, r] : {std::pair{2, 1}, std::pair{4, 2}}) {
        const auto s = make_psi_spec(WindowFunction::polynomial(r, 0.1), 2, 10.0, p);
        const auto check = psi_hat_sign_check(s, 101, 20.0);
        CHECK(check.samples == 101 * 101);
        CHECK(check.checked > 0);
        CHECK(check.violations == 0);
    }
    for (const auto& w : all_windows(0.1)) {
        CAPTURE(w.name());
        CHECK(psi_hat_sign_check(make_psi_spec(w, 1, 10.0), 2001, 20.0).passed());
        CHECK(psi_hat_sign_check(make_psi_spec(w, 3, 10.0), 101, 20.0).passed());
    }
}

TEST_CASE("Poisson summation reconstructs the periodized psi")
{
    // psi-hat decays like k^-2, so partial sums converge at rate 1/K at the
    // origin (and faster elsewhere), so the check is on relative size and rate.
    for (const auto& w : {WindowFunction::polynomial(2, 0.2), WindowFunction::raised_cosine(0.2),
                          WindowFunction::biharmonic(0.2)}) {
        CAPTURE(w.name());
        const auto spec = make_psi_spec(w, 1, 4.0);
        const double scale = std::abs(psi_at_zero(spec));
        for (double x : {0.0, 0.05, 0.13, 0.3}) {
            double periodized = 0.0;
            for (int r = -1; r <= 1; ++r) {
                const std::vector<double> xr{x + r};
                periodized += eval_psi(spec, xr);
            }
            auto partial = [&](int K) {
                double s = 0.0;
                for (int k = -K; k <= K; ++k) {
                    const std::vector<double> v{static_cast<double>(k)};
                    s += eval_psi_hat(spec, v) * std::cos(2.0 * kPi * k * x);
                }
                return s;
            };
            const double e200 = std::abs(partial(200) - periodized);
            const double e800 = std::abs(partial(800) - periodized);
            CAPTURE(x);
            CHECK(e200 < 1e-1 * scale);
            CHECK(e800 < e200 / 3.5);
        }
    }
}

TEST_CASE("per-dimension constants")
{
    CHECK(constant_Cp(2) == doctest::Approx(std::sqrt(2.5) / kPi).epsilon(1e-14));
    CHECK(std::abs(constant_Cp(2) - 0.50329) < 1e-5);
    CHECK(constant_Cp(4) == doctest::Approx(std::pow(31.5, 0.25) / kPi).epsilon(1e-14));
    CHECK(std::abs(constant_Cp(4) - 0.7541) < 5e-5);
    CHECK(std::abs(constant_Cp(8) - 1.245) < 1e-3);
    for (int p = 2; p <= 60; p += 2) CHECK(constant_Cp(p) <= (2.0 * p + 3.0) / (std::numbers::e * kPi));
    CHECK_THROWS_AS(constant_Cp(3), std::invalid_argument);
    CHECK_THROWS_AS(constant_Cp(0), std::invalid_argument);
}

TEST_CASE("sigma root")
{
    const double s = sigma_root();
    CHECK(std::abs(s - 2.365) < 1e-3);
    CHECK(std::abs(std::cos(s) * std::sinh(s) + std::cosh(s) * std::sin(s)) <= 1e-9);
    CHECK(std::abs(s / kPi - 0.7528) < 5e-4);
}

TEST_CASE("thresholds")
{
    for (std::size_t d : {1u, 2u, 5u, 10u}) {
        const double dd = static_cast<double>(d);
        CHECK(threshold_nq(WindowFunction::polynomial(1, 0.1), d) == doctest::Approx(constant_Cp(2) * std::sqrt(dd)));
        CHECK(threshold_nq(WindowFunction::polynomial(2, 0.37), d) ==
              doctest::Approx(constant_Cp(4) * std::pow(dd, 0.25)));
        CHECK(threshold_nq(WindowFunction::cosine(0.2), d) == doctest::Approx(0.5 * std::sqrt(dd)));
        CHECK(threshold_nq(WindowFunction::raised_cosine(0.2), d) == doctest::Approx(std::pow(dd / 3.0, 0.25)));
        CHECK(threshold_nq(WindowFunction::biharmonic(0.2), d) ==
              doctest::Approx(sigma_root() / kPi * std::pow(dd, 0.25)));
        for (int r = 1; r <= 4; ++r) {
            const int p = 2 * r;
            CHECK(threshold_nq(WindowFunction::polynomial(r, 0.1), d) <=
                  (2.0 * p + 3.0) / (std::numbers::e * kPi) * std::pow(dd, 1.0 / p));
        }
    }
}

TEST_CASE("psi(0) changes sign at the threshold")
{
    for (const auto& w : all_windows(0.1)) {
        for (std::size_t d : {1u, 2u, 5u, 10u}) {
            const double nq = threshold_nq(w, d);
            const double n = nq / w.q();
            CHECK(psi_at_zero(make_psi_spec(w, d, n * (1.0 + 1e-9))) > 0.0);
            CHECK(psi_at_zero(make_psi_spec(w, d, n * (1.0 - 1e-9))) < 0.0);
        }
    }
}

TEST_CASE("dimension constants match the reference values")
{
    const std::vector<std::pair<std::size_t, double>> table{{1, 1.0},  {2, 1.4},  {3, 1.7},  {4, 2.0},   {10, 2.7},
                                                            {16, 3.0}, {20, 3.2}, {64, 4.0}, {100, 4.3}, {256, 5.0}};
    for (const auto& [d, printed] : table) {
        CAPTURE(d);
        CHECK(std::abs(constant_cd(d).c_d - printed) <= 0.05);
    }
    CHECK(constant_cd(1).provenance == "cos");
    CHECK(constant_cd(1).c_d == doctest::Approx(1.0));
}

TEST_CASE("candidate range captures the minimum of a wider sweep")
{
    for (std::size_t d : {1u, 2u, 7u, 50u, 256u, 1000u, 100000u}) {
        double wide = std::numeric_limits<double>::infinity();
        for (int p = 2; p <= 80; p += 2) wide = std::min(wide, 2.0 * constant_Cp(p) * std::pow(double(d), 1.0 / p));
        for (const auto& c : cd_candidates(d)) {
            if (c.provenance != "poly") wide = std::min(wide, c.value);
        }
        CHECK(constant_cd(d).c_d == doctest::Approx(wide).epsilon(1e-14));
    }
}

TEST_CASE("logarithmic bounds")
{
    CHECK(log_bound_cd(1).simple == 3.0);
    CHECK(std::abs(log_bound_cd(256).simple - 14.09) < 0.01);
    // (7 + 4 log 10) / (pi sqrt e) evaluates to 3.13
    CHECK(std::abs(log_bound_cd(10).explicit_bound - 3.13) < 0.01);
    CHECK(constant_cd(10).c_d <= 2.0 * log_bound_cd(10).explicit_bound);
    for (std::size_t d = 1; d <= 2000; d += (d < 50 ? 1 : 37)) {
        CHECK(constant_cd(d).c_d <= log_bound_cd(d).simple);
        CHECK(constant_cd(d).c_d <= 2.0 * log_bound_cd(d).explicit_bound);
    }
}

TEST_CASE("l^p ball enumeration")
{
    CHECK(lp_ball_indices(2, 2, 1.0).size() == 5);
    CHECK(lp_ball_indices(1, 4, 3.5).size() == 7);
    CHECK(lp_ball_indices(2, 2, 0.0).size() == 1);
    // unit cube plus the six axis points at distance 2
    CHECK(lp_ball_indices(3, 40, 2.0).size() == 33);
    for (const auto& k : lp_ball_indices(2, 4, 5.0)) CHECK(std::pow(k[0], 4) + std::pow(k[1], 4) <= 625.0);
}

TEST_CASE("Ingham lower bound")
{
    const DiracEnsemble single({TorusPoint(std::vector<double>{0.3})}, {2.0});
    const auto one = ingham_lower_bound(single, 10.0, 2);
    CHECK(one.empirical_c == doctest::Approx(static_cast<double>(one.frequencies)));

    const auto line = random_separated_ensemble(1, 4, 0.2, 8);
    const auto c1 = ingham_lower_bound(line, 10.0, WindowFunction::polynomial(1, 0.2));
    CHECK(c1.empirical_c > 0.0);
    CHECK(c1.certificate.certified());
    CHECK(c1.bound_holds);

    const auto plane = random_separated_ensemble(2, 6, 0.15, 2);
    const auto c2 = ingham_lower_bound(plane, 8.0, WindowFunction::polynomial(1, 0.15));
    CHECK(c2.certificate.q == doctest::Approx(separation(plane).q));
    REQUIRE(c2.certificate.certified());
    CHECK(*c2.certificate.lower_bound_c > 0.0);
    CHECK(c2.empirical_c >= *c2.certificate.lower_bound_c - 1e-8);
}

TEST_CASE("certificate fields")
{
    const auto cert = certify(make_psi_spec(WindowFunction::polynomial(2, 0.1), 2, 10.0));
    CHECK(cert.variant == "poly");
    CHECK(cert.p == 4);
    CHECK(cert.psi_zero > 0.0);
    CHECK(cert.sign_check.passed());
    REQUIRE(cert.lower_bound_c);
    // max of psi-hat is at least its value at the origin
    const std::vector<double> zero{0.0, 0.0};
    CHECK(cert.psi_hat_max >= eval_psi_hat(make_psi_spec(WindowFunction::polynomial(2, 0.1), 2, 10.0), zero));

    const auto below = certify(make_psi_spec(WindowFunction::polynomial(2, 0.1), 2, 5.0));
    CHECK(below.psi_zero < 0.0);
    CHECK_FALSE(below.certified());
}
