// Compactly supported windows phi, the multivariate certificate function
//
//   psi = ((2 pi n)^p - (-1)^r sum_s d^p/dx_s^p) (phi*phi)^{(x) d},   p = 2r,
//
// its Fourier transform, and the constants that decide when psi(0) > 0 and
// therefore when an Ingham-type lower bound holds for q-separated nodes.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mprony/ensemble.hpp"
#include "mprony/moments.hpp"

namespace mprony {

enum class WindowKind {
    Polynomial,    // (1 - (2x/q)^2)^r
    Cosine,        // cos(pi x / q), r = 1
    RaisedCosine,  // 1 + cos(2 pi x / q), r = 2
    Biharmonic,    // clamped biharmonic eigenfunction, r = 2
};

/// Even window supported on [-q/2, q/2] with phi(0) > 0.
class WindowFunction {
public:
    static WindowFunction polynomial(int r, double q);
    static WindowFunction cosine(double q);
    static WindowFunction raised_cosine(double q);
    static WindowFunction biharmonic(double q);

    /// Parses "poly", "cos", "raised-cos" or "biharmonic"; p selects r for poly.
    static WindowFunction from_name(const std::string& name, int p, double q);

    WindowKind kind() const { return kind_; }
    double q() const { return q_; }
    /// Derivative order r entering psi; p = 2r.
    int r() const { return r_; }
    int p() const { return 2 * r_; }
    std::string name() const;

    WindowFunction with_q(double q) const;

private:
    WindowFunction(WindowKind kind, int r, double q);

    WindowKind kind_;
    int r_;
    double q_;
};

/// phi(x); exactly zero for |x| >= q/2.
double eval_phi(const WindowFunction& window, double x);

/// m-th derivative of phi for 0 <= m <= r. On the closed support it is the
/// limit from the interior; zero for |x| > q/2.
double eval_phi_derivative(const WindowFunction& window, double x, int m);

/// phi-hat(v) = int phi(x) exp(-2 pi i v x) dx (real, since phi is even).
double eval_phi_hat(const WindowFunction& window, double v);

/// (phi*phi)(0) = int phi^2, closed form per window.
double autocorr_at_zero(const WindowFunction& window);

/// (phi^(r) * phi^(r))(0) = (-1)^r int (phi^(r))^2, closed form per window.
double deriv_autocorr_at_zero(const WindowFunction& window);

/// (phi*phi)(x) for any x; zero for |x| >= q.
double autocorr(const WindowFunction& window, double x);

/// (phi^(r) * phi^(r))(x) for any x; zero for |x| >= q.
double deriv_autocorr(const WindowFunction& window, double x);

struct PsiSpec {
    WindowFunction window;
    std::size_t d = 1;
    double n = 1.0;

    int p() const { return window.p(); }
};

/// Validates d >= 1, n > 0 and, when given, that p matches the window.
PsiSpec make_psi_spec(const WindowFunction& window, std::size_t d, double n,
                      std::optional<int> p = std::nullopt);

/// (phi*phi(0))^{d-1} ((2 pi n)^p phi*phi(0) - (-1)^r d phi^(r)*phi^(r)(0)).
double psi_at_zero(const PsiSpec& spec);

/// Smallest n q for which psi(0) > 0; independent of q.
double threshold_nq(const WindowFunction& window, std::size_t d);

double eval_psi(const PsiSpec& spec, std::span<const double> x);

/// ((2 pi n)^p - sum_s (2 pi v_s)^p) prod_l phi-hat(v_l)^2.
double eval_psi_hat(const PsiSpec& spec, std::span<const double> v);

/// C_p = (Gamma(p/2+1) Gamma(p+3/2) / (pi^p Gamma((p+3)/2)))^{1/p}, p even >= 2.
double constant_Cp(int p);

struct InghamConstants {
    int p = 2;
    double C_p = 0.0;  // per-dimension constant of the winning construction
    std::size_t d = 1;
    double c_d = 0.0;
    std::string provenance;
};

struct CdCandidate {
    std::string provenance;
    int p = 2;
    double C_p = 0.0;
    double value = 0.0;  // 2 C_p d^{1/p}
};

/// Every construction competing for c_d, in a fixed order.
std::vector<CdCandidate> cd_candidates(std::size_t d);

/// c_d = 2 min C_p d^{1/p} over polynomial windows p in {2, 4, ..., 2 ceil(log d) + 8}
/// and the cosine, raised-cosine and biharmonic windows.
InghamConstants constant_cd(std::size_t d);

struct LogBound {
    int p = 2;                    // 2 ceil(log d), at least 2
    double explicit_bound = 0.0;  // (7 + 4 log d) / (pi sqrt(e))
    double simple = 0.0;          // 3 + 2 log d
};

LogBound log_bound_cd(std::size_t d);

/// First positive root of cos t sinh t + cosh t sin t, by bisection on [2, 3].
double sigma_root();

struct SignCheck {
    std::size_t samples = 0;
    std::size_t checked = 0;     // samples with prod phi-hat^2 above the floor
    std::size_t violations = 0;
    bool passed() const { return violations == 0; }
};

/// Checks psi-hat >= 0 inside and <= 0 outside the l^p ball of radius n.
/// For d <= 2 samples a full grid of `points_per_axis`^d points over
/// [-half_width, half_width]^d; for d >= 3 uses as many seeded random points.
SignCheck psi_hat_sign_check(const PsiSpec& spec, std::size_t points_per_axis, double half_width,
                             double magnitude_floor = 1e-14);

/// Estimate of max_v psi-hat(v) by axis sampling over [-n - 1/q, n + 1/q]^d
/// followed by coordinatewise and pattern-search refinement.
double psi_hat_max(const PsiSpec& spec);

struct InghamCertificate {
    std::string variant;
    int p = 2;
    std::size_t d = 1;
    double n = 0.0;
    double q = 0.0;
    double psi_zero = 0.0;
    double autocorr0 = 0.0;
    double deriv_autocorr0 = 0.0;
    double threshold_nq = 0.0;
    double psi_hat_max = 0.0;
    std::optional<double> lower_bound_c;  // psi(0) / max psi-hat when psi(0) > 0
    SignCheck sign_check;

    bool certified() const { return lower_bound_c.has_value(); }
};

InghamCertificate certify(const PsiSpec& spec);

/// k in Z^d with ||k||_p <= n, in box enumeration order.
std::vector<MultiIndex> lp_ball_indices(std::size_t d, int p, double n);

struct InghamCheck {
    InghamCertificate certificate;
    std::size_t frequencies = 0;
    /// lambda_min of B^* B, B = (exp(2 pi i <k, t_j>)) over the l^p ball.
    double empirical_c = 0.0;
    /// empirical_c >= lower_bound_c - 1e-8 (vacuous when not certified).
    bool bound_holds = false;
};

/// Certificate with the window's q set to the ensemble separation, compared
/// against the smallest eigenvalue of the l^p-ball Gram matrix.
InghamCheck ingham_lower_bound(const DiracEnsemble& ensemble, double n, const WindowFunction& window);
InghamCheck ingham_lower_bound(const DiracEnsemble& ensemble, double n, int p);

}  // namespace mprony
