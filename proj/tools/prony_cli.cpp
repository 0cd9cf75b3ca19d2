// prony: command-line front end for the multivariate Prony library.
//
// Exit codes: 0 success, 2 structured recovery failure, 1 usage error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mprony/ensemble.hpp"
#include "mprony/ingham.hpp"
#include "mprony/io.hpp"
#include "mprony/moments.hpp"
#include "mprony/prony.hpp"
#include "mprony/random_ensemble.hpp"

namespace {

using namespace mprony;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double rank_tolerance()
{
    const char* env = std::getenv("PRONY_TOL");
    if (!env || !*env) return kDefaultRankTolerance;
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0) || !(tol < 1.0)) {
        throw UsageError(std::string("PRONY_TOL must be a number in (0, 1), got \"") + env + "\"");
    }
    return tol;
}

std::string fixed(double x, int digits)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << x;
    return out.str();
}

std::string sci(double x)
{
    std::ostringstream out;
    out << std::scientific << std::setprecision(3) << x;
    return out.str();
}

// ---- constants ----

struct ConstantsArgs {
    std::vector<std::size_t> d_list{1, 2, 3, 4, 10, 16, 20, 64, 100, 256};
    bool json = false;
};

int cmd_constants(const ConstantsArgs& args)
{
    io::Json rows = io::Json::array();
    if (!args.json) {
        std::cout << std::left << std::setw(6) << "d" << std::setw(9) << "c_d" << std::setw(13) << "construction"
                  << std::setw(4) << "p" << std::setw(9) << "C_p" << std::setw(11) << "3+2log d"
                  << "bound holds\n";
    }
    for (std::size_t d : args.d_list) {
        if (d == 0) throw UsageError("--d-list entries must be >= 1");
        const InghamConstants c = constant_cd(d);
        const LogBound lb = log_bound_cd(d);
        const bool holds = c.c_d <= lb.simple;
        if (args.json) {
            rows.push_back({{"d", d},
                            {"c_d", c.c_d},
                            {"construction", c.provenance},
                            {"p", c.p},
                            {"C_p", c.C_p},
                            {"log_bound", lb.simple},
                            {"explicit_bound", lb.explicit_bound},
                            {"bound_holds", holds}});
        } else {
            std::cout << std::left << std::setw(6) << d << std::setw(9) << fixed(c.c_d, 3) << std::setw(13)
                      << c.provenance << std::setw(4) << c.p << std::setw(9) << fixed(c.C_p, 4) << std::setw(11)
                      << fixed(lb.simple, 3) << (holds ? "yes" : "NO") << '\n';
        }
    }
    if (args.json) std::cout << rows.dump(1) << '\n';
    return kExitOk;
}

// ---- certify / window-grid ----

struct WindowArgs {
    std::size_t d = 2;
    int p = 2;
    double q = 0.1;
    double n = 10.0;
    std::string variant = "poly";
};

PsiSpec psi_spec(const WindowArgs& args)
{
    if (args.d == 0) throw UsageError("--d must be >= 1");
    if (!(args.q > 0.0) || args.q > 0.5) throw UsageError("--q must lie in (0, 1/2]");
    if (!(args.n > 0.0)) throw UsageError("--n must be positive");
    try {
        const WindowFunction window = WindowFunction::from_name(args.variant, args.p, args.q);
        return make_psi_spec(window, args.d, args.n, args.p);
    } catch (const std::invalid_argument& err) {
        throw UsageError(err.what());
    }
}

int cmd_certify(const WindowArgs& args, const std::string& out)
{
    const PsiSpec spec = psi_spec(args);
    const io::Json doc = io::certificate_to_json(certify(spec));
    if (out.empty()) {
        std::cout << doc.dump(1) << '\n';
    } else {
        io::write_json_file(out, doc);
    }
    return kExitOk;
}

struct GridArgs {
    WindowArgs window;
    std::string which = "psi";
    std::size_t resolution = 201;
    std::string out;
};

fs::path boundary_path(const fs::path& out)
{
    fs::path b = out;
    b.replace_filename(out.stem().string() + "_boundary.csv");
    return b;
}

int cmd_window_grid(const GridArgs& args)
{
    const PsiSpec spec = psi_spec(args.window);
    const io::GridTarget which = args.which == "psi" ? io::GridTarget::Psi : io::GridTarget::PsiHat;
    if (args.resolution < 2) throw UsageError("--res must be at least 2");
    const io::GridData grid = io::window_grid(spec, which, args.resolution);

    std::ofstream csv(args.out);
    if (!csv) throw UsageError("cannot write " + args.out);
    io::write_grid_csv(csv, grid);
    const fs::path bpath = boundary_path(args.out);
    std::ofstream boundary(bpath);
    if (!boundary) throw UsageError("cannot write " + bpath.string());
    io::write_polyline_csv(boundary, io::grid_boundary(spec, which));
    std::cout << "wrote " << grid.values.size() << " samples to " << args.out << " and boundary to "
              << bpath.string() << '\n';
    return kExitOk;
}

// ---- simulate / recover ----

void print_recovery_summary(const RecoveryResult& r)
{
    std::cout << "status: " << to_string(r.status) << '\n';
    if (!r.message.empty()) std::cout << "message: " << r.message << '\n';
    std::cout << "rank T_n: " << r.toeplitz_rank.rank << "  gap: " << sci(r.toeplitz_rank.gap)
              << "  kernel dimension: " << r.kernel_dimension << "  estimated M: " << r.estimated_size << '\n';
    std::cout << "zeros found: " << r.variety.size() << "  relative moment residual: "
              << sci(r.relative_moment_residual) << '\n';
    for (std::size_t j = 0; j < r.variety.size(); ++j) {
        std::cout << "  t = (";
        const auto& z = r.variety.zeros[j];
        for (std::size_t s = 0; s < z.dim(); ++s) std::cout << (s ? ", " : "") << fixed(z[s], 12);
        std::cout << ")";
        if (j < r.coefficients.size()) std::cout << "  c = " << io::complex_cell(r.coefficients[j]);
        if (j < r.spurious.size() && r.spurious[j]) std::cout << "  [spurious]";
        std::cout << '\n';
    }
    if (r.matched) {
        std::cout << "max wrap error: " << sci(r.matched->max_wrap_error)
                  << "  max relative coefficient error: " << sci(r.matched->max_relative_coefficient_error)
                  << "  unmatched: " << r.matched->unmatched_truth << " true / " << r.matched->unmatched_recovered
                  << " recovered\n";
    }
    for (const auto& w : r.warnings) std::cout << "warning: " << w << '\n';
}

struct SimulateArgs {
    std::size_t d = 2;
    std::size_t m = 5;
    double q = 0.2;
    int n = 9;
    std::uint64_t seed = 1;
    std::string export_moments;
    std::string export_ensemble;
    bool json = false;
};

int cmd_simulate(const SimulateArgs& args)
{
    if (args.d == 0 || args.m == 0) throw UsageError("--d and --m must be >= 1");
    if (args.n < 1) throw UsageError("--n must be >= 1");
    if (!(args.q > 0.0) || args.q > 0.5) throw UsageError("--q must lie in (0, 1/2]");
    const double tol = rank_tolerance();

    std::optional<DiracEnsemble> ensemble;
    try {
        ensemble = random_separated_ensemble(args.d, args.m, args.q, args.seed);
    } catch (const PackingInfeasible& err) {
        throw UsageError(std::string("packing infeasible: ") + err.what());
    }
    const MomentTable moments = compute_moments(*ensemble, args.n);
    if (!args.export_moments.empty()) io::write_json_file(args.export_moments, io::moments_to_json(moments));
    if (!args.export_ensemble.empty()) io::write_json_file(args.export_ensemble, io::ensemble_to_json(*ensemble));

    PipelineOptions options;
    options.rel_tol = tol;
    const RecoveryResult result = full_pipeline(moments, options, &*ensemble);

    const double q_actual = separation_or_half(*ensemble);
    const double c_d = constant_cd(args.d).c_d;
    const bool condition = (args.n - 1) * q_actual > c_d;
    const std::string condition_text = condition ? "condition met" : "condition not met";

    if (args.json) {
        io::Json doc = {{"d", args.d},       {"m", args.m},
                        {"q_target", args.q}, {"q", q_actual},
                        {"n", args.n},        {"seed", args.seed},
                        {"c_d", c_d},         {"condition_met", condition},
                        {"condition", condition_text}, {"ensemble", io::ensemble_to_json(*ensemble)},
                        {"recovery", io::recovery_to_json(result)}};
        std::cout << doc.dump(1) << '\n';
    } else {
        std::cout << "ensemble: d=" << args.d << " M=" << args.m << " q=" << fixed(q_actual, 6) << " seed=" << args.seed
                  << '\n';
        std::cout << "a-priori: (n-1)q = " << fixed((args.n - 1) * q_actual, 4) << " vs c_d = " << fixed(c_d, 4)
                  << ": " << condition_text << (condition ? "" : " (outcome informational)") << '\n';
        print_recovery_summary(result);
    }
    return result.succeeded() ? kExitOk : kExitFailure;
}

struct RecoverArgs {
    std::string moments;
    std::string truth;
    std::optional<int> order;
    std::string out;
    bool summary = false;
};

int cmd_recover(const RecoverArgs& args)
{
    const double tol = rank_tolerance();
    std::optional<MomentTable> moments;
    std::optional<DiracEnsemble> truth;
    try {
        moments = io::moments_from_json(io::read_json_file(args.moments));
        if (!args.truth.empty()) truth = io::ensemble_from_json(io::read_json_file(args.truth));
    } catch (const io::FormatError& err) {
        throw UsageError(err.what());
    } catch (const std::invalid_argument& err) {
        throw UsageError(err.what());
    }
    if (truth && truth->dim() != moments->box.dim()) throw UsageError("--truth dimension does not match the moments");

    PipelineOptions options;
    options.rel_tol = tol;
    options.order = args.order;
    RecoveryResult result;
    try {
        result = full_pipeline(*moments, options, truth ? &*truth : nullptr);
    } catch (const InsufficientOrder& err) {
        throw UsageError(err.what());
    }
    const io::Json doc = io::recovery_to_json(result);
    if (!args.out.empty()) io::write_json_file(args.out, doc);
    if (args.summary) {
        print_recovery_summary(result);
    } else if (args.out.empty()) {
        std::cout << doc.dump(1) << '\n';
    }
    return result.succeeded() ? kExitOk : kExitFailure;
}

// ---- rank-sweep ----

struct SweepArgs {
    std::string ensemble;
    std::size_t d = 1;
    std::size_t m = 3;
    double q = 0.2;
    std::uint64_t seed = 1;
    int n_max = 6;
};

int cmd_rank_sweep(const SweepArgs& args)
{
    if (args.n_max < 1 || args.n_max > 12) throw UsageError("--n-max must lie in [1, 12]");
    const double tol = rank_tolerance();
    std::optional<DiracEnsemble> ensemble;
    try {
        if (!args.ensemble.empty()) {
            ensemble = io::ensemble_from_json(io::read_json_file(args.ensemble));
        } else {
            ensemble = random_separated_ensemble(args.d, args.m, args.q, args.seed);
        }
    } catch (const io::FormatError& err) {
        throw UsageError(err.what());
    } catch (const std::invalid_argument& err) {
        throw UsageError(err.what());
    }

    const RankSweepReport sweep = rank_stabilization_check(*ensemble, args.n_max, tol);
    const MomentTable moments = compute_moments(*ensemble, args.n_max);
    std::cout << "ensemble: d=" << ensemble->dim() << " M=" << ensemble->size() << '\n';
    std::cout << std::left << std::setw(4) << "l" << std::setw(9) << "rank A" << std::setw(12) << "gap A"
              << std::setw(9) << "rank T" << std::setw(12) << "gap T" << '\n';
    for (int l = 0; l <= args.n_max; ++l) {
        const RankInfo t_rank = numerical_rank(build_toeplitz(moments, l).entries, tol);
        const auto idx = static_cast<std::size_t>(l);
        std::cout << std::left << std::setw(4) << l << std::setw(9) << sweep.ranks[idx] << std::setw(12)
                  << sci(sweep.gaps[idx]) << std::setw(9) << t_rank.rank << std::setw(12) << sci(t_rank.gap);
        if (sweep.first_stable && *sweep.first_stable == l) std::cout << "<- stable";
        std::cout << '\n';
    }
    if (sweep.first_stable) {
        std::cout << "first stabilization at l=" << *sweep.first_stable << " with rank "
                  << sweep.ranks[static_cast<std::size_t>(*sweep.first_stable)] << '\n';
    } else {
        std::cout << "no stabilization up to l=" << args.n_max << '\n';
    }
    std::cout << "rank stabilization property: " << (sweep.holds() ? "holds" : "not observed") << '\n';
    return kExitOk;
}

void add_window_options(CLI::App* cmd, WindowArgs& w)
{
    cmd->add_option("--d", w.d, "dimension")->capture_default_str();
    cmd->add_option("--p", w.p, "even order p = 2r")->capture_default_str();
    cmd->add_option("--q", w.q, "separation / support parameter")->capture_default_str();
    cmd->add_option("--n", w.n, "order n > 0")->capture_default_str();
    cmd->add_option("--variant", w.variant, "window: poly, cos, raised-cos, biharmonic")
        ->check(CLI::IsMember({"poly", "cos", "raised-cos", "biharmonic"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multivariate Prony recovery on the torus and Ingham-type certificates"};
    app.require_subcommand(1);

    ConstantsArgs constants;
    auto* c_cmd = app.add_subcommand("constants", "table of c_d with the winning window construction");
    c_cmd->add_option("--d-list", constants.d_list, "dimensions")->delimiter(',');
    c_cmd->add_flag("--json", constants.json, "emit JSON");

    WindowArgs cert;
    std::string cert_out;
    auto* cert_cmd = app.add_subcommand("certify", "psi certificate and Ingham lower-bound constant");
    add_window_options(cert_cmd, cert);
    cert_cmd->add_option("--out", cert_out, "write JSON here instead of stdout");

    GridArgs grid;
    auto* g_cmd = app.add_subcommand("window-grid", "psi or psi-hat on a square grid, CSV");
    add_window_options(g_cmd, grid.window);
    g_cmd->add_option("--which", grid.which, "psi or psi_hat")
        ->check(CLI::IsMember({"psi", "psi_hat"}))
        ->capture_default_str();
    g_cmd->add_option("--res", grid.resolution, "samples per axis")->capture_default_str();
    g_cmd->add_option("--out", grid.out, "CSV path; the boundary goes to <stem>_boundary.csv")->required();

    SimulateArgs sim;
    auto* s_cmd = app.add_subcommand("simulate", "random separated ensemble through the full pipeline");
    s_cmd->add_option("--d", sim.d, "dimension")->capture_default_str();
    s_cmd->add_option("--m", sim.m, "number of points")->capture_default_str();
    s_cmd->add_option("--q", sim.q, "target separation")->capture_default_str();
    s_cmd->add_option("--n", sim.n, "moment order")->capture_default_str();
    s_cmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    s_cmd->add_option("--export-moments", sim.export_moments, "write the moment table JSON");
    s_cmd->add_option("--export-ensemble", sim.export_ensemble, "write the ground-truth ensemble JSON");
    s_cmd->add_flag("--json", sim.json, "emit JSON");

    RecoverArgs rec;
    auto* r_cmd = app.add_subcommand("recover", "run the pipeline on a moment table");
    r_cmd->add_option("--moments", rec.moments, "moment table JSON")->required()->check(CLI::ExistingFile);
    r_cmd->add_option("--truth", rec.truth, "ground-truth ensemble JSON")->check(CLI::ExistingFile);
    r_cmd->add_option("--order", rec.order, "Toeplitz order (default: moment order)");
    r_cmd->add_option("--out", rec.out, "write the result JSON here");
    r_cmd->add_flag("--summary", rec.summary, "human-readable summary instead of JSON");

    SweepArgs sweep;
    auto* w_cmd = app.add_subcommand("rank-sweep", "rank A_l and rank T_l for l = 0..n_max");
    auto* ens_opt = w_cmd->add_option("--ensemble", sweep.ensemble, "ensemble JSON")->check(CLI::ExistingFile);
    w_cmd->add_option("--d", sweep.d, "dimension (generated ensemble)")->excludes(ens_opt)->capture_default_str();
    w_cmd->add_option("--m", sweep.m, "number of points (generated ensemble)")->excludes(ens_opt)->capture_default_str();
    w_cmd->add_option("--q", sweep.q, "separation (generated ensemble)")->excludes(ens_opt)->capture_default_str();
    w_cmd->add_option("--seed", sweep.seed, "seed (generated ensemble)")->excludes(ens_opt)->capture_default_str();
    w_cmd->add_option("--n-max", sweep.n_max, "largest order, at most 12")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_cmd->parsed()) return cmd_constants(constants);
        if (cert_cmd->parsed()) return cmd_certify(cert, cert_out);
        if (g_cmd->parsed()) return cmd_window_grid(grid);
        if (s_cmd->parsed()) return cmd_simulate(sim);
        if (r_cmd->parsed()) return cmd_recover(rec);
        if (w_cmd->parsed()) return cmd_rank_sweep(sweep);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
