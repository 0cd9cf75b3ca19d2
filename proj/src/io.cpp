#include "mprony/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace mprony::io {

namespace {

Json complex_pair(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex parse_complex(const Json& item, const char* what)
{
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
        throw FormatError(std::string(what) + ": expected [re, im]");
    }
    return {item[0].get<double>(), item[1].get<double>()};
}

const Json& field(const Json& doc, const char* name)
{
    if (!doc.is_object() || !doc.contains(name)) throw FormatError(std::string("missing field \"") + name + "\"");
    return doc.at(name);
}

std::size_t positive_dimension(const Json& doc)
{
    const Json& d = field(doc, "d");
    if (!d.is_number_integer() || d.get<long long>() < 1) throw FormatError("\"d\" must be a positive integer");
    return static_cast<std::size_t>(d.get<long long>());
}

std::string shortest(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// JSON has no infinity; unmatched entries become null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json finite_array(const std::vector<double>& xs)
{
    Json out = Json::array();
    for (double x : xs) out.push_back(finite_or_null(x));
    return out;
}

Json sign_check_json(const SignCheck& check)
{
    return {{"samples", check.samples},
            {"checked", check.checked},
            {"violations", check.violations},
            {"passed", check.passed()}};
}

}  // namespace

Json ensemble_to_json(const DiracEnsemble& ensemble)
{
    Json points = Json::array();
    for (const auto& p : ensemble.points()) points.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
    Json coefficients = Json::array();
    for (const auto& c : ensemble.coefficients()) coefficients.push_back(complex_pair(c));
    return {{"d", ensemble.dim()}, {"points", points}, {"coefficients", coefficients}};
}

DiracEnsemble ensemble_from_json(const Json& doc)
{
    const std::size_t d = positive_dimension(doc);
    const Json& pts = field(doc, "points");
    const Json& coefs = field(doc, "coefficients");
    if (!pts.is_array() || !coefs.is_array()) throw FormatError("\"points\" and \"coefficients\" must be arrays");
    std::vector<TorusPoint> points;
    for (const auto& p : pts) {
        if (!p.is_array() || p.size() != d) throw FormatError("every point needs exactly d coordinates");
        std::vector<double> raw;
        for (const auto& x : p) {
            if (!x.is_number()) throw FormatError("point coordinates must be numbers");
            raw.push_back(x.get<double>());
        }
        points.emplace_back(std::move(raw));
    }
    std::vector<Complex> coefficients;
    for (const auto& c : coefs) coefficients.push_back(parse_complex(c, "coefficient"));
    return DiracEnsemble(std::move(points), std::move(coefficients));
}

Json moments_to_json(const MomentTable& moments)
{
    Json values = Json::array();
    for (const auto& v : moments.values) values.push_back(complex_pair(v));
    return {{"d", moments.box.dim()}, {"n", moments.box.order()}, {"signed", moments.box.is_signed()}, {"values", values}};
}

MomentTable moments_from_json(const Json& doc)
{
    const std::size_t d = positive_dimension(doc);
    const Json& n = field(doc, "n");
    if (!n.is_number_integer() || n.get<long long>() < 0) throw FormatError("\"n\" must be a nonnegative integer");
    bool is_signed = true;
    if (doc.contains("signed")) {
        if (!doc.at("signed").is_boolean()) throw FormatError("\"signed\" must be a boolean");
        is_signed = doc.at("signed").get<bool>();
    }
    MultiIndexBox box(d, static_cast<int>(n.get<long long>()), is_signed);
    const Json& vals = field(doc, "values");
    if (!vals.is_array() || vals.size() != box.size()) {
        throw FormatError("\"values\" must hold " + std::to_string(box.size()) + " entries for d=" +
                          std::to_string(d) + ", n=" + std::to_string(box.order()));
    }
    MomentTable table{box, {}};
    table.values.reserve(box.size());
    for (const auto& v : vals) table.values.push_back(parse_complex(v, "moment"));
    return table;
}

Json recovery_to_json(const RecoveryResult& result)
{
    Json zeros = Json::array();
    for (const auto& z : result.variety.zeros) zeros.push_back(std::vector<double>(z.coords().begin(), z.coords().end()));
    Json coefficients = Json::array();
    for (const auto& c : result.coefficients) coefficients.push_back(complex_pair(c));

    Json doc = {
        {"status", to_string(result.status)},
        {"message", result.message},
        {"warnings", result.warnings},
        {"d", result.d},
        {"n", result.n},
        {"toeplitz_rank", result.toeplitz_rank.rank},
        {"rank_threshold", result.toeplitz_rank.threshold},
        {"spectral_gap", finite_or_null(result.toeplitz_rank.gap)},
        {"kernel_dimension", result.kernel_dimension},
        {"estimated_size", result.estimated_size},
        {"candidates", result.variety.candidates},
        {"zeros", zeros},
        {"residuals", result.variety.residuals},
        {"coefficients", coefficients},
        {"spurious", result.spurious},
        {"moment_residual", result.moment_residual},
        {"relative_moment_residual", result.relative_moment_residual},
    };
    if (result.matched) {
        const MatchReport& m = *result.matched;
        doc["matching"] = {
            {"assignment", m.assignment},
            {"wrap_errors", finite_array(m.wrap_errors)},
            {"coefficient_errors", finite_array(m.coefficient_errors)},
            {"relative_coefficient_errors", finite_array(m.relative_coefficient_errors)},
            {"max_wrap_error", finite_or_null(m.max_wrap_error)},
            {"max_relative_coefficient_error", finite_or_null(m.max_relative_coefficient_error)},
            {"unmatched_truth", m.unmatched_truth},
            {"unmatched_recovered", m.unmatched_recovered},
        };
    }
    return doc;
}

Json certificate_to_json(const InghamCertificate& c)
{
    return {
        {"variant", c.variant},
        {"p", c.p},
        {"d", c.d},
        {"n", c.n},
        {"q", c.q},
        {"psi_zero", c.psi_zero},
        {"autocorr0", c.autocorr0},
        {"deriv_autocorr0", c.deriv_autocorr0},
        {"threshold_nq", c.threshold_nq},
        {"psi_hat_max", c.psi_hat_max},
        {"lower_bound_c", c.lower_bound_c ? Json(*c.lower_bound_c) : Json(nullptr)},
        {"certified", c.certified()},
        {"sign_check", sign_check_json(c.sign_check)},
    };
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& err) {
        throw FormatError(path.string() + ": " + err.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& doc)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << doc.dump(1) << '\n';
    if (!out) throw FormatError("write failed for " + path.string());
}

std::string complex_cell(Complex value)
{
    std::string cell = shortest(value.real());
    const double im = value.imag();
    cell += std::signbit(im) ? "-" : "+";
    cell += shortest(std::abs(im));
    cell += 'i';
    return cell;
}

void write_matrix_csv(std::ostream& out, const CMatrix& matrix)
{
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            if (c) out << ',';
            out << complex_cell(matrix(r, c));
        }
        out << '\n';
    }
}

GridData window_grid(const PsiSpec& spec, GridTarget which, std::size_t resolution)
{
    if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
    const double half = which == GridTarget::Psi ? 1.5 * spec.window.q() : 2.0 * spec.n;
    const std::size_t axes = spec.d >= 2 ? 2 : 1;
    std::vector<double> ticks(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        ticks[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(resolution - 1);
    }

    GridData grid;
    grid.d = spec.d;
    const std::size_t total = axes == 2 ? resolution * resolution : resolution;
    grid.coords.reserve(total);
    grid.values.reserve(total);
    std::vector<double> x(spec.d, 0.0);
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < (axes == 2 ? resolution : 1); ++j) {
            x[0] = ticks[i];
            if (axes == 2) x[1] = ticks[j];
            grid.coords.push_back(x);
            grid.values.push_back(which == GridTarget::Psi ? eval_psi(spec, x) : eval_psi_hat(spec, x));
        }
    }
    return grid;
}

std::vector<std::array<double, 2>> grid_boundary(const PsiSpec& spec, GridTarget which, std::size_t vertices)
{
    std::vector<std::array<double, 2>> line;
    if (which == GridTarget::Psi) {
        const double q = spec.window.q();
        line = {{-q, -q}, {q, -q}, {q, q}, {-q, q}, {-q, -q}};
        return line;
    }
    if (vertices < 4) throw std::invalid_argument("boundary polyline needs at least 4 vertices");
    // ||v||_p = n: v = n (sgn cos th |cos th|^{2/p}, sgn sin th |sin th|^{2/p})
    const double e = 2.0 / static_cast<double>(spec.p());
    for (std::size_t i = 0; i < vertices; ++i) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(vertices - 1);
        const double c = std::cos(th);
        const double s = std::sin(th);
        line.push_back({spec.n * std::copysign(std::pow(std::abs(c), e), c),
                        spec.n * std::copysign(std::pow(std::abs(s), e), s)});
    }
    return line;
}

void write_grid_csv(std::ostream& out, const GridData& grid)
{
    for (std::size_t s = 0; s < grid.d; ++s) out << 'x' << (s + 1) << ',';
    out << "value\n";
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        for (double x : grid.coords[i]) out << shortest(x) << ',';
        out << shortest(grid.values[i]) << '\n';
    }
}

void write_polyline_csv(std::ostream& out, const std::vector<std::array<double, 2>>& polyline)
{
    out << "x1,x2\n";
    for (const auto& v : polyline) out << shortest(v[0]) << ',' << shortest(v[1]) << '\n';
}

}  // namespace mprony::io
