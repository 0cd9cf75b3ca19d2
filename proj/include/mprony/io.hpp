// JSON and CSV formats shared by the library and the command-line tool.
//
//   ensemble: {"d": int, "points": [[t_1,...,t_d],...], "coefficients": [[re,im],...]}
//   moments:  {"d": int, "n": int, "signed": true, "values": [[re,im],...]}
//
// Moment values follow the colexicographic box enumeration. Doubles are
// written in shortest round-trip form, so a file read back reproduces the
// in-memory table bit for bit.
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mprony/ensemble.hpp"
#include "mprony/ingham.hpp"
#include "mprony/moments.hpp"
#include "mprony/prony.hpp"

namespace mprony::io {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json ensemble_to_json(const DiracEnsemble& ensemble);
DiracEnsemble ensemble_from_json(const Json& doc);

Json moments_to_json(const MomentTable& moments);
MomentTable moments_from_json(const Json& doc);

Json recovery_to_json(const RecoveryResult& result);
Json certificate_to_json(const InghamCertificate& certificate);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

/// "re+imi" / "re-imi" with round-trip precision.
std::string complex_cell(Complex value);
/// Row-major CSV, one matrix row per line.
void write_matrix_csv(std::ostream& out, const CMatrix& matrix);

enum class GridTarget { Psi, PsiHat };

/// Samples on a res x res grid over the first two coordinates (remaining
/// coordinates held at zero); for d = 1 a line of res samples.
struct GridData {
    std::size_t d = 2;
    std::vector<std::vector<double>> coords;
    std::vector<double> values;
};

/// psi over [-1.5q, 1.5q] or psi-hat over [-2n, 2n] per sampled axis. Rows
/// are ordered with x1 slowest.
GridData window_grid(const PsiSpec& spec, GridTarget which, std::size_t resolution);

/// Closed polyline of the reference boundary: the square [-q, q]^2 for psi,
/// the l^p sphere of radius n for psi-hat.
std::vector<std::array<double, 2>> grid_boundary(const PsiSpec& spec, GridTarget which,
                                                 std::size_t vertices = 361);

/// Header "x1,...,xd,value" followed by one row per sample.
void write_grid_csv(std::ostream& out, const GridData& grid);
void write_polyline_csv(std::ostream& out, const std::vector<std::array<double, 2>>& polyline);

}  // namespace mprony::io
