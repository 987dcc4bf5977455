#pragma once

// Serialization for the command-line tool. Indices are 1-based in every
// file; doubles are written with 17 significant digits.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weinorman/adjoint_exponential.hpp"
#include "weinorman/propagation.hpp"

namespace wn::io {

using json = nlohmann::ordered_json;

std::string format_double(double v);

// Controls file:
//   # left-hold: u(t) = row with the largest t_k <= t; the first row also holds before t_0
//   t,u_1,...,u_n
//   <17-digit decimals>
ControlSignal parse_controls_csv(std::string_view text, std::string_view source = "<input>");
ControlSignal load_controls_csv(const std::filesystem::path& path);
std::string format_controls_csv(const std::vector<double>& times,
                                const std::vector<RealVector>& values);
// Sampled on `grid` when the signal is analytic.
std::string format_controls_csv(const ControlSignal& controls, const TimeGrid& grid);

// t,gamma_1..gamma_n,u_1..u_n,det_xi
std::string format_trajectory_csv(const Trajectory& trajectory);

json complex_json(complexd z);
json structure_tensor_json(const std::string& label, const StructureTensor& tensor);
json spectra_json(const std::string& label, const AdjointTable& table);

// Writes through a temporary file and renames, so readers never see a
// half-written file.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace wn::io
