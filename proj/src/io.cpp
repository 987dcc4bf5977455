#include "weinorman/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wn::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::string_view source, int line, const std::string& what) {
  throw ValidationError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view tok, std::string_view source, int line) {
  const std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    fail(source, line, "invalid number '" + s + "'");
  }
  return v;
}

std::string row(double t, const RealVector& a, const RealVector* b = nullptr,
                const double* tail = nullptr) {
  std::string out = format_double(t);
  for (Eigen::Index k = 0; k < a.size(); ++k) out += "," + format_double(a(k));
  if (b) {
    for (Eigen::Index k = 0; k < b->size(); ++k) out += "," + format_double((*b)(k));
  }
  if (tail) out += "," + format_double(*tail);
  return out + "\n";
}

}  // namespace

ControlSignal parse_controls_csv(std::string_view text, std::string_view source) {
  std::vector<double> times;
  std::vector<RealVector> values;
  int channels = -1;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_commas(line);
    if (channels < 0) {
      if (cells.size() < 2 || cells[0] != "t") fail(source, lineno, "expected header t,u_1,...,u_n");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c] != "u_" + std::to_string(c)) {
          fail(source, lineno, "header column " + std::to_string(c + 1) + " should be u_" +
                                   std::to_string(c));
        }
      }
      channels = static_cast<int>(cells.size()) - 1;
      continue;
    }
    if (static_cast<int>(cells.size()) != channels + 1) {
      fail(source, lineno, "expected " + std::to_string(channels + 1) + " columns, found " +
                               std::to_string(cells.size()));
    }
    const double t = parse_number(cells[0], source, lineno);
    if (!times.empty() && !(t > times.back())) fail(source, lineno, "times must be strictly increasing");
    RealVector u(channels);
    for (int c = 0; c < channels; ++c) u(c) = parse_number(cells[c + 1], source, lineno);
    times.push_back(t);
    values.push_back(std::move(u));
  }
  if (channels < 0) throw ValidationError(std::string(source) + ": missing header");
  if (times.empty()) throw ValidationError(std::string(source) + ": no samples");
  return ControlSignal::samples(std::move(times), std::move(values));
}

ControlSignal load_controls_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open controls file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_controls_csv(ss.str(), path.string());
}

std::string format_controls_csv(const std::vector<double>& times,
                                const std::vector<RealVector>& values) {
  if (times.size() != values.size() || times.empty()) {
    throw ValidationError("controls: times and values differ in length");
  }
  std::string out =
      "# left-hold: u(t) = row with the largest t_k <= t; the first row also holds before t_0\n";
  out += "t";
  for (Eigen::Index c = 0; c < values.front().size(); ++c) out += ",u_" + std::to_string(c + 1);
  out += "\n";
  for (std::size_t k = 0; k < times.size(); ++k) out += row(times[k], values[k]);
  return out;
}

std::string format_controls_csv(const ControlSignal& controls, const TimeGrid& grid) {
  if (const auto* s = controls.as_samples()) return format_controls_csv(s->times, s->values);
  std::vector<double> times;
  std::vector<RealVector> values;
  for (long k = 0; k <= grid.steps; ++k) {
    times.push_back(grid.time(k));
    values.push_back(controls(times.back()));
  }
  return format_controls_csv(times, values);
}

std::string format_trajectory_csv(const Trajectory& tr) {
  const Eigen::Index n = tr.gammas.empty() ? tr.abort_gamma.size() : tr.gammas.front().size();
  std::string out = "t";
  for (Eigen::Index k = 1; k <= n; ++k) out += ",gamma_" + std::to_string(k);
  for (Eigen::Index k = 1; k <= n; ++k) out += ",u_" + std::to_string(k);
  out += ",det_xi\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    out += row(tr.times[k], tr.gammas[k], &tr.controls[k], &tr.dets[k]);
  }
  return out;
}

json complex_json(complexd z) { return json::array({z.real(), z.imag()}); }

json structure_tensor_json(const std::string& label, const StructureTensor& tensor) {
  json entries = json::array();
  for (const auto& e : tensor.nonzero_entries()) {
    entries.push_back({{"k", e.k}, {"i", e.i}, {"j", e.j}, {"value", e.value}});
  }
  return {{"basis", label},
          {"dimension", tensor.dim()},
          {"convention", "[A_i, A_j] = c^k_ij A_k; entries listed for i < j, c^k_ji = -c^k_ij"},
          {"entries", entries},
          {"jacobi_residual", jacobi_residual(tensor)}};
}

json spectra_json(const std::string& label, const AdjointTable& table) {
  json gens = json::array();
  for (int i = 1; i <= table.dim(); ++i) {
    const Spectrum& spec = table.spectrum(i);
    json roots = json::array();
    for (const auto& r : spec.roots) {
      roots.push_back({{"value", complex_json(r.value)}, {"multiplicity", r.multiplicity}});
    }
    std::vector<double> monic(spec.char_poly.monic.data(),
                              spec.char_poly.monic.data() + spec.char_poly.monic.size());
    const RealVector a = spec.char_poly.cayley_hamilton();
    std::vector<double> ch(a.data(), a.data() + a.size());
    gens.push_back({{"generator", i},
                    {"char_poly_monic", monic},
                    {"cayley_hamilton", ch},
                    {"eigenvalues", roots}});
  }
  return {{"basis", label},
          {"dimension", table.dim()},
          {"convention",
           "det(sI - M_i) = s^n + sum_k char_poly_monic[k] s^k; "
           "M_i^n = sum_k cayley_hamilton[k] M_i^k; eigenvalues as [re, im]"},
          {"generators", gens}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace wn::io
