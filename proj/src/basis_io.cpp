#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "weinorman/algebra.hpp"

namespace wn {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(std::string_view source, int line, const std::string& what) {
  throw ValidationError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view s, std::string_view source, int line) {
  // strtod rather than from_chars<double>: libstdc++ 11 lacks the latter.
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    fail(source, line, "invalid number '" + buf + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view source, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(source, line, "invalid integer '" + std::string(s) + "'");
  }
  return v;
}

complexd parse_complex(const std::string& tok, std::string_view source, int line) {
  const auto comma = tok.find(',');
  if (comma == std::string::npos) fail(source, line, "expected 're,im' but got '" + tok + "'");
  return {parse_double(std::string_view(tok).substr(0, comma), source, line),
          parse_double(std::string_view(tok).substr(comma + 1), source, line)};
}

}  // namespace

LieBasis parse_basis(std::string_view text, std::string_view source, const Tolerances& tol) {
  const auto lines = tokenize(text);
  int dim_n = -1, dim_alg = -1;
  std::string label = "custom";
  std::vector<ComplexMatrix> gens;

  std::size_t at = 0;
  auto expect_key = [&](const Line& l, std::size_t count) {
    if (l.tokens.size() != count) {
      fail(source, l.number, "expected " + std::to_string(count - 1) + " value(s) after '" +
                                 l.tokens[0] + "'");
    }
  };
  while (at < lines.size()) {
    const Line& l = lines[at];
    const std::string& key = l.tokens[0];
    if (key == "N") {
      expect_key(l, 2);
      dim_n = parse_int(l.tokens[1], source, l.number);
      if (dim_n < 1) fail(source, l.number, "N must be positive");
      ++at;
    } else if (key == "n") {
      expect_key(l, 2);
      dim_alg = parse_int(l.tokens[1], source, l.number);
      if (dim_alg < 1) fail(source, l.number, "n must be positive");
      ++at;
    } else if (key == "label") {
      expect_key(l, 2);
      label = l.tokens[1];
      ++at;
    } else if (key == "generator") {
      expect_key(l, 2);
      if (dim_n < 1 || dim_alg < 1) fail(source, l.number, "N and n must precede generators");
      const int index = parse_int(l.tokens[1], source, l.number);
      if (index != static_cast<int>(gens.size()) + 1) {
        fail(source, l.number,
             "expected generator " + std::to_string(gens.size() + 1) + ", got " +
                 std::to_string(index));
      }
      if (index > dim_alg) fail(source, l.number, "more generators than n");
      ComplexMatrix g(dim_n, dim_n);
      for (int r = 0; r < dim_n; ++r) {
        ++at;
        if (at >= lines.size()) {
          fail(source, l.number, "generator " + std::to_string(index) + " is missing rows");
        }
        const Line& row = lines[at];
        if (static_cast<int>(row.tokens.size()) != dim_n) {
          fail(source, row.number,
               "expected " + std::to_string(dim_n) + " entries, got " +
                   std::to_string(row.tokens.size()));
        }
        for (int c = 0; c < dim_n; ++c) g(r, c) = parse_complex(row.tokens[c], source, row.number);
      }
      gens.push_back(std::move(g));
      ++at;
    } else {
      fail(source, l.number, "unknown key '" + key + "'");
    }
  }
  if (dim_n < 1 || dim_alg < 1) {
    throw ValidationError(std::string(source) + ": missing N or n header");
  }
  if (static_cast<int>(gens.size()) != dim_alg) {
    throw ValidationError(std::string(source) + ": expected " + std::to_string(dim_alg) +
                          " generators, found " + std::to_string(gens.size()));
  }
  try {
    return LieBasis(label, std::move(gens), tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

LieBasis load_basis(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open basis file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_basis(ss.str(), path.string(), tol);
}

std::string format_basis(const LieBasis& basis) {
  std::ostringstream os;
  os << "N " << basis.dim_defining() << "\n"
     << "n " << basis.dim_algebra() << "\n"
     << "label " << basis.label() << "\n";
  char buf[64];
  for (int i = 1; i <= basis.dim_algebra(); ++i) {
    os << "generator " << i << "\n";
    const auto& g = basis.generator(i);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", g(r, c).real(), g(r, c).imag());
        os << (c ? " " : "") << buf;
      }
      os << "\n";
    }
  }
  return os.str();
}

LieBasis resolve_basis(const std::string& label_or_path, const Tolerances& tol) {
  for (const auto& l : builtin_labels()) {
    if (l == label_or_path) return builtin_basis(l);
  }
  if (std::filesystem::exists(label_or_path)) return load_basis(label_or_path, tol);
  throw UnsupportedBasis(label_or_path);
}

}  // namespace wn
