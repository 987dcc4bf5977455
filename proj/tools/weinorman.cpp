// weinorman: derive structure constants and spectra, simulate the Wei-Norman
// parameter ODE, run the golden-value suite.
//
// Exit codes: 0 success, 2 validation error, 3 singularity abort,
// 4 golden-suite failure, 1 anything else.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "weinorman/adjoint_exponential.hpp"
#include "weinorman/algebra.hpp"
#include "weinorman/golden.hpp"
#include "weinorman/io.hpp"
#include "weinorman/propagation.hpp"
#include "weinorman/wei_norman.hpp"

namespace fs = std::filesystem;
using wn::io::json;

namespace {

enum Exit { ok = 0, other = 1, validation = 2, singular = 3, golden_failed = 4 };

struct RunConfig {
  std::string basis = "su2_pauli_half";
  std::string chart = "canonical";
  std::string controls = "harmonic:3";
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
  double sing_threshold = wn::default_tolerances().singularity;
  bool verify = false;
  bool tabulated = false;
  std::string out = ".";
  std::uint64_t seed = 1;
};

std::vector<double> parse_list(const std::string& text, const std::string& what, char sep = ',') {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(sep, start), text.size());
    const std::string tok = text.substr(start, comma - start);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) {
      throw wn::ValidationError("invalid " + what + " '" + text + "'");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

// const:u1,...,un | harmonic:K[:amp] | path to a controls CSV
wn::ControlSignal make_controls(const RunConfig& cfg, int n) {
  const std::string& spec = cfg.controls;
  wn::ControlSignal signal = [&] {
    if (spec.rfind("const:", 0) == 0) {
      const auto v = parse_list(spec.substr(6), "constant controls");
      return wn::ControlSignal::constant(Eigen::Map<const wn::RealVector>(v.data(), v.size()));
    }
    if (spec.rfind("harmonic:", 0) == 0) {
      const auto v = parse_list(spec.substr(9), "harmonic preset", ':');
      if (v.empty() || v.size() > 2 || v[0] < 1 || v[0] != static_cast<int>(v[0])) {
        throw wn::ValidationError("harmonic preset is harmonic:K[:amplitude]");
      }
      const double amp = v.size() == 2 ? v[1] : 1.0;
      return wn::ControlSignal::random_harmonic(n, static_cast<int>(v[0]), amp, cfg.seed);
    }
    return wn::io::load_controls_csv(spec);
  }();
  if (signal.channels() != n) {
    throw wn::ValidationError("controls have " + std::to_string(signal.channels()) +
                              " channels, basis has dimension " + std::to_string(n));
  }
  return signal;
}

wn::StructureTensor tensor_for(const RunConfig& cfg, const wn::LieBasis& basis) {
  if (!cfg.tabulated) {
    return wn::compute_structure_tensor(basis).snapped(wn::default_tolerances().snap);
  }
  return wn::tabulated_structure_tensor(basis.label());
}

json gamma_json(const wn::RealVector& g) { return std::vector<double>(g.data(), g.data() + g.size()); }

int cmd_derive(const RunConfig& cfg) {
  const wn::LieBasis basis = wn::resolve_basis(cfg.basis);
  const wn::StructureTensor tensor = tensor_for(cfg, basis);
  const wn::AdjointTable table(tensor);
  json st = wn::io::structure_tensor_json(basis.label(), tensor);
  json sp = wn::io::spectra_json(basis.label(), table);
  st["source"] = cfg.tabulated ? "reference table" : "derived from basis";
  sp["source"] = st["source"];
  // Everything is computed before the first write.
  const std::string st_text = st.dump(2) + "\n";
  const std::string sp_text = sp.dump(2) + "\n";
  wn::io::write_file(fs::path(cfg.out) / "structure_tensor.json", st_text);
  wn::io::write_file(fs::path(cfg.out) / "spectra.json", sp_text);
  std::printf("%s: %zu nonzero structure constants (i<j), jacobi residual %.3g\n",
              basis.label().c_str(), tensor.nonzero_entries().size(), wn::jacobi_residual(tensor));
  return ok;
}

int cmd_simulate(const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const wn::LieBasis basis = wn::resolve_basis(cfg.basis);
  const int n = basis.dim_algebra();
  const wn::ChartSequence chart = wn::ChartSequence::parse(cfg.chart, n);
  const wn::ControlSignal controls = make_controls(cfg, n);
  const wn::TimeGrid grid = wn::make_grid(cfg.t0, cfg.t1, cfg.dt);
  if (!(cfg.sing_threshold >= 0.0)) throw wn::ValidationError("--sing-threshold must be >= 0");
  const wn::AdjointTable table(tensor_for(cfg, basis));

  wn::IntegrationOptions options;
  options.singularity_threshold = cfg.sing_threshold;

  json report;
  wn::Trajectory trajectory;
  json verify = nullptr;
  if (cfg.verify) {
    const wn::EquivalenceReport r =
        wn::verify_equivalence(controls, basis, chart, table, cfg.t0, cfg.t1, cfg.dt, options);
    trajectory = r.trajectory;
    verify = {{"max_discrepancy", r.max_discrepancy},
              {"max_discrepancy_time", r.max_discrepancy_time},
              {"max_unitarity_defect_product", r.max_unitarity_product},
              {"max_unitarity_defect_reference", r.max_unitarity_reference},
              {"max_det_defect_product", r.max_det_defect},
              {"min_abs_det_xi", r.min_abs_det_xi},
              {"samples", r.samples}};
  } else {
    trajectory = wn::integrate_gamma(controls, chart, table, cfg.t0, cfg.t1, cfg.dt, options);
  }

  const bool aborted = !trajectory.completed();
  report["status"] = aborted ? "aborted_at_singularity" : "completed";
  report["samples"] = trajectory.times.size();
  report["final_time"] = trajectory.times.empty() ? cfg.t0 : trajectory.times.back();
  report["final_gamma"] =
      trajectory.gammas.empty() ? json(nullptr) : gamma_json(trajectory.gammas.back());
  if (aborted) {
    report["abort"] = {{"t", trajectory.abort_time},
                       {"gamma", gamma_json(trajectory.abort_gamma)},
                       {"det_xi", trajectory.abort_det}};
  }
  report["verify"] = verify;
  report["config"] = {{"basis", basis.label()},
                      {"basis_argument", cfg.basis},
                      {"chart", chart.to_string()},
                      {"controls", cfg.controls},
                      {"t0", cfg.t0},
                      {"t1", cfg.t1},
                      {"dt", cfg.dt},
                      {"steps", grid.steps},
                      {"sing_threshold", cfg.sing_threshold},
                      {"structure_constants", cfg.tabulated ? "reference table" : "derived"},
                      {"seed", cfg.seed}};
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report["metadata"] = {{"runtime_seconds", runtime},
                        {"timestamp", static_cast<long long>(std::time(nullptr))}};

  const fs::path out(cfg.out);
  wn::io::write_file(out / "controls.csv", wn::io::format_controls_csv(controls, grid));
  wn::io::write_file(out / "trajectory.csv", wn::io::format_trajectory_csv(trajectory));
  wn::io::write_file(out / "report.json", report.dump(2) + "\n");

  if (aborted) {
    std::fprintf(stderr, "singularity: chart %s left its domain after t = %.6f (det Xi = %.3g)\n",
                 chart.to_string().c_str(), trajectory.abort_time, trajectory.abort_det);
    return singular;
  }
  std::printf("completed %zu samples", trajectory.times.size());
  if (cfg.verify) std::printf(", max discrepancy %.3e", verify["max_discrepancy"].get<double>());
  std::printf("\n");
  return ok;
}

int cmd_verify_golden() {
  const auto items = wn::golden::run_suite(wn::golden::Inputs::from_builtins());
  int failed = 0;
  for (const auto& item : items) {
    std::printf("%-4s  %-52s  err %-10.3e tol %.0e\n", item.passed ? "PASS" : "FAIL",
                item.name.c_str(), item.max_error, item.tolerance);
    failed += !item.passed;
  }
  std::printf("%zu items, %d failed\n", items.size(), failed);
  return failed ? golden_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wei-Norman parameterization of SU(N) propagators"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* derive = app.add_subcommand("derive", "write structure_tensor.json and spectra.json");
  derive->add_option("--basis", cfg.basis, "built-in label or custom basis file")->required();
  derive->add_option("--out", cfg.out, "output directory");
  derive->add_flag("--tabulated", cfg.tabulated, "use the built-in reference table");

  auto* simulate = app.add_subcommand("simulate", "integrate gamma, write trajectory.csv and report.json");
  simulate->add_option("--basis", cfg.basis, "built-in label or custom basis file");
  simulate->add_option("--chart", cfg.chart, "canonical, zyz, or comma-separated indices");
  simulate->add_option("--controls", cfg.controls, "const:u1,..,un | harmonic:K[:amp] | CSV path");
  simulate->add_option("--t0", cfg.t0);
  simulate->add_option("--t1", cfg.t1);
  simulate->add_option("--dt", cfg.dt);
  simulate->add_option("--sing-threshold", cfg.sing_threshold, "abort when |det Xi| <= this");
  simulate->add_flag("--verify", cfg.verify, "compare against the reference propagator");
  simulate->add_option("--out", cfg.out, "output directory");
  simulate->add_option("--seed", cfg.seed, "seed for harmonic presets");
  simulate->add_flag("--tabulated", cfg.tabulated, "use the built-in reference table");

  app.add_subcommand("verify-golden", "run the golden-value suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : validation;
  }

  try {
    if (*derive) return cmd_derive(cfg);
    if (*simulate) return cmd_simulate(cfg);
    return cmd_verify_golden();
  } catch (const wn::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return validation;
  } catch (const wn::ChartSingularity& e) {
    std::fprintf(stderr, "singularity: %s\n", e.what());
    return singular;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return other;
  }
}
