#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "weinorman/io.hpp"

using namespace wn;

TEST_CASE("17-digit doubles round trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("controls CSV round trip") {
  const ControlSignal s = ControlSignal::random_harmonic(3, 3, 1.0, 12);
  const TimeGrid grid = make_grid(0.0, 1.0, 1e-2);
  const std::string text = io::format_controls_csv(s, grid);
  CHECK(text.rfind("# left-hold", 0) == 0);
  CHECK(text.find("\nt,u_1,u_2,u_3\n") != std::string::npos);
  const ControlSignal back = io::parse_controls_csv(text);
  for (long k = 0; k <= grid.steps; ++k) {
    const double t = grid.time(k);
    CHECK((back(t) - s(t)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(io::format_controls_csv(back, grid) == text);
}

TEST_CASE("controls CSV diagnostics") {
  auto error_of = [](const std::string& t) {
    try {
      io::parse_controls_csv(t, "c.csv");
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("t,u_1\n0,1\n0,2\n").find("c.csv:3") != std::string::npos);
  CHECK(error_of("t,u_1\n0,1,2\n").find("c.csv:2") != std::string::npos);
  CHECK(error_of("t,u_2\n").find("c.csv:1") != std::string::npos);
  CHECK(error_of("t,u_1\n0,abc\n").find("c.csv:2") != std::string::npos);
  CHECK_FALSE(error_of("t,u_1\n").empty());
  CHECK(error_of("# c\n\nt,u_1\n0,1\n").empty());
}

TEST_CASE("trajectory CSV layout") {
  const AdjointTable t(compute_structure_tensor(builtin_basis("su2_pauli_half")));
  RealVector u(3);
  u << 1, 0, 0;
  const Trajectory tr =
      integrate_gamma(ControlSignal::constant(u), ChartSequence::canonical(3), t, 0, 0.1, 0.05);
  const std::string csv = io::format_trajectory_csv(tr);
  CHECK(csv.rfind("t,gamma_1,gamma_2,gamma_3,u_1,u_2,u_3,det_xi\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("structure tensor and spectra JSON") {
  const StructureTensor c = tabulated_structure_tensor("su3_cartan");
  const io::json st = io::structure_tensor_json("su3_cartan", c);
  bool found = false;
  for (const auto& e : st["entries"]) {
    if (e["k"] == 7 && e["i"] == 1 && e["j"] == 8) {
      CHECK(e["value"].get<double>() == 1.0);  // c^7_18 = -c^7_81
      found = true;
    }
    CHECK(e["i"].get<int>() < e["j"].get<int>());
  }
  CHECK(found);

  const io::json sp = io::spectra_json("su3_cartan", AdjointTable(c));
  const auto& g1 = sp["generators"][0];
  CHECK(g1["generator"] == 1);
  CHECK(g1["char_poly_monic"] == io::json::array({0.0, 0.0, 16.0, 0.0, 24.0, 0.0, 9.0, 0.0}));
  int total = 0;
  for (const auto& r : g1["eigenvalues"]) total += r["multiplicity"].get<int>();
  CHECK(total == 8);
}

TEST_CASE("write_file replaces atomically") {
  const auto dir = std::filesystem::temp_directory_path() / "weinorman_io_test";
  std::filesystem::remove_all(dir);
  io::write_file(dir / "a" / "x.txt", "one");
  io::write_file(dir / "a" / "x.txt", "two");
  std::ifstream in(dir / "a" / "x.txt");
  std::string s;
  in >> s;
  CHECK(s == "two");
  CHECK_FALSE(std::filesystem::exists(dir / "a" / "x.txt.tmp"));
  std::filesystem::remove_all(dir);
}
