#include <doctest.h>

#include <numbers>

#include "support.hpp"

using namespace wn;
using wn::testing::max_abs;

namespace {

struct Fixture {
  LieBasis basis;
  AdjointTable table;
  explicit Fixture(const char* label)
      : basis(builtin_basis(label)), table(compute_structure_tensor(basis).snapped(1e-9)) {}
};

}  // namespace

TEST_CASE("time grid") {
  const TimeGrid g = make_grid(0.0, 1.0, 1e-3);
  CHECK(g.steps == 1000);
  CHECK(g.time(g.steps) == 1.0);
  CHECK(make_grid(0.0, 1.0, 0.3).steps == 4);
  CHECK(make_grid(0.0, 1.0, 0.3).step <= 0.3);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 0.1), ValidationError);
}

TEST_CASE("control signals") {
  SUBCASE("left hold") {
    RealVector a(1), b(1), c(1);
    a << 1;
    b << 2;
    c << 3;
    const ControlSignal s = ControlSignal::samples({0.0, 0.5, 1.0}, {a, b, c});
    CHECK(s(-1.0)(0) == 1.0);
    CHECK(s(0.0)(0) == 1.0);
    CHECK(s(0.4999)(0) == 1.0);
    CHECK(s(0.5)(0) == 2.0);
    CHECK(s(7.0)(0) == 3.0);
    CHECK(s.kind() == ControlSignal::Kind::piecewise_constant_samples);
    CHECK_THROWS_AS(ControlSignal::samples({0.0, 0.0}, {a, b}), ValidationError);
    CHECK_THROWS_AS(ControlSignal::samples({0.0}, {a, b}), ValidationError);
  }
  SUBCASE("random harmonic is bounded and seeded") {
    const ControlSignal s = ControlSignal::random_harmonic(8, 3, 0.5, 42);
    const ControlSignal again = ControlSignal::random_harmonic(8, 3, 0.5, 42);
    const ControlSignal other = ControlSignal::random_harmonic(8, 3, 0.5, 43);
    for (double t = 0.0; t <= 5.0; t += 0.01) {
      CHECK(s(t).cwiseAbs().maxCoeff() <= 0.5 + 1e-15);
      CHECK((s(t) - again(t)).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK((s(0.3) - other(0.3)).norm() > 0.0);
  }
}

TEST_CASE("single-generator flow") {
  Fixture f("su2_pauli_half");
  RealVector u(3);
  u << 1, 0, 0;
  const Trajectory tr =
      integrate_gamma(ControlSignal::constant(u), ChartSequence::canonical(3), f.table, 0, 1, 1e-3);
  REQUIRE(tr.completed());
  CHECK(tr.times.size() == 1001);
  CHECK(tr.gammas.back()(0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(tr.gammas.back()(1)) < 1e-12);
  for (double d : tr.dets) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("abort at the canonical su(2) singularity") {
  Fixture f("su2_pauli_half");
  RealVector u(3);
  u << 0, 1, 0;
  const Trajectory tr =
      integrate_gamma(ControlSignal::constant(u), ChartSequence::canonical(3), f.table, 0, 2, 1e-3);
  REQUIRE_FALSE(tr.completed());
  CHECK(std::abs(tr.abort_time - std::numbers::pi / 2) < 1e-2);
  CHECK(tr.times.back() <= tr.abort_time);
  CHECK(tr.gammas.size() == tr.times.size());
  for (double d : tr.dets) CHECK(d > 0.0);

  // A coarse threshold stops earlier.
  IntegrationOptions coarse;
  coarse.singularity_threshold = 0.1;
  const Trajectory early = integrate_gamma(ControlSignal::constant(u), ChartSequence::canonical(3),
                                           f.table, 0, 2, 1e-3, coarse);
  REQUIRE_FALSE(early.completed());
  CHECK(std::cos(early.abort_time) == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("ZYZ needs a start point away from the origin") {
  Fixture f("su2_pauli_half");
  const ControlSignal u = ControlSignal::random_harmonic(3, 3, 1.0, 9);
  CHECK_THROWS_AS(integrate_gamma(u, ChartSequence::zyz(), f.table, 0, 1, 1e-3), ValidationError);
  IntegrationOptions start;
  start.initial_gamma = RealVector::Constant(3, 0.7);
  const EquivalenceReport r =
      verify_equivalence(u, f.basis, ChartSequence::zyz(), f.table, 0, 1, 1e-3, start);
  REQUIRE(r.trajectory.completed());
  CHECK(r.max_discrepancy < 1e-5);
}

TEST_CASE("reference propagator stays on SU(N)") {
  Fixture f("su3_cartan");
  const UnitaryPath p =
      reference_propagator(ControlSignal::random_harmonic(8, 3, 1.0, 5), f.basis, 0, 1, 1e-2);
  CHECK(p.unitaries.size() == 101);
  for (const auto& u : p.unitaries) {
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(determinant_defect(u) < 1e-12);
  }
}

TEST_CASE("equivalence with the reference propagator") {
  for (const char* label : {"su2_pauli_half", "su3_cartan"}) {
    CAPTURE(label);
    Fixture f(label);
    const int n = f.basis.dim_algebra();
    const ControlSignal u = ControlSignal::random_harmonic(n, 3, n == 8 ? 0.5 : 1.0, 2024);
    MESSAGE("seed 2024, " << label);
    const EquivalenceReport r =
        verify_equivalence(u, f.basis, ChartSequence::canonical(n), f.table, 0, 1, 1e-3);
    REQUIRE(r.trajectory.completed());
    CHECK(r.max_discrepancy <= 1e-5);
    CHECK(r.max_unitarity_product <= 1e-9);
    CHECK(r.max_det_defect <= 1e-9);
    CHECK(r.samples == 1001);
  }
}

TEST_CASE("second-order convergence of the discrepancy") {
  Fixture f("su3_cartan");
  const ControlSignal u = ControlSignal::random_harmonic(8, 3, 0.5, 77);
  const ChartSequence chart = ChartSequence::canonical(8);
  double prev = 0.0;
  for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
    const double d = verify_equivalence(u, f.basis, chart, f.table, 0, 1, dt).max_discrepancy;
    if (prev > 0.0) {
      CAPTURE(dt);
      CHECK(prev / d >= 3.4);
      CHECK(prev / d <= 4.6);
    }
    prev = d;
  }
}

TEST_CASE("chart independence") {
  SUBCASE("su(3): canonical vs reversed chart") {
    Fixture f("su3_cartan");
    const ControlSignal u = ControlSignal::random_harmonic(8, 3, 0.5, 31);
    const ChartSequence a = ChartSequence::canonical(8);
    const ChartSequence b = ChartSequence::parse("8,7,6,5,4,3,2,1", 8);
    const Trajectory ta = integrate_gamma(u, a, f.table, 0, 1, 1e-3);
    const Trajectory tb = integrate_gamma(u, b, f.table, 0, 1, 1e-3);
    REQUIRE(ta.completed());
    REQUIRE(tb.completed());
    for (std::size_t k = 0; k < ta.times.size(); k += 100) {
      CHECK((reconstruct_unitary(f.basis, a, ta.gammas[k]) - reconstruct_unitary(f.basis, b, tb.gammas[k]))
                .norm() < 1e-9);
    }
  }
  SUBCASE("su(2): canonical, then ZYZ reinitialized mid-run") {
    Fixture f("su2_pauli_half");
    const ControlSignal u = ControlSignal::random_harmonic(3, 3, 1.0, 8);
    const ChartSequence can = ChartSequence::canonical(3);
    const ChartSequence zyz = ChartSequence::zyz();
    const Trajectory first = integrate_gamma(u, can, f.table, 0, 1, 1e-3);
    REQUIRE(first.completed());
    const ComplexMatrix mid = reconstruct_unitary(f.basis, can, first.gammas[500]);
    RealVector guess(3);
    guess << 0.1, 0.7, 0.1;
    const RealVector g0 = chart_coordinates(f.basis, f.table, zyz, mid, guess);
    CHECK((reconstruct_unitary(f.basis, zyz, g0) - mid).norm() < 1e-12);

    IntegrationOptions start;
    start.initial_gamma = g0;
    const Trajectory second = integrate_gamma(u, zyz, f.table, first.times[500], 1, 1e-3, start);
    REQUIRE(second.completed());
    CHECK(second.times.size() == 501);
    const ComplexMatrix end_a = reconstruct_unitary(f.basis, can, first.gammas.back());
    const ComplexMatrix end_b = reconstruct_unitary(f.basis, zyz, second.gammas.back());
    CHECK((end_a - end_b).norm() < 1e-8);
  }
}

TEST_CASE("matrix_exp_oracle") {
  RealMatrix m(2, 2);
  m << 0, -1, 1, 0;
  const RealMatrix e = matrix_exp_oracle(m * std::numbers::pi);
  CHECK(max_abs(e + RealMatrix::Identity(2, 2)) < 1e-14);
  RealMatrix bad = m;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(matrix_exp_oracle(bad), ValidationError);
  CHECK_THROWS_AS(matrix_exp_oracle(RealMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("channel mismatch is a validation error") {
  Fixture f("su2_pauli_half");
  CHECK_THROWS_AS(integrate_gamma(ControlSignal::constant(RealVector::Ones(8)),
                                  ChartSequence::canonical(3), f.table, 0, 1, 1e-2),
                  ValidationError);
}
