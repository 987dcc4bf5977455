#include <doctest.h>

#include "support.hpp"

using namespace wn;
using wn::testing::max_abs;

namespace {

const complexd I(0.0, 1.0);

ComplexMatrix pauli(int k) {
  ComplexMatrix s(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, -I, I, 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

}  // namespace

TEST_CASE("built-in bases have the expected shape") {
  const LieBasis su2 = builtin_basis("su2_pauli_half");
  CHECK(su2.dim_defining() == 2);
  CHECK(su2.dim_algebra() == 3);
  CHECK(su2.is_full());
  for (int k = 1; k <= 3; ++k) CHECK(max_abs((su2.generator(k) - 0.5 * I * pauli(k)).cwiseAbs()) == 0.0);

  const LieBasis su3 = builtin_basis("su3_cartan");
  CHECK(su3.dim_defining() == 3);
  CHECK(su3.dim_algebra() == 8);
  CHECK(su3.is_full());
  CHECK(su3.generator(4)(0, 1) == I);
  CHECK(su3.generator(4)(1, 0) == I);
  CHECK(su3.generator(5)(0, 2) == 1.0);
  CHECK(su3.generator(5)(2, 0) == -1.0);

  CHECK_THROWS_AS(builtin_basis("so3"), UnsupportedBasis);
}

TEST_CASE("su(2) bracket from explicit Pauli algebra") {
  // [i s1/2, i s2/2] = -(1/4) [s1, s2] = -(1/4)(2i s3) = -A3
  const StructureTensor c = compute_structure_tensor(builtin_basis("su2_pauli_half"));
  CHECK(c(3, 1, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c(1, 2, 3) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c(2, 3, 1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c(3, 2, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.snapped(1e-9).nonzero_entries().size() == 3);
}

TEST_CASE("least-squares structure constants agree with the trace-form oracle") {
  for (const auto& label : builtin_labels()) {
    CAPTURE(label);
    const LieBasis basis = builtin_basis(label);
    const StructureTensor c = compute_structure_tensor(basis);
    const StructureTensor oracle = testing::trace_form_structure_tensor(basis);
    for (int i = 1; i <= c.dim(); ++i) CHECK(max_abs(c.adjoint(i) - oracle.adjoint(i)) < 1e-12);
    CHECK(closure_residual(basis, c).value < 1e-12);
    CHECK(jacobi_residual(c) < 1e-10);
    CHECK(antisymmetry_residual(c) < 1e-14);
  }
}

TEST_CASE("su(3) derived constants: spot values") {
  const StructureTensor c =
      compute_structure_tensor(builtin_basis("su3_cartan")).snapped(default_tolerances().snap);
  CHECK(c(4, 1, 3) == 2.0);
  CHECK(c(6, 1, 5) == 1.0);  // the reference table lists 2
  CHECK(c(5, 1, 6) == -1.0);
  CHECK(c(7, 8, 1) == -1.0);
  CHECK(c(1, 7, 8) == 0.0);
  CHECK(c(2, 7, 8) == 2.0);
  CHECK(c(8, 4, 5) == 1.0);
}

TEST_CASE("tabulated tables") {
  const StructureTensor t2 = tabulated_structure_tensor("su2_pauli_half");
  CHECK(t2(3, 1, 2) == 1.0);
  CHECK(t2(1, 2, 3) == 1.0);
  CHECK(t2(2, 3, 1) == 1.0);
  CHECK(jacobi_residual(t2) == 0.0);

  const StructureTensor t3 = tabulated_structure_tensor("su3_cartan");
  CHECK(t3(6, 1, 5) == 2.0);
  CHECK(t3(5, 6, 1) == 2.0);
  CHECK(t3(1, 5, 6) == 2.0);
  CHECK(t3(2, 5, 6) == 2.0);
  CHECK(t3(7, 8, 1) == -1.0);
  CHECK(t3(1, 7, 8) == 0.0);
  CHECK(t3(2, 3, 4) == 0.0);
  CHECK(antisymmetry_residual(t3) == 0.0);
  // Not realizable by any basis.
  CHECK(jacobi_residual(t3) == doctest::Approx(2.0));
}

TEST_CASE("StructureTensor construction helpers") {
  const StructureTensor c = StructureTensor::from_entries(3, {{3, 1, 2, 1.0}, {1, 2, 3, 1.0}, {2, 3, 1, 1.0}});
  CHECK(c(3, 2, 1) == -1.0);
  CHECK(c(2, 1, 3) == -1.0);
  CHECK_THROWS_AS(StructureTensor::from_entries(3, {{3, 1, 2, 1.0}, {3, 2, 1, 1.0}}), ValidationError);

  const StructureTensor d = c.with_entry(3, 1, 2, 4.0);
  CHECK(d(3, 1, 2) == 4.0);
  CHECK(d(3, 2, 1) == -4.0);
  CHECK(c(3, 1, 2) == 1.0);

  const auto entries = c.nonzero_entries();
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].k == 1);
  CHECK(entries[0].i == 2);
  CHECK(entries[0].j == 3);
}

TEST_CASE("adjoint action matches the matrix commutator") {
  const LieBasis basis = builtin_basis("su3_cartan");
  const StructureTensor c = compute_structure_tensor(basis);
  testing::Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const RealVector x = rng.vector(8, -1, 1), y = rng.vector(8, -1, 1);
    const ComplexMatrix X = basis.to_matrix(x), Y = basis.to_matrix(y);
    const RealVector expected = basis.coordinates(commutator(X, Y));
    CHECK((adjoint_action(c, x, y) - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  const AdjointGenerator g = adjoint_generator(c, 3);
  CHECK(g.index == 3);
  CHECK(max_abs(g.matrix - c.adjoint(3)) == 0.0);
}

TEST_CASE("basis validation") {
  SUBCASE("not skew-Hermitian") {
    CHECK_THROWS_AS(LieBasis("x", {pauli(1)}), ValidationError);
  }
  SUBCASE("not traceless") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = I;
    CHECK_THROWS_AS(LieBasis("x", {m}), ValidationError);
  }
  SUBCASE("linearly dependent") {
    CHECK_THROWS_AS(LieBasis("x", {0.5 * I * pauli(1), I * pauli(1)}), ValidationError);
  }
  SUBCASE("mixed sizes") {
    CHECK_THROWS_AS(LieBasis("x", {0.5 * I * pauli(1), ComplexMatrix::Zero(3, 3)}), ValidationError);
  }
  SUBCASE("not closed under the bracket") {
    const LieBasis b("pair", {0.5 * I * pauli(1), 0.5 * I * pauli(2)});
    try {
      compute_structure_tensor(b);
      FAIL("expected BasisNotClosed");
    } catch (const BasisNotClosed& e) {
      CHECK(e.i() == 1);
      CHECK(e.j() == 2);
      CHECK(e.residual() > 0.5);
    }
  }
}

TEST_CASE("abelian subalgebra: zero structure constants") {
  const LieBasis su3 = builtin_basis("su3_cartan");
  const LieBasis cartan("cartan", {su3.generator(1), su3.generator(2)});
  CHECK_FALSE(cartan.is_full());
  const StructureTensor c = compute_structure_tensor(cartan);
  CHECK(max_abs(c.adjoint(1)) < 1e-15);
  CHECK(max_abs(c.adjoint(2)) < 1e-15);
}

TEST_CASE("custom basis text format") {
  const std::string text =
      "# su(2), Pauli/2\n"
      "N 2\n"
      "n 3\n"
      "label pauli\n"
      "generator 1\n"
      "0,0 0,0.5\n"
      "0,0.5 0,0\n"
      "generator 2\n"
      "0,0 0.5,0\n"
      "-0.5,0 0,0\n"
      "\n"
      "generator 3\n"
      "0,0.5 0,0\n"
      "0,0 0,-0.5\n";
  const LieBasis b = parse_basis(text, "mem");
  CHECK(b.label() == "pauli");
  const LieBasis ref = builtin_basis("su2_pauli_half");
  for (int k = 1; k <= 3; ++k) CHECK((b.generator(k) - ref.generator(k)).norm() < 1e-15);

  const LieBasis again = parse_basis(format_basis(b), "again");
  for (int k = 1; k <= 3; ++k) CHECK((again.generator(k) - b.generator(k)).norm() == 0.0);

  auto error_of = [](const std::string& t) {
    try {
      parse_basis(t, "bad");
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("N 2\nn 1\ngenerator 1\n0,0 0,x\n0,1 0,0\n").find("bad:4") != std::string::npos);
  CHECK(error_of("N 2\nn 1\ngenerator 2\n").find("bad:3") != std::string::npos);
  CHECK(error_of("N 2\nn 1\ngenerator 1\n0,0 0,1 0,0\n").find("bad:4") != std::string::npos);
  CHECK(error_of("n 1\n").find("bad") != std::string::npos);
  CHECK_FALSE(error_of("N 2\nn 1\ngenerator 1\n1,0 0,0\n0,0 -1,0\n").empty());  // Hermitian
}
