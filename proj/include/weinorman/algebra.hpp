#pragma once

// Lie-algebra bases, structure constants and adjoint generators.
//
// Index convention: generator and coordinate indices in this API are
// 1-based (i = 1..n), matching c^k_{ij} notation. Eigen containers
// (coordinate vectors, matrices) keep their native 0-based access.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "weinorman/errors.hpp"
#include "weinorman/types.hpp"

namespace wn {

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Plain = typename DerivedA::PlainObject;
  return Plain(a * b - b * a);
}

// Real vectorization of a complex matrix: row-major real parts followed by
// row-major imaginary parts (length 2*rows*cols).
template <typename Derived>
RealVector vectorize(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  RealVector v(2 * rows * cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const complexd z = m(r, c);
      v(r * cols + c) = z.real();
      v(rows * cols + r * cols + c) = z.imag();
    }
  }
  return v;
}

// Ordered basis A_1..A_n of a matrix Lie algebra inside su(N).
class LieBasis {
 public:
  // Validates: skew-Hermitian, traceless, linearly independent over R.
  LieBasis(std::string label, std::vector<ComplexMatrix> generators,
           const Tolerances& tol = default_tolerances());

  int dim_defining() const { return dim_defining_; }
  int dim_algebra() const { return static_cast<int>(generators_.size()); }
  const std::string& label() const { return label_; }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

  // 1-based.
  const ComplexMatrix& generator(int i) const;

  // n == N^2 - 1
  bool is_full() const { return dim_algebra() == dim_defining_ * dim_defining_ - 1; }

  // n x 2N^2 real matrix whose columns are the vectorized generators.
  const RealMatrix& vectorized() const { return vectorized_; }

  // Sum_mu b^mu A_mu.
  ComplexMatrix to_matrix(const Eigen::Ref<const RealVector>& coords) const;

  // Least-squares coordinates of X in this basis; ignores the component of X
  // outside the span.
  RealVector coordinates(const Eigen::Ref<const ComplexMatrix>& x) const;

 private:
  std::string label_;
  int dim_defining_ = 0;
  std::vector<ComplexMatrix> generators_;
  RealMatrix vectorized_;
};

// c^k_{ij}, stored as the adjoint matrices M_i with (M_i)_{kj} = c^k_{ij}.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::vector<RealMatrix> adjoint_matrices);

  static StructureTensor zero(int n);

  struct Entry {
    int k, i, j;
    double value;
  };
  // Builds from listed entries c^k_{ij}; the partner c^k_{ji} = -value is
  // implied. A listed partner must agree with the implied one.
  static StructureTensor from_entries(int n, const std::vector<Entry>& entries);

  int dim() const { return static_cast<int>(adjoint_.size()); }

  // c^k_{ij}, 1-based.
  double operator()(int k, int i, int j) const { return adjoint_[i - 1](k - 1, j - 1); }

  // M_i, 1-based.
  const RealMatrix& adjoint(int i) const { return adjoint_[i - 1]; }

  // Copy with c^k_{ij} = value and c^k_{ji} = -value.
  StructureTensor with_entry(int k, int i, int j, double value) const;

  // Copy with entries within tol of an integer replaced by that integer.
  StructureTensor snapped(double tol) const;

  // Non-zero entries with i < j, ordered by (k, i, j).
  std::vector<Entry> nonzero_entries(double tol = 0.0) const;

 private:
  std::vector<RealMatrix> adjoint_;
};

struct AdjointGenerator {
  int index = 0;  // 1-based
  RealMatrix matrix;
};

struct PairResidual {
  double value = 0.0;
  int i = 0;
  int j = 0;
};

std::vector<std::string> builtin_labels();

// "su2_pauli_half": A_j = (i/2) sigma_j.
// "su3_cartan": iH1, iH2, X12, Y12, X13, Y13, X23, Y23.
LieBasis builtin_basis(std::string_view label);

// The structure constants as printed alongside the built-in bases. These are
// reference tables and are not guaranteed to be consistent with the basis
// matrices (see README, "Reference tables").
StructureTensor tabulated_structure_tensor(std::string_view label);

// Solves [A_i, A_j] = c^k_{ij} A_k by least squares over the vectorized basis.
// Throws BasisNotClosed when the worst closure residual exceeds
// tol.closure_error.
StructureTensor compute_structure_tensor(const LieBasis& basis,
                                         const Tolerances& tol = default_tolerances());

// max_{i,j} || [A_i, A_j] - c^k_{ij} A_k ||_F
PairResidual closure_residual(const LieBasis& basis, const StructureTensor& c);

double jacobi_residual(const StructureTensor& c);
double antisymmetry_residual(const StructureTensor& c);

AdjointGenerator adjoint_generator(const StructureTensor& c, int i);

// Coordinates of [D, B] = d^nu M_nu b.
RealVector adjoint_action(const StructureTensor& c, const Eigen::Ref<const RealVector>& d,
                          const Eigen::Ref<const RealVector>& b);

// Custom-basis text format (see README):
//   N <int>
//   n <int>
//   label <identifier>        (optional)
//   generator <index>         followed by N rows of N "re,im" tokens
// Blank lines and '#' comments are ignored. Errors name the offending line.
LieBasis parse_basis(std::string_view text, std::string_view source = "<input>",
                     const Tolerances& tol = default_tolerances());
LieBasis load_basis(const std::filesystem::path& path,
                    const Tolerances& tol = default_tolerances());
std::string format_basis(const LieBasis& basis);

// Built-in label or path to a custom-basis file.
LieBasis resolve_basis(const std::string& label_or_path,
                       const Tolerances& tol = default_tolerances());

}  // namespace wn
