#pragma once

// Closed-form one-parameter groups exp(gamma * ad_{A_i}) through the
// Cayley-Hamilton theorem: exp(gamma M) = sum_{k<n} beta_k(gamma) M^k.

#include <span>
#include <vector>

#include "weinorman/algebra.hpp"
#include "weinorman/types.hpp"

namespace wn {

struct CharacteristicPolynomial {
  // det(sI - M) = s^n + sum_k monic[k] s^k
  RealVector monic;

  int degree() const { return static_cast<int>(monic.size()); }

  // a_k with M^n = a_0 I + a_1 M + ... + a_{n-1} M^{n-1}.
  RealVector cayley_hamilton() const {
    return (-monic).unaryExpr([](double x) { return x + 0.0; });
  }

  // d^order/ds^order of the monic polynomial at s.
  complexd evaluate(complexd s, int order = 0) const;
};

struct Root {
  complexd value;
  int multiplicity = 1;
};

struct Spectrum {
  CharacteristicPolynomial char_poly;
  std::vector<Root> roots;  // sorted by (imag, real)

  int total_multiplicity() const;
};

struct BetaSet {
  double gamma = 0.0;
  RealVector beta;  // beta_0 .. beta_{n-1}
};

// Faddeev-LeVerrier; coefficients within tol.snap of an integer are snapped.
CharacteristicPolynomial characteristic_polynomial(const Eigen::Ref<const RealMatrix>& m,
                                                   const Tolerances& tol = default_tolerances());

// Eigenvalues with multiplicities. Roots closer than tol.cluster merge. When
// is_adjoint is set, roots must be purely imaginary (|Re| <= tol.imaginary_root)
// and are returned with exactly zero real part and exact conjugate pairing.
Spectrum spectrum(const Eigen::Ref<const RealMatrix>& m, bool is_adjoint = true,
                  const Tolerances& tol = default_tolerances());

// Solves the confluent Vandermonde system
//   d^j/ds^j [sum_k beta_k s^k]_{s = s_i} = gamma^j exp(gamma s_i),  j < m_i.
BetaSet beta_coefficients(const Spectrum& spec, double gamma,
                          const Tolerances& tol = default_tolerances());

// sum_k beta_k M^k
RealMatrix exp_adjoint(const AdjointGenerator& generator, const Spectrum& spec, double gamma,
                       const Tolerances& tol = default_tolerances());

// Adjoint generators of a structure tensor with their spectra, computed once.
// Immutable after construction and safe to share between threads.
class AdjointTable {
 public:
  explicit AdjointTable(StructureTensor tensor, const Tolerances& tol = default_tolerances());

  int dim() const { return tensor_.dim(); }
  const StructureTensor& tensor() const { return tensor_; }
  const Tolerances& tolerances() const { return tol_; }

  // All 1-based.
  const AdjointGenerator& generator(int i) const;
  const Spectrum& spectrum(int i) const;
  RealMatrix exp(int i, double gamma) const;

 private:
  StructureTensor tensor_;
  Tolerances tol_;
  std::vector<AdjointGenerator> generators_;
  std::vector<Spectrum> spectra_;
};

struct ExpFactor {
  int index;  // 1-based generator
  double gamma;
};

// exp(g_1 ad_{A_{i_1}}) * exp(g_2 ad_{A_{i_2}}) * ..., left to right.
RealMatrix exp_adjoint_product(const AdjointTable& table, std::span<const ExpFactor> factors);
RealMatrix exp_adjoint_product(const AdjointTable& table,
                               std::initializer_list<ExpFactor> factors);

}  // namespace wn
