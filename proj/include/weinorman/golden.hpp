#pragma once

// Reference closed forms for the built-in bases and the golden-value suite
// that checks the numerical machinery against them.
//
// The reference tables follow the tabulated structure constants
// (tabulated_structure_tensor), which is what the displayed characteristic
// polynomials, beta coefficients, exponentials and Xi entries were derived
// from. The derived-vs-tabulated structure constant comparison is its own
// item.

#include <string>
#include <vector>

#include "weinorman/adjoint_exponential.hpp"
#include "weinorman/algebra.hpp"
#include "weinorman/types.hpp"

namespace wn::golden {

// --- su(2), reference sign convention c^3_12 = c^1_23 = c^2_31 = +1.
RealMatrix su2_exp(int generator, double gamma);
RealMatrix su2_xi_canonical(const RealVector& gamma);
RealMatrix su2_xi_inverse_canonical(const RealVector& gamma);
RealMatrix su2_xi_zyz(const RealVector& gamma);
RealMatrix su2_xi_inverse_zyz(const RealVector& gamma);

// --- su(3), su3_cartan ordering.
// Monic coefficients p_0..p_7 of det(sI - M_i).
RealVector su3_char_poly(int generator);
// Eigenvalues with multiplicities, sorted by imaginary part.
std::vector<Root> su3_eigenvalues(int generator);
// beta_0..beta_7.
RealVector su3_beta(int generator, double gamma);
RealMatrix su3_exp(int generator, double gamma);
RealMatrix su3_xi_canonical(const RealVector& gamma);
double su3_det_xi(const RealVector& gamma);

struct Item {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Inputs {
  StructureTensor su2_derived;
  StructureTensor su3_derived;
  StructureTensor su2_tabulated;
  StructureTensor su3_tabulated;

  static Inputs from_builtins();
};

std::vector<Item> run_suite(const Inputs& inputs);

// Largest |a_i - b_i| after matching roots with equal multiplicity;
// infinity when the multisets differ in shape.
double root_multiset_distance(const std::vector<Root>& a, const std::vector<Root>& b);

}  // namespace wn::golden
