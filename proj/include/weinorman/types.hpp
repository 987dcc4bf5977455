#pragma once

#include <complex>

#include <Eigen/Core>

namespace wn {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using complexd = std::complex<double>;

using RealMatrix = Matrix<double>;
using RealVector = Vector<double>;
using ComplexMatrix = Matrix<complexd>;
using ComplexVector = Vector<complexd>;

// Numerical policy. Defaults are fixed constants; every entry point that
// depends on one accepts an override.
struct Tolerances {
  double entrywise = 1e-12;     // skew-Hermitian / trace checks
  double structural = 1e-10;    // closure and Jacobi residuals
  double closure_error = 1e-8;  // compute_structure_tensor hard failure
  double rank = 1e-10;          // relative singular value cutoff for independence
  double snap = 1e-9;           // integer snapping of coefficients
  double cluster = 1e-7;        // root clustering radius
  double imaginary_root = 1e-9; // |Re s| allowed for adjoint spectra
  double beta_imag = 1e-10;     // imaginary residue of beta solve
  double singularity = 1e-8;    // |det Xi| threshold
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace wn
