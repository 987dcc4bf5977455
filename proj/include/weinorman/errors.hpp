#pragma once

#include <stdexcept>
#include <string>

#include "weinorman/types.hpp"

namespace wn {

// Input or invariant violation. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedBasis : public ValidationError {
 public:
  explicit UnsupportedBasis(const std::string& label)
      : ValidationError("unsupported basis: '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class BasisNotClosed : public ValidationError {
 public:
  BasisNotClosed(int i, int j, double residual);
  int i() const { return i_; }
  int j() const { return j_; }
  double residual() const { return residual_; }

 private:
  int i_;
  int j_;
  double residual_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |det Xi(gamma)| fell below the threshold (or changed sign); carries the
// state needed to restart in another chart.
class ChartSingularity : public std::runtime_error {
 public:
  ChartSingularity(RealVector gamma, double det);
  const RealVector& gamma() const { return gamma_; }
  double det() const { return det_; }

 private:
  RealVector gamma_;
  double det_;
};

}  // namespace wn
