#pragma once

// Integration of the Wei-Norman parameter ODE against a reference
// time-ordered propagator.
//
// Convention: the basis matrices already carry the factor i, so the
// propagator obeys dU/dt = (sum_mu u^mu(t) A_mu) U, U(0) = I. In physical
// terms H(t) = i sum_mu u^mu(t) A_mu with hbar = 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include "weinorman/algebra.hpp"
#include "weinorman/wei_norman.hpp"

namespace wn {

// Scaling-and-squaring Pade exponential. Independent of the Cayley-Hamilton
// route and used as its oracle.
template <typename Derived>
typename Derived::PlainObject matrix_exp_oracle(const Eigen::MatrixBase<Derived>& g) {
  if (!g.allFinite()) throw ValidationError("matrix_exp_oracle: non-finite input");
  if (g.rows() != g.cols()) throw ValidationError("matrix_exp_oracle: non-square input");
  typename Derived::PlainObject out = g.derived().eval().exp();
  return out;
}

// u_c(t) = offset_c + sum_h a_h sin(w_h t + phi_h)
struct HarmonicTerm {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

class ControlSignal {
 public:
  enum class Kind { piecewise_constant_samples, analytic_preset };

  struct Samples {
    std::vector<double> times;
    std::vector<RealVector> values;
  };
  struct Harmonic {
    RealVector offsets;
    std::vector<std::vector<HarmonicTerm>> terms;  // per channel
  };

  // Left-hold: u(t) is the value at the last sample time <= t; the first
  // sample also holds before its time.
  static ControlSignal samples(std::vector<double> times, std::vector<RealVector> values);
  static ControlSignal harmonic(RealVector offsets, std::vector<std::vector<HarmonicTerm>> terms);
  static ControlSignal constant(RealVector u);
  // `harmonics` random terms per channel with sum |a_h| <= amplitude,
  // frequencies in [0.5, 3], phases in [0, 2pi).
  static ControlSignal random_harmonic(int channels, int harmonics, double amplitude,
                                       std::uint64_t seed);

  Kind kind() const;
  int channels() const { return channels_; }
  RealVector operator()(double t) const;

  const Samples* as_samples() const { return std::get_if<Samples>(&data_); }
  const Harmonic* as_harmonic() const { return std::get_if<Harmonic>(&data_); }

 private:
  ControlSignal(int channels, std::variant<Samples, Harmonic> data)
      : channels_(channels), data_(std::move(data)) {}

  int channels_ = 0;
  std::variant<Samples, Harmonic> data_;
};

struct TimeGrid {
  double t0 = 0.0;
  double end = 0.0;
  double step = 0.0;
  long steps = 0;

  double time(long k) const { return k == steps ? end : t0 + static_cast<double>(k) * step; }
};

// Uniform grid with step <= dt covering [t0, t1].
TimeGrid make_grid(double t0, double t1, double dt);

struct Trajectory {
  enum class Status { completed, aborted_at_singularity };

  std::vector<double> times;
  std::vector<RealVector> gammas;
  std::vector<RealVector> controls;
  std::vector<RealVector> rates;  // gamma_dot from the RHS at each node
  std::vector<double> dets;
  Status status = Status::completed;
  double abort_time = 0.0;
  RealVector abort_gamma;
  double abort_det = 0.0;

  bool completed() const { return status == Status::completed; }
};

struct UnitaryPath {
  std::vector<double> times;
  std::vector<ComplexMatrix> unitaries;
};

struct IntegrationOptions {
  double singularity_threshold = default_tolerances().singularity;
  // Start point; defaults to gamma(t0) = 0.
  std::optional<RealVector> initial_gamma;
};

// Classical fixed-step RK4 on gamma_dot = Xi(gamma)^{-1} u(t). A stage with
// |det Xi| <= threshold, or with det Xi of opposite sign to the step start,
// aborts the run; the trajectory keeps every accepted step.
Trajectory integrate_gamma(const ControlSignal& controls, const ChartSequence& chart,
                           const AdjointTable& table, double t0, double t1, double dt,
                           const IntegrationOptions& options = {});

// Exponential midpoint: U_{k+1} = exp(h G(t_k + h/2)) U_k, G = u^mu A_mu.
UnitaryPath reference_propagator(const ControlSignal& controls, const LieBasis& basis, double t0,
                                 double t1, double dt);

// exp(g^1 A_{s(1)}) ... exp(g^n A_{s(n)})
ComplexMatrix reconstruct_unitary(const LieBasis& basis, const ChartSequence& chart,
                                  const Eigen::Ref<const RealVector>& gamma);

// ||U U^H - I||_F and |det U - 1|
double unitarity_defect(const Eigen::Ref<const ComplexMatrix>& u);
double determinant_defect(const Eigen::Ref<const ComplexMatrix>& u);

struct EquivalenceReport {
  Trajectory trajectory;
  double max_discrepancy = 0.0;       // max_t ||U_product - U_reference||_F
  double max_discrepancy_time = 0.0;
  double max_unitarity_product = 0.0;
  double max_unitarity_reference = 0.0;
  double max_det_defect = 0.0;
  double min_abs_det_xi = 0.0;
  long samples = 0;
};

// Runs both integrators on one grid and compares at every node up to the
// end of the gamma trajectory (partial when it aborted).
EquivalenceReport verify_equivalence(const ControlSignal& controls, const LieBasis& basis,
                                     const ChartSequence& chart, const AdjointTable& table,
                                     double t0, double t1, double dt,
                                     const IntegrationOptions& options = {});

// Newton solve for gamma with reconstruct_unitary(gamma) = target, starting
// from `guess`. Throws NumericalError without convergence.
RealVector chart_coordinates(const LieBasis& basis, const AdjointTable& table,
                             const ChartSequence& chart,
                             const Eigen::Ref<const ComplexMatrix>& target,
                             const Eigen::Ref<const RealVector>& guess, int max_iterations = 50);

}  // namespace wn
