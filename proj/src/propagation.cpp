#include "weinorman/propagation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace wn {

TimeGrid make_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t1 > t0)) throw ValidationError("t1 must exceed t0");
  const double ratio = (t1 - t0) / dt;
  const long steps = std::max(1L, static_cast<long>(std::ceil(ratio * (1.0 - 1e-12))));
  return {t0, t1, (t1 - t0) / static_cast<double>(steps), steps};
}

namespace {

// Xi solve with singularity monitoring relative to the sign at step start.
struct RateEvaluator {
  const AdjointTable& table;
  const ChartSequence& chart;
  double threshold;

  RealVector operator()(const RealVector& gamma, const RealVector& u, double reference_det,
                        double* det_out = nullptr) const {
    const XiMatrix xi = xi_matrix(table, chart, gamma);
    if (det_out) *det_out = xi.det;
    const bool flipped = reference_det != 0.0 && (xi.det > 0.0) != (reference_det > 0.0);
    if (!(std::abs(xi.det) > threshold) || flipped) throw ChartSingularity(gamma, xi.det);
    return xi.matrix.partialPivLu().solve(u);
  }
};

}  // namespace

Trajectory integrate_gamma(const ControlSignal& controls, const ChartSequence& chart,
                           const AdjointTable& table, double t0, double t1, double dt,
                           const IntegrationOptions& options) {
  const int n = table.dim();
  if (controls.channels() != n) {
    throw ValidationError("controls have " + std::to_string(controls.channels()) +
                          " channels, algebra has dimension " + std::to_string(n));
  }
  if (chart.size() != n) throw ValidationError("chart does not match algebra dimension");
  const TimeGrid grid = make_grid(t0, t1, dt);
  const double threshold = options.singularity_threshold;

  RealVector gamma = RealVector::Zero(n);
  if (options.initial_gamma) {
    if (options.initial_gamma->size() != n) throw ValidationError("initial gamma length mismatch");
    gamma = *options.initial_gamma;
  } else if (singular_at_origin(table, chart, threshold)) {
    throw ValidationError("chart (" + chart.to_string() +
                          ") is singular at the origin; use another chart or start from a "
                          "nonsingular initial gamma");
  }

  const RateEvaluator rate{table, chart, threshold};
  Trajectory tr;
  const double h = grid.step;
  for (long k = 0; k <= grid.steps; ++k) {
    const double t = grid.time(k);
    const RealVector u = controls(t);
    double det = 0.0;
    RealVector k1;
    try {
      k1 = rate(gamma, u, 0.0, &det);
    } catch (const ChartSingularity& s) {
      tr.status = Trajectory::Status::aborted_at_singularity;
      tr.abort_time = t;
      tr.abort_gamma = gamma;
      tr.abort_det = s.det();
      return tr;
    }
    tr.times.push_back(t);
    tr.gammas.push_back(gamma);
    tr.controls.push_back(u);
    tr.rates.push_back(k1);
    tr.dets.push_back(det);
    if (k == grid.steps) break;

    try {
      const RealVector um = controls(t + 0.5 * h);
      const RealVector k2 = rate(gamma + 0.5 * h * k1, um, det);
      const RealVector k3 = rate(gamma + 0.5 * h * k2, um, det);
      const RealVector k4 = rate(gamma + h * k3, controls(t + h), det);
      RealVector next = gamma + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      // The next node must also lie on the same side of the singular set.
      double next_det = 0.0;
      rate(next, controls(grid.time(k + 1)), det, &next_det);
      gamma = std::move(next);
    } catch (const ChartSingularity& s) {
      tr.status = Trajectory::Status::aborted_at_singularity;
      tr.abort_time = t;
      tr.abort_gamma = gamma;
      tr.abort_det = s.det();
      return tr;
    }
  }
  return tr;
}

UnitaryPath reference_propagator(const ControlSignal& controls, const LieBasis& basis, double t0,
                                 double t1, double dt) {
  if (controls.channels() != basis.dim_algebra()) {
    throw ValidationError("controls do not match the basis dimension");
  }
  const TimeGrid grid = make_grid(t0, t1, dt);
  const int dim = basis.dim_defining();
  UnitaryPath path;
  path.times.reserve(grid.steps + 1);
  path.unitaries.reserve(grid.steps + 1);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  path.times.push_back(grid.time(0));
  path.unitaries.push_back(u);
  for (long k = 0; k < grid.steps; ++k) {
    const double t = grid.time(k);
    const ComplexMatrix g = basis.to_matrix(controls(t + 0.5 * grid.step));
    u = matrix_exp_oracle((grid.step * g).eval()) * u;
    path.times.push_back(grid.time(k + 1));
    path.unitaries.push_back(u);
  }
  return path;
}

ComplexMatrix reconstruct_unitary(const LieBasis& basis, const ChartSequence& chart,
                                  const Eigen::Ref<const RealVector>& gamma) {
  if (gamma.size() != chart.size()) throw ValidationError("gamma length does not match chart");
  const int dim = basis.dim_defining();
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (int j = 0; j < chart.size(); ++j) {
    u = u * matrix_exp_oracle((gamma(j) * basis.generator(chart[j])).eval());
  }
  return u;
}

double unitarity_defect(const Eigen::Ref<const ComplexMatrix>& u) {
  return (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

double determinant_defect(const Eigen::Ref<const ComplexMatrix>& u) {
  return std::abs(u.determinant() - 1.0);
}

EquivalenceReport verify_equivalence(const ControlSignal& controls, const LieBasis& basis,
                                     const ChartSequence& chart, const AdjointTable& table,
                                     double t0, double t1, double dt,
                                     const IntegrationOptions& options) {
  if (basis.dim_algebra() != table.dim()) {
    throw ValidationError("basis and structure tensor dimensions differ");
  }
  EquivalenceReport report;
  report.trajectory = integrate_gamma(controls, chart, table, t0, t1, dt, options);
  const UnitaryPath reference = reference_propagator(controls, basis, t0, t1, dt);
  const auto& tr = report.trajectory;

  // With a supplied start point the reference begins from its product.
  ComplexMatrix start = ComplexMatrix::Identity(basis.dim_defining(), basis.dim_defining());
  if (options.initial_gamma) start = reconstruct_unitary(basis, chart, *options.initial_gamma);

  report.min_abs_det_xi = tr.dets.empty() ? 0.0 : std::abs(tr.dets.front());
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const ComplexMatrix product = reconstruct_unitary(basis, chart, tr.gammas[k]);
    const ComplexMatrix ref = reference.unitaries[k] * start;
    const double d = (product - ref).norm();
    if (d > report.max_discrepancy) {
      report.max_discrepancy = d;
      report.max_discrepancy_time = tr.times[k];
    }
    report.max_unitarity_product = std::max(report.max_unitarity_product, unitarity_defect(product));
    report.max_unitarity_reference = std::max(report.max_unitarity_reference, unitarity_defect(ref));
    report.max_det_defect = std::max(report.max_det_defect, determinant_defect(product));
    report.min_abs_det_xi = std::min(report.min_abs_det_xi, std::abs(tr.dets[k]));
  }
  report.samples = static_cast<long>(tr.times.size());
  return report;
}

RealVector chart_coordinates(const LieBasis& basis, const AdjointTable& table,
                             const ChartSequence& chart,
                             const Eigen::Ref<const ComplexMatrix>& target,
                             const Eigen::Ref<const RealVector>& guess, int max_iterations) {
  RealVector gamma = guess;
  double residual = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const ComplexMatrix product = reconstruct_unitary(basis, chart, gamma);
    const ComplexMatrix mismatch = (target * product.adjoint()).eval();
    const RealVector x = basis.coordinates(mismatch.log());
    residual = x.norm();
    if (residual < 1e-13) return gamma;
    const XiMatrix xi = xi_matrix(table, chart, gamma);
    gamma += xi.matrix.partialPivLu().solve(x);
  }
  throw NumericalError("chart_coordinates: no convergence (residual " + std::to_string(residual) +
                       ")");
}

}  // namespace wn
