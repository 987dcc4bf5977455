#pragma once

// Test-only oracles and generators. Nothing here calls the closed-form
// exponential or the confluent solve it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "weinorman/adjoint_exponential.hpp"
#include "weinorman/algebra.hpp"
#include "weinorman/propagation.hpp"
#include "weinorman/wei_norman.hpp"

namespace wn::testing {

inline double max_abs(const RealMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Structure constants through the trace form <X, Y> = Re tr(X^H Y) and the
// Gram matrix of the basis.
inline StructureTensor trace_form_structure_tensor(const LieBasis& basis) {
  const int n = basis.dim_algebra();
  RealMatrix gram(n, n);
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      gram(a - 1, b - 1) = (basis.generator(a).adjoint() * basis.generator(b)).trace().real();
    }
  }
  const Eigen::LDLT<RealMatrix> solver(gram);
  std::vector<RealMatrix> adj(n, RealMatrix::Zero(n, n));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const ComplexMatrix br = basis.generator(i) * basis.generator(j) - basis.generator(j) * basis.generator(i);
      RealVector rhs(n);
      for (int l = 1; l <= n; ++l) rhs(l - 1) = (basis.generator(l).adjoint() * br).trace().real();
      adj[i - 1].col(j - 1) = solver.solve(rhs);
    }
  }
  return StructureTensor(std::move(adj));
}

// beta_k from the exponential series with powers reduced modulo the
// characteristic polynomial: s^k mod p accumulated term by term.
inline RealVector beta_by_series(const CharacteristicPolynomial& p, double gamma, int terms = 160) {
  const int n = p.degree();
  const RealVector a = -p.monic;  // s^n = sum a_j s^j
  RealVector r = RealVector::Zero(n);
  r(0) = 1.0;
  RealVector beta = r;
  double coeff = 1.0;
  for (int k = 1; k < terms; ++k) {
    // r <- s * r mod p
    const double top = r(n - 1);
    RealVector next(n);
    next(0) = 0.0;
    for (int j = 1; j < n; ++j) next(j) = r(j - 1);
    next += top * a;
    r = next;
    coeff *= gamma / k;
    beta += coeff * r;
    if (std::abs(coeff) * std::max(1.0, max_abs(r)) < 1e-20) break;
  }
  return beta;
}

inline RealMatrix series_exp(const RealMatrix& m, double gamma) {
  RealMatrix sum = RealMatrix::Identity(m.rows(), m.cols());
  RealMatrix term = sum;
  for (int k = 1; k < 200; ++k) {
    term = term * (gamma * m) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) < 1e-20) break;
  }
  return sum;
}

inline RealMatrix pade_exp(const RealMatrix& m, double gamma) { return (gamma * m).exp(); }

struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  int index(int n) { return std::uniform_int_distribution<int>(1, n)(engine); }
  RealVector vector(int n, double lo, double hi) {
    RealVector v(n);
    for (int k = 0; k < n; ++k) v(k) = uniform(lo, hi);
    return v;
  }
  std::mt19937_64 engine;
};

// [X, Y] in coordinates: x^mu M_mu y.
inline RealVector bracket(const StructureTensor& c, const RealVector& x, const RealVector& y) {
  return adjoint_action(c, x, y);
}

struct PropertyResult {
  int cases = 0;
  double max_error = 0.0;
};

inline PropertyResult antisymmetry_property(const StructureTensor& c, Rng& rng, int cases) {
  PropertyResult r{cases, 0.0};
  for (int k = 0; k < cases; ++k) {
    const RealVector x = rng.vector(c.dim(), -2, 2), y = rng.vector(c.dim(), -2, 2);
    r.max_error = std::max(r.max_error, (bracket(c, x, y) + bracket(c, y, x)).cwiseAbs().maxCoeff());
  }
  return r;
}

// exp(g ad_i) [x, y] = [exp(g ad_i) x, exp(g ad_i) y]
inline PropertyResult automorphism_property(const AdjointTable& t, Rng& rng, int cases) {
  PropertyResult r{cases, 0.0};
  for (int k = 0; k < cases; ++k) {
    const int i = rng.index(t.dim());
    const double g = rng.uniform(-3, 3);
    const RealVector x = rng.vector(t.dim(), -1, 1), y = rng.vector(t.dim(), -1, 1);
    const RealMatrix e = t.exp(i, g);
    const RealVector lhs = e * bracket(t.tensor(), x, y);
    const RealVector rhs = bracket(t.tensor(), e * x, e * y);
    r.max_error = std::max(r.max_error, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return r;
}

// exp(a ad_i) exp(b ad_i) = exp((a + b) ad_i)
inline PropertyResult group_law_property(const AdjointTable& t, Rng& rng, int cases) {
  PropertyResult r{cases, 0.0};
  for (int k = 0; k < cases; ++k) {
    const int i = rng.index(t.dim());
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    r.max_error = std::max(r.max_error, max_abs(t.exp(i, a) * t.exp(i, b) - t.exp(i, a + b)));
  }
  return r;
}

// Xi (Xi^{-1} u) = u away from singular points.
inline PropertyResult round_trip_property(const AdjointTable& t, const ChartSequence& chart,
                                          Rng& rng, int cases) {
  PropertyResult r{0, 0.0};
  while (r.cases < cases) {
    const RealVector g = rng.vector(t.dim(), -1.5, 1.5);
    const RealVector u = rng.vector(t.dim(), -1, 1);
    if (std::abs(xi_matrix(t, chart, g).det) < 1e-3) continue;
    const RealVector gd = wei_norman_rhs(t, chart, g, u);
    r.max_error = std::max(r.max_error, (forward_map(t, chart, g, gd) - u).cwiseAbs().maxCoeff());
    ++r.cases;
  }
  return r;
}

// Central-difference check of d/ds U(g + s d) U^{-1} = sum_mu (Xi d)^mu A_mu.
inline double derivative_identity_error(const LieBasis& basis, const AdjointTable& t,
                                        const ChartSequence& chart, const RealVector& g,
                                        const RealVector& d, double h = 1e-5) {
  const ComplexMatrix up = reconstruct_unitary(basis, chart, g + h * d);
  const ComplexMatrix um = reconstruct_unitary(basis, chart, g - h * d);
  const ComplexMatrix u = reconstruct_unitary(basis, chart, g);
  const ComplexMatrix lhs = (up - um) / (2 * h) * u.adjoint();
  const RealVector coords = basis.coordinates(lhs);
  return (coords - xi_matrix(t, chart, g).matrix * d).cwiseAbs().maxCoeff();
}

}  // namespace wn::testing
