#include "weinorman/adjoint_exponential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace wn {

namespace {

double falling_factorial(int k, int j) {
  double r = 1.0;
  for (int t = 0; t < j; ++t) r *= static_cast<double>(k - t);
  return r;
}

double factorial(int j) { return falling_factorial(j, j); }

complexd ipow(complexd z, int e) {
  complexd r = 1.0;
  for (int t = 0; t < e; ++t) r *= z;
  return r;
}

}  // namespace

complexd CharacteristicPolynomial::evaluate(complexd s, int order) const {
  const int n = degree();
  if (order > n) return 0.0;
  // Horner over coefficients of d^order/ds^order.
  complexd acc = falling_factorial(n, order);
  for (int k = n - 1; k >= order; --k) acc = acc * s + monic(k) * falling_factorial(k, order);
  return acc;
}

int Spectrum::total_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0,
                         [](int acc, const Root& r) { return acc + r.multiplicity; });
}

CharacteristicPolynomial characteristic_polynomial(const Eigen::Ref<const RealMatrix>& m,
                                                   const Tolerances& tol) {
  if (m.rows() != m.cols()) throw ValidationError("characteristic_polynomial: non-square input");
  const auto n = m.rows();
  // coeff[k] multiplies s^k; coeff[n] = 1.
  RealVector coeff = RealVector::Zero(n + 1);
  coeff(n) = 1.0;
  RealMatrix mk = RealMatrix::Zero(n, n);
  const RealMatrix id = RealMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + coeff(n - k + 1) * id;
    coeff(n - k) = -(m * mk).trace() / static_cast<double>(k);
  }
  CharacteristicPolynomial p;
  p.monic = coeff.head(n).unaryExpr([&](double x) {
    const double r = std::round(x);
    return std::abs(x - r) <= tol.snap ? r + 0.0 : x;
  });
  return p;
}

Spectrum spectrum(const Eigen::Ref<const RealMatrix>& m, bool is_adjoint, const Tolerances& tol) {
  Spectrum out;
  out.char_poly = characteristic_polynomial(m, tol);
  const auto n = m.rows();
  if (n == 0) return out;

  Eigen::EigenSolver<RealMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("spectrum: eigenvalue solver failed");
  std::vector<complexd> raw(solver.eigenvalues().begin(), solver.eigenvalues().end());

  // Single-linkage clustering.
  std::vector<int> cluster(raw.size());
  std::iota(cluster.begin(), cluster.end(), 0);
  auto find = [&](int a) {
    while (cluster[a] != a) a = cluster[a] = cluster[cluster[a]];
    return a;
  };
  for (std::size_t a = 0; a < raw.size(); ++a)
    for (std::size_t b = a + 1; b < raw.size(); ++b)
      if (std::abs(raw[a] - raw[b]) < tol.cluster) cluster[find(b)] = find(a);

  std::vector<Root> roots;
  std::vector<int> owner(raw.size(), -1);
  for (std::size_t a = 0; a < raw.size(); ++a) {
    const int c = find(static_cast<int>(a));
    if (owner[c] < 0) {
      owner[c] = static_cast<int>(roots.size());
      roots.push_back({0.0, 0});
    }
    Root& r = roots[owner[c]];
    r.value += raw[a];
    r.multiplicity += 1;
  }

  const auto& poly = out.char_poly;
  for (Root& r : roots) {
    r.value /= static_cast<double>(r.multiplicity);
    // A root of multiplicity m is a simple root of p^(m-1).
    const int order = r.multiplicity - 1;
    for (int it = 0; it < 3; ++it) {
      const complexd f = poly.evaluate(r.value, order);
      const complexd df = poly.evaluate(r.value, order + 1);
      if (std::abs(df) == 0.0) break;
      const complexd step = f / df;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > tol.cluster) break;
      r.value -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r.value))) break;
    }
  }

  if (is_adjoint) {
    for (Root& r : roots) {
      if (std::abs(r.value.real()) > tol.imaginary_root) {
        std::ostringstream os;
        os << "spectrum: adjoint eigenvalue " << r.value << " is not purely imaginary";
        throw NumericalError(os.str());
      }
      r.value = {0.0, r.value.imag()};
      if (std::abs(r.value.imag()) <= tol.imaginary_root) r.value = 0.0;
    }
    // Exact conjugate pairing: mirror the upper half-plane roots.
    for (Root& r : roots) {
      if (r.value.imag() >= 0.0) continue;
      auto partner = std::find_if(roots.begin(), roots.end(), [&](const Root& q) {
        return q.multiplicity == r.multiplicity &&
               std::abs(q.value - std::conj(r.value)) < tol.cluster;
      });
      if (partner == roots.end()) {
        std::ostringstream os;
        os << "spectrum: eigenvalue " << r.value << " has no conjugate partner";
        throw NumericalError(os.str());
      }
      r.value = std::conj(partner->value);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.value.real() < b.value.real();
  });
  out.roots = std::move(roots);

  if (out.total_multiplicity() != n) throw NumericalError("spectrum: multiplicities do not sum to n");
  std::ostringstream residuals;
  bool ok = true;
  for (const Root& r : out.roots) {
    const double scale = std::max(1.0, std::pow(std::abs(r.value), static_cast<double>(n)));
    for (int j = 0; j < r.multiplicity; ++j) {
      const double res = std::abs(poly.evaluate(r.value, j)) / scale;
      if (res > 1e-8) {
        ok = false;
        residuals << " p^(" << j << ")(" << r.value << ") = " << res << ";";
      }
    }
  }
  if (!ok) throw NumericalError("spectrum: root refinement did not converge:" + residuals.str());
  return out;
}

BetaSet beta_coefficients(const Spectrum& spec, double gamma, const Tolerances& tol) {
  const int n = spec.total_multiplicity();
  ComplexMatrix system = ComplexMatrix::Zero(n, n);
  ComplexVector rhs(n);
  int row = 0;
  for (const Root& r : spec.roots) {
    const complexd e = std::exp(gamma * r.value);
    for (int j = 0; j < r.multiplicity; ++j, ++row) {
      // Row j scaled by 1/j!.
      const double jf = factorial(j);
      for (int k = j; k < n; ++k) {
        system(row, k) = falling_factorial(k, j) / jf * ipow(r.value, k - j);
      }
      rhs(row) = std::pow(gamma, j) / jf * e;
    }
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream os;
    os << "beta_coefficients: singular confluent system (rcond " << rcond << ")";
    throw NumericalError(os.str());
  }
  const ComplexVector beta = lu.solve(rhs);
  const double imag = beta.imag().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, beta.real().cwiseAbs().maxCoeff());
  if (imag > tol.beta_imag * scale) {
    std::ostringstream os;
    os << "beta_coefficients: imaginary residue " << imag << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return {gamma, beta.real()};
}

RealMatrix exp_adjoint(const AdjointGenerator& generator, const Spectrum& spec, double gamma,
                       const Tolerances& tol) {
  const auto& m = generator.matrix;
  const auto n = m.rows();
  if (spec.total_multiplicity() != n) throw ValidationError("exp_adjoint: spectrum size mismatch");
  const RealVector beta = beta_coefficients(spec, gamma, tol).beta;
  RealMatrix out = beta(0) * RealMatrix::Identity(n, n);
  RealMatrix power = RealMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    power = power * m;
    out.noalias() += beta(k) * power;
  }
  return out;
}

// ---------------------------------------------------------------- table

AdjointTable::AdjointTable(StructureTensor tensor, const Tolerances& tol)
    : tensor_(std::move(tensor)), tol_(tol) {
  const int n = tensor_.dim();
  generators_.reserve(n);
  spectra_.reserve(n);
  for (int i = 1; i <= n; ++i) {
    generators_.push_back(adjoint_generator(tensor_, i));
    spectra_.push_back(wn::spectrum(generators_.back().matrix, true, tol_));
  }
}

const AdjointGenerator& AdjointTable::generator(int i) const {
  if (i < 1 || i > dim()) {
    throw ValidationError("generator index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(dim()));
  }
  return generators_[i - 1];
}

const Spectrum& AdjointTable::spectrum(int i) const {
  generator(i);
  return spectra_[i - 1];
}

RealMatrix AdjointTable::exp(int i, double gamma) const {
  return exp_adjoint(generator(i), spectra_[i - 1], gamma, tol_);
}

RealMatrix exp_adjoint_product(const AdjointTable& table, std::span<const ExpFactor> factors) {
  RealMatrix out = RealMatrix::Identity(table.dim(), table.dim());
  for (const auto& f : factors) out = out * table.exp(f.index, f.gamma);
  return out;
}

RealMatrix exp_adjoint_product(const AdjointTable& table,
                               std::initializer_list<ExpFactor> factors) {
  return exp_adjoint_product(table, std::span<const ExpFactor>(factors.begin(), factors.size()));
}

}  // namespace wn
