#include "weinorman/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace wn {

BasisNotClosed::BasisNotClosed(int i, int j, double residual)
    : ValidationError([&] {
        std::ostringstream os;
        os << "basis not closed under bracket: worst pair (" << i << "," << j
           << ") has residual " << residual;
        return os.str();
      }()),
      i_(i),
      j_(j),
      residual_(residual) {}

ChartSingularity::ChartSingularity(RealVector gamma, double det)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "chart singularity: det Xi = " << det << " at gamma = ("
           << gamma.transpose() << ")";
        return os.str();
      }()),
      gamma_(std::move(gamma)),
      det_(det) {}

// ---------------------------------------------------------------- LieBasis

LieBasis::LieBasis(std::string label, std::vector<ComplexMatrix> generators,
                   const Tolerances& tol)
    : label_(std::move(label)), generators_(std::move(generators)) {
  if (generators_.empty()) throw ValidationError("basis '" + label_ + "' has no generators");
  dim_defining_ = static_cast<int>(generators_.front().rows());
  if (dim_defining_ <= 0) throw ValidationError("basis '" + label_ + "': empty generator");

  const int n = dim_algebra();
  vectorized_.resize(2 * dim_defining_ * dim_defining_, n);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix& g = generators_[i];
    const std::string where = "basis '" + label_ + "', generator " + std::to_string(i + 1);
    if (g.rows() != dim_defining_ || g.cols() != dim_defining_) {
      throw ValidationError(where + ": expected " + std::to_string(dim_defining_) + "x" +
                            std::to_string(dim_defining_) + " matrix");
    }
    if (!g.allFinite()) throw ValidationError(where + ": non-finite entry");
    const double skew = (g + g.adjoint()).cwiseAbs().maxCoeff();
    if (skew > tol.entrywise) {
      throw ValidationError(where + ": not skew-Hermitian (max |G + G^H| = " +
                            std::to_string(skew) + ")");
    }
    if (std::abs(g.trace()) > tol.entrywise) {
      throw ValidationError(where + ": not traceless");
    }
    vectorized_.col(i) = vectorize(g);
  }

  Eigen::JacobiSVD<RealMatrix> svd(vectorized_);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= tol.rank * std::max(1.0, sv(0))) {
    throw ValidationError("basis '" + label_ + "': generators are linearly dependent");
  }
}

const ComplexMatrix& LieBasis::generator(int i) const {
  if (i < 1 || i > dim_algebra()) {
    throw ValidationError("generator index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(dim_algebra()));
  }
  return generators_[i - 1];
}

ComplexMatrix LieBasis::to_matrix(const Eigen::Ref<const RealVector>& coords) const {
  if (coords.size() != dim_algebra()) throw ValidationError("coordinate length mismatch");
  ComplexMatrix x = ComplexMatrix::Zero(dim_defining_, dim_defining_);
  for (int i = 0; i < dim_algebra(); ++i) x += coords(i) * generators_[i];
  return x;
}

RealVector LieBasis::coordinates(const Eigen::Ref<const ComplexMatrix>& x) const {
  return vectorized_.colPivHouseholderQr().solve(vectorize(x));
}

// ---------------------------------------------------------- StructureTensor

StructureTensor::StructureTensor(std::vector<RealMatrix> adjoint_matrices)
    : adjoint_(std::move(adjoint_matrices)) {
  const auto n = static_cast<Eigen::Index>(adjoint_.size());
  for (const auto& m : adjoint_) {
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError("structure tensor: adjoint matrices must be n x n");
    }
  }
}

StructureTensor StructureTensor::zero(int n) {
  return StructureTensor(std::vector<RealMatrix>(n, RealMatrix::Zero(n, n)));
}

StructureTensor StructureTensor::from_entries(int n, const std::vector<Entry>& entries) {
  std::vector<RealMatrix> ad(n, RealMatrix::Zero(n, n));
  std::vector<std::vector<std::vector<bool>>> seen(
      n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)));
  for (const auto& e : entries) {
    if (std::min({e.k, e.i, e.j}) < 1 || std::max({e.k, e.i, e.j}) > n) {
      throw ValidationError("structure tensor entry index out of range");
    }
    if (e.i == e.j && e.value != 0.0) {
      throw ValidationError("structure tensor: c^k_{ii} must vanish");
    }
    auto& here = ad[e.i - 1](e.k - 1, e.j - 1);
    auto& partner = ad[e.j - 1](e.k - 1, e.i - 1);
    if (seen[e.k - 1][e.j - 1][e.i - 1] && partner != -e.value) {
      throw ValidationError("structure tensor: inconsistent antisymmetric partner");
    }
    here = e.value;
    partner = -e.value;
    seen[e.k - 1][e.i - 1][e.j - 1] = true;
  }
  return StructureTensor(std::move(ad));
}

StructureTensor StructureTensor::with_entry(int k, int i, int j, double value) const {
  StructureTensor copy = *this;
  copy.adjoint_[i - 1](k - 1, j - 1) = value;
  copy.adjoint_[j - 1](k - 1, i - 1) = -value;
  return copy;
}

StructureTensor StructureTensor::snapped(double tol) const {
  StructureTensor copy = *this;
  for (auto& m : copy.adjoint_) {
    m = m.unaryExpr([tol](double x) {
      const double r = std::round(x);
      return std::abs(x - r) <= tol ? r + 0.0 : x;
    });
  }
  return copy;
}

std::vector<StructureTensor::Entry> StructureTensor::nonzero_entries(double tol) const {
  std::vector<Entry> out;
  const int n = dim();
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const double v = (*this)(k, i, j);
        if (std::abs(v) > tol) out.push_back({k, i, j, v});
      }
  return out;
}

// ------------------------------------------------------------ Built-ins

namespace {

ComplexMatrix unit(int size, int r, int c) {
  ComplexMatrix m = ComplexMatrix::Zero(size, size);
  m(r - 1, c - 1) = 1.0;
  return m;
}

LieBasis su2_pauli_half() {
  const complexd i{0.0, 1.0};
  ComplexMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  return LieBasis("su2_pauli_half", {0.5 * i * s1, 0.5 * i * s2, 0.5 * i * s3});
}

LieBasis su3_cartan() {
  const complexd i{0.0, 1.0};
  auto e = [](int r, int c) { return unit(3, r, c); };
  return LieBasis("su3_cartan", {
                                    i * (e(1, 1) - e(2, 2)),  // iH1
                                    i * (e(2, 2) - e(3, 3)),  // iH2
                                    e(1, 2) - e(2, 1),        // X12
                                    i * (e(1, 2) + e(2, 1)),  // Y12
                                    e(1, 3) - e(3, 1),        // X13
                                    i * (e(1, 3) + e(3, 1)),  // Y13
                                    e(2, 3) - e(3, 2),        // X23
                                    i * (e(2, 3) + e(3, 2)),  // Y23
                                });
}

}  // namespace

std::vector<std::string> builtin_labels() { return {"su2_pauli_half", "su3_cartan"}; }

LieBasis builtin_basis(std::string_view label) {
  if (label == "su2_pauli_half") return su2_pauli_half();
  if (label == "su3_cartan") return su3_cartan();
  throw UnsupportedBasis(std::string(label));
}

StructureTensor tabulated_structure_tensor(std::string_view label) {
  using E = StructureTensor::Entry;
  if (label == "su2_pauli_half") {
    return StructureTensor::from_entries(3, {E{3, 1, 2, 1}, E{1, 2, 3, 1}, E{2, 3, 1, 1}});
  }
  if (label == "su3_cartan") {
    // Listed as c^k_{ij} -> {k, i, j, value}, row by row.
    return StructureTensor::from_entries(
        8, {
               E{4, 1, 3, 2},  E{3, 4, 1, 2},  E{1, 3, 4, 2},
               E{6, 1, 5, 2},  E{5, 6, 1, 2},  E{1, 5, 6, 2},
               E{8, 2, 7, 2},  E{7, 8, 2, 2},  E{2, 7, 8, 2},
               E{8, 4, 5, 1},  E{5, 8, 4, 1},  E{4, 5, 8, 1},
               E{7, 4, 6, -1}, E{6, 7, 4, -1}, E{4, 6, 7, -1},
               E{7, 3, 5, -1}, E{5, 7, 3, -1}, E{3, 5, 7, -1},
               E{8, 3, 6, -1}, E{6, 8, 3, -1}, E{3, 6, 8, -1},
               E{8, 1, 7, -1}, E{7, 8, 1, -1}, E{1, 7, 8, 0},
               E{4, 2, 3, -1}, E{3, 4, 2, -1}, E{2, 3, 4, 0},
               E{6, 2, 5, 1},  E{5, 6, 2, 1},  E{2, 5, 6, 2},
           });
  }
  throw UnsupportedBasis(std::string(label));
}

// ------------------------------------------------------- Structure constants

StructureTensor compute_structure_tensor(const LieBasis& basis, const Tolerances& tol) {
  const int n = basis.dim_algebra();
  const auto qr = basis.vectorized().colPivHouseholderQr();
  std::vector<RealMatrix> ad(n, RealMatrix::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const RealVector coeffs =
          qr.solve(vectorize(commutator(basis.generators()[i], basis.generators()[j])));
      ad[i].col(j) = coeffs;
      ad[j].col(i) = -coeffs;
    }
  }
  StructureTensor c(std::move(ad));
  const PairResidual worst = closure_residual(basis, c);
  if (worst.value > tol.closure_error) throw BasisNotClosed(worst.i, worst.j, worst.value);
  return c;
}

PairResidual closure_residual(const LieBasis& basis, const StructureTensor& c) {
  const int n = basis.dim_algebra();
  if (c.dim() != n) throw ValidationError("closure_residual: dimension mismatch");
  PairResidual worst;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const ComplexMatrix bracket = commutator(basis.generator(i), basis.generator(j));
      const double r = (bracket - basis.to_matrix(c.adjoint(i).col(j - 1))).norm();
      if (r > worst.value) worst = {r, i, j};
    }
  }
  return worst;
}

double jacobi_residual(const StructureTensor& c) {
  // [M_i, M_j] = c^mu_{ij} M_mu is equivalent to the cyclic Jacobi identity.
  const int n = c.dim();
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      RealMatrix r = c.adjoint(i) * c.adjoint(j) - c.adjoint(j) * c.adjoint(i);
      for (int mu = 1; mu <= n; ++mu) r -= c(mu, i, j) * c.adjoint(mu);
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double antisymmetry_residual(const StructureTensor& c) {
  const int n = c.dim();
  double worst = 0.0;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) worst = std::max(worst, std::abs(c(k, i, j) + c(k, j, i)));
  return worst;
}

AdjointGenerator adjoint_generator(const StructureTensor& c, int i) {
  if (i < 1 || i > c.dim()) {
    throw ValidationError("generator index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(c.dim()));
  }
  return {i, c.adjoint(i)};
}

RealVector adjoint_action(const StructureTensor& c, const Eigen::Ref<const RealVector>& d,
                          const Eigen::Ref<const RealVector>& b) {
  const int n = c.dim();
  if (d.size() != n || b.size() != n) {
    throw ValidationError("adjoint_action: coordinate length mismatch (expected " +
                          std::to_string(n) + ")");
  }
  RealVector out = RealVector::Zero(n);
  for (int nu = 0; nu < n; ++nu) {
    if (d(nu) != 0.0) out.noalias() += d(nu) * (c.adjoint(nu + 1) * b);
  }
  return out;
}

}  // namespace wn
