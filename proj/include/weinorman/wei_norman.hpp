#pragma once

// The Wei-Norman matrix Xi(gamma): Xi gamma_dot = u, right-invariant
// convention, for an arbitrary ordered chart of generators.

#include <string>
#include <string_view>
#include <vector>

#include "weinorman/adjoint_exponential.hpp"
#include "weinorman/types.hpp"

namespace wn {

// Ordered generator indices (1-based, repeats allowed) of the product
// exp(g^1 A_{s(1)}) ... exp(g^n A_{s(n)}).
class ChartSequence {
 public:
  ChartSequence(std::vector<int> indices, int algebra_dim);

  static ChartSequence canonical(int algebra_dim);
  // (3, 2, 3) on su(2).
  static ChartSequence zyz();
  // "1,2,3" or "3,2,3"; an empty string selects the canonical chart.
  static ChartSequence parse(std::string_view text, int algebra_dim);

  int size() const { return static_cast<int>(indices_.size()); }
  int operator[](int position) const { return indices_[position]; }  // 0-based position
  const std::vector<int>& indices() const { return indices_; }
  std::string to_string() const;

 private:
  std::vector<int> indices_;
};

struct XiMatrix {
  RealVector gamma;
  RealMatrix matrix;
  double det = 0.0;
};

// Column j = (prod_{i<j} exp(g^i ad_{A_{s(i)}})) e_{s(j)}.
XiMatrix xi_matrix(const AdjointTable& table, const ChartSequence& chart,
                   const Eigen::Ref<const RealVector>& gamma);
XiMatrix xi_matrix(const StructureTensor& tensor, const ChartSequence& chart,
                   const Eigen::Ref<const RealVector>& gamma);

// LU determinant.
double xi_determinant(const XiMatrix& xi);

// gamma_dot = Xi(gamma)^{-1} u. Throws ChartSingularity when
// |det Xi| <= threshold.
RealVector wei_norman_rhs(const AdjointTable& table, const ChartSequence& chart,
                          const Eigen::Ref<const RealVector>& gamma,
                          const Eigen::Ref<const RealVector>& u,
                          double singularity_threshold = default_tolerances().singularity);
RealVector wei_norman_rhs(const StructureTensor& tensor, const ChartSequence& chart,
                          const Eigen::Ref<const RealVector>& gamma,
                          const Eigen::Ref<const RealVector>& u,
                          double singularity_threshold = default_tolerances().singularity);

// u = Xi(gamma) gamma_dot. Valid everywhere.
RealVector forward_map(const AdjointTable& table, const ChartSequence& chart,
                       const Eigen::Ref<const RealVector>& gamma,
                       const Eigen::Ref<const RealVector>& gamma_dot);
RealVector forward_map(const StructureTensor& tensor, const ChartSequence& chart,
                       const Eigen::Ref<const RealVector>& gamma,
                       const Eigen::Ref<const RealVector>& gamma_dot);

// |det Xi(0)| <= threshold; true for ZYZ on su(2).
bool singular_at_origin(const AdjointTable& table, const ChartSequence& chart,
                        double threshold = default_tolerances().singularity);

}  // namespace wn
