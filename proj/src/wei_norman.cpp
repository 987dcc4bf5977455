#include "weinorman/wei_norman.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace wn {

ChartSequence::ChartSequence(std::vector<int> indices, int algebra_dim)
    : indices_(std::move(indices)) {
  if (static_cast<int>(indices_.size()) != algebra_dim) {
    throw ValidationError("chart length " + std::to_string(indices_.size()) +
                          " does not match algebra dimension " + std::to_string(algebra_dim));
  }
  for (int i : indices_) {
    if (i < 1 || i > algebra_dim) {
      throw ValidationError("chart index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(algebra_dim));
    }
  }
}

ChartSequence ChartSequence::canonical(int algebra_dim) {
  std::vector<int> idx(algebra_dim);
  for (int i = 0; i < algebra_dim; ++i) idx[i] = i + 1;
  return ChartSequence(std::move(idx), algebra_dim);
}

ChartSequence ChartSequence::zyz() { return ChartSequence({3, 2, 3}, 3); }

ChartSequence ChartSequence::parse(std::string_view text, int algebra_dim) {
  if (text.empty() || text == "canonical") return canonical(algebra_dim);
  if (text == "zyz") return zyz();
  std::vector<int> idx;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const auto tok = text.substr(start, comma - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ValidationError("invalid chart '" + std::string(text) + "'");
    }
    idx.push_back(v);
    start = comma + 1;
  }
  return ChartSequence(std::move(idx), algebra_dim);
}

std::string ChartSequence::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < indices_.size(); ++i) os << (i ? "," : "") << indices_[i];
  return os.str();
}

namespace {

void check_shapes(const AdjointTable& table, const ChartSequence& chart, Eigen::Index len) {
  if (chart.size() != table.dim()) throw ValidationError("chart does not match algebra dimension");
  if (len != table.dim()) {
    throw ValidationError("gamma has length " + std::to_string(len) + ", expected " +
                          std::to_string(table.dim()));
  }
}

}  // namespace

XiMatrix xi_matrix(const AdjointTable& table, const ChartSequence& chart,
                   const Eigen::Ref<const RealVector>& gamma) {
  check_shapes(table, chart, gamma.size());
  const int n = table.dim();
  XiMatrix xi{gamma, RealMatrix(n, n), 0.0};
  RealMatrix running = RealMatrix::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    xi.matrix.col(j) = running.col(chart[j] - 1);
    if (j + 1 < n) running = running * table.exp(chart[j], gamma(j));
  }
  xi.det = xi_determinant(xi);
  return xi;
}

XiMatrix xi_matrix(const StructureTensor& tensor, const ChartSequence& chart,
                   const Eigen::Ref<const RealVector>& gamma) {
  return xi_matrix(AdjointTable(tensor), chart, gamma);
}

double xi_determinant(const XiMatrix& xi) { return xi.matrix.partialPivLu().determinant(); }

RealVector wei_norman_rhs(const AdjointTable& table, const ChartSequence& chart,
                          const Eigen::Ref<const RealVector>& gamma,
                          const Eigen::Ref<const RealVector>& u, double singularity_threshold) {
  if (u.size() != table.dim()) throw ValidationError("control vector length mismatch");
  const XiMatrix xi = xi_matrix(table, chart, gamma);
  if (!(std::abs(xi.det) > singularity_threshold)) throw ChartSingularity(xi.gamma, xi.det);
  return xi.matrix.partialPivLu().solve(u);
}

RealVector wei_norman_rhs(const StructureTensor& tensor, const ChartSequence& chart,
                          const Eigen::Ref<const RealVector>& gamma,
                          const Eigen::Ref<const RealVector>& u, double singularity_threshold) {
  return wei_norman_rhs(AdjointTable(tensor), chart, gamma, u, singularity_threshold);
}

RealVector forward_map(const AdjointTable& table, const ChartSequence& chart,
                       const Eigen::Ref<const RealVector>& gamma,
                       const Eigen::Ref<const RealVector>& gamma_dot) {
  if (gamma_dot.size() != table.dim()) throw ValidationError("gamma_dot length mismatch");
  return xi_matrix(table, chart, gamma).matrix * gamma_dot;
}

RealVector forward_map(const StructureTensor& tensor, const ChartSequence& chart,
                       const Eigen::Ref<const RealVector>& gamma,
                       const Eigen::Ref<const RealVector>& gamma_dot) {
  return forward_map(AdjointTable(tensor), chart, gamma, gamma_dot);
}

bool singular_at_origin(const AdjointTable& table, const ChartSequence& chart, double threshold) {
  return std::abs(xi_matrix(table, chart, RealVector::Zero(table.dim())).det) <= threshold;
}

}  // namespace wn
