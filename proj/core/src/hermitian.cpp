#include "specshift/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "specshift/errors.hpp"

namespace specshift {

namespace {
constexpr double kGroupTol = 1e-10;
}

double hermiticity_defect(const Matrix& m) {
  double ref = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / ref;
}

HermitianOperator::HermitianOperator(const Matrix& m) {
  require(m.rows() == m.cols(), Error::Code::shape, "operator must be square");
  require(m.rows() >= 1, Error::Code::shape, "operator must be nonempty");
  require(hermiticity_defect(m) <= 1e-12, Error::Code::invalid_argument,
          "operator is not Hermitian");
  m_ = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
  require(es.info() == Eigen::Success, Error::Code::numeric, "eigensolver failed");
  evals_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
  regroup();
}

void HermitianOperator::regroup() {
  const int n = static_cast<int>(evals_.size());
  double diameter = evals_.maxCoeff() - evals_.minCoeff();
  double tol = kGroupTol * std::max(diameter, 1e-300);
  group_values_.clear();
  projections_.clear();
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && evals_[end] - evals_[end - 1] <= tol) ++end;
    double value = 0.0;
    for (int i = start; i < end; ++i) value += evals_[i];
    value /= (end - start);
    Matrix block = vectors_.middleCols(start, end - start);
    group_values_.push_back(value);
    projections_.push_back(block * block.adjoint());
    start = end;
  }
}

double HermitianOperator::spectral_diameter() const {
  return evals_.maxCoeff() - evals_.minCoeff();
}

Matrix HermitianOperator::apply(const std::function<cplx(double)>& f) const {
  Matrix out = Matrix::Zero(dim(), dim());
  for (int g = 0; g < num_groups(); ++g) out += f(group_values_[g]) * projections_[g];
  return out;
}

HermitianOperator HermitianOperator::map_eigenvalues(
    const std::function<double(double)>& f) const {
  HermitianOperator out;
  const int n = dim();
  std::vector<int> order(n);
  RealVector mapped(n);
  for (int i = 0; i < n; ++i) {
    order[i] = i;
    mapped[i] = f(evals_[i]);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mapped[a] < mapped[b]; });
  out.evals_.resize(n);
  out.vectors_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.evals_[i] = mapped[order[i]];
    out.vectors_.col(i) = vectors_.col(order[i]);
  }
  out.m_ = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    out.m_ += cplx(out.evals_[i]) * (out.vectors_.col(i) * out.vectors_.col(i).adjoint());
  out.m_ = 0.5 * (out.m_ + out.m_.adjoint().eval());
  out.regroup();
  return out;
}

}  // namespace specshift
