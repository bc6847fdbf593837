#pragma once

#include <functional>
#include <vector>

#include "specshift/types.hpp"

namespace specshift {

// A Hermitian matrix together with its spectral decomposition. Eigenvalues
// are grouped into clusters (gap below 1e-10 of the spectral diameter) so
// that multiple-operator integrals see honest spectral projections instead
// of numerically split multiplicities.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  int num_groups() const { return static_cast<int>(group_values_.size()); }
  double eigenvalue(int g) const { return group_values_[g]; }
  const Matrix& projection(int g) const { return projections_[g]; }

  // Sorted eigenvalues with multiplicity.
  const RealVector& eigenvalues() const { return evals_; }
  double spectral_diameter() const;

  // f(A) through the decomposition.
  Matrix apply(const std::function<cplx(double)>& f) const;

  // Same eigenvectors, eigenvalues mapped through f, clusters regrouped.
  // Used for A^2 where re-solving would lose the shared eigenbasis.
  HermitianOperator map_eigenvalues(const std::function<double(double)>& f) const;

 private:
  HermitianOperator() = default;
  void regroup();

  Matrix m_;
  Matrix vectors_;   // columns are an orthonormal eigenbasis, matching evals_
  RealVector evals_;
  std::vector<double> group_values_;
  std::vector<Matrix> projections_;
};

// Relative deviation from hermiticity, ||M - M*|| / max(1, ||M||) in Frobenius.
double hermiticity_defect(const Matrix& m);

}  // namespace specshift
