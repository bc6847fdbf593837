#include "specshift/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "specshift/errors.hpp"
#include "specshift/hermitian.hpp"
#include "specshift/quadrature.hpp"

namespace specshift {

Matrix unitary_exp_i(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint().eval()));
  require(es.info() == Eigen::Success, Error::Code::numeric, "eigensolver failed");
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out += std::exp(kI * es.eigenvalues()[i]) *
           (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
  return out;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

namespace {

Matrix ordered_midpoint_product(const MatrixPath& t_path, double y1, double y2, int steps) {
  const double dy = (y1 - y2) / steps;
  Matrix u;
  for (int k = 1; k <= steps; ++k) {
    double mid = y2 + (k - 0.5) * dy;
    Matrix t = t_path(mid);
    require(hermiticity_defect(t) <= 1e-10, Error::Code::invalid_argument,
            "path sample is not Hermitian");
    Matrix step = unitary_exp_i(dy * t);
    u = (k == 1) ? step : Matrix(step * u);
  }
  return u;
}

}  // namespace

Matrix propagate(const MatrixPath& t_path, double y1, double y2, double tol) {
  require(std::isfinite(y1) && std::isfinite(y2), Error::Code::invalid_argument,
          "propagation endpoints must be finite");
  Matrix probe = t_path(0.5 * (y1 + y2));
  const Eigen::Index n = probe.rows();
  if (y1 == y2) return identity(static_cast<int>(n));

  int steps = std::max<int>(8, static_cast<int>(std::ceil(4.0 * std::abs(y1 - y2))));
  Matrix u_prev = ordered_midpoint_product(t_path, y1, y2, steps);
  Matrix u;
  bool settled = false;
  for (int round = 0; round < 18; ++round) {
    steps *= 2;
    u = ordered_midpoint_product(t_path, y1, y2, steps);
    if ((u - u_prev).norm() <= tol) {
      settled = true;
      break;
    }
    u_prev = u;
  }
  require(settled, Error::Code::no_limit, "propagator step refinement did not converge");

  // asymmetric split so the two halves sample genuinely different midpoints
  double ym = y2 + 0.381966011250105 * (y1 - y2);
  int steps_a = std::max(4, static_cast<int>(std::lround(steps * 0.618)));
  int steps_b = std::max(4, steps - steps_a);
  Matrix split = ordered_midpoint_product(t_path, y1, ym, steps_a) *
                 ordered_midpoint_product(t_path, ym, y2, steps_b);
  double scale = std::max(1.0, u.norm());
  require((split - u).norm() <= 50.0 * tol * scale, Error::Code::numeric,
          "cocycle residual exceeds tolerance");
  require(unitarity_defect(u) <= tol * scale, Error::Code::numeric,
          "unitarity drift exceeds tolerance");
  return u;
}

Matrix propagate_commuting(const Matrix& t0, const std::function<double(double)>& g, double y1,
                           double y2) {
  require(hermiticity_defect(t0) <= 1e-10, Error::Code::invalid_argument,
          "path sample is not Hermitian");
  // composite Gauss-Legendre; panel count follows the interval length
  int panels = std::max<int>(4, static_cast<int>(std::ceil(std::abs(y1 - y2))));
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = y2 + (y1 - y2) * p / panels;
    double b = y2 + (y1 - y2) * (p + 1) / panels;
    GaussRule rule = gauss_legendre(16, a, b);
    for (Eigen::Index q = 0; q < rule.x.size(); ++q) total += rule.w[q] * g(rule.x[q]);
  }
  return unitary_exp_i(total * t0);
}

}  // namespace specshift
