#include "specshift/quadrature.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "specshift/errors.hpp"

namespace specshift {
namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal recurrence
// matrix, weights are mu0 times the squared first eigenvector components.
GaussRule golub_welsch(const RealVector& diag, const RealVector& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  RealMatrix J = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag[i];
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(J);
  require(es.info() == Eigen::Success, Error::Code::numeric, "quadrature eigensolve failed");
  GaussRule rule;
  rule.x = es.eigenvalues();
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double v0 = es.eigenvectors()(0, i);
    rule.w[i] = mu0 * v0 * v0;
  }
  return rule;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  require(n >= 1, Error::Code::invalid_argument, "quadrature order must be >= 1");
  require(alpha > -1.0 && beta > -1.0, Error::Code::invalid_argument,
          "Jacobi exponents must be > -1");
  RealVector diag(n), offdiag(n > 1 ? n - 1 : 0);
  const double ab = alpha + beta;
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < n; ++k) {
    double s = 2.0 * k + ab;
    double b2;
    if (k == 1 && std::abs(ab + 1.0) < 1e-14) {
      // Limit of the generic formula when (k+alpha+beta) and (2k+alpha+beta-1)
      // vanish together (e.g. the Chebyshev weight alpha = beta = -1/2).
      b2 = 2.0 * (1.0 + alpha) * (1.0 + beta);
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s * s - 1.0));
    }
    offdiag[k - 1] = std::sqrt(b2);
  }
  double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_beta(alpha + 1.0, beta + 1.0));
  return golub_welsch(diag, offdiag, mu0);
}

GaussRule gauss_jacobi01(int n, double exp_at_zero, double exp_at_one) {
  // u = (1+x)/2 maps the weight (1-x)^a (1+x)^b on [-1,1] to
  // 2^(a+b+1) u^b (1-u)^a on [0,1].
  GaussRule r = gauss_jacobi(n, exp_at_one, exp_at_zero);
  double scale = std::pow(2.0, -(exp_at_zero + exp_at_one + 1.0));
  GaussRule out;
  out.x = (r.x.array() + 1.0) / 2.0;
  out.w = r.w * scale;
  return out;
}

GaussRule gauss_legendre01(int n) { return gauss_jacobi01(n, 0.0, 0.0); }

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule r = gauss_legendre01(n);
  GaussRule out;
  out.x = a + (b - a) * r.x.array();
  out.w = (b - a) * r.w;
  return out;
}

GaussRule gauss_laguerre(int n, double alpha) {
  require(n >= 1, Error::Code::invalid_argument, "quadrature order must be >= 1");
  require(alpha > -1.0, Error::Code::invalid_argument, "Laguerre exponent must be > -1");
  RealVector diag(n), offdiag(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) offdiag[k - 1] = std::sqrt(k * (k + alpha));
  double mu0 = std::exp(std::lgamma(alpha + 1.0));
  return golub_welsch(diag, offdiag, mu0);
}

}  // namespace specshift
