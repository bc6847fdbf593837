#include "specshift/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "specshift/errors.hpp"
#include "specshift/types.hpp"

namespace specshift {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Hermite-Newton table; repeated nodes (bitwise equality after sorting) are
// resolved inside the recurrence with derivative entries f^(j)(x)/j!. The
// zeroth column must hold plain values: the tie case overwrites top-down, so
// a derivative-seeded column would leak into mixed entries.
double hermite_newton(const ScalarFunctionFamily& f, std::vector<double> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<double> col(n + 1);
  for (int i = 0; i <= n; ++i) col[i] = f.derivative(0, nodes[i]);
  for (int j = 1; j <= n; ++j) {
    for (int i = 0; i <= n - j; ++i) {
      double lo = nodes[i], hi = nodes[i + j];
      if (lo == hi) {
        col[i] = f.derivative(j, lo) / factorial(j);
      } else {
        col[i] = (col[i + 1] - col[i]) / (hi - lo);
      }
    }
  }
  return col[0];
}

// Opitz: Dif_n f = [f(J)]_(0,n), J upper bidiagonal with the sorted nodes on
// the diagonal and ones above. Exact matrix functions for the analytic
// families; the gaussian_tail family falls back to a snapped-cluster table
// when nodes straddle its junction at 0.
double opitz_branch(const ScalarFunctionFamily& f, std::vector<double> nodes, double spread) {
  std::sort(nodes.begin(), nodes.end());
  const int n = static_cast<int>(nodes.size()) - 1;
  const auto kind = f.kind();
  const bool exponential_like =
      kind == ScalarFunctionFamily::Kind::exponential ||
      (kind == ScalarFunctionFamily::Kind::gaussian_tail && nodes.front() >= 0.0);

  if (exponential_like) {
    // f = scale * (-t)^offset e^(-t x) on the relevant range; f(J) = pref * exp(-t J).
    const double t = f.param();
    RealMatrix J = RealMatrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      J(i, i) = -t * nodes[i];
      if (i < n) J(i, i + 1) = -t;
    }
    RealMatrix E = J.exp();
    // f.derivative(0, 0) = scale * (-t)^offset, the prefactor of e^(-t x).
    double pref = f.derivative(0, 0.0);
    return pref * E(0, n);
  }
  if (kind == ScalarFunctionFamily::Kind::monomial ||
      kind == ScalarFunctionFamily::Kind::polynomial) {
    // Horner evaluation of f at J; exact.
    RealMatrix J = RealMatrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      J(i, i) = nodes[i];
      if (i < n) J(i, i + 1) = 1.0;
    }
    // Coefficients of the (offset-differentiated) polynomial: c_k = f^(k)(0)/k!.
    int deg = f.poly_degree();
    if (deg < n) return 0.0;  // Dif_n of a polynomial of degree < n vanishes
    std::vector<double> c(deg + 1);
    for (int k = 0; k <= deg; ++k) c[k] = f.derivative(k, 0.0) / factorial(k);
    RealMatrix F = RealMatrix::Zero(n + 1, n + 1);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      F = (F * J).eval();
      for (int i = 0; i <= n; ++i) F(i, i) += c[k];
    }
    return F(0, n);
  }
  // Non-analytic tail family across the junction: snap clusters to their means
  // and use exact derivative entries there (error O(cluster width)).
  std::vector<double> snapped;
  size_t i = 0;
  while (i < nodes.size()) {
    size_t j = i;
    double sum = 0.0;
    while (j < nodes.size() &&
           (j == i || nodes[j] - nodes[j - 1] < 1e-7 * (spread > 0 ? spread : 1.0))) {
      sum += nodes[j];
      ++j;
    }
    double mean = sum / static_cast<double>(j - i);
    for (size_t k = i; k < j; ++k) snapped.push_back(mean);
    i = j;
  }
  return hermite_newton(f, snapped);
}

}  // namespace

double divided_difference(const ScalarFunctionFamily& f, const std::vector<double>& nodes) {
  require(!nodes.empty(), Error::Code::invalid_argument, "divided_difference needs >= 1 node");
  const int n = static_cast<int>(nodes.size()) - 1;
  require(n <= f.max_order(), Error::Code::capability,
          "divided difference order exceeds the function family's derivative cap");
  for (double x : nodes)
    require(std::isfinite(x), Error::Code::invalid_argument, "nodes must be finite");

  if (n == 0) return f.derivative(0, nodes[0]);

  std::vector<double> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  const double spread = sorted.back() - sorted.front();
  if (spread == 0.0) return f.derivative(n, sorted[0]) / factorial(n);

  // The recursion loses ~eps/relative-gap to cancellation, so gaps inside
  // 1e-3 of the spread go to the matrix branch; that keeps the recursion's
  // loss below ~1e-11 while the matrix branch is uniformly accurate.
  bool near = false;
  for (size_t i = 1; i < sorted.size(); ++i) {
    double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0 && gap < 1e-3 * spread) {
      near = true;
      break;
    }
  }
  if (near) return opitz_branch(f, sorted, spread);
  return hermite_newton(f, sorted);
}

double divided_difference_confluent(const ScalarFunctionFamily& f,
                                    const std::vector<double>& nodes) {
  require(!nodes.empty(), Error::Code::invalid_argument, "divided_difference needs >= 1 node");
  const int n = static_cast<int>(nodes.size()) - 1;
  require(n <= f.max_order(), Error::Code::capability,
          "divided difference order exceeds the function family's derivative cap");
  if (n == 0) return f.derivative(0, nodes[0]);
  std::vector<double> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  const double spread = sorted.back() - sorted.front();
  if (spread == 0.0) return f.derivative(n, sorted[0]) / factorial(n);
  return opitz_branch(f, sorted, spread);
}

double genochi_hermite(const ScalarFunctionFamily& f, const std::vector<double>& nodes,
                       const SimplexRule& rule) {
  require(!nodes.empty(), Error::Code::invalid_argument, "genochi_hermite needs >= 1 node");
  const int n = static_cast<int>(nodes.size()) - 1;
  require(rule.n == n, Error::Code::shape, "simplex rule order must match len(nodes)-1");
  require(rule.kind == SimplexRule::Kind::uniform, Error::Code::invalid_argument,
          "genochi_hermite uses the uniform simplex measure");
  require(n <= f.max_order(), Error::Code::capability,
          "genochi_hermite order exceeds the function family's derivative cap");
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    double arg = 0.0;
    for (int j = 0; j <= n; ++j) arg += rule.nodes(q, j) * nodes[j];
    sum += rule.weights[q] * f.derivative(n, arg);
  }
  return sum;
}

}  // namespace specshift
