#include "specshift/simplex.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "specshift/errors.hpp"
#include "specshift/quadrature.hpp"

namespace specshift {
namespace {

// Tensor the per-axis rules and map through the stick-breaking substitution
// s_1 = x_1, s_j = x_j prod_(i<j)(1-x_i), s_(n+1) = prod(1-x_i).
// The per-axis weights already contain the substitution Jacobian
// prod_j (1-x_j)^(n-j) (and, for the Dirichlet kind, the s^(-1/2) factors).
SimplexRule assemble(int n, SimplexRule::Kind kind, const std::vector<GaussRule>& axis) {
  SimplexRule rule;
  rule.n = n;
  rule.kind = kind;
  if (n == 0) {
    rule.nodes = RealMatrix::Ones(1, 1);
    rule.weights = RealVector::Ones(1);
    if (kind == SimplexRule::Kind::dirichlet_half) {
      // mass Gamma(1/2)/Gamma(1/2) = 1 at the single point s = (1)
      rule.weights[0] = 1.0;
    }
    return rule;
  }
  long total = 1;
  for (const auto& a : axis) total *= a.x.size();
  rule.nodes.resize(total, n + 1);
  rule.weights.resize(total);
  std::vector<int> idx(n, 0);
  for (long q = 0; q < total; ++q) {
    double w = 1.0;
    double remain = 1.0;
    for (int j = 0; j < n; ++j) {
      double xj = axis[j].x[idx[j]];
      w *= axis[j].w[idx[j]];
      rule.nodes(q, j) = remain * xj;
      remain *= (1.0 - xj);
    }
    rule.nodes(q, n) = remain;
    rule.weights[q] = w;
    for (int j = n - 1; j >= 0; --j) {
      if (++idx[j] < axis[j].x.size()) break;
      idx[j] = 0;
    }
  }
  return rule;
}

}  // namespace

SimplexRule make_uniform_simplex_rule(int n, int points_per_axis) {
  require(n >= 0, Error::Code::invalid_argument, "simplex order must be >= 0");
  require(points_per_axis >= 1, Error::Code::invalid_argument, "need >= 1 point per axis");
  std::vector<GaussRule> axis;
  for (int j = 1; j <= n; ++j) {
    axis.push_back(gauss_jacobi01(points_per_axis, 0.0, static_cast<double>(n - j)));
  }
  return assemble(n, SimplexRule::Kind::uniform, axis);
}

SimplexRule make_dirichlet_simplex_rule(int n, int points_per_axis) {
  require(n >= 0, Error::Code::invalid_argument, "simplex order must be >= 0");
  require(points_per_axis >= 1, Error::Code::invalid_argument, "need >= 1 point per axis");
  std::vector<GaussRule> axis;
  for (int j = 1; j <= n; ++j) {
    axis.push_back(gauss_jacobi01(points_per_axis, -0.5, 0.5 * (n - j - 1)));
  }
  return assemble(n, SimplexRule::Kind::dirichlet_half, axis);
}

double simplex_integrate(const std::function<double(const RealVector&)>& g,
                         const SimplexRule& rule) {
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    RealVector s = rule.nodes.row(q);
    double v = g(s);
    if (std::isnan(v)) {
      throw_error(Error::Code::numeric,
                  "simplex integrand returned NaN at node " + std::to_string(q));
    }
    sum += rule.weights[q] * v;
  }
  return sum;
}

}  // namespace specshift
