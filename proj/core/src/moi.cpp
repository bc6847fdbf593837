#include "specshift/moi.hpp"

#include <cmath>

#include "specshift/divdiff.hpp"
#include "specshift/errors.hpp"
#include "specshift/quadrature.hpp"

namespace specshift {

namespace {

void dfs_tuples(const std::vector<const HermitianOperator*>& a_list,
                const std::vector<Matrix>& t_list, int depth, const Matrix& prefix,
                std::vector<double>& nodes,
                const std::function<void(const std::vector<double>&, const Matrix&)>& visit) {
  const int n = static_cast<int>(t_list.size());
  const HermitianOperator& a = *a_list[depth];
  for (int g = 0; g < a.num_groups(); ++g) {
    nodes[depth] = a.eigenvalue(g);
    Matrix cur = prefix * a.projection(g);
    if (depth == n) {
      visit(nodes, cur);
    } else {
      cur = cur * t_list[depth];
      dfs_tuples(a_list, t_list, depth + 1, cur, nodes, visit);
    }
  }
}

}  // namespace

void for_each_spectral_tuple(
    const std::vector<const HermitianOperator*>& a_list, const std::vector<Matrix>& t_list,
    const std::function<void(const std::vector<double>&, const Matrix&)>& visit) {
  require(a_list.size() == t_list.size() + 1, Error::Code::shape,
          "need one more pivot than factor");
  const int d = a_list[0]->dim();
  for (const auto* a : a_list)
    require(a->dim() == d, Error::Code::shape, "pivot dimensions disagree");
  for (const auto& t : t_list)
    require(t.rows() == d && t.cols() == d, Error::Code::shape, "factor dimensions disagree");
  std::vector<double> nodes(a_list.size());
  dfs_tuples(a_list, t_list, 0, identity(d), nodes, visit);
}

Matrix moi_apply(const ScalarFunctionFamily& f, const std::vector<HermitianOperator>& a_list,
                 const std::vector<Matrix>& t_list) {
  const int n = static_cast<int>(t_list.size());
  require(static_cast<int>(a_list.size()) == n + 1, Error::Code::shape,
          "need one more pivot than factor");
  require(n <= f.max_order(), Error::Code::capability,
          "function family cannot supply order-n divided differences");
  std::vector<const HermitianOperator*> ptrs;
  ptrs.reserve(a_list.size());
  for (const auto& a : a_list) ptrs.push_back(&a);
  Matrix out = Matrix::Zero(a_list[0].dim(), a_list[0].dim());
  for_each_spectral_tuple(ptrs, t_list,
                          [&](const std::vector<double>& nodes, const Matrix& sandwich) {
                            out += divided_difference(f, nodes) * sandwich;
                          });
  return out;
}

Matrix moi_apply(const ScalarFunctionFamily& f, const HermitianOperator& a,
                 const std::vector<Matrix>& t_list) {
  const int n = static_cast<int>(t_list.size());
  require(n <= f.max_order(), Error::Code::capability,
          "function family cannot supply order-n divided differences");
  std::vector<const HermitianOperator*> ptrs(t_list.size() + 1, &a);
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for_each_spectral_tuple(ptrs, t_list,
                          [&](const std::vector<double>& nodes, const Matrix& sandwich) {
                            out += divided_difference(f, nodes) * sandwich;
                          });
  return out;
}

Matrix taylor_term(const ScalarFunctionFamily& f, int k, const HermitianOperator& a,
                   const Matrix& b) {
  require(k >= 0, Error::Code::invalid_argument, "term order must be >= 0");
  std::vector<Matrix> t_list(k, b);
  return moi_apply(f, a, t_list);
}

Matrix taylor_remainder_direct(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                               const Matrix& b) {
  require(n >= 1, Error::Code::invalid_argument, "remainder order must be >= 1");
  std::vector<HermitianOperator> pivots;
  pivots.reserve(n + 1);
  pivots.emplace_back(Matrix(a.matrix() + b));
  for (int i = 1; i <= n; ++i) pivots.push_back(a);
  std::vector<Matrix> t_list(n, b);
  return moi_apply(f, pivots, t_list);
}

Matrix taylor_remainder_integral(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                                 const Matrix& b, int quad_order) {
  require(n >= 1, Error::Code::invalid_argument, "remainder order must be >= 1");
  // weight (1-t)^(n-1) on [0,1], total mass 1/n; the n up front restores the
  // Cauchy remainder normalization.
  GaussRule rule = gauss_jacobi01(quad_order, 0.0, static_cast<double>(n - 1));
  std::vector<Matrix> t_list(n, b);
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for (Eigen::Index q = 0; q < rule.x.size(); ++q) {
    HermitianOperator at(Matrix(a.matrix() + rule.x[q] * b));
    out += (static_cast<double>(n) * rule.w[q]) * moi_apply(f, at, t_list);
  }
  return out;
}

double TraceCyclePair::defect() const {
  double scale = std::max({1.0, std::abs(direct), std::abs(cycled)});
  return std::abs(direct - cycled) / scale;
}

TraceCyclePair trace_cycle_check(const ScalarFunctionFamily& f, int n, const HermitianOperator& a,
                                 const Matrix& b) {
  require(n >= 1, Error::Code::invalid_argument, "cycle check needs n >= 1");
  std::vector<Matrix> t_list(n, b);
  Matrix full = moi_apply(f, a, t_list);
  ScalarFunctionFamily fp = f.derivative_family(1);
  std::vector<Matrix> t_short(n - 1, b);
  Matrix dropped = moi_apply(fp, a, t_short);
  TraceCyclePair out;
  out.direct = full.trace();
  out.cycled = (b * dropped).trace() / static_cast<double>(n);
  return out;
}

}  // namespace specshift
