#include "specshift/ssf.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "specshift/errors.hpp"
#include "specshift/moi.hpp"

namespace specshift {

std::vector<WeightedNodes> ssf_tuple_contributions(
    const std::vector<const HermitianOperator*>& a_list, const Matrix& t0,
    const std::vector<Matrix>& t_list) {
  require(!a_list.empty(), Error::Code::shape, "need at least one pivot");
  const int d = a_list[0]->dim();
  require(t0.rows() == d && t0.cols() == d, Error::Code::shape, "t0 dimension disagrees");
  std::vector<WeightedNodes> out;
  for_each_spectral_tuple(a_list, t_list,
                          [&](const std::vector<double>& nodes, const Matrix& sandwich) {
                            out.push_back({nodes, (t0 * sandwich).trace()});
                          });
  return out;
}

SpectralShiftDensity assemble_weighted_bsplines(const std::vector<WeightedNodes>& contributions,
                                                double prune_rel, double snap_rel) {
  if (contributions.empty()) return SpectralShiftDensity::zero();

  // global snap grid over every node that appears
  std::vector<double> all;
  for (const auto& c : contributions)
    all.insert(all.end(), c.nodes.begin(), c.nodes.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  double span = all.back() - all.front();
  double tol = snap_rel * span;
  std::vector<double> reps;      // cluster representatives
  std::vector<double> original;  // parallel: cluster member values (sorted)
  std::vector<size_t> member_rep;
  {
    size_t start = 0;
    while (start < all.size()) {
      size_t end = start + 1;
      while (end < all.size() && all[end] - all[end - 1] <= tol) ++end;
      double mean = 0.0;
      for (size_t i = start; i < end; ++i) mean += all[i];
      mean /= static_cast<double>(end - start);
      size_t rep_index = reps.size();
      reps.push_back(mean);
      for (size_t i = start; i < end; ++i) {
        original.push_back(all[i]);
        member_rep.push_back(rep_index);
      }
      start = end;
    }
  }
  auto snap = [&](double v) {
    auto it = std::lower_bound(original.begin(), original.end(), v);
    size_t idx = static_cast<size_t>(it - original.begin());
    // v is always a member value, inserted above
    return reps[member_rep[idx]];
  };

  double max_w = 0.0;
  for (const auto& c : contributions) max_w = std::max(max_w, std::abs(c.weight));
  const double cutoff = prune_rel * max_w;

  SpectralShiftDensity acc = SpectralShiftDensity::zero();
  for (const auto& c : contributions) {
    if (std::abs(c.weight) < cutoff) continue;
    std::vector<double> snapped;
    snapped.reserve(c.nodes.size());
    for (double v : c.nodes) snapped.push_back(snap(v));
    if (snapped.size() == 1) {
      acc.add_scaled(SpectralShiftDensity::atom(snapped[0], 1.0), c.weight);
    } else {
      acc.add_scaled(bspline_density(snapped), c.weight);
    }
  }
  return acc;
}

SpectralShiftDensity ssf_density(const std::vector<HermitianOperator>& a_list, const Matrix& t0,
                                 const std::vector<Matrix>& t_list) {
  require(a_list.size() == t_list.size() + 1, Error::Code::shape,
          "need one more pivot than factor");
  std::vector<const HermitianOperator*> ptrs;
  ptrs.reserve(a_list.size());
  for (const auto& a : a_list) ptrs.push_back(&a);
  return assemble_weighted_bsplines(ssf_tuple_contributions(ptrs, t0, t_list));
}

SpectralShiftDensity ssf_density(const HermitianOperator& a, const Matrix& t0,
                                 const std::vector<Matrix>& t_list) {
  std::vector<const HermitianOperator*> ptrs(t_list.size() + 1, &a);
  return assemble_weighted_bsplines(ssf_tuple_contributions(ptrs, t0, t_list));
}

SpectralShiftDensity krein_ssf(const HermitianOperator& a_plus, const HermitianOperator& a_minus) {
  std::vector<double> grid;
  for (Eigen::Index i = 0; i < a_plus.eigenvalues().size(); ++i)
    grid.push_back(a_plus.eigenvalues()[i]);
  for (Eigen::Index i = 0; i < a_minus.eigenvalues().size(); ++i)
    grid.push_back(a_minus.eigenvalues()[i]);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return SpectralShiftDensity::zero();

  auto count_leq = [](const RealVector& evals, double x) {
    int c = 0;
    for (Eigen::Index i = 0; i < evals.size(); ++i)
      if (evals[i] <= x) ++c;
    return c;
  };
  std::vector<cplx> values;
  values.reserve(grid.size() - 1);
  for (size_t p = 0; p + 1 < grid.size(); ++p) {
    double mid = 0.5 * (grid[p] + grid[p + 1]);
    values.push_back(cplx(count_leq(a_minus.eigenvalues(), mid) -
                          count_leq(a_plus.eigenvalues(), mid)));
  }
  SpectralShiftDensity out = SpectralShiftDensity::piecewise_constant(grid, values);
  out.compactify();
  return out;
}

SpectralShiftDensity eta_callias(const CliffordRep& cl, const std::vector<FiberSample>& samples,
                                 double grad_skip_tol) {
  const int d = cl.d;
  const int r = cl.r;
  std::vector<WeightedNodes> contributions;
  for (const auto& s : samples) {
    require(static_cast<int>(s.grad.size()) == d, Error::Code::shape,
            "need one field gradient per direction");
    const int m = static_cast<int>(s.a_phi.rows());
    double grad_norm = 0.0;
    for (const auto& g : s.grad) grad_norm += g.norm();
    if (grad_norm < grad_skip_tol) continue;

    double radius = s.position.norm();
    require(radius > 0.0, Error::Code::invalid_argument, "fiber sample at the origin");
    RealVector xhat = s.position / radius;

    RadialSplit rs = radial_split(cl, xhat);
    Matrix radial_field = Matrix::Zero(m, m);
    for (int j = 0; j < d; ++j) radial_field += xhat[j] * s.grad[j];
    Matrix t0 = kI * Eigen::kroneckerProduct(rs.c_R, radial_field).eval();
    Matrix full = Matrix::Zero(r * m, r * m);
    for (int j = 0; j < d; ++j)
      full += kI * Eigen::kroneckerProduct(cl.c[j], s.grad[j]).eval();
    Matrix b_ang = full - t0;

    HermitianOperator pivot =
        HermitianOperator(Eigen::kroneckerProduct(identity(r), s.a_phi).eval())
            .map_eigenvalues([](double x) { return x * x; });

    std::vector<const HermitianOperator*> ptrs(d, &pivot);
    std::vector<Matrix> t_list(d - 1, b_ang);
    std::vector<WeightedNodes> site = ssf_tuple_contributions(ptrs, t0, t_list);
    for (auto& c : site) {
      c.weight *= s.volume;
      contributions.push_back(std::move(c));
    }
  }
  SpectralShiftDensity eta = assemble_weighted_bsplines(contributions);
  double l1 = eta.l1_norm();
  if (l1 > 0.0) {
    require(eta.imag_l1() <= 1e-10 * l1, Error::Code::numeric,
            "fiber shift density has a non-negligible imaginary part");
  }
  return eta;
}

}  // namespace specshift
