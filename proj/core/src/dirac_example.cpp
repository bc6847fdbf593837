#include "specshift/dirac_example.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "specshift/errors.hpp"
#include "specshift/hermitian.hpp"
#include "specshift/propagator.hpp"
#include "specshift/quadrature.hpp"
#include "specshift/rng.hpp"
#include "specshift/specfun.hpp"

namespace specshift {

namespace {

Matrix pauli(int a) {
  Matrix s(2, 2);
  switch (a) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

double std_normal_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

cplx ipow(cplx base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct PermTable {
  std::vector<std::vector<int>> perm;
  std::vector<double> sign;
};

PermTable make_perms(int d) {
  PermTable t;
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (p[i] > p[j]) ++inversions;
    t.perm.push_back(p);
    t.sign.push_back(inversions % 2 == 0 ? 1.0 : -1.0);
  } while (std::next_permutation(p.begin(), p.end()));
  return t;
}

// odometer over {0..n-1}^d; returns false once exhausted
bool advance(std::vector<int>& idx, int n) {
  for (size_t j = 0; j < idx.size(); ++j) {
    if (++idx[j] < n) return true;
    idx[j] = 0;
  }
  return false;
}

// hedgehog radial profile and its derivative
double hedgehog_f(double r) { return kPi * r * r / (1.0 + r * r); }
double hedgehog_fp(double r) { return 2.0 * kPi * r / ((1.0 + r * r) * (1.0 + r * r)); }

Matrix hedgehog_h(const RealVector& x) {
  double r = x.norm();
  Matrix out = Matrix::Zero(2, 2);
  if (r == 0.0) return out;
  double f = hedgehog_f(r);
  for (int a = 0; a < 3; ++a) out += (f * x[a] / r) * pauli(a);
  return out;
}

std::vector<Matrix> hedgehog_grad_h(const RealVector& x) {
  std::vector<Matrix> out(3, Matrix::Zero(2, 2));
  double r = x.norm();
  if (r == 0.0) return out;  // f ~ pi r^2 near 0, so the gradient vanishes there
  double fp = hedgehog_fp(r);
  double f_over_r = kPi * r / (1.0 + r * r);
  for (int j = 0; j < 3; ++j) {
    double xj = x[j] / r;
    for (int a = 0; a < 3; ++a) {
      double xa = x[a] / r;
      double coeff = fp * xj * xa + f_over_r * ((j == a ? 1.0 : 0.0) - xj * xa);
      out[j] += coeff * pauli(a);
    }
  }
  return out;
}

}  // namespace

PotentialV make_hedgehog_potential(double y_width) {
  require(y_width > 0.0, Error::Code::invalid_argument, "profile width must be positive");
  PotentialV v;
  v.d = 3;
  v.dim_g = 2;
  v.separable = true;
  v.support_radius_y = 8.0 * y_width;
  v.decay_rate_x = 1.0;
  v.name = "hedgehog";
  const double w = y_width;
  const double norm = 1.0 / (w * std::sqrt(2.0 * kPi));
  v.phi_y = [w, norm](double y) { return norm * std::exp(-0.5 * y * y / (w * w)); };
  v.phi_cdf = [w](double y) { return std_normal_cdf(y / w); };
  v.h_x = hedgehog_h;
  v.value = [v_phi = v.phi_y](const RealVector& x, double y) {
    return Matrix(v_phi(y) * hedgehog_h(x));
  };
  v.grad_x = [v_phi = v.phi_y](const RealVector& x, double y) {
    std::vector<Matrix> g = hedgehog_grad_h(x);
    for (auto& m : g) m *= v_phi(y);
    return g;
  };

  // int phi = 1, checked by quadrature at construction
  double mass = 0.0;
  for (int p = -8; p < 8; ++p) {
    GaussRule rule = gauss_legendre(24, p * w, (p + 1) * w);
    for (Eigen::Index q = 0; q < rule.x.size(); ++q) mass += rule.w[q] * v.phi_y(rule.x[q]);
  }
  require(std::abs(mass - 1.0) <= 1e-10, Error::Code::invalid_argument,
          "separable profile is not normalized");
  return v;
}

PotentialV make_scalar_control_potential() {
  // three non-separable scalar terms: v = sum_i g_i(y) w_i(x); a single
  // separable term has vanishing d-form, so three are needed for a pointwise
  // nonzero control whose z-integral still cancels
  PotentialV v;
  v.d = 3;
  v.dim_g = 1;
  v.separable = false;
  v.support_radius_y = 9.0;
  v.decay_rate_x = 1.2;
  v.name = "scalar-control";

  struct Term {
    double yc, yw;    // Gaussian profile in y
    RealVector xo;    // bump center in x
    double xw, amp;   // bump width, amplitude
  };
  static const std::vector<Term> terms = [] {
    std::vector<Term> t(3);
    t[0] = {-0.6, 0.8, RealVector(3), 1.0, 0.8};
    t[1] = {0.0, 1.0, RealVector(3), 1.2, 0.7};
    t[2] = {0.7, 1.2, RealVector(3), 0.9, 0.9};
    t[0].xo << 0.9, -0.3, 0.2;
    t[1].xo << -0.7, 0.8, -0.4;
    t[2].xo << 0.1, -0.9, 0.9;
    return t;
  }();

  auto g_profile = [](const Term& t, double y) {
    double u = (y - t.yc) / t.yw;
    return std::exp(-0.5 * u * u) / (t.yw * std::sqrt(2.0 * kPi));
  };
  auto w_bump = [](const Term& t, const RealVector& x) {
    return t.amp * std::exp(-0.5 * (x - t.xo).squaredNorm() / (t.xw * t.xw));
  };

  v.value = [g_profile, w_bump](const RealVector& x, double y) {
    double s = 0.0;
    for (const auto& t : terms) s += g_profile(t, y) * w_bump(t, x);
    Matrix out(1, 1);
    out(0, 0) = s;
    return out;
  };
  v.grad_x = [g_profile, w_bump](const RealVector& x, double y) {
    std::vector<Matrix> g(3, Matrix::Zero(1, 1));
    for (const auto& t : terms) {
      double gw = g_profile(t, y) * w_bump(t, x);
      for (int a = 0; a < 3; ++a) g[a](0, 0) += -((x[a] - t.xo[a]) / (t.xw * t.xw)) * gw;
    }
    return g;
  };
  v.scalar_cdf = [w_bump](const RealVector& x, double y) {
    double s = 0.0;
    for (const auto& t : terms) s += w_bump(t, x) * std_normal_cdf((y - t.yc) / t.yw);
    return s;
  };
  return v;
}

PotentialV make_zero_potential(int d, int dim_g) {
  PotentialV v;
  v.d = d;
  v.dim_g = dim_g;
  v.separable = true;
  v.support_radius_y = 1.0;
  v.name = "zero";
  v.phi_y = [](double y) { return std::exp(-0.5 * y * y) / std::sqrt(2.0 * kPi); };
  v.phi_cdf = [](double y) { return std_normal_cdf(y); };
  v.h_x = [dim_g](const RealVector&) { return Matrix(Matrix::Zero(dim_g, dim_g)); };
  v.value = [dim_g](const RealVector&, double) { return Matrix(Matrix::Zero(dim_g, dim_g)); };
  v.grad_x = [d, dim_g](const RealVector&, double) {
    return std::vector<Matrix>(d, Matrix::Zero(dim_g, dim_g));
  };
  return v;
}

Matrix potential_propagator(const PotentialV& v, const RealVector& x, double y1, double y2,
                            double tol) {
  if (v.separable) {
    require(static_cast<bool>(v.phi_cdf) && static_cast<bool>(v.h_x),
            Error::Code::invalid_argument, "separable potential lacks its profile data");
    return unitary_exp_i((v.phi_cdf(y1) - v.phi_cdf(y2)) * v.h_x(x));
  }
  if (v.dim_g == 1 && v.scalar_cdf) {
    Matrix u(1, 1);
    u(0, 0) = std::exp(kI * (v.scalar_cdf(x, y1) - v.scalar_cdf(x, y2)));
    return u;
  }
  return propagate([&](double y) { return v.value(x, y); }, y1, y2, tol);
}

Matrix limit_propagator(const PotentialV& v, const RealVector& x, double l_cap) {
  if (v.separable) return unitary_exp_i(v.h_x(x));  // int phi = 1
  double l = std::min(4.0, 0.25 * l_cap);
  Matrix u = potential_propagator(v, x, l, -l);
  while (l < l_cap) {
    double l2 = std::min(2.0 * l, l_cap);
    Matrix u2 = potential_propagator(v, x, l2, -l2);
    if ((u2 - u).norm() <= 1e-8) return u2;
    u = u2;
    l = l2;
  }
  throw_error(Error::Code::no_limit, "propagator domain growth hit the cap before converging");
}

cplx index_density(const PotentialV& v, const RealVector& z, const XGrid& grid, int start_slot) {
  const int d = v.d;
  require(static_cast<int>(z.size()) == d, Error::Code::shape, "z must have d components");
  require(start_slot >= 0 && start_slot < d, Error::Code::invalid_argument,
          "start slot out of range");
  require(grid.points_per_axis >= 2 && grid.radius > 0.0, Error::Code::invalid_argument,
          "bad x grid");

  static const int kMaxD = 5;
  require(d <= kMaxD, Error::Code::capability, "index density capped at d = 5");
  const PermTable perms = make_perms(d);
  const int n = grid.points_per_axis;
  const double h = 2.0 * grid.radius / n;

  // y legs around the cycle: slot i uses the gradient at yprev[i] and the
  // propagator from yprev[i] down to z[i]
  std::vector<double> yprev(d);
  for (int i = 0; i < d; ++i) yprev[i] = z[(i + d - 1) % d];

  cplx acc = 0.0;
  std::vector<int> idx(d, 0);
  std::vector<Matrix> u(d);
  std::vector<std::vector<Matrix>> g(d);
  do {
    RealVector x(d);
    for (int j = 0; j < d; ++j) x[j] = -grid.radius + (idx[j] + 0.5) * h;

    if (v.separable) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(v.h_x(x));
      require(es.info() == Eigen::Success, Error::Code::numeric, "eigensolver failed");
      for (int i = 0; i < d; ++i) {
        double dphi = v.phi_cdf(yprev[i]) - v.phi_cdf(z[i]);
        Matrix ui = Matrix::Zero(v.dim_g, v.dim_g);
        for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e)
          ui += std::exp(kI * dphi * es.eigenvalues()[e]) *
                (es.eigenvectors().col(e) * es.eigenvectors().col(e).adjoint());
        u[i] = ui;
      }
    } else {
      for (int i = 0; i < d; ++i) u[i] = potential_propagator(v, x, yprev[i], z[i]);
    }
    for (int i = 0; i < d; ++i) g[i] = v.grad_x(x, yprev[i]);

    cplx cell = 0.0;
    for (size_t p = 0; p < perms.perm.size(); ++p) {
      Matrix prod = identity(v.dim_g);
      for (int jj = 0; jj < d; ++jj) {
        int i = (start_slot + jj) % d;
        prod = prod * g[i][perms.perm[p][i]] * u[i];
      }
      cell += perms.sign[p] * prod.trace();
    }
    acc += cell;
  } while (advance(idx, n));

  acc *= std::pow(h, d);
  cplx pref = (2.0 / d) * std::pow(4.0 * kPi, -0.5 * d) * ipow(cplx(0.0, 2.0), (d - 1) / 2);
  return pref * acc;
}

cplx ZSampleSet::integral() const {
  cplx acc = 0.0;
  for (size_t i = 0; i < ind.size(); ++i) acc += ind[i] * weight[i];
  return acc / double(ind.size());
}

double ZSampleSet::standard_error() const {
  if (ind.size() < 2) return 0.0;
  double mean = integral().real();
  double var = 0.0;
  for (size_t i = 0; i < ind.size(); ++i) {
    double dev = ind[i].real() * weight[i] - mean;
    var += dev * dev;
  }
  var /= double(ind.size() - 1);
  return std::sqrt(var / double(ind.size()));
}

ZSampleSet ZSampleSet::head(int n) const {
  require(n >= 1 && n <= static_cast<int>(z.size()), Error::Code::invalid_argument,
          "sub-cloud size out of range");
  ZSampleSet out;
  out.d = d;
  out.sampler_width = sampler_width;
  out.z.assign(z.begin(), z.begin() + n);
  out.weight.assign(weight.begin(), weight.begin() + n);
  out.ind.assign(ind.begin(), ind.begin() + n);
  return out;
}

ZSampleSet sample_index_cloud(const PotentialV& v, const XGrid& grid, const McOptions& mc) {
  require(mc.samples >= 2, Error::Code::invalid_argument, "need at least two samples");
  ZSampleSet out;
  out.d = v.d;
  // Any width is unbiased; matching the y-profile scale (support radius is
  // profile width times 8-9 for the built-in families) keeps the importance
  // ratio bounded by the x-factor alone instead of inflating the tails.
  double w = mc.sampler_width > 0.0 ? mc.sampler_width : v.support_radius_y / 8.0;
  out.sampler_width = w;
  auto eng = make_engine(mc.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double lognorm = std::log(w * std::sqrt(2.0 * kPi));
  for (int i = 0; i < mc.samples; ++i) {
    RealVector z(v.d);
    double logpdf = 0.0;
    for (int j = 0; j < v.d; ++j) {
      double u = nd(eng);
      z[j] = w * u;
      logpdf += -0.5 * u * u - lognorm;
    }
    out.z.push_back(z);
    out.weight.push_back(std::exp(-logpdf));
    out.ind.push_back(index_density(v, z, grid));
  }
  return out;
}

ExampleKernels ExampleKernels::make(int d, int points_per_axis) {
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument, "d must be odd");
  ExampleKernels k;
  k.d = d;
  k.rule = make_dirichlet_simplex_rule(d - 1, points_per_axis);
  return k;
}

double ExampleKernels::a_of(const RealVector& s, const RealVector& z) const {
  require(static_cast<int>(s.size()) == d && static_cast<int>(z.size()) == d, Error::Code::shape,
          "a(s, z) needs d slots in each argument");
  double a = 0.0;
  for (int i = 0; i < d; ++i) {
    double diff = z[(i + d - 1) % d] - z[i];
    a += diff * diff / (4.0 * s[i]);
  }
  return a;
}

double ExampleKernels::omega(double mu, const RealVector& z, int derivative_order) const {
  require(mu >= 0.0, Error::Code::invalid_argument, "omega needs mu >= 0");
  double nu = 0.5 * d - 1.0 - derivative_order;
  double acc = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    double a = a_of(rule.nodes.row(q).transpose(), z);
    acc += rule.weights[q] * phi_bessel(nu, a, mu);
  }
  return 0.5 * acc;
}

double ExampleKernels::sigma(double lambda, const RealVector& z, int derivative_order) const {
  require(lambda >= 0.0, Error::Code::invalid_argument, "sigma needs lambda >= 0");
  double nu = double(d) - 1.0 - derivative_order;
  double acc = 0.0;
  for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
    double a = a_of(rule.nodes.row(q).transpose(), z);
    acc += rule.weights[q] * phi_bessel(nu, a, lambda);
  }
  return -std::pow(4.0 * kPi, -0.5 * d) * acc;
}

double eta_example(const ZSampleSet& cloud, const ExampleKernels& kernels, double mu,
                   int derivative_order) {
  require(cloud.d == kernels.d, Error::Code::shape, "cloud and kernels disagree on d");
  double acc = 0.0;
  for (size_t i = 0; i < cloud.z.size(); ++i)
    acc += kernels.omega(mu, cloud.z[i], derivative_order) * cloud.ind[i].real() *
           cloud.weight[i];
  return acc / double(cloud.z.size());
}

double xi_example(const ZSampleSet& cloud, const ExampleKernels& kernels, double lambda,
                  int derivative_order) {
  require(cloud.d == kernels.d, Error::Code::shape, "cloud and kernels disagree on d");
  double acc = 0.0;
  for (size_t i = 0; i < cloud.z.size(); ++i)
    acc += kernels.sigma(lambda, cloud.z[i], derivative_order) * cloud.ind[i].real() *
           cloud.weight[i];
  return acc / double(cloud.z.size());
}

double schlafli_gap(double a, double t, int d) {
  require(a >= 0.0 && t > 0.0, Error::Code::invalid_argument, "needs a >= 0, t > 0");
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument, "d must be odd");
  double nu = 0.5 * d - 1.0;
  // mu = u^2 removes the sqrt oscillation: phase 2 sqrt(a mu) becomes linear
  double umax = std::sqrt(60.0 / t);
  const int panels = 16;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    GaussRule r = gauss_legendre(24, p * umax / panels, (p + 1) * umax / panels);
    for (Eigen::Index q = 0; q < r.x.size(); ++q) {
      double u = r.x[q];
      integral += r.w[q] * 2.0 * u * std::exp(-t * u * u) * phi_bessel(nu, a, u * u);
    }
  }
  return std::abs(integral - std::pow(t, -0.5 * d) * std::exp(-a / t));
}

WindingReport winding_index(const std::function<Matrix(const RealVector&)>& u_field, int d,
                            double radius, int points_per_axis, double boundary_tol) {
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument, "d must be odd");
  require(points_per_axis >= 4, Error::Code::invalid_argument, "grid too small");
  require(radius > 0.0, Error::Code::invalid_argument, "radius must be positive");
  static const int kMaxD = 3;
  require(d <= kMaxD, Error::Code::capability, "winding integrator capped at d = 3");

  const int n = points_per_axis;
  const double h = 2.0 * radius / n;
  long total = 1;
  for (int j = 0; j < d; ++j) total *= n;

  std::vector<Matrix> u(static_cast<size_t>(total));
  std::vector<int> idx(d, 0);
  long flat = 0;
  do {
    RealVector x(d);
    for (int j = 0; j < d; ++j) x[j] = -radius + (idx[j] + 0.5) * h;
    u[static_cast<size_t>(flat)] = u_field(x);
    ++flat;
  } while (advance(idx, n));

  // strides of the flat index (axis j advances by n^j)
  std::vector<long> stride(d, 1);
  for (int j = 1; j < d; ++j) stride[j] = stride[j - 1] * n;

  // boundary spread
  Matrix bmean;
  long bcount = 0;
  idx.assign(d, 0);
  flat = 0;
  do {
    bool boundary = false;
    for (int j = 0; j < d; ++j) boundary = boundary || idx[j] == 0 || idx[j] == n - 1;
    if (boundary) {
      if (bcount == 0)
        bmean = u[static_cast<size_t>(flat)];
      else
        bmean += u[static_cast<size_t>(flat)];
      ++bcount;
    }
    ++flat;
  } while (advance(idx, n));
  bmean /= double(bcount);
  double bdefect = 0.0;
  idx.assign(d, 0);
  flat = 0;
  do {
    bool boundary = false;
    for (int j = 0; j < d; ++j) boundary = boundary || idx[j] == 0 || idx[j] == n - 1;
    if (boundary) bdefect = std::max(bdefect, (u[static_cast<size_t>(flat)] - bmean).norm());
    ++flat;
  } while (advance(idx, n));
  require(bdefect <= boundary_tol, Error::Code::hypothesis_not_met,
          "field is not constant on the grid boundary; enlarge the domain");

  const PermTable perms = make_perms(d);
  cplx acc = 0.0;
  idx.assign(d, 0);
  flat = 0;
  std::vector<Matrix> l(d);
  do {
    bool interior = true;
    for (int j = 0; j < d; ++j) interior = interior && idx[j] >= 1 && idx[j] <= n - 2;
    if (interior) {
      const Matrix& here = u[static_cast<size_t>(flat)];
      for (int j = 0; j < d; ++j)
        l[j] = here.adjoint() *
               ((u[static_cast<size_t>(flat + stride[j])] -
                 u[static_cast<size_t>(flat - stride[j])]) /
                (2.0 * h));
      for (size_t p = 0; p < perms.perm.size(); ++p) {
        Matrix prod = l[perms.perm[p][0]];
        for (int j = 1; j < d; ++j) prod = prod * l[perms.perm[p][j]];
        acc += perms.sign[p] * prod.trace();
      }
    }
    ++flat;
  } while (advance(idx, n));
  acc *= std::pow(h, d);

  cplx constant =
      ipow(cplx(0.0, 2.0 * kPi), -(d + 1) / 2) * (factorial_d((d - 1) / 2) / factorial_d(d));
  cplx value = constant * acc;
  double scale = std::max(1.0, std::abs(value));
  require(std::abs(value.imag()) <= 1e-6 * scale, Error::Code::numeric,
          "winding sum failed its realness budget");

  WindingReport rep;
  rep.value = value.real();
  rep.nearest_integer_gap = std::abs(rep.value - std::round(rep.value));
  rep.boundary_defect = bdefect;
  return rep;
}

double index_dimensional_constant(int d) {
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument, "d must be odd");
  return std::pow(2.0, -d) / std::tgamma(0.5 * d);
}

ExampleIndexReport example_index_report(const PotentialV& v, const XGrid& grid,
                                        const McOptions& mc, int kernel_points,
                                        int pipeline_samples) {
  ExampleIndexReport rep;
  // the winding reference needs a finer derivative grid than the cell
  // integrals: its central differences converge at h^2 and feed every
  // route comparison below
  rep.winding = winding_index([&](const RealVector& x) { return limit_propagator(v, x); }, v.d,
                              std::max(7.5, grid.radius + 0.5),
                              std::max(192, 4 * grid.points_per_axis));

  ZSampleSet cloud = sample_index_cloud(v, grid, mc);
  rep.mc_integral = cloud.integral();
  rep.mc_standard_error = cloud.standard_error();
  rep.mc_samples = static_cast<int>(cloud.z.size());
  const double dim_const = index_dimensional_constant(v.d);
  rep.mc_index = dim_const * rep.mc_integral.real();
  rep.mc_index_standard_error = dim_const * rep.mc_standard_error;

  ZSampleSet small = cloud.head(std::min<int>(pipeline_samples, mc.samples));
  ExampleKernels kernels = ExampleKernels::make(v.d, kernel_points);
  const int k = (v.d - 1) / 2;
  auto eta_k = [&](double mu) { return eta_example(small, kernels, mu, k); };
  rep.pipeline = witten_index_from_derivative(eta_k, v.d, -0.5);
  return rep;
}

}  // namespace specshift
