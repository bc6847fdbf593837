#include "specshift/lattice.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "specshift/errors.hpp"
#include "specshift/rng.hpp"

namespace specshift {

namespace {

double bump_psi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

Matrix pauli(int a) {
  Matrix s(2, 2);
  switch (a) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Matrix random_hermitian(int m, std::mt19937_64& eng, double scale) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix r(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = cplx(dist(eng), dist(eng));
  Matrix out = 0.5 * (r + r.adjoint().eval());
  return scale * out;
}

}  // namespace

double CutoffBump::operator()(double r) const {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  double v = (r - r0) / (r1 - r0);
  double pw = bump_psi(1.0 - v), pv = bump_psi(v);
  return pw / (pw + pv);
}

double CutoffBump::derivative(double r) const {
  if (r <= r0 || r >= r1) return 0.0;
  double span = r1 - r0;
  double v = (r - r0) / span;
  double w = 1.0 - v;
  double pw = bump_psi(w), pv = bump_psi(v);
  double dpw = pw / (w * w), dpv = pv / (v * v);
  // phi(v) = pw/(pw+pv) with w = 1-v
  double dphi_dv = (-dpw * pv - pw * dpv) / ((pw + pv) * (pw + pv));
  return dphi_dv / span;
}

int LatticeModel::grid_size() const {
  int g = 1;
  for (int j = 0; j < d; ++j) g *= N;
  return g;
}

RealVector LatticeModel::point(int flat_index) const {
  RealVector x(d);
  for (int j = 0; j < d; ++j) {
    int k = flat_index % N;
    flat_index /= N;
    x[j] = h * (k - 0.5 * (N - 1));
  }
  return x;
}

Matrix LatticeModel::a(const RealVector& x) const { return a0 + b(x); }

Matrix LatticeModel::a_phi(const RealVector& x) const {
  return a0 + (1.0 - phi(x.norm())) * b(x);
}

std::vector<Matrix> LatticeModel::grad_a_phi(const RealVector& x) const {
  double r = x.norm();
  double ph = phi(r);
  double dph = phi.derivative(r);
  Matrix bx = b(x);
  std::vector<Matrix> gb = grad_b(x);
  std::vector<Matrix> out(d);
  for (int j = 0; j < d; ++j) {
    double xhat_j = r > 0.0 ? x[j] / r : 0.0;
    out[j] = (1.0 - ph) * gb[j] - (dph * xhat_j) * bx;
  }
  return out;
}

LatticeModel make_hedgehog_model(int N, double h, double phi_r0, double phi_r1) {
  require(N % 2 == 0, Error::Code::invalid_argument, "N must be even (keeps sites off 0)");
  require(0.0 < phi_r0 && phi_r0 < phi_r1, Error::Code::invalid_argument,
          "cutoff radii must satisfy 0 < r0 < r1");
  LatticeModel model;
  model.d = 3;
  model.N = N;
  model.m = 2;
  model.h = h;
  model.a0 = Matrix::Zero(2, 2);
  model.phi = CutoffBump{phi_r0, phi_r1};
  model.name = "hedgehog";
  model.b = [](const RealVector& x) {
    double r = x.norm();
    double f = kPi * r * r / (1.0 + r * r);
    Matrix out = Matrix::Zero(2, 2);
    if (r == 0.0) return out;
    for (int a = 0; a < 3; ++a) out += (f * x[a] / r) * pauli(a);
    return out;
  };
  model.grad_b = [](const RealVector& x) {
    double r = x.norm();
    std::vector<Matrix> out(3, Matrix::Zero(2, 2));
    if (r == 0.0) return out;  // grid never lands here; continuous limit is 0
    double fp = 2.0 * kPi * r / ((1.0 + r * r) * (1.0 + r * r));
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
  };
  return model;
}

LatticeModel make_zero_model(int d, int N, double h, int m, double mu) {
  require(N % 2 == 0, Error::Code::invalid_argument, "N must be even (keeps sites off 0)");
  LatticeModel model;
  model.d = d;
  model.N = N;
  model.m = m;
  model.h = h;
  model.a0 = mu * identity(m);
  model.name = "zero";
  Matrix z = Matrix::Zero(m, m);
  model.b = [z](const RealVector&) { return z; };
  model.grad_b = [z, d](const RealVector&) { return std::vector<Matrix>(d, z); };
  return model;
}

LatticeModel make_constant_model(int d, int N, double h, const Matrix& a0, const Matrix& b0) {
  require(N % 2 == 0, Error::Code::invalid_argument, "N must be even (keeps sites off 0)");
  LatticeModel model;
  model.d = d;
  model.N = N;
  model.m = static_cast<int>(a0.rows());
  model.h = h;
  model.a0 = a0;
  model.name = "constant";
  model.b = [b0](const RealVector&) { return b0; };
  model.grad_b = [d, m = model.m](const RealVector&) {
    return std::vector<Matrix>(d, Matrix::Zero(m, m));
  };
  return model;
}

LatticeModel make_fourier_model(int d, int N, double h, int m, unsigned long long seed) {
  require(N % 2 == 0, Error::Code::invalid_argument, "N must be even (keeps sites off 0)");
  LatticeModel model;
  model.d = d;
  model.N = N;
  model.m = m;
  model.h = h;
  model.name = "fourier";
  auto eng = make_engine(seed);
  model.a0 = random_hermitian(m, eng, 0.7) + 1.5 * identity(m);
  std::vector<Matrix> coeff;
  for (int j = 0; j < d; ++j) coeff.push_back(random_hermitian(m, eng, 0.5));
  double omega = 2.0 * kPi / (N * h);
  model.b = [coeff, omega, d, m](const RealVector& x) {
    Matrix out = Matrix::Zero(m, m);
    for (int j = 0; j < d; ++j) out += std::sin(omega * x[j]) * coeff[j];
    return out;
  };
  model.grad_b = [coeff, omega, d, m](const RealVector& x) {
    std::vector<Matrix> out(d);
    for (int j = 0; j < d; ++j) out[j] = omega * std::cos(omega * x[j]) * coeff[j];
    return out;
  };
  return model;
}

AssembledOperators assemble(const LatticeModel& model, int dim_cap) {
  CliffordRep cl = build_clifford(model.d);
  const int r = cl.r;
  const int m = model.m;
  const int grid = model.grid_size();
  const long long n_ll = static_cast<long long>(grid) * r * m;
  require(n_ll <= dim_cap, Error::Code::resource, "operator dimension exceeds the cap");
  const int n = static_cast<int>(n_ll);

  AssembledOperators ops;
  ops.clifford_ = cl;
  ops.grid_ = grid;
  ops.r_ = r;
  ops.m_ = m;
  ops.d_ = Matrix::Zero(n, n);
  ops.dstar_ = Matrix::Zero(n, n);

  // potential blocks (model.a, the undeformed A = a0 + b)
  for (int g = 0; g < grid; ++g) {
    Matrix a = model.a(model.point(g));
    require(hermiticity_defect(a) <= 1e-12, Error::Code::invalid_argument,
            "potential is not Hermitian at a grid point");
    for (int s = 0; s < r; ++s) {
      ops.d_.block((g * r + s) * m, (g * r + s) * m, m, m) += a;
      ops.dstar_.block((g * r + s) * m, (g * r + s) * m, m, m) += a;
    }
  }

  // kinetic part: i sum_j c_j (x) central periodic difference
  int stride = 1;
  for (int j = 0; j < model.d; ++j) {
    for (int g = 0; g < grid; ++g) {
      int k = (g / stride) % model.N;
      int gp = g + (((k + 1) % model.N) - k) * stride;
      int gm = g + (((k - 1 + model.N) % model.N) - k) * stride;
      for (int s = 0; s < r; ++s) {
        for (int s2 = 0; s2 < r; ++s2) {
          cplx cjs = cl.c[j](s, s2);
          if (cjs == cplx(0.0)) continue;
          cplx val = kI * cjs / (2.0 * model.h);
          for (int f = 0; f < m; ++f) {
            ops.d_((g * r + s) * m + f, (gp * r + s2) * m + f) += val;
            ops.d_((g * r + s) * m + f, (gm * r + s2) * m + f) -= val;
            ops.dstar_((g * r + s) * m + f, (gp * r + s2) * m + f) -= val;
            ops.dstar_((g * r + s) * m + f, (gm * r + s2) * m + f) += val;
          }
        }
      }
    }
    stride *= model.N;
  }

  double defect = (ops.dstar_ - ops.d_.adjoint()).norm() / std::max(1.0, ops.d_.norm());
  require(defect <= 1e-12, Error::Code::numeric, "independent adjoint assembly disagrees");

  // analytic gradient vs central differences of b, O(h^2) agreement; checked
  // away from the wrap seam since the model fields need not be box-periodic
  if (model.N >= 4) {
    double worst = 0.0;
    int checked = 0;
    int stride_j = 1;
    for (int j = 0; j < model.d && checked < 64; ++j) {
      for (int g = 0; g < grid && checked < 64; ++g) {
        int k = (g / stride_j) % model.N;
        if (k == 0 || k == model.N - 1) continue;
        RealVector x = model.point(g);
        Matrix fd = (model.b(model.point(g + stride_j)) - model.b(model.point(g - stride_j))) /
                    (2.0 * model.h);
        Matrix an = model.grad_b(x)[j];
        double scale = std::max(1.0, an.norm());
        worst = std::max(worst, (fd - an).norm() / scale);
        ++checked;
      }
      stride_j *= model.N;
    }
    // central differences are exact to O(h^2 |b'''|); generous envelope
    require(worst <= 10.0 * model.h * model.h + 1e-10, Error::Code::numeric,
            "analytic gradient is inconsistent with finite differences");
  }
  return ops;
}

namespace {

RealVector self_adjoint_spectrum(const Matrix& product) {
  Matrix sym = 0.5 * (product + product.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, Error::Code::numeric, "eigensolver failed");
  return es.eigenvalues();
}

}  // namespace

const RealVector& AssembledOperators::spectrum_dstar_d() const {
  if (spec_dstar_d_.size() == 0) spec_dstar_d_ = self_adjoint_spectrum(d_.adjoint() * d_);
  return spec_dstar_d_;
}

const RealVector& AssembledOperators::spectrum_d_dstar() const {
  if (spec_d_dstar_.size() == 0) spec_d_dstar_ = self_adjoint_spectrum(d_ * d_.adjoint());
  return spec_d_dstar_;
}

double heat_trace_diff(const AssembledOperators& ops, double t) {
  require(t > 0.0, Error::Code::invalid_argument, "heat trace needs t > 0");
  const RealVector& sp = ops.spectrum_dstar_d();
  const RealVector& sm = ops.spectrum_d_dstar();
  long double acc = 0.0L;
  for (Eigen::Index i = 0; i < sp.size(); ++i) acc += std::exp(-t * sp[i]);
  for (Eigen::Index i = 0; i < sm.size(); ++i) acc -= std::exp(-t * sm[i]);
  return static_cast<double>(acc);
}

double heat_trace_diff_iterated(const AssembledOperators& ops, double t) {
  require(t > 0.0, Error::Code::invalid_argument, "heat trace needs t > 0");
  require(ops.dim() <= 1024, Error::Code::resource,
          "iterated-trace diagnostic is restricted to small operators");
  auto heat = [&](const Matrix& product) {
    Matrix sym = 0.5 * (product + product.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    require(es.info() == Eigen::Success, Error::Code::numeric, "eigensolver failed");
    Matrix ex = Matrix::Zero(sym.rows(), sym.cols());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      ex += std::exp(-t * es.eigenvalues()[i]) *
            (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
    return ex;
  };
  Matrix k = heat(ops.d_op().adjoint() * ops.d_op()) - heat(ops.d_op() * ops.d_op().adjoint());
  // partial trace over the spinor factor, then the grid-fiber trace
  const int grid = ops.grid(), r = ops.spinor_dim(), m = ops.fiber_dim();
  Matrix partial = Matrix::Zero(grid * m, grid * m);
  for (int g = 0; g < grid; ++g)
    for (int g2 = 0; g2 < grid; ++g2)
      for (int f = 0; f < m; ++f)
        for (int f2 = 0; f2 < m; ++f2) {
          cplx sum = 0.0;
          for (int s = 0; s < r; ++s) sum += k((g * r + s) * m + f, (g2 * r + s) * m + f2);
          partial(g * m + f, g2 * m + f2) = sum;
        }
  return partial.trace().real();
}

double rhs_trace_formula(const LatticeModel& model, double t, const SimplexRule& rule) {
  require(t > 0.0, Error::Code::invalid_argument, "needs t > 0");
  require(rule.kind == SimplexRule::Kind::uniform, Error::Code::invalid_argument,
          "the trace formula uses the uniform simplex measure");
  require(rule.n == model.d - 1, Error::Code::shape, "simplex rule must have d slots");
  CliffordRep cl = build_clifford(model.d);
  const int r = cl.r, m = model.m, rm = r * m;
  const int grid = model.grid_size();
  const int d = model.d;

  cplx total = 0.0;
  std::vector<Matrix> proj(m);
  for (int g = 0; g < grid; ++g) {
    RealVector x = model.point(g);
    Matrix aphi = model.a_phi(x);
    std::vector<Matrix> grads = model.grad_a_phi(x);
    double gn = 0.0;
    for (const auto& gm_ : grads) gn += gm_.norm();
    if (gn < 1e-14) continue;

    Eigen::SelfAdjointEigenSolver<Matrix> es(aphi);
    require(es.info() == Eigen::Success, Error::Code::numeric, "fiber eigensolver failed");
    for (int i = 0; i < m; ++i) {
      Matrix vv = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      proj[i] = Eigen::kroneckerProduct(identity(r), vv).eval();
    }
    Matrix w = Matrix::Zero(rm, rm);
    for (int j = 0; j < d; ++j)
      w += kI * Eigen::kroneckerProduct(cl.c[j], grads[j]).eval();

    cplx site = 0.0;
    for (Eigen::Index q = 0; q < rule.weights.size(); ++q) {
      Matrix prod = identity(rm);
      for (int j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(rm, rm);
        for (int i = 0; i < m; ++i) {
          double lam = es.eigenvalues()[i];
          e += std::exp(-t * rule.nodes(q, j) * lam * lam) * proj[i];
        }
        prod = prod * w * e;
      }
      site += rule.weights[q] * prod.trace();
    }
    total += site;
  }
  total *= std::pow(model.h, d);
  double scale = std::abs(total) + 1e-300;
  require(std::abs(total.imag()) <= 1e-8 * scale, Error::Code::numeric,
          "trace-formula sum failed its realness budget");
  return (2.0 / d) * std::pow(4.0 * kPi, -0.5 * d) * std::pow(t, 0.5 * d) * total.real();
}

std::vector<FiberSample> fiber_samples(const LatticeModel& model) {
  std::vector<FiberSample> out;
  const int grid = model.grid_size();
  out.reserve(grid);
  double vol = std::pow(model.h, model.d);
  for (int g = 0; g < grid; ++g) {
    RealVector x = model.point(g);
    out.push_back({x, vol, model.a_phi(x), model.grad_a_phi(x)});
  }
  return out;
}

ModelShiftReport eta_and_xi_for_model(const LatticeModel& model,
                                      const std::vector<double>& t_grid, int dim_cap) {
  CliffordRep cl = build_clifford(model.d);
  ModelShiftReport rep;
  rep.eta = eta_callias(cl, fiber_samples(model));
  FractionalShift xi = xi_from_eta(rep.eta, model.d);
  FunctionalEquationConstants c = FunctionalEquationConstants::make(model.d);
  AssembledOperators ops = assemble(model, dim_cap);
  rep.t = t_grid;
  for (double t : t_grid) {
    rep.heat_lhs.push_back(heat_trace_diff(ops, t));
    rep.laplace_eta_rhs.push_back(c.laplace_factor * std::pow(t, 0.5 * model.d) *
                                  laplace(rep.eta, t).real());
    rep.minus_td_laplace_xi.push_back(-std::pow(t, double(model.d)) * xi.laplace(t));
  }
  return rep;
}

RealVector flat_kinetic_spectrum(int d, int N, double h, int m) {
  CliffordRep cl = build_clifford(d);
  int grid = 1;
  for (int j = 0; j < d; ++j) grid *= N;
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(grid) * cl.r * m);
  for (int g = 0; g < grid; ++g) {
    int rest = g;
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      int k = rest % N;
      rest /= N;
      double s = std::sin(2.0 * kPi * k / N) / h;
      sum += s * s;
    }
    for (int copy = 0; copy < cl.r * m; ++copy) vals.push_back(sum);
  }
  std::sort(vals.begin(), vals.end());
  RealVector out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out[static_cast<Eigen::Index>(i)] = vals[i];
  return out;
}

}  // namespace specshift
