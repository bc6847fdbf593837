#include "specshift/transform.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "specshift/errors.hpp"
#include "specshift/quadrature.hpp"
#include "specshift/specfun.hpp"
#include "specshift/ssf.hpp"

namespace specshift {

namespace {

constexpr double kRealnessTol = 1e-10;

// Panelwise integral of h over [lo, hi] with the left-edge substitution
// lambda = lo + w u^2, which absorbs half-integer (lambda-lo)^(s+1) edge
// behavior into polynomial powers of u.
double edge_panel_integral(const std::function<double(double)>& h, double lo, double hi,
                           const GaussRule& rule) {
  double w = hi - lo;
  if (w <= 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.x.size(); ++q) {
    double u = rule.x[q];
    sum += rule.w[q] * 2.0 * w * u * h(lo + w * u * u);
  }
  return sum;
}

// Split [lo, hi] into geometrically growing chunks (first chunk ~ scale) so
// wide smooth tails stay well resolved.
std::vector<double> geometric_chunks(double lo, double hi, double scale) {
  std::vector<double> cuts{lo};
  double width = std::max(scale, 1e-8);
  while (cuts.back() + width < hi) {
    cuts.push_back(cuts.back() + width);
    width *= 2.0;
  }
  cuts.push_back(hi);
  return cuts;
}

}  // namespace

FunctionalEquationConstants FunctionalEquationConstants::make(int d) {
  require(d >= 1 && d % 2 == 1, Error::Code::invalid_argument, "dimension must be odd and >= 1");
  FunctionalEquationConstants c;
  c.d = d;
  c.k = (d - 1) / 2;
  c.c_d = std::tgamma(c.k + 1.0) / (std::pow(kPi, 0.5 * (d + 1)) * std::tgamma(double(d)));
  c.halfpower = 0.5 * d - 1.0;
  c.corollary = (1.0 / kPi) * std::pow(4.0 * kPi, -double(c.k));
  c.laplace_factor = 2.0 * std::pow(4.0 * kPi, -0.5 * d);
  return c;
}

cplx laplace(const SpectralShiftDensity& density, double t) {
  return density.integral_against_exp(t);
}

FractionalShift::FractionalShift(SpectralShiftDensity base, double s, double prefactor)
    : base_(std::move(base)), s_(s), prefactor_(prefactor) {
  require(s_ > -1.0, Error::Code::invalid_argument, "weight power must exceed -1");
  double l1 = base_.l1_norm();
  if (l1 > 0.0) {
    require(base_.imag_l1() <= kRealnessTol * l1, Error::Code::numeric,
            "fractional integral of a non-real density");
  }
  require(base_.is_zero() || base_.support_min() >= -1e-12, Error::Code::hypothesis_not_met,
          "density must be supported in [0, inf)");
  edges_ = base_.breakpoints();
  for (const auto& at : base_.atoms()) edges_.push_back(at.location);
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

double FractionalShift::ac_value(double lambda) const {
  double sum = 0.0;
  const auto& bp = base_.breakpoints();
  const auto& pieces = base_.pieces();
  for (size_t p = 0; p < pieces.size(); ++p) {
    double a = bp[p];
    if (lambda <= a) break;
    double b = bp[p + 1];
    double u1 = std::min(1.0, (b - a) / (lambda - a));
    for (size_t k = 0; k < pieces[p].size(); ++k) {
      double c = pieces[p][k].real();
      if (c == 0.0) continue;
      double kk = static_cast<double>(k);
      sum += c * std::pow(lambda - a, s_ + kk + 1.0) * inc_beta(kk + 1.0, s_ + 1.0, u1);
    }
  }
  return sum;
}

double FractionalShift::atom_value(double lambda) const {
  double sum = 0.0;
  for (const auto& at : base_.atoms()) {
    if (lambda > at.location) sum += at.mass.real() * std::pow(lambda - at.location, s_);
  }
  return sum;
}

double FractionalShift::operator()(double lambda) const {
  if (lambda <= 0.0) return 0.0;
  return prefactor_ * (ac_value(lambda) + atom_value(lambda));
}

double FractionalShift::integral(double upper) const {
  if (upper <= 0.0 || base_.is_zero()) return 0.0;
  double sum = 0.0;
  // atoms: Int_loc^upper (lambda-loc)^s dlambda exactly
  for (const auto& at : base_.atoms()) {
    if (upper > at.location)
      sum += at.mass.real() * std::pow(upper - at.location, s_ + 1.0) / (s_ + 1.0);
  }
  // a.c. part: panels between edges, analytic after the u^2 substitution
  if (base_.pieces().empty()) return prefactor_ * sum;
  static const GaussRule rule = gauss_legendre01(24);
  auto h = [&](double lam) { return ac_value(lam); };
  double lo = std::max(0.0, base_.breakpoints().front());
  std::vector<double> cuts{lo};
  for (double e : edges_)
    if (e > lo && e < upper) cuts.push_back(e);
  cuts.push_back(std::max(upper, lo));
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double span = cuts[i + 1] - cuts[i];
    if (span <= 0.0) continue;
    double scale = std::max(1e-8, 0.25 * (edges_.back() - edges_.front()));
    if (span <= 4.0 * scale) {
      sum += edge_panel_integral(h, cuts[i], cuts[i + 1], rule);
    } else {
      std::vector<double> sub = geometric_chunks(cuts[i], cuts[i + 1], scale);
      for (size_t j = 0; j + 1 < sub.size(); ++j)
        sum += edge_panel_integral(h, sub[j], sub[j + 1], rule);
    }
  }
  return prefactor_ * sum;
}

double FractionalShift::laplace(double t) const {
  require(t > 0.0, Error::Code::invalid_argument, "laplace needs t > 0");
  if (base_.is_zero()) return 0.0;
  double sum = 0.0;
  for (const auto& at : base_.atoms()) {
    // Int_loc^inf e^(-t lambda) (lambda-loc)^s dlambda = e^(-t loc) Gamma(s+1) t^(-s-1)
    sum += at.mass.real() * std::exp(-t * at.location) * std::tgamma(s_ + 1.0) *
           std::pow(t, -s_ - 1.0);
  }
  static const GaussRule rule = gauss_legendre01(24);
  auto h = [&](double lam) { return std::exp(-t * lam) * ac_value(lam); };
  if (!base_.pieces().empty()) {
    double lo = base_.breakpoints().front();
    double hi = base_.breakpoints().back();
    double cutoff = hi + 40.0 / t;
    std::vector<double> cuts{std::max(0.0, lo)};
    for (double e : edges_)
      if (e > cuts.front() && e <= hi) cuts.push_back(e);
    double scale = std::max(1e-8, std::min(0.25 * (hi - cuts.front()), 1.0 / t));
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      sum += edge_panel_integral(h, cuts[i], cuts[i + 1], rule);
    std::vector<double> tail = geometric_chunks(hi, cutoff, scale);
    for (size_t j = 0; j + 1 < tail.size(); ++j)
      sum += edge_panel_integral(h, tail[j], tail[j + 1], rule);
  }
  return prefactor_ * sum;
}

FractionalShift xi_from_eta(const SpectralShiftDensity& eta, int d) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  return FractionalShift(eta, c.halfpower, -c.c_d);
}

FractionalShift xi_k_from_eta(const SpectralShiftDensity& eta, int d) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  return FractionalShift(eta, -0.5, -c.corollary);
}

FractionalShift xi_dminus1_from_eta(const SpectralShiftDensity& eta, int d,
                                    double smoothness_tol) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  require(eta.atoms().empty(), Error::Code::hypothesis_not_met,
          "the order-(d-1) formula needs an atom-free density");
  for (int j = 0; j + 1 <= c.k; ++j) {
    require(eta.max_interior_jump(j) <= smoothness_tol, Error::Code::hypothesis_not_met,
            "density is not smooth enough for the order-(d-1) formula");
  }
  // eta^(j)(0+) = 0 for j <= (d-3)/2; trivial when the support starts above 0
  if (!eta.pieces().empty() && eta.breakpoints().front() <= 0.0) {
    for (int j = 0; j <= (d - 3) / 2; ++j) {
      double v = std::abs(eta.ac_derivative_value(
          j, eta.breakpoints().front() + 1e-300));
      require(v <= smoothness_tol, Error::Code::hypothesis_not_met,
              "density does not vanish to the required order at 0");
    }
  }
  SpectralShiftDensity der = eta;
  for (int j = 0; j < c.k; ++j) der = der.ac_derivative();
  return FractionalShift(std::move(der), -0.5, -c.corollary);
}

double functional_equation_gap(const SpectralShiftDensity& eta, int d, double t) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  FractionalShift xi = xi_from_eta(eta, d);
  double lhs = xi.laplace(t);
  double rhs = -c.laplace_factor * std::pow(t, -0.5 * d) * laplace(eta, t).real();
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / scale;
}

double abel_integral(const std::function<double(double)>& g, double power, double lambda,
                     int order) {
  require(power > -1.0, Error::Code::invalid_argument, "weight power must exceed -1");
  if (lambda <= 0.0) return 0.0;
  // mu = lambda u; weight (1-u)^power at the right endpoint
  GaussRule rule = gauss_jacobi01(order, 0.0, power);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.x.size(); ++q) sum += rule.w[q] * g(lambda * rule.x[q]);
  return std::pow(lambda, power + 1.0) * sum;
}

namespace {

// Geometric-sequence extrapolation (Aitken delta^2) with a flat-sequence guard.
std::vector<double> aitken_extrapolants(const std::vector<double>& a) {
  std::vector<double> out;
  for (size_t j = 0; j + 2 < a.size(); ++j) {
    double d1 = a[j + 1] - a[j];
    double d2 = a[j + 2] - a[j + 1];
    double denom = d2 - d1;
    double scale = std::max({std::abs(a[j]), std::abs(a[j + 1]), std::abs(a[j + 2]), 1.0});
    if (std::abs(denom) <= 1e-14 * scale) {
      out.push_back(a[j + 2]);
    } else {
      out.push_back(a[j + 2] - d2 * d2 / denom);
    }
  }
  return out;
}

}  // namespace

HeatLimitReport heat_limit(const std::function<double(double)>& xi_cumulative,
                           const std::vector<double>& t_grid, int laguerre_order) {
  require(t_grid.size() >= 3, Error::Code::invalid_argument, "need at least three t values");
  for (size_t i = 1; i < t_grid.size(); ++i)
    require(t_grid[i] > t_grid[i - 1] && t_grid[i - 1] > 0.0, Error::Code::invalid_argument,
            "t grid must be positive ascending");
  GaussRule lag = gauss_laguerre(laguerre_order, 1.0);  // weight nu e^(-nu), mass 1
  HeatLimitReport rep;
  rep.t = t_grid;
  for (double t : t_grid) {
    double f = 0.0;
    for (Eigen::Index q = 0; q < lag.x.size(); ++q) {
      double w = lag.x[q] / t;
      f -= lag.w[q] * xi_cumulative(w) / w;
    }
    rep.value.push_back(f);
  }
  std::vector<double> ex = aitken_extrapolants(rep.value);
  if (ex.empty()) {
    rep.limit = rep.value.back();
    rep.converged = false;
  } else {
    rep.limit = ex.back();
    double prev = ex.size() >= 2 ? ex[ex.size() - 2] : rep.value.back();
    rep.converged = std::abs(rep.limit - prev) <= 1e-3 * std::max(std::abs(rep.limit), 1.0);
  }
  return rep;
}

HeatLimitReport heat_limit(const FractionalShift& xi_dminus1, const std::vector<double>& t_grid) {
  return heat_limit([&](double w) { return xi_dminus1.integral(w); }, t_grid);
}

LebesgueReport lebesgue_point_right(const std::function<double(double)>& g, double h0, int levels,
                                    double rel_tol) {
  require(h0 > 0.0 && levels >= 3, Error::Code::invalid_argument,
          "need h0 > 0 and at least three levels");
  static const GaussRule rule = gauss_legendre01(32);
  std::vector<double> h(levels);
  for (int j = 0; j < levels; ++j) h[j] = h0 * std::pow(2.0, -j);
  // cumulative integrals, innermost panel first
  std::vector<double> integral(levels);
  auto panel = [&](double a, double b) {
    double s = 0.0;
    for (Eigen::Index q = 0; q < rule.x.size(); ++q)
      s += (b - a) * rule.w[q] * g(a + (b - a) * rule.x[q]);
    return s;
  };
  integral[levels - 1] = panel(0.0, h[levels - 1]);
  for (int j = levels - 2; j >= 0; --j) integral[j] = integral[j + 1] + panel(h[j + 1], h[j]);

  LebesgueReport rep;
  rep.h = h;
  for (int j = 0; j < levels; ++j) rep.average.push_back(integral[j] / h[j]);
  rep.extrapolant = aitken_extrapolants(rep.average);
  if (rep.extrapolant.empty()) {
    rep.value = rep.average.back();
    rep.converged = false;
  } else {
    rep.value = rep.extrapolant.back();
    double prev = rep.extrapolant.size() >= 2 ? rep.extrapolant[rep.extrapolant.size() - 2]
                                              : rep.average.back();
    rep.converged = std::abs(rep.value - prev) <= rel_tol * std::max(std::abs(rep.value), 1.0);
  }
  return rep;
}

namespace {

WittenReport witten_common(const std::function<double(double)>& eta_k_eval,
                           const FractionalShift& xi_dm1, int d, double h0, double agree_tol) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  WittenReport rep;
  rep.lebesgue = lebesgue_point_right([&](double u) { return u * eta_k_eval(u * u); }, h0);
  if (!rep.lebesgue.converged) {
    throw_error(Error::Code::no_limit, "no Lebesgue point at 0 for u eta^(k)(u^2)");
  }
  rep.lebesgue_value = rep.lebesgue.value;
  rep.index = std::pow(4.0 * kPi, -double(c.k)) * rep.lebesgue_value;
  LebesgueReport edge = lebesgue_point_right([&](double lam) { return xi_dm1(lam); }, h0);
  rep.xi_dminus1_at_zero = edge.value;
  rep.route_gap =
      std::abs(rep.index - (-rep.xi_dminus1_at_zero)) / std::max(1.0, std::abs(rep.index));
  rep.routes_agree = rep.route_gap <= agree_tol;
  return rep;
}

}  // namespace

WittenReport witten_index(const SpectralShiftDensity& eta, int d, double h0, double agree_tol) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  FractionalShift xi_dm1 = xi_dminus1_from_eta(eta, d);
  auto eta_k = [&eta, k = c.k](double mu) { return eta.ac_derivative_value(k, mu).real(); };
  return witten_common(eta_k, xi_dm1, d, h0, agree_tol);
}

WittenReport witten_index_from_derivative(const std::function<double(double)>& eta_k, int d,
                                          double mu_power_at_zero, double h0, double agree_tol) {
  FunctionalEquationConstants c = FunctionalEquationConstants::make(d);
  require(mu_power_at_zero > -1.0, Error::Code::invalid_argument,
          "leading power must exceed -1");
  // xi^(d-1)(lambda) = -(1/pi)(4 pi)^(-k) Int_0^lambda (lambda-mu)^(-1/2) eta^(k)(mu) dmu.
  // With mu = lambda u the integral is sqrt(lambda) Int_0^1 (1-u)^(-1/2) eta^(k)(lambda u) du;
  // both endpoint powers are folded into one Jacobi rule, the evaluand divided
  // by u^p so it stays analytic.
  GaussRule rule = gauss_jacobi01(48, mu_power_at_zero, -0.5);
  auto xi_eval = [&, rule, c](double lambda) {
    if (lambda <= 0.0) return 0.0;
    double sum = 0.0;
    for (Eigen::Index q = 0; q < rule.x.size(); ++q) {
      double u = rule.x[q];
      sum += rule.w[q] * eta_k(lambda * u) * std::pow(u, -mu_power_at_zero);
    }
    return -c.corollary * std::sqrt(lambda) * sum;
  };
  WittenReport rep;
  rep.lebesgue = lebesgue_point_right([&](double u) { return u * eta_k(u * u); }, h0);
  if (!rep.lebesgue.converged) {
    throw_error(Error::Code::no_limit, "no Lebesgue point at 0 for u eta^(k)(u^2)");
  }
  rep.lebesgue_value = rep.lebesgue.value;
  rep.index = std::pow(4.0 * kPi, -double(c.k)) * rep.lebesgue_value;
  LebesgueReport edge = lebesgue_point_right(xi_eval, h0);
  rep.xi_dminus1_at_zero = edge.value;
  rep.route_gap =
      std::abs(rep.index - (-rep.xi_dminus1_at_zero)) / std::max(1.0, std::abs(rep.index));
  rep.routes_agree = rep.route_gap <= agree_tol;
  return rep;
}

int fredholm_index(const Matrix& d_op, double rel_threshold) {
  require(d_op.rows() >= 1 && d_op.cols() >= 1, Error::Code::shape, "empty operator");
  Eigen::JacobiSVD<Matrix> svd(d_op);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  double cut = rel_threshold * std::max(smax, 1e-300);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cut) ++rank;
  int ker = static_cast<int>(d_op.cols()) - rank;
  int coker = static_cast<int>(d_op.rows()) - rank;
  return ker - coker;
}

namespace {

struct StepFunction {
  std::vector<double> cuts;    // size n+1
  std::vector<double> values;  // size n
  double operator()(double x) const {
    if (cuts.empty() || x < cuts.front() || x >= cuts.back()) return 0.0;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
    size_t p = static_cast<size_t>(it - cuts.begin()) - 1;
    if (p >= values.size()) p = values.size() - 1;
    return values[p];
  }
};

StepFunction step_from_density(const SpectralShiftDensity& d) {
  StepFunction s;
  s.cuts = d.breakpoints();
  for (const auto& piece : d.pieces()) {
    require(piece.size() == 1, Error::Code::shape, "expected a piecewise constant density");
    s.values.push_back(piece[0].real());
  }
  return s;
}

}  // namespace

D1CompatReport check_d1_compatibility(const HermitianOperator& a_plus,
                                      const HermitianOperator& a_minus,
                                      const std::vector<double>& lambda_grid) {
  SpectralShiftDensity kappa_density = krein_ssf(a_plus, a_minus);
  StepFunction kappa = step_from_density(kappa_density);

  // symmetrized eta on mu > 0 is constant between squares of kappa cuts
  std::vector<double> mu_cuts{0.0};
  for (double c : kappa.cuts) mu_cuts.push_back(c * c);
  std::sort(mu_cuts.begin(), mu_cuts.end());
  mu_cuts.erase(std::unique(mu_cuts.begin(), mu_cuts.end()), mu_cuts.end());
  std::vector<double> eta_sym;  // value of (kappa(sqrt mu)+kappa(-sqrt mu))/2
  for (size_t p = 0; p + 1 < mu_cuts.size(); ++p) {
    double mid = 0.5 * (mu_cuts[p] + mu_cuts[p + 1]);
    double root = std::sqrt(mid);
    eta_sym.push_back(0.5 * (kappa(root) + kappa(-root)));
  }

  D1CompatReport rep;
  rep.lambda = lambda_grid;
  for (double lam : lambda_grid) {
    require(lam > 0.0, Error::Code::invalid_argument, "lambda grid must be positive");
    // route 1: -(1/pi) Int_0^lam (lam-mu)^(-1/2) mu^(-1/2) eta_sym-steps dmu,
    // each step integrating to 2[asin sqrt(b/lam) - asin sqrt(a/lam)]
    double r1 = 0.0;
    for (size_t p = 0; p + 1 < mu_cuts.size(); ++p) {
      double a = mu_cuts[p], b = std::min(mu_cuts[p + 1], lam);
      if (b <= a) continue;
      double seg = std::asin(std::sqrt(std::min(1.0, b / lam))) -
                   std::asin(std::sqrt(std::min(1.0, a / lam)));
      r1 += eta_sym[p] * seg;
    }
    // eta carries mu^(-1/2)/2 (the 1/2 lives in eta_sym) and each step
    // integrates (lam-mu)^(-1/2) mu^(-1/2) to 2 seg
    r1 *= -2.0 / kPi;
    // route 2: -(1/pi) Int_(-sqrt lam)^(sqrt lam) (lam-mu^2)^(-1/2) kappa(mu) dmu,
    // mu = sqrt(lam) sin t turning each kappa step into a t-length
    double root = std::sqrt(lam);
    double r2 = 0.0;
    for (size_t p = 0; p + 1 < kappa.cuts.size(); ++p) {
      double a = std::max(kappa.cuts[p], -root);
      double b = std::min(kappa.cuts[p + 1], root);
      if (b <= a) continue;
      r2 += kappa.values[p] * (std::asin(b / root) - std::asin(a / root));
    }
    r2 *= -(1.0 / kPi);
    rep.via_symmetrized_eta.push_back(r1);
    rep.via_kappa_substitution.push_back(r2);
    rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(r1 - r2));
  }
  return rep;
}

}  // namespace specshift
