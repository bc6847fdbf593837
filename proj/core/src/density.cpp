#include "specshift/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "specshift/errors.hpp"
#include "specshift/quadrature.hpp"
#include "specshift/specfun.hpp"

namespace specshift {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

cplx poly_eval(const std::vector<cplx>& c, double y) {
  cplx v = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) v = v * y + c[j];
  return v;
}

cplx poly_deriv_eval(const std::vector<cplx>& c, int k, double y) {
  cplx v = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) {
    double fall = 1.0;
    for (int i = 0; i < k; ++i) fall *= (j - i);
    v = v * y + c[j] * fall;
  }
  return v;
}

// Recenter sum c_k (x-a)^k as sum c'_j (x-u)^j, exact binomial shift.
std::vector<cplx> poly_shift(const std::vector<cplx>& c, double delta) {
  // delta = u - a
  const int m = static_cast<int>(c.size());
  std::vector<cplx> out(m, cplx(0.0));
  for (int k = 0; k < m; ++k) {
    double pow_d = 1.0;
    for (int j = k; j >= 0; --j) {
      // contribution c_k * C(k, j) delta^(k-j) to out[j]
      out[j] += c[k] * binom(k, j) * pow_d;
      pow_d *= delta;
    }
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr double kRealnessTol = 1e-10;

}  // namespace

SpectralShiftDensity::SpectralShiftDensity(std::vector<double> breakpoints,
                                           std::vector<std::vector<cplx>> pieces,
                                           std::vector<Atom> atoms)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  validate();
}

void SpectralShiftDensity::validate() const {
  if (breakpoints_.empty()) {
    require(pieces_.empty(), Error::Code::shape, "pieces without breakpoints");
  } else {
    require(breakpoints_.size() >= 2, Error::Code::shape, "need >= 2 breakpoints");
    require(pieces_.size() == breakpoints_.size() - 1, Error::Code::shape,
            "piece count must be breakpoints-1");
    for (size_t i = 1; i < breakpoints_.size(); ++i)
      require(breakpoints_[i] > breakpoints_[i - 1], Error::Code::shape,
              "breakpoints must be strictly increasing");
  }
}

SpectralShiftDensity SpectralShiftDensity::atom(double location, cplx mass) {
  SpectralShiftDensity d;
  d.atoms_.push_back({location, mass});
  return d;
}

SpectralShiftDensity SpectralShiftDensity::piecewise_constant(std::vector<double> breakpoints,
                                                              std::vector<cplx> values) {
  std::vector<std::vector<cplx>> pieces;
  pieces.reserve(values.size());
  for (cplx v : values) pieces.push_back({v});
  return SpectralShiftDensity(std::move(breakpoints), std::move(pieces), {});
}

cplx SpectralShiftDensity::operator()(double x) const {
  if (breakpoints_.empty()) return 0.0;
  if (x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  size_t p = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  if (p >= pieces_.size()) p = pieces_.size() - 1;
  return poly_eval(pieces_[p], x - breakpoints_[p]);
}

cplx SpectralShiftDensity::moment(int k) const {
  cplx sum = 0.0;
  for (size_t p = 0; p < pieces_.size(); ++p) {
    double a = breakpoints_[p], b = breakpoints_[p + 1];
    double w = b - a;
    // int_a^b (x-a)^j x^k dx with x^k = sum_i C(k,i) a^(k-i) (x-a)^i
    for (size_t j = 0; j < pieces_[p].size(); ++j) {
      double integral = 0.0;
      for (int i = 0; i <= k; ++i) {
        double a_pow = (k - i == 0) ? 1.0 : std::pow(a, k - i);
        integral += binom(k, i) * a_pow * std::pow(w, static_cast<double>(j) + i + 1) /
                    (static_cast<double>(j) + i + 1);
      }
      sum += pieces_[p][j] * integral;
    }
  }
  for (const auto& at : atoms_) sum += at.mass * std::pow(at.location, k);
  return sum;
}

cplx SpectralShiftDensity::total_mass() const { return moment(0); }

double SpectralShiftDensity::l1_norm() const {
  double sum = 0.0;
  static const GaussRule rule = gauss_legendre01(24);
  for (size_t p = 0; p < pieces_.size(); ++p) {
    double a = breakpoints_[p], w = breakpoints_[p + 1] - a;
    for (Eigen::Index q = 0; q < rule.x.size(); ++q)
      sum += w * rule.w[q] * std::abs(poly_eval(pieces_[p], w * rule.x[q]));
  }
  for (const auto& at : atoms_) sum += std::abs(at.mass);
  return sum;
}

double SpectralShiftDensity::imag_l1() const {
  double sum = 0.0;
  static const GaussRule rule = gauss_legendre01(24);
  for (size_t p = 0; p < pieces_.size(); ++p) {
    double a = breakpoints_[p], w = breakpoints_[p + 1] - a;
    for (Eigen::Index q = 0; q < rule.x.size(); ++q)
      sum += w * rule.w[q] * std::abs(poly_eval(pieces_[p], w * rule.x[q]).imag());
  }
  for (const auto& at : atoms_) sum += std::abs(at.mass.imag());
  return sum;
}

cplx SpectralShiftDensity::integral_against_exp(double t) const {
  require(t > 0.0, Error::Code::invalid_argument, "integral_against_exp needs t > 0");
  cplx sum = 0.0;
  for (size_t p = 0; p < pieces_.size(); ++p) {
    double a = breakpoints_[p], w = breakpoints_[p + 1] - a;
    // int_a^b (x-a)^j e^(-t x) dx = e^(-t a) j! t^(-j-1) P(j+1, t w)
    double ea = std::exp(-t * a);
    for (size_t j = 0; j < pieces_[p].size(); ++j) {
      double jj = static_cast<double>(j);
      double val = ea * factorial(static_cast<int>(j)) * std::pow(t, -jj - 1.0) *
                   lower_gamma_regularized(jj + 1.0, t * w);
      sum += pieces_[p][j] * val;
    }
  }
  for (const auto& at : atoms_) sum += at.mass * std::exp(-t * at.location);
  return sum;
}

cplx SpectralShiftDensity::pair_with_derivative(const ScalarFunctionFamily& f, int n) const {
  require(n >= 0, Error::Code::invalid_argument, "derivative order must be >= 0");
  require(n <= f.max_order(), Error::Code::capability,
          "pairing derivative order exceeds the family's cap");
  using Kind = ScalarFunctionFamily::Kind;
  switch (f.kind()) {
    case Kind::exponential: {
      double t = f.param();
      return f.derivative(n, 0.0) * integral_against_exp(t);
    }
    case Kind::monomial:
    case Kind::polynomial: {
      ScalarFunctionFamily g = f.derivative_family(n);
      int deg = g.poly_degree();
      cplx sum = 0.0;
      for (int k = 0; k <= deg; ++k) sum += (g.derivative(k, 0.0) / factorial(k)) * moment(k);
      return sum;
    }
    case Kind::gaussian_tail: {
      double t = f.param();
      cplx pref = std::pow(-t, n);  // f^(n) = (-t)^n e^(-tx) on x >= 0 (scale folded below)
      cplx sum = 0.0;
      double scale = f.derivative(0, 0.0);  // scale * (-t)^offset
      static const GaussRule rule = gauss_legendre01(32);
      for (size_t p = 0; p < pieces_.size(); ++p) {
        double a = breakpoints_[p], b = breakpoints_[p + 1];
        // exponential closed form on [max(a,0), b], quadrature below 0
        if (a < 0.0) {
          double hi = std::min(b, 0.0);
          for (Eigen::Index q = 0; q < rule.x.size(); ++q) {
            double x = a + (hi - a) * rule.x[q];
            sum += (hi - a) * rule.w[q] * f.derivative(n, x) * poly_eval(pieces_[p], x - a);
          }
        }
        double lo = std::max(a, 0.0);
        if (b > lo) {
          double ea = std::exp(-t * lo);
          std::vector<cplx> shifted = poly_shift(pieces_[p], lo - a);
          for (size_t j = 0; j < shifted.size(); ++j) {
            double jj = static_cast<double>(j);
            double val = ea * factorial(static_cast<int>(j)) * std::pow(t, -jj - 1.0) *
                         lower_gamma_regularized(jj + 1.0, t * (b - lo));
            sum += scale * pref * shifted[j] * val;
          }
        }
      }
      for (const auto& at : atoms_) sum += at.mass * f.derivative(n, at.location);
      return sum;
    }
  }
  throw_error(Error::Code::invalid_argument, "unknown function kind");
}

double SpectralShiftDensity::support_min() const {
  double v = std::numeric_limits<double>::infinity();
  if (!breakpoints_.empty()) v = std::min(v, breakpoints_.front());
  if (!atoms_.empty()) v = std::min(v, atoms_.front().location);
  return v;
}

double SpectralShiftDensity::support_max() const {
  double v = -std::numeric_limits<double>::infinity();
  if (!breakpoints_.empty()) v = std::max(v, breakpoints_.back());
  if (!atoms_.empty()) v = std::max(v, atoms_.back().location);
  return v;
}

SpectralShiftDensity SpectralShiftDensity::ac_derivative() const {
  require(atoms_.empty(), Error::Code::hypothesis_not_met,
          "ac_derivative is undefined in the presence of atoms");
  SpectralShiftDensity out;
  out.breakpoints_ = breakpoints_;
  out.pieces_.reserve(pieces_.size());
  for (const auto& c : pieces_) {
    std::vector<cplx> d;
    for (size_t j = 1; j < c.size(); ++j) d.push_back(static_cast<double>(j) * c[j]);
    if (d.empty()) d.push_back(cplx(0.0));
    out.pieces_.push_back(std::move(d));
  }
  return out;
}

cplx SpectralShiftDensity::ac_derivative_value(int k, double x) const {
  if (breakpoints_.empty()) return 0.0;
  if (x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  size_t p = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  if (p >= pieces_.size()) p = pieces_.size() - 1;
  return poly_deriv_eval(pieces_[p], k, x - breakpoints_[p]);
}

double SpectralShiftDensity::max_interior_jump(int j) const {
  double worst = 0.0;
  for (size_t p = 0; p + 1 < pieces_.size(); ++p) {
    double a = breakpoints_[p], b = breakpoints_[p + 1];
    cplx left = poly_deriv_eval(pieces_[p], j, b - a);
    cplx right = poly_deriv_eval(pieces_[p + 1], j, 0.0);
    worst = std::max(worst, std::abs(left - right));
  }
  return worst;
}

void SpectralShiftDensity::scale(cplx weight) {
  for (auto& piece : pieces_)
    for (auto& c : piece) c *= weight;
  for (auto& at : atoms_) at.mass *= weight;
}

void SpectralShiftDensity::add_scaled(const SpectralShiftDensity& other, cplx weight) {
  // union of breakpoints
  std::vector<double> grid;
  grid.reserve(breakpoints_.size() + other.breakpoints_.size());
  grid.insert(grid.end(), breakpoints_.begin(), breakpoints_.end());
  grid.insert(grid.end(), other.breakpoints_.begin(), other.breakpoints_.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::vector<cplx>> pieces;
  if (grid.size() >= 2) {
    pieces.resize(grid.size() - 1);
    for (size_t p = 0; p + 1 < grid.size(); ++p) {
      double u = grid[p];
      std::vector<cplx> acc{cplx(0.0)};
      auto accumulate = [&](const SpectralShiftDensity& src, cplx w) {
        if (src.breakpoints_.empty()) return;
        if (u < src.breakpoints_.front() || u >= src.breakpoints_.back()) return;
        auto it = std::upper_bound(src.breakpoints_.begin(), src.breakpoints_.end(), u);
        size_t sp = static_cast<size_t>(it - src.breakpoints_.begin()) - 1;
        std::vector<cplx> shifted = poly_shift(src.pieces_[sp], u - src.breakpoints_[sp]);
        if (shifted.size() > acc.size()) acc.resize(shifted.size(), cplx(0.0));
        for (size_t j = 0; j < shifted.size(); ++j) acc[j] += w * shifted[j];
      };
      accumulate(*this, 1.0);
      accumulate(other, weight);
      pieces[p] = std::move(acc);
    }
  }
  // merge atoms at identical locations
  std::map<double, cplx> atom_map;
  for (const auto& at : atoms_) atom_map[at.location] += at.mass;
  for (const auto& at : other.atoms_) atom_map[at.location] += weight * at.mass;
  std::vector<Atom> atoms;
  for (const auto& [loc, mass] : atom_map)
    if (std::abs(mass) > 0.0) atoms.push_back({loc, mass});

  breakpoints_ = std::move(grid);
  if (breakpoints_.size() < 2) breakpoints_.clear();
  pieces_ = std::move(pieces);
  atoms_ = std::move(atoms);
}

void SpectralShiftDensity::compactify(double relative_merge_tol) {
  if (pieces_.empty()) return;
  // drop identically-zero leading/trailing pieces
  auto piece_zero = [&](size_t p) {
    for (const auto& c : pieces_[p])
      if (std::abs(c) != 0.0) return false;
    return true;
  };
  size_t lo = 0, hi = pieces_.size();
  while (lo < hi && piece_zero(lo)) ++lo;
  while (hi > lo && piece_zero(hi - 1)) --hi;
  if (lo == hi) {
    breakpoints_.clear();
    pieces_.clear();
    return;
  }
  std::vector<double> bp(breakpoints_.begin() + lo, breakpoints_.begin() + hi + 1);
  std::vector<std::vector<cplx>> pc(pieces_.begin() + lo, pieces_.begin() + hi);

  // merge adjacent pieces that continue the same polynomial
  std::vector<double> nbp{bp.front()};
  std::vector<std::vector<cplx>> npc;
  std::vector<cplx> cur = pc.front();
  for (size_t p = 1; p < pc.size(); ++p) {
    std::vector<cplx> cont = poly_shift(cur, bp[p] - nbp.back());
    bool same = cont.size() >= pc[p].size();
    if (same) {
      for (size_t j = 0; j < cont.size() && same; ++j) {
        cplx a = cont[j];
        cplx b = j < pc[p].size() ? pc[p][j] : cplx(0.0);
        double mag = std::max(std::abs(a), std::abs(b));
        if (std::abs(a - b) > relative_merge_tol * std::max(mag, 1.0)) same = false;
      }
    }
    if (!same) {
      nbp.push_back(bp[p]);
      npc.push_back(cur);
      cur = pc[p];
    }
  }
  nbp.push_back(bp.back());
  npc.push_back(cur);
  breakpoints_ = std::move(nbp);
  pieces_ = std::move(npc);
}

std::string SpectralShiftDensity::to_json(int indent) const {
  double l1 = l1_norm();
  double residue = imag_l1();
  require(residue <= kRealnessTol * std::max(l1, 1e-300) || residue == 0.0, Error::Code::numeric,
          "density has a non-negligible imaginary part; refusing to serialize");
  std::ostringstream os;
  std::string pad(indent, ' ');
  os << "{\n";
  os << pad << "\"type\": \"spectral_shift_density\",\n";
  os << pad << "\"breakpoints\": [";
  for (size_t i = 0; i < breakpoints_.size(); ++i)
    os << (i ? ", " : "") << fmt17(breakpoints_[i]);
  os << "],\n";
  os << pad << "\"pieces\": [";
  for (size_t p = 0; p < pieces_.size(); ++p) {
    os << (p ? ", " : "") << "[";
    for (size_t j = 0; j < pieces_[p].size(); ++j)
      os << (j ? ", " : "") << fmt17(pieces_[p][j].real());
    os << "]";
  }
  os << "],\n";
  os << pad << "\"atoms\": [";
  for (size_t i = 0; i < atoms_.size(); ++i) {
    os << (i ? ", " : "") << "[" << fmt17(atoms_[i].location) << ", "
       << fmt17(atoms_[i].mass.real()) << "]";
  }
  os << "]\n}";
  return os.str();
}

SpectralShiftDensity SpectralShiftDensity::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  require(j.value("type", "") == std::string("spectral_shift_density"),
          Error::Code::invalid_argument, "not a spectral_shift_density JSON object");
  SpectralShiftDensity d;
  for (const auto& b : j.at("breakpoints")) d.breakpoints_.push_back(b.get<double>());
  for (const auto& piece : j.at("pieces")) {
    std::vector<cplx> c;
    for (const auto& v : piece) c.push_back(cplx(v.get<double>(), 0.0));
    d.pieces_.push_back(std::move(c));
  }
  for (const auto& a : j.at("atoms")) {
    d.atoms_.push_back({a.at(0).get<double>(), cplx(a.at(1).get<double>(), 0.0)});
  }
  d.validate();
  return d;
}

SpectralShiftDensity bspline_density(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  require(n >= 1, Error::Code::invalid_argument,
          "bspline_density needs n >= 1 (order 0 has no density)");
  std::vector<double> t(nodes);
  std::sort(t.begin(), t.end());
  const double inv_nfact = 1.0 / factorial(n);
  if (t.front() == t.back()) return SpectralShiftDensity::atom(t.front(), inv_nfact);

  std::vector<double> bp;
  for (double v : t)
    if (bp.empty() || v != bp.back()) bp.push_back(v);

  std::vector<std::vector<cplx>> pieces(bp.size() - 1);
  for (size_t p = 0; p + 1 < bp.size(); ++p) {
    double u = bp[p], u1 = bp[p + 1];
    // Cox-de Boor on polynomial pieces: M(i,j) coefficients centered at u.
    std::map<std::pair<int, int>, std::vector<double>> memo;
    std::function<const std::vector<double>&(int, int)> M = [&](int i,
                                                                int j) -> const std::vector<double>& {
      auto key = std::make_pair(i, j);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      std::vector<double> out;
      if (t[j] > t[i] && t[i] <= u && u1 <= t[j]) {
        int k = j - i;
        if (k == 1) {
          out = {1.0 / (t[j] - t[i])};
        } else {
          const std::vector<double>& A = M(i, j - 1);
          const std::vector<double>& B = M(i + 1, j);
          // (x - t_i) A + (t_j - x) B with x = u + y
          std::vector<double> acc(std::max(A.size(), B.size()) + 1, 0.0);
          for (size_t q = 0; q < A.size(); ++q) {
            acc[q] += (u - t[i]) * A[q];
            acc[q + 1] += A[q];
          }
          for (size_t q = 0; q < B.size(); ++q) {
            acc[q] += (t[j] - u) * B[q];
            acc[q + 1] -= B[q];
          }
          double s = static_cast<double>(k) / ((k - 1.0) * (t[j] - t[i]));
          for (double& v : acc) v *= s;
          while (acc.size() > 1 && acc.back() == 0.0) acc.pop_back();
          out = std::move(acc);
        }
      }
      return memo.emplace(key, std::move(out)).first->second;
    };
    const std::vector<double>& mp = M(0, n);
    std::vector<cplx> piece;
    if (mp.empty()) {
      piece = {cplx(0.0)};
    } else {
      for (double v : mp) piece.push_back(cplx(v * inv_nfact, 0.0));
    }
    pieces[p] = std::move(piece);
  }
  return SpectralShiftDensity(std::move(bp), std::move(pieces), {});
}

SpectralShiftDensity density_from_samples(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  require(x.size() == y.size(), Error::Code::shape, "sample arrays must match in length");
  require(x.size() >= 2, Error::Code::invalid_argument, "need at least two samples");
  for (size_t i = 0; i + 1 < x.size(); ++i)
    require(x[i] < x[i + 1], Error::Code::invalid_argument, "abscissae must strictly increase");
  std::vector<std::vector<cplx>> pieces(x.size() - 1);
  for (size_t i = 0; i + 1 < x.size(); ++i) {
    double slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    pieces[i] = {cplx(y[i], 0.0), cplx(slope, 0.0)};
  }
  return SpectralShiftDensity(std::vector<double>(x), std::move(pieces), {});
}

}  // namespace specshift
