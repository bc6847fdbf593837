// Acceptance gate: twelve numbered criteria, each printing its measured
// quantities and one final [PASS]/[FAIL] verdict line. Exit code 0 iff every
// executed criterion passes. Run a single criterion with --criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <specshift/clifford.hpp>
#include <specshift/density.hpp>
#include <specshift/dirac_example.hpp>
#include <specshift/divdiff.hpp>
#include <specshift/hermitian.hpp>
#include <specshift/lattice.hpp>
#include <specshift/moi.hpp>
#include <specshift/scalar_function.hpp>
#include <specshift/simplex.hpp>
#include <specshift/ssf.hpp>
#include <specshift/transform.hpp>
#include <specshift/types.hpp>

namespace {

using namespace specshift;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Matrix random_hermitian(int n, std::mt19937_64& eng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(eng), g(eng));
  return 0.5 * (m + m.adjoint().eval());
}

Matrix random_complex(int n, std::mt19937_64& eng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(eng), g(eng));
  return m;
}

// Collects clause verdicts; every clause prints its measured value next to
// its bound so a red run carries its own diagnosis.
class Gate {
 public:
  bool check(const std::string& what, double measured, double bound) {
    bool ok = measured <= bound;
    std::printf("    %-64s %11.4e <= %8.1e  %s\n", what.c_str(), measured, bound,
                ok ? "ok" : "FAIL");
    pass_ = pass_ && ok;
    return ok;
  }
  bool check_flag(const std::string& what, bool ok) {
    std::printf("    %-64s %22s  %s\n", what.c_str(), "", ok ? "ok" : "FAIL");
    pass_ = pass_ && ok;
    return ok;
  }
  bool passed() const { return pass_; }

 private:
  bool pass_ = true;
};

int permutation_sign(const std::vector<int>& w) {
  int inv = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------- criterion 1
bool criterion_clifford() {
  auto t0 = Clock::now();
  Gate g;
  for (int d : {1, 3, 5, 7}) {
    auto rep = build_clifford(d);
    double anti = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        Matrix want = (i == j) ? Matrix(-2.0 * identity(rep.r)) : Matrix(Matrix::Zero(rep.r, rep.r));
        anti = std::max(anti, (rep.c[i] * rep.c[j] + rep.c[j] * rep.c[i] - want).norm());
      }
    }
    g.check("d=" + std::to_string(d) + ": anticommutation residual (all pairs)", anti, 1e-12);

    cplx base = clifford_trace_constant(d);
    std::vector<int> word(d);
    for (int i = 0; i < d; ++i) word[i] = i + 1;
    double trace_resid = 0.0;
    int perms = 0;
    do {
      cplx want = base * static_cast<double>(permutation_sign(word));
      trace_resid = std::max(trace_resid, std::abs(clifford_word_trace(rep, word) - want));
      ++perms;
    } while (std::next_permutation(word.begin(), word.end()));
    g.check("d=" + std::to_string(d) + ": trace identity over all " + std::to_string(perms) +
                " permutation words",
            trace_resid, 1e-12);

    if (d >= 3) {
      // words with a repeated index have zero antisymmetric weight
      double repeat_resid = 0.0;
      for (int i = 0; i < d; ++i) word[i] = i + 1;
      std::sort(word.begin(), word.end());
      int tested = 0;
      do {
        std::vector<int> w = word;
        w[0] = w[1];
        repeat_resid = std::max(repeat_resid, std::abs(clifford_word_trace(rep, w)));
      } while (++tested < 100 && std::next_permutation(word.begin(), word.end()));
      g.check("d=" + std::to_string(d) + ": repeated-index words trace to zero", repeat_resid,
              1e-12);
    }
  }
  g.check("runtime (s)", seconds_since(t0), 5.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 2
bool criterion_divided_differences() {
  auto t0 = Clock::now();
  Gate g;
  std::mt19937_64 eng(402u);
  std::uniform_real_distribution<double> unif(-1.25, 1.25);
  std::map<int, SimplexRule> rules;
  for (int n = 1; n <= 6; ++n) {
    int pts = n <= 3 ? 16 : (n == 4 ? 14 : (n == 5 ? 12 : 10));
    rules.emplace(n, make_uniform_simplex_rule(n, pts));
  }
  double worst = 0.0;
  double worst_cluster = 0.0;
  double tightest_gap = 1.0;
  for (int i = 0; i < 200; ++i) {
    int n = 1 + i % 6;
    std::vector<double> nodes(n + 1);
    for (auto& v : nodes) v = unif(eng);
    bool clustered = (i % 3 == 0 && n >= 2);
    if (clustered) {
      double gap = std::pow(10.0, -(3 + i % 7));  // 1e-3 .. 1e-9
      nodes[1] = nodes[0] + gap;
      tightest_gap = std::min(tightest_gap, gap);
    }
    auto f = ScalarFunctionFamily::exponential(0.6 + 0.1 * (i % 8));
    double a = divided_difference(f, nodes);
    double b = divided_difference_confluent(f, nodes);
    double c = genochi_hermite(f, nodes, rules.at(n));
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    double gap = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)}) / scale;
    worst = std::max(worst, gap);
    if (clustered) worst_cluster = std::max(worst_cluster, gap);
  }
  std::printf("    200 node sets, n in 1..6, 67 with a forced cluster (tightest gap %.0e)\n",
              tightest_gap);
  g.check("worst three-way relative disagreement", worst, 1e-8);
  g.check("worst disagreement on clustered sets", worst_cluster, 1e-8);
  g.check("runtime (s)", seconds_since(t0), 30.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 3
bool criterion_operator_integrals() {
  auto t0 = Clock::now();
  Gate g;
  std::mt19937_64 eng(403u);
  std::uniform_int_distribution<int> dims(2, 6);
  double worst_fd = 0.0, worst_rem = 0.0, worst_cyc = 0.0;
  int max_n_seen = 0;
  for (int i = 0; i < 100; ++i) {
    int dim = dims(eng);
    auto f = ScalarFunctionFamily::exponential(0.5 + 0.1 * (i % 9));
    HermitianOperator a(random_hermitian(dim, eng));
    Matrix b = random_hermitian(dim, eng, 0.4);

    // term k of the expansion against a finite-difference derivative in the
    // coupling: d^k/de^k f(A + eB) at 0 equals k! * (term k)
    int k = 1 + i % 3;
    double tpar = f.param();
    auto feval = [&](double eps) {
      return HermitianOperator(Matrix(a.matrix() + eps * b)).apply([tpar](double x) {
        return cplx(std::exp(-tpar * x), 0.0);
      });
    };
    double h = (k == 3) ? 2e-3 : 1e-3;
    Matrix fd;
    if (k == 1) {
      fd = (feval(h) - feval(-h)) / (2.0 * h);
    } else if (k == 2) {
      fd = (feval(h) - 2.0 * feval(0.0) + feval(-h)) / (h * h);
    } else {
      fd = (feval(2 * h) - 2.0 * feval(h) + 2.0 * feval(-h) - feval(-2 * h)) / (2 * h * h * h);
    }
    double kfact = (k == 1) ? 1.0 : (k == 2 ? 2.0 : 6.0);
    Matrix term = taylor_term(f, k, a, b);
    worst_fd = std::max(worst_fd, (term - fd / kfact).norm() / (1.0 + term.norm()));

    // remainder, single-integral form vs weighted-quadrature form; the order
    // is capped so the spectral tuple count stays around 10^4
    int n = 1 + i % 5;
    while (std::pow(static_cast<double>(dim), n + 1) > 8000.0) --n;
    max_n_seen = std::max(max_n_seen, n);
    Matrix direct = taylor_remainder_direct(f, n, a, b);
    Matrix integral = taylor_remainder_integral(f, n, a, b);
    worst_rem = std::max(worst_rem, (direct - integral).norm() / (1.0 + direct.norm()));

    auto pair = trace_cycle_check(f, n, a, b);
    worst_cyc = std::max(worst_cyc, pair.defect());
  }
  std::printf("    100 instances, dims 2..6, order up to %d\n", max_n_seen);
  g.check("term-k vs finite-difference derivative (relative)", worst_fd, 1e-5);
  g.check("remainder: direct vs integral form (relative)", worst_rem, 1e-8);
  g.check("trace-cycle identity defect (relative)", worst_cyc, 1e-10);
  g.check("runtime (s)", seconds_since(t0), 120.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 4
bool criterion_shift_density_pairing() {
  auto t0 = Clock::now();
  Gate g;
  std::mt19937_64 eng(404u);
  std::uniform_int_distribution<int> dims(2, 6);
  double worst_pair = 0.0;
  for (int i = 0; i < 100; ++i) {
    int dim = dims(eng);
    int n = 1 + i % 4;
    while (std::pow(static_cast<double>(dim), n + 1) > 8000.0) --n;
    std::vector<HermitianOperator> a_list;
    for (int j = 0; j <= n; ++j) a_list.emplace_back(random_hermitian(dim, eng));
    Matrix t0m = random_hermitian(dim, eng);
    std::vector<Matrix> t_list;
    for (int j = 0; j < n; ++j) t_list.push_back(random_hermitian(dim, eng));
    auto rho = ssf_density(a_list, t0m, t_list);
    auto f = ScalarFunctionFamily::exponential(0.4 + 0.1 * (i % 9));
    cplx via_density = rho.pair_with_derivative(f, n);
    cplx via_trace = (t0m * moi_apply(f, a_list, t_list)).trace();
    worst_pair =
        std::max(worst_pair, std::abs(via_density - via_trace) / (1.0 + std::abs(via_trace)));
  }
  g.check("density pairing vs weighted trace, 100 instances (relative)", worst_pair, 1e-9);

  // first order against the eigenvalue-counting construction
  double worst_krein = 0.0;
  for (int i = 0; i < 20; ++i) {
    int dim = dims(eng);
    Matrix am = random_hermitian(dim, eng);
    Matrix b = random_hermitian(dim, eng, 0.4);
    HermitianOperator a_plus(Matrix(am + b)), a_minus(am);
    auto eta = ssf_density({a_plus, a_minus}, Matrix(identity(dim)), {b});
    auto xi = krein_ssf(a_plus, a_minus);
    for (double t : {0.6, 1.1}) {
      auto f = ScalarFunctionFamily::exponential(t);
      worst_krein = std::max(worst_krein, std::abs(eta.pair_with_derivative(f, 1) -
                                                   xi.pair_with_derivative(f, 1)));
    }
  }
  g.check("order one vs counting-function oracle (absolute)", worst_krein, 1e-12);
  g.check("runtime (s)", seconds_since(t0), 60.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 5
bool criterion_functional_equation() {
  auto t0 = Clock::now();
  Gate g;
  double worst_const = 0.0;
  for (int d : {1, 3, 5, 7}) {
    auto fc = FunctionalEquationConstants::make(d);
    double want = 2.0 * std::pow(4.0 * kPi, -0.5 * d);
    worst_const = std::max(worst_const, std::abs(fc.c_d * std::tgamma(0.5 * d) - want));
  }
  g.check("c_d * Gamma(d/2) = 2 (4 pi)^(-d/2), d in {1,3,5,7}", worst_const, 1e-14);

  // synthetic density: smooth piece + flat steps + an atom, support in [0, inf)
  SpectralShiftDensity eta = bspline_density({0.2, 0.9, 1.7});
  eta.add_scaled(SpectralShiftDensity::piecewise_constant({0.1, 0.8, 2.5},
                                                          {cplx(0.4, 0.0), cplx(-0.2, 0.0)}),
                 cplx(1.0, 0.0));
  eta.add_scaled(SpectralShiftDensity::atom(0.8, cplx(0.3, 0.0)), cplx(1.0, 0.0));
  double worst_syn = 0.0;
  for (int d : {1, 3, 5}) {
    for (double t : {0.7, 1.5}) {
      worst_syn = std::max(worst_syn, functional_equation_gap(eta, d, t));
    }
  }
  g.check("Laplace identity on synthetic density, d in {1,3,5}", worst_syn, 1e-8);

  // density produced by the lattice fiber decomposition
  auto model = make_hedgehog_model(6, 0.6, 0.5, 1.5);
  std::vector<double> t_grid = {0.5, 1.0, 2.0};
  auto report = eta_and_xi_for_model(model, t_grid);
  double worst_pipe = 0.0;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    double a = report.laplace_eta_rhs[i];
    double b = report.minus_td_laplace_xi[i];
    worst_pipe = std::max(worst_pipe, std::abs(a - b) / std::max(std::abs(a), 1e-30));
  }
  g.check("Laplace identity on the lattice-produced density", worst_pipe, 1e-8);
  g.check("runtime (s)", seconds_since(t0), 120.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 6
bool criterion_simplex_constant() {
  auto t0 = Clock::now();
  Gate g;
  for (int d : {3, 5}) {
    auto rule = make_dirichlet_simplex_rule(d - 1, 16);
    double mass = rule.weights.sum();
    double got = std::pow(4.0 * kPi, -0.5 * d) * mass;
    double want = std::pow(4.0 * kPi, -0.5) * std::tgamma(0.5 * (d - 1) + 1.0) /
                  std::tgamma(static_cast<double>(d));
    g.check("d=" + std::to_string(d) + ": weighted simplex mass vs closed form", std::abs(got - want),
            1e-6);
    g.check("d=" + std::to_string(d) + ": same constant via the index normalization",
            std::abs(got - index_dimensional_constant(d)), 1e-12);
  }
  std::printf("    reference values: 1/(4 sqrt(pi)) = %.6f at d=3, 1/(24 sqrt(pi)) = %.6f at d=5\n",
              1.0 / (4.0 * std::sqrt(kPi)), 1.0 / (24.0 * std::sqrt(kPi)));
  g.check("runtime (s)", seconds_since(t0), 10.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 7
bool criterion_kernel_laplace_identity() {
  auto t0 = Clock::now();
  Gate g;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, schlafli_gap(a, t, 3));
    }
  }
  g.check("kernel Laplace-transform residual over (a,t) in {0.5,1,2}^2", worst, 1e-8);
  g.check("runtime (s)", seconds_since(t0), 10.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 8
bool criterion_square_heat_traces() {
  auto t0 = Clock::now();
  Gate g;
  std::mt19937_64 eng(408u);
  std::uniform_int_distribution<int> dims(2, 8);
  std::vector<double> ts = {0.3, 1.0, 3.0};
  double worst_value = 0.0, worst_drift = 0.0;
  int worst_index = 0, deficient = 0;
  for (int i = 0; i < 100; ++i) {
    int dim = dims(eng);
    Matrix d_mat = random_complex(dim, eng);
    if (i % 4 == 0) {
      d_mat.col(i % dim).setZero();  // force a nontrivial kernel on both sides
      ++deficient;
    }
    RealVector sp_left = HermitianOperator(Matrix(d_mat.adjoint() * d_mat)).eigenvalues();
    RealVector sp_right = HermitianOperator(Matrix(d_mat * d_mat.adjoint())).eigenvalues();
    std::vector<double> lhs;
    for (double t : ts) {
      double v = 0.0;
      for (int j = 0; j < dim; ++j)
        v += std::exp(-t * sp_left[j]) - std::exp(-t * sp_right[j]);
      lhs.push_back(v);
      worst_value = std::max(worst_value, std::abs(v) / dim);
    }
    worst_drift = std::max({worst_drift, std::abs(lhs[0] - lhs[1]) / dim,
                            std::abs(lhs[1] - lhs[2]) / dim});
    worst_index = std::max(worst_index, std::abs(fredholm_index(d_mat)));
  }
  std::printf("    100 square matrices, dims 2..8, %d with a forced kernel\n", deficient);
  g.check("heat-trace difference per dimension (should be the index, 0)", worst_value, 1e-10);
  g.check("t-drift of the difference per dimension", worst_drift, 1e-10);
  g.check_flag("singular-value index count is 0 on every instance", worst_index == 0);
  g.check("runtime (s)", seconds_since(t0), 60.0);
  return g.passed();
}

// ---------------------------------------------------------------- criterion 9
bool criterion_lattice_trace_formula() {
  auto t0 = Clock::now();
  Gate g;
  auto rule = make_uniform_simplex_rule(2, 12);
  std::vector<double> ts = {0.5, 1.0, 2.0};
  const double floor = 1e-8;

  std::printf("    hedgehog lattice, h=0.6, cutoff (0.5, 1.5); gap = |lhs-rhs|/max(|lhs|, %.0e)\n",
              floor);
  std::vector<double> gap_by_n;
  double gap_sym_at_10 = 0.0;
  for (int N : {6, 8, 10}) {
    auto model = make_hedgehog_model(N, 0.6, 0.5, 1.5);
    auto ops = assemble(model, 4096);
    double gap_n = 0.0;
    for (double t : ts) {
      double lhs = heat_trace_diff(ops, t);
      double rhs = rhs_trace_formula(model, t, rule);
      double gap = std::abs(lhs - rhs) / std::max(std::abs(lhs), floor);
      double gap_sym = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
      gap_n = std::max(gap_n, gap);
      if (N == 10) gap_sym_at_10 = std::max(gap_sym_at_10, gap_sym);
      std::printf("    N=%2d t=%.1f  lhs=%+.3e  rhs=%+.6f  gap=%.3e  sym=%.3f\n", N, t, lhs, rhs,
                  gap, gap_sym);
    }
    gap_by_n.push_back(gap_n);
  }
  bool monotone = gap_by_n[0] >= gap_by_n[1] && gap_by_n[1] >= gap_by_n[2];
  g.check("relative gap at N=10", gap_by_n.back(), 0.10);
  g.check_flag("gap monotone non-increasing in N", monotone);
  g.check("gap at N=10, symmetric normalization |lhs-rhs|/max(|lhs|,|rhs|)", gap_sym_at_10, 0.10);
  std::printf(
      "    analysis: for a square matrix D the operators D*D and DD* are cospectral, so the\n"
      "    heat-trace difference (lhs) vanishes identically on every periodic truncation while\n"
      "    the fiber integral (rhs) tracks the continuum value (about -1 on fine rasters, cf.\n"
      "    the refinement below). The identity the rhs actually satisfies at desk scale is the\n"
      "    Laplace-domain one checked in criterion 5; the lhs/rhs match is expected red here.\n");

  // cutoff independence of the rhs, on a raster fine enough to resolve the bump
  auto m_a = make_hedgehog_model(32, 0.2, 0.5, 1.5);
  auto m_b = make_hedgehog_model(32, 0.2, 0.8, 2.0);
  for (double t : {0.5, 1.0}) {
    double r1 = rhs_trace_formula(m_a, t, rule);
    double r2 = rhs_trace_formula(m_b, t, rule);
    double rel = std::abs(r1 - r2) / std::abs(r1);
    std::printf("    N=32 h=0.2 t=%.1f  rhs(cutoff A)=%+.6f  rhs(cutoff B)=%+.6f\n", t, r1, r2);
    g.check("cutoff independence of rhs at t=" + std::to_string(t).substr(0, 3), rel, 1e-3);
  }
  {
    double t = 2.0;
    double r1 = rhs_trace_formula(m_a, t, rule);
    double r2 = rhs_trace_formula(m_b, t, rule);
    std::printf("    note: t=2.0 gives %.3e at this box (6.4); the wider heat kernel feels the\n"
                "    periodic seam, so the t=2 gap is box-limited rather than cutoff-driven\n",
                std::abs(r1 - r2) / std::abs(r1));
  }
  g.check("runtime (s)", seconds_since(t0), 600.0);
  return g.passed();
}

// --------------------------------------------------------------- criterion 10
bool criterion_first_order_consistency() {
  auto t0 = Clock::now();
  Gate g;
  std::mt19937_64 eng(410u);
  std::vector<double> grid = {0.3, 0.9, 2.2, 5.0};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Matrix am = random_hermitian(3, eng);
    Matrix b = random_hermitian(3, eng, 0.4);
    HermitianOperator a_plus(Matrix(am + b)), a_minus(am);
    auto rep = check_d1_compatibility(a_plus, a_minus, grid);
    worst = std::max(worst, rep.max_abs_gap);
  }
  g.check("two first-order routes on 20 random pairs (absolute)", worst, 1e-7);
  g.check("runtime (s)", seconds_since(t0), 60.0);
  return g.passed();
}

// --------------------------------------------------------------- criterion 11
bool criterion_example_index() {
  auto t0 = Clock::now();
  Gate g;

  auto v = make_hedgehog_potential();
  auto field = [&v](const RealVector& x) { return limit_propagator(v, x); };
  auto tw = Clock::now();
  auto w = winding_index(field, 3, 7.5, 192);
  double winding_s = seconds_since(tw);
  std::printf("    winding: value=%+.5f  integer gap=%.2e  boundary defect=%.2e  (%.1f s)\n",
              w.value, w.nearest_integer_gap, w.boundary_defect, winding_s);
  g.check("winding within 1e-2 of an integer", w.nearest_integer_gap, 1e-2);
  g.check_flag("that integer has magnitude 1",
               std::llround(std::abs(w.value)) == 1);
  g.check("winding route runtime (s)", winding_s, 60.0);

  auto rep = example_index_report(v, XGrid{6.0, 18}, McOptions{4000, 2026, 0.0}, 12, 800);
  double wv = rep.winding.value;
  std::printf("    sampled route: raw integral=%+.4f  normalized index=%+.5f +- %.5f\n",
              rep.mc_integral.real(), rep.mc_index, rep.mc_index_standard_error);
  std::printf("    pipeline route: index=%+.5f  (route gap %.2e, averages %s)\n",
              rep.pipeline.index, rep.pipeline.route_gap,
              rep.pipeline.lebesgue.converged ? "converged" : "not converged");
  g.check("sampled z-integral route vs winding (relative)",
          std::abs(rep.mc_index - wv) / std::abs(wv), 0.05);
  g.check("shift-pipeline route vs winding (relative)",
          std::abs(rep.pipeline.index - wv) / std::abs(wv), 0.10);

  auto ctrl = example_index_report(make_scalar_control_potential(), XGrid{6.0, 14},
                                   McOptions{600, 7, 0.0}, 10, 300);
  std::printf("    scalar control: winding=%+.1e  sampled=%+.1e  pipeline=%+.1e\n",
              ctrl.winding.value, ctrl.mc_index, ctrl.pipeline.index);
  g.check("scalar control: |winding|", std::abs(ctrl.winding.value), 1e-2);
  g.check("scalar control: |sampled index|", std::abs(ctrl.mc_index), 1e-2);
  g.check("scalar control: |pipeline index|", std::abs(ctrl.pipeline.index), 1e-2);
  g.check("runtime (s)", seconds_since(t0), 1800.0);
  return g.passed();
}

// --------------------------------------------------------------- criterion 12
bool criterion_heat_limit() {
  auto t0 = Clock::now();
  Gate g;

  struct Family {
    const char* name;
    double value_at_zero;
    std::vector<double> t_grid;
    std::function<double(double)> cumulative;
  };
  // The oscillatory family's finite-t correction is -b w / (t + w^2/t), which
  // is only geometric once t clears the frequency w = 5, so its grid starts
  // higher; the extrapolation machinery is the same for all three.
  std::vector<double> plain = {4.0, 8.0, 16.0, 32.0, 64.0};
  std::vector<double> late = {16.0, 32.0, 64.0, 128.0, 256.0};
  std::vector<Family> families = {
      {"constant", 1.25, plain, [](double u) { return 1.25 * u; }},
      {"constant + linear", 0.6, plain, [](double u) { return 0.6 * u + 0.4 * u * u; }},
      {"oscillatory", 0.7, late,
       [](double u) { return 0.7 * u + 0.3 * (1.0 - std::cos(5.0 * u)) / 5.0; }},
  };
  for (const auto& fam : families) {
    auto rep = heat_limit(fam.cumulative, fam.t_grid, 40);
    std::printf("    %-18s limit=%+.6f  expected=%+.6f  converged=%s\n", fam.name, rep.limit,
                -fam.value_at_zero, rep.converged ? "yes" : "no");
    g.check_flag(std::string(fam.name) + ": extrapolation converged", rep.converged);
    g.check(std::string(fam.name) + ": |limit - expected|",
            std::abs(rep.limit - (-fam.value_at_zero)), 1e-3);
  }
  g.check("runtime (s)", seconds_since(t0), 30.0);
  return g.passed();
}

struct Criterion {
  int id;
  const char* label;
  bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "Clifford generators: anticommutation and trace identity", criterion_clifford},
    {2, "divided differences: three evaluators on random and clustered nodes",
     criterion_divided_differences},
    {3, "operator integrals: derivative, remainder, trace-cycle identities",
     criterion_operator_integrals},
    {4, "shift densities reproduce weighted traces; order one matches counting",
     criterion_shift_density_pairing},
    {5, "functional-equation constants and Laplace-domain identity", criterion_functional_equation},
    {6, "Dirichlet simplex mass reproduces the dimensional constant", criterion_simplex_constant},
    {7, "closed-form kernel Laplace identity", criterion_kernel_laplace_identity},
    {8, "square heat-trace differences vanish and stay t-constant", criterion_square_heat_traces},
    {9, "lattice heat traces vs fiber integral; cutoff independence",
     criterion_lattice_trace_formula},
    {10, "first-order consistency of the two d=1 routes", criterion_first_order_consistency},
    {11, "example index: winding, sampled integral, and shift pipeline agree",
     criterion_example_index},
    {12, "heat-limit extrapolation recovers right-edge values", criterion_heat_limit},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 12) {
        std::fprintf(stderr, "--criterion takes a number in 1..12\n");
        return 2;
      }
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : kCriteria) std::printf("%2d  %s\n", c.id, c.label);
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--list]\n", argv[0]);
      return 2;
    }
  }

  bool all_ok = true;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    std::printf("criterion %02d: %s\n", c.id, c.label);
    auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::printf("    unexpected exception: %s\n", e.what());
      ok = false;
    }
    std::printf("[%s] criterion %02d (%.1f s)\n", ok ? "PASS" : "FAIL", c.id,
                seconds_since(t0));
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
