#include <doctest.h>

#include <specshift/lattice.hpp>
#include <specshift/simplex.hpp>
#include <specshift/transform.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace specshift;
using cplx = std::complex<double>;

TEST_SUITE("lattice") {

TEST_CASE("cutoff bump is a smooth partition between its radii") {
  CutoffBump phi{0.5, 1.5};
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(0.5) == 1.0);
  CHECK(phi(1.5) == 0.0);
  CHECK(phi(3.0) == 0.0);
  double prev = 1.0;
  for (double r = 0.55; r < 1.5; r += 0.05) {
    double cur = phi(r);
    CHECK(cur <= prev + 1e-15);
    CHECK(cur >= 0.0);
    prev = cur;
  }
  // analytic derivative against a central difference
  for (double r : {0.7, 1.0, 1.3}) {
    double h = 1e-6;
    double fd = (phi(r + h) - phi(r - h)) / (2.0 * h);
    CHECK(phi.derivative(r) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(phi.derivative(0.2) == 0.0);
  CHECK(phi.derivative(2.0) == 0.0);
}

TEST_CASE("grid points are centered and never hit the origin") {
  auto model = make_zero_model(3, 4, 0.5, 1, 0.0);
  REQUIRE(model.grid_size() == 64);
  RealVector sum = RealVector::Zero(3);
  for (int g = 0; g < model.grid_size(); ++g) {
    RealVector x = model.point(g);
    sum += x;
    CHECK(x.norm() > 0.1);  // N even keeps all sites off the origin
    CHECK(x.cwiseAbs().maxCoeff() <= 0.5 * 1.5 + 1e-14);
  }
  CHECK(sum.norm() <= 1e-12);
}

TEST_CASE("assembled operator splits into kinetic and potential parts correctly") {
  auto model = make_fourier_model(3, 4, 0.8, 2, 99u);
  auto ops = assemble(model);
  const Matrix& d = ops.d_op();
  const Matrix& ds = ops.d_star();
  double scale = d.norm();

  CHECK((ds - d.adjoint()).norm() <= 1e-12 * scale);

  Matrix k = 0.5 * (d - ds);            // anti-Hermitian kinetic part
  Matrix a_part = 0.5 * (d + ds);       // Hermitian potential part
  CHECK((k + k.adjoint()).norm() <= 1e-12 * scale);
  CHECK((a_part - a_part.adjoint()).norm() <= 1e-12 * scale);

  Matrix lhs_sum = ds * d + d * ds;
  Matrix rhs_sum = 2.0 * (k.adjoint() * k + a_part * a_part);
  CHECK((lhs_sum - rhs_sum).norm() <= 1e-12 * lhs_sum.norm());

  Matrix lhs_diff = ds * d - d * ds;
  Matrix rhs_diff = -2.0 * (k * a_part - a_part * k);
  CHECK((lhs_diff - rhs_diff).norm() <= 1e-12 * std::max(1.0, lhs_diff.norm()));
}

TEST_CASE("the two squared spectra coincide for the square assembly") {
  auto model = make_fourier_model(3, 4, 0.8, 2, 17u);
  auto ops = assemble(model);
  const RealVector& left = ops.spectrum_dstar_d();
  const RealVector& right = ops.spectrum_d_dstar();
  REQUIRE(left.size() == right.size());
  double diam = left[left.size() - 1] - left[0];
  CHECK((left - right).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, diam));
}

TEST_CASE("flat spectrum matches the momentum-space closed form") {
  // zero potential: D*D diagonalizes in Fourier modes with central-difference
  // symbols sum_j sin(2 pi k_j / N)^2 / h^2
  {
    auto model = make_zero_model(1, 6, 0.7, 2, 0.0);
    auto ops = assemble(model);
    RealVector oracle = flat_kinetic_spectrum(1, 6, 0.7, 2);
    REQUIRE(ops.spectrum_dstar_d().size() == oracle.size());
    CHECK((ops.spectrum_dstar_d() - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  }
  {
    auto model = make_zero_model(3, 4, 1.0, 1, 0.0);
    auto ops = assemble(model);
    RealVector oracle = flat_kinetic_spectrum(3, 4, 1.0, 1);
    REQUIRE(ops.spectrum_dstar_d().size() == oracle.size());
    CHECK((ops.spectrum_dstar_d() - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constant mass shifts the flat spectrum by its square") {
  // a0 = mu Id anticommutes into D*D = kinetic + mu^2 when b = 0
  double mu = 0.8;
  auto model = make_zero_model(1, 6, 0.7, 1, mu);
  auto ops = assemble(model);
  RealVector flat = flat_kinetic_spectrum(1, 6, 0.7, 1);
  RealVector got = ops.spectrum_dstar_d();
  REQUIRE(got.size() == flat.size());
  for (int i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(flat[i] + mu * mu).epsilon(1e-11));
  }
}

TEST_CASE("heat trace difference vanishes identically for the square assembly") {
  // D*D and DD* are cospectral whenever D is square, so the two heat traces
  // cancel exactly; this pins the finite-model fact the fiber side cannot see
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto ops = assemble(model);
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(heat_trace_diff(ops, t)) <= 1e-10 * ops.dim());
  }
}

TEST_CASE("iterated partial-trace route equals the direct heat difference") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto ops = assemble(model);
  for (double t : {0.6, 1.2}) {
    double plain = heat_trace_diff(ops, t);
    double iterated = heat_trace_diff_iterated(ops, t);
    CHECK(std::abs(plain - iterated) <= 1e-10 * ops.dim());
  }
}

TEST_CASE("fiber heat product equals the laplace transform of the shift density") {
  // the same fiber-side object evaluated two ways: direct simplex quadrature
  // of the ordered heat product, and the exact Laplace transform of the
  // assembled spline density
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto rule = make_uniform_simplex_rule(2, 12);
  auto cl = build_clifford(model.d);
  auto eta = eta_callias(cl, fiber_samples(model));
  auto consts = FunctionalEquationConstants::make(model.d);
  for (double t : {0.5, 1.0, 2.0}) {
    double direct = rhs_trace_formula(model, t, rule);
    double via_eta =
        consts.laplace_factor * std::pow(t, 0.5 * model.d) * laplace(eta, t).real();
    CHECK(direct == doctest::Approx(via_eta).epsilon(1e-8));
  }
}

TEST_CASE("model report carries consistent functional-equation columns") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  std::vector<double> t_grid = {0.5, 1.0, 2.0};
  auto report = eta_and_xi_for_model(model, t_grid);
  REQUIRE(report.t.size() == t_grid.size());
  CHECK(report.eta.imag_l1() <= 1e-10 * (1.0 + report.eta.l1_norm()));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    // Laplace-domain functional equation: the eta route and the xi route agree
    CHECK(report.laplace_eta_rhs[i] ==
          doctest::Approx(report.minus_td_laplace_xi[i]).epsilon(1e-7));
    // the finite square model's heat side is identically zero (cospectrality)
    CHECK(std::abs(report.heat_lhs[i]) <= 1e-10 * 256);
  }
}

TEST_CASE("fiber side decays at small times") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto rule = make_uniform_simplex_rule(2, 10);
  double tiny = std::abs(rhs_trace_formula(model, 1e-3, rule));
  double ref = std::abs(rhs_trace_formula(model, 1.0, rule));
  CHECK(tiny <= 0.05 * ref);
}

TEST_CASE("rules of the wrong shape are rejected") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto wrong_order = make_uniform_simplex_rule(3, 8);
  CHECK_THROWS(rhs_trace_formula(model, 1.0, wrong_order));
  auto wrong_kind = make_dirichlet_simplex_rule(2, 8);
  CHECK_THROWS(rhs_trace_formula(model, 1.0, wrong_kind));
}

TEST_CASE("dimension cap turns oversized assemblies into resource errors") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  CHECK_THROWS(assemble(model, 10));
}

TEST_CASE("fiber samples cover the grid with the cell volume") {
  auto model = make_hedgehog_model(4, 0.6, 0.5, 1.5);
  auto samples = fiber_samples(model);
  REQUIRE(static_cast<int>(samples.size()) == model.grid_size());
  double vol = 0.0;
  for (const auto& s : samples) {
    vol += s.volume;
    REQUIRE(s.grad.size() == 3);
    CHECK(hermiticity_defect(s.a_phi) <= 1e-12);
  }
  CHECK(vol == doctest::Approx(std::pow(4 * 0.6, 3)).epsilon(1e-12));
}

}  // TEST_SUITE
