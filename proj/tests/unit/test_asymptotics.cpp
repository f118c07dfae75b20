#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "rdfront/asymptotics.hpp"
#include "rdfront/errors.hpp"

using namespace rdfront;

namespace {

InterfaceTrace synthetic(double R, double k, double q, int sign, int n, double t_end) {
  InterfaceTrace it;
  it.R = R;
  it.dx = 1e-4;
  it.times = log_spaced_times(t_end / 1000.0, t_end, n);
  for (double t : it.times) it.front.push_back(R + sign * k * std::pow(t, q));
  return it;
}

}  // namespace

TEST_CASE("fit_power_law is exact on power-law data") {
  const auto it = synthetic(1.0, 3.0, 0.5, 1, 60, 1.0);
  const auto fit = fit_power_law(it, {0.01, 0.25});
  CHECK(fit.exponent_q == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.coefficient_k == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_points >= 8);
}

TEST_CASE("fit_power_law needs motion") {
  InterfaceTrace it;
  it.R = 1.0;
  it.dx = 0.01;
  it.times = log_spaced_times(1e-4, 1.0, 50);
  it.front.assign(it.times.size(), 1.005);
  CHECK_THROWS_AS(fit_power_law(it, {0.01, 0.25}), InsufficientMotion);
}

TEST_CASE("property: fit recovers random laws") {
  gen::Source src(8);
  for (int i = 0; i < 200; ++i) {
    const double q = src.uniform(0.3, 3.0);
    const double k = src.uniform(0.5, 5.0);
    const int sign = src.coin() ? 1 : -1;
    const auto it = synthetic(2.0, k, q, sign, 80, 1.0);
    const auto fit = fit_power_law(it, FitWindow::default_for(1.0));
    CHECK(fit.exponent_q == doctest::Approx(q).epsilon(1e-9));
    CHECK(fit.coefficient_k == doctest::Approx(k).epsilon(1e-9));
  }
}

TEST_CASE("predict") {
  SUBCASE("shrinking") {
    const auto p = predict({2.0, 0.5, 1.0, 1.0, 4.0, 1.0, 2});
    CHECK(*p.q == doctest::Approx(0.5));
    CHECK(*p.k == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
  SUBCASE("marginal critical") {
    const auto p = predict({1.5, 0.5, 6.0, 4.0, 2.0, 1.0, 2});
    CHECK(p.verdict.regime == Regime::CriticalExpanding);
    CHECK(*p.q == doctest::Approx(1.0));
    CHECK(*p.k == doctest::Approx(4.5).epsilon(1e-12));
  }
  SUBCASE("stationary") {
    const auto p = predict({2.0, 1.0, 1.0, 1.0 / 12.0, 2.0, 1.0, 2});
    CHECK(p.verdict.regime == Regime::Stationary);
    CHECK_FALSE(p.q);
    REQUIRE(p.waiting_horizon);
    CHECK(std::isinf(*p.waiting_horizon));
  }
  SUBCASE("expanding from the profile ODE") {
    PredictOptions o;
    o.xi_from_ode = true;
    const auto p = predict({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, o);
    CHECK(*p.k == doctest::Approx(2.0).epsilon(1e-3));
  }
  SUBCASE("unsupported") {
    CHECK_THROWS_AS(predict({2.0, 0.5, -1.0, 1.0, 1.0, 1.0, 2}), DomainError);
  }
}

TEST_CASE("verify against synthetic traces") {
  SolutionTrace empty;
  empty.times = {0.0, 1.0};
  Prediction pred;
  pred.verdict = classify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2});
  pred.q = 1.0;
  pred.k = 3.0;

  SUBCASE("matching law passes") {
    const auto it = synthetic(1.0, 3.0, 1.0, 1, 80, 1.0);
    const auto rep = verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, it, pred);
    CHECK(rep.pass);
    CHECK(*rep.measured_q == doctest::Approx(1.0));
  }
  SUBCASE("receding front fails the regime check") {
    const auto it = synthetic(1.0, 3.0, 1.0, -1, 80, 1.0);
    const auto rep = verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, it, pred);
    CHECK_FALSE(rep.regime_ok);
    CHECK_FALSE(rep.pass);
  }
  SUBCASE("property: pass is monotone in the tolerances") {
    gen::Source src(21);
    for (int i = 0; i < 100; ++i) {
      const auto it = synthetic(1.0, src.uniform(2.0, 4.0), src.uniform(0.8, 1.2), 1, 80, 1.0);
      VerifyOptions tight{src.uniform(0.01, 0.2), src.uniform(0.01, 0.3), std::nullopt};
      VerifyOptions loose{tight.tol_q * 2.0, tight.tol_k * 2.0, std::nullopt};
      const auto a = verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, it, pred, tight);
      const auto b = verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, it, pred, loose);
      if (a.pass) CHECK(b.pass);
    }
  }
  SUBCASE("interval predictions") {
    Prediction ip = pred;
    ip.k.reset();
    ip.k_lo = 2.0;
    ip.k_hi = 4.0;
    const auto it = synthetic(1.0, 3.9, 1.0, 1, 80, 1.0);
    CHECK(verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, it, ip).pass);
    const auto out = synthetic(1.0, 5.0, 1.0, 1, 80, 1.0);
    CHECK_FALSE(verify({2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2}, empty, out, ip).pass);
  }
}

TEST_CASE("verify: stationary check uses 2 dx") {
  Prediction pred;
  pred.verdict = classify({2.0, 1.0, 1.0, 1.0 / 12.0, 2.0, 1.0, 2});
  pred.waiting_horizon = 1.0;
  SolutionTrace tr;
  tr.times = {0.0, 0.5};
  InterfaceTrace it;
  it.R = 1.0;
  it.dx = 0.01;
  it.times = {0.0, 0.05, 0.1, 0.2};
  it.front = {1.0, 1.01, 1.015, 1.5};
  const auto rep = verify({2.0, 1.0, 1.0, 1.0 / 12.0, 2.0, 1.0, 2}, tr, it, pred);
  CHECK(rep.pass);
  CHECK(*rep.stationary_delta == doctest::Approx(0.1));
  CHECK(*rep.max_excursion == doctest::Approx(0.015));
}

TEST_CASE("rescale_convergence: identity scaling on an exact traveling wave") {
  // u = (x + 2t)_+ on a planar line is self-similar for m=2, α=1.
  ProblemParams p{2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1};
  SolutionTrace tr;
  tr.geometry = Geometry::planar(-2.0, 2.0);
  tr.dx = 0.01;
  tr.x = make_grid(tr.geometry, tr.dx);
  tr.params = p;
  for (double t : {0.0, 0.5, 1.0}) {
    tr.times.push_back(t);
    std::vector<double> f;
    // Radial-style coordinate: u as a function of R - x.
    for (double x : tr.x) f.push_back(std::max(1.0 - x + 2.0 * t, 0.0));
    tr.fields.push_back(f);
  }
  ShapeProfile shape;
  shape.kind = ShapeKind::Diffusion;
  shape.interface = -2.0;
  shape.params = {1.0, 1.0, 2.0, 1.0, 0.0};
  for (double xi = -3.0; xi <= 3.0; xi += 0.01) {
    shape.xi.push_back(xi);
    shape.value.push_back(std::max(xi + 2.0, 0.0));
  }
  RescaleProbes probes{{0.1, 0.3, 0.5}, {0.2, 0.5, 1.0}};
  const auto d = rescale_convergence(tr, &shape, {1.0}, probes);
  REQUIRE(d.size() == 1);
  REQUIRE(d[0].discrepancy);
  CHECK(*d[0].discrepancy < 1e-9);
}
