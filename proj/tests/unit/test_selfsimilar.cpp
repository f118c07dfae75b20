#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "rdfront/errors.hpp"
#include "rdfront/model.hpp"
#include "rdfront/selfsimilar.hpp"

using namespace rdfront;

namespace {

ShapeOptions coarse() {
  ShapeOptions o;
  o.dx = 1.0 / 100.0;
  return o;
}

double g_oracle(double d, double Gamma, double ratio, double m, double beta) {
  const double e = (2.0 - beta - m) / (m - beta);
  const double x = 1.0 - d * Gamma;
  return std::pow(d, e) * (x - std::pow(ratio, m - beta) / x);
}

}  // namespace

TEST_CASE("shape_pme: traveling-wave oracle for m=2, alpha=1") {
  const auto opt = coarse();
  const auto f = shape_pme(1.0, 1.0, 2.0, opt);
  CHECK(f.kind == ShapeKind::Diffusion);
  CHECK(std::abs(f.interface + 2.0) <= 2.5 * opt.dx);
  REQUIRE(f.value_at(0.0));
  CHECK(*f.value_at(0.0) == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(f.right_asymptote_error <= opt.asymptote_tol);
  CHECK(*f.value_at(f.interface - 0.5) == 0.0);
  for (std::size_t i = 0; i < f.xi.size(); ++i) {
    CHECK(f.value[i] >= 0.0);
    if (f.xi[i] < f.interface) CHECK(f.value[i] <= 1e-8);
    if (f.xi[i] > f.interface + f.dx) CHECK(f.value[i] > 0.0);
    if (i > 0) CHECK(f.value[i] >= f.value[i - 1] - 1e-12);
  }
}

TEST_CASE("shape_pme: other traveling waves and the C scaling") {
  const auto opt = coarse();
  CHECK(shape_pme(1.0, 0.5, 3.0, opt).interface == doctest::Approx(-1.5).epsilon(2e-2));
  CHECK(shape_pme(2.0, 1.0, 2.0, opt).interface == doctest::Approx(-4.0).epsilon(2e-2));
  CHECK_THROWS_AS(shape_pme(1.0, 2.0, 2.0, opt), DomainError);
  CHECK_THROWS_AS(shape_pme(1.0, 3.0, 2.0, opt), DomainError);
}

TEST_CASE("rescale_shape") {
  const auto opt = coarse();
  const auto f1 = shape_pme(1.0, 1.0, 2.0, opt);
  SUBCASE("identity at C=1") {
    const auto same = rescale_shape(f1, 1.0);
    CHECK(same.interface == f1.interface);
    for (double x : {-1.0, 0.0, 2.0}) CHECK(*same.value_at(x) == doctest::Approx(*f1.value_at(x)));
  }
  SUBCASE("traveling wave with doubled slope") {
    const auto f2 = rescale_shape(f1, 2.0);
    CHECK(f2.interface == doctest::Approx(2.0 * f1.interface));
    for (double rho : {-3.0, -1.0, 0.0, 1.5}) {
      CHECK(*f2.value_at(rho) == doctest::Approx(std::max(2.0 * rho + 8.0, 0.0)).epsilon(2e-2));
    }
  }
  SUBCASE("property: interface ratio C^{(m-1)/p}") {
    gen::Source src(3);
    for (int i = 0; i < 50; ++i) {
      const double C = src.uniform(0.1, 10.0);
      const auto fc = rescale_shape(f1, C);
      CHECK(fc.interface / f1.interface == doctest::Approx(std::pow(C, 1.0)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(rescale_shape(f1, 0.0), DomainError);
}

TEST_CASE("pme_interface_by_ode: traveling-wave family") {
  CHECK(pme_interface_by_ode(1.0, 1.0, 2.0) == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(pme_interface_by_ode(1.0, 0.5, 3.0) == doctest::Approx(-1.5).epsilon(1e-3));
  CHECK(pme_interface_by_ode(1.0, 2.0, 1.5) == doctest::Approx(-3.0).epsilon(1e-3));
  // C scaling with p = 1 at m=2, α=1.
  CHECK(pme_interface_by_ode(3.0, 1.0, 2.0) == doctest::Approx(-6.0).epsilon(1e-3));
}

TEST_CASE("shape_reaction: marginal closed form") {
  const auto h = shape_reaction(4.0, 1.5, 0.5, 6.0);
  CHECK(h.method == ShapeMethod::ClosedForm);
  CHECK(h.interface == doctest::Approx(-4.5).epsilon(1e-12));
  CHECK(*h.value_at(0.0) == doctest::Approx(4.0 * 4.5 * 4.5).epsilon(1e-6));
  CHECK(shape_reaction(0.25, 1.5, 0.5, 6.0).interface == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(std::abs(shape_reaction(1.0, 1.5, 0.5, 6.0).interface) < 1e-12);
  CHECK_THROWS_AS(shape_reaction(1.0, 2.0, 1.5, 1.0), DomainError);
}

TEST_CASE("shape_reaction: time march matches the closed form on a coarse grid") {
  auto opt = coarse();
  opt.force_time_march = true;
  const auto h = shape_reaction(4.0, 1.5, 0.5, 6.0, opt);
  CHECK(h.method == ShapeMethod::TimeMarch);
  CHECK(std::abs(h.interface + 4.5) <= 2e-2);
  double worst = 0.0;
  for (double z = -4.4; z <= -2.5; z += 0.05) {
    const double exact = 4.0 * (z + 4.5) * (z + 4.5);
    worst = std::max(worst, std::abs(*h.value_at(z) - exact) / exact);
  }
  CHECK(worst <= 2e-2);
}

TEST_CASE("C_bar, its beta analog and the waiting horizon") {
  CHECK(cbar(2.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(cbar(3.0) == doctest::Approx(std::sqrt(4.0 / 24.0)).epsilon(1e-14));
  CHECK(cbar_beta(2.0, 1.0) == doctest::Approx(cbar(2.0)).epsilon(1e-14));
  CHECK(cbar_beta(2.0, 0.5) == doctest::Approx(std::pow(2.25 / 10.0, 1.0 / 1.5)).epsilon(1e-14));

  const double c = 1.0 / 12.0;
  CHECK(std::isinf(waiting_time_horizon(2.0, 2.0, c)));
  CHECK(std::isinf(waiting_time_horizon(2.0, 1.0, c)));
  CHECK(waiting_time_horizon(2.0, 0.5, c) == doctest::Approx(std::log(0.5) / -0.5).epsilon(1e-12));
  CHECK(waiting_time_horizon(2.0, 0.0, c) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(waiting_time_horizon(2.0, 1e-9, c) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("appendix constants") {
  SUBCASE("super-critical sum branch formulas") {
    const double m = 1.6, beta = 0.5, b = 1.0, A1 = 0.7;
    const double cs = critical_C(m, beta, b);
    const auto k = appendix_constants(2.0 * cs, m, beta, b, A1);
    CHECK(k.branch == ConstantsBranch::SuperCritSum);
    const double z1 = -std::pow(A1, (m - 1.0) / 2.0) /
                      std::sqrt(1.0 + b * (1.0 - beta) * std::pow(A1, beta - 1.0)) *
                      std::sqrt(2.0 * m * (m + beta) * (1.0 - beta)) / (m - beta);
    CHECK(*k.zeta1 == doctest::Approx(z1).epsilon(1e-14));
    CHECK(*k.C1 == doctest::Approx(A1 * std::pow(-z1, 2.0 / (m - beta))).epsilon(1e-14));
    CHECK_FALSE(k.shrinking);
    CHECK(k.C_bar == doctest::Approx(cbar(m)));
  }
  SUBCASE("no interior maximum of g when m+beta>2 is reported") {
    const double m = 1.6, beta = 0.5;
    const double cs = critical_C(m, beta, 1.0);
    const auto k = appendix_constants(0.5 * cs, m, beta, 1.0, 0.7);
    REQUIRE(k.shrinking);
    CHECK(k.shrinking->Gamma == doctest::Approx(1.0 - std::pow(0.5, 0.55)).epsilon(1e-14));
    CHECK_FALSE(k.shrinking->delta_star);
    CHECK(k.shrinking->zeta2);
    CHECK_FALSE(k.notes.empty());
  }
  SUBCASE("delta* agrees with a dense scan when m+beta<2") {
    const double m = 1.2, beta = 0.5;
    const double cs = critical_C(m, beta, 1.0);
    const auto k = appendix_constants(0.5 * cs, m, beta, 1.0, 0.7);
    REQUIRE(k.shrinking);
    REQUIRE(k.shrinking->delta_star);
    const double G = k.shrinking->Gamma;
    double best = -1e300;
    double arg = 0.0;
    for (int i = 1; i < 100000; ++i) {
      const double d = i / 1e5;
      const double v = g_oracle(d, G, 0.5, m, beta);
      if (v > best) {
        best = v;
        arg = d;
      }
    }
    CHECK(std::abs(*k.shrinking->delta_star - arg) <= 1e-5);
    CHECK(delta_objective(*k.shrinking->delta_star, G, 0.5, m, beta) >= best - 1e-12);
    const double dG = *k.shrinking->delta_star * G;
    CHECK(*k.shrinking->zeta2 == doctest::Approx(dG * *k.shrinking->l1).epsilon(1e-14));
    CHECK(*k.shrinking->C2 ==
          doctest::Approx(0.5 * cs * std::pow(1.0 - dG, 2.0 / (beta - m))).epsilon(1e-14));
    CHECK(*k.zeta1 == doctest::Approx(-std::pow(0.7 / cs, (m - beta) / 2.0)).epsilon(1e-14));
  }
  SUBCASE("marginal branch") {
    const auto k = appendix_constants(4.0, 1.5, 0.5, 6.0, 81.0);
    CHECK(k.branch == ConstantsBranch::Marginal);
    CHECK(*k.zeta_star == doctest::Approx(-4.5));
  }
  SUBCASE("property: Gamma in (0,1) below C*") {
    gen::Source src(77);
    for (int i = 0; i < 200; ++i) {
      const double m = src.uniform(1.05, 3.0);
      const double beta = src.uniform(0.05, 0.95);
      const double cs = critical_C(m, beta, 1.0);
      const auto k = appendix_constants(src.uniform(0.05, 0.95) * cs, m, beta, 1.0, 1.0);
      REQUIRE(k.shrinking);
      CHECK(k.shrinking->Gamma > 0.0);
      CHECK(k.shrinking->Gamma < 1.0);
      if (k.shrinking->delta_star) {
        CHECK(*k.shrinking->delta_star > 0.0);
        CHECK(*k.shrinking->delta_star < 1.0);
      }
    }
  }
  CHECK_THROWS_AS(appendix_constants(1.0, 2.0, 1.5, 1.0, 1.0), DomainError);
}
