#include <cmath>

#include "doctest.h"
#include "farfield.hpp"
#include "generators.hpp"
#include "rdfront/optimize.hpp"

using namespace rdfront;
using rdfront::detail::FarFieldSeries;
using rdfront::detail::PowerSum;

TEST_CASE("maximize_scalar: smooth interior maximum") {
  const auto r = maximize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(r.interior);
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("maximize_scalar: monotone function reports a boundary maximum") {
  const auto r = maximize_scalar([](double x) { return x; }, 0.0, 1.0);
  CHECK_FALSE(r.interior);
  CHECK(r.x == doctest::Approx(1.0));
}

TEST_CASE("maximize_scalar: ties break toward the larger abscissa") {
  const auto r = maximize_scalar([](double) { return 1.0; }, 0.0, 1.0, 16);
  CHECK(r.x == doctest::Approx(1.0));
}

TEST_CASE("property: golden section agrees with a dense scan") {
  gen::Source src(2024);
  for (int i = 0; i < 200; ++i) {
    const double c = src.uniform(0.05, 0.95);
    const double w = src.uniform(0.5, 4.0);
    const double h = src.uniform(0.1, 10.0);
    auto f = [=](double x) { return h * std::exp(-w * (x - c) * (x - c)) + 0.1 * x; };
    const auto r = maximize_scalar(f, 0.0, 1.0);
    double best_x = 0.0;
    double best = -1e300;
    const int n = 100000;
    for (int k = 0; k <= n; ++k) {
      const double x = static_cast<double>(k) / n;
      if (f(x) > best) {
        best = f(x);
        best_x = x;
      }
    }
    CHECK(r.value >= best - 1e-9);
    CHECK(std::abs(r.x - best_x) <= 2e-5);
  }
}

TEST_CASE("PowerSum algebra") {
  const auto a = PowerSum::monomial(2.0, 1.5) + PowerSum::monomial(-1.0, 0.5);
  const auto b = PowerSum::monomial(3.0, 0.5);
  CHECK((a * b)(4.0) == doctest::Approx(a(4.0) * b(4.0)));
  CHECK((a + b)(2.0) == doctest::Approx(a(2.0) + b(2.0)));
  // (2 y^1.5)'' = 1.5 y^-0.5, (-y^0.5)'' = 0.25 y^-1.5
  CHECK(a.second_derivative()(4.0) == doctest::Approx(1.5 / 2.0 + 0.25 / 8.0));
  CHECK((a + a.scaled(-1.0)).empty());
  CHECK(a.divided_by({2.0, 0.5})(9.0) == doctest::Approx(a(9.0) / (2.0 * 3.0)));
}

TEST_CASE("far-field series reproduces exact solutions") {
  SUBCASE("linear traveling wave of w_t = (w^2)_yy") {
    const FarFieldSeries s(2.0, 1.0, 0.0, 1.0, 1.0, 8);
    for (double y : {0.5, 1.0, 3.0}) {
      for (double t : {0.0, 0.3, 1.0}) CHECK(s.value(y, t) == doctest::Approx(y + 2.0 * t));
    }
  }
  SUBCASE("marginal reaction wave") {
    const FarFieldSeries s(1.5, 0.5, 6.0, 4.0, 2.0, 8);
    for (double y : {0.5, 2.0}) {
      for (double t : {0.1, 0.5}) {
        CHECK(s.value(y, t) == doctest::Approx(4.0 * (y + 4.5 * t) * (y + 4.5 * t)));
      }
    }
  }
  SUBCASE("separable quadratic blow-up profile") {
    // w = C y^2 / (1 - 12 C t) for m = 2, α = 2.
    const double C = 0.5;
    const FarFieldSeries s(2.0, 1.0, 0.0, C, 2.0, 14);
    const double t = 0.02;
    CHECK(s.value(1.7, t) == doctest::Approx(C * 1.7 * 1.7 / (1.0 - 12.0 * C * t)).epsilon(1e-10));
    CHECK(s.last_term(1.7, t) < 1e-10);
  }
}
