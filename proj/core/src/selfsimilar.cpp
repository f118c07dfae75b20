#include "rdfront/selfsimilar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>

#include "farfield.hpp"
#include "rdfront/errors.hpp"
#include "rdfront/model.hpp"
#include "rdfront/optimize.hpp"
#include "rdfront/pdesolver.hpp"

namespace rdfront {

std::string_view to_string(ShapeMethod m) {
  return m == ShapeMethod::TimeMarch ? "TimeMarch" : "ClosedForm";
}

std::string_view to_string(ShapeKind k) {
  return k == ShapeKind::Diffusion ? "Diffusion" : "Reaction";
}

std::string_view to_string(ConstantsBranch b) {
  switch (b) {
    case ConstantsBranch::SuperCritSum: return "SuperCritSum";
    case ConstantsBranch::SubCritSum: return "SubCritSum";
    case ConstantsBranch::Marginal: return "Marginal";
  }
  return "SuperCritSum";
}

std::optional<double> ShapeProfile::value_at(double x) const {
  if (xi.empty()) return std::nullopt;
  if (x < xi.front()) return 0.0;
  if (x > xi.back()) return std::nullopt;
  const auto it = std::upper_bound(xi.begin(), xi.end(), x);
  if (it == xi.end()) return value.back();
  const auto j = static_cast<std::size_t>(it - xi.begin());
  const double f = (x - xi[j - 1]) / (xi[j] - xi[j - 1]);
  return (1.0 - f) * value[j - 1] + f * value[j];
}

namespace {

using detail::FarFieldSeries;

// Smallest y >= y_min (on a geometric ladder) where the far-field series at
// t = 1 is positive, its last term is below tol relative to the sum, and a
// receding front stays well left of y (first-order decay under 80%).
double far_right_end(const FarFieldSeries& series, double y_min, double tol) {
  double y = y_min;
  for (int i = 0; i < 60; ++i) {
    const double v = series.value(y, 1.0);
    const double decay = -series.coefficient(1, y) / series.coefficient(0, y);
    if (v > 0.0 && decay <= 0.8 && series.last_term(y, 1.0) <= tol * v) return y;
    y = 1.2 * y + 0.1;
  }
  return y;
}

struct MarchResult {
  std::vector<double> x;
  std::vector<double> u;
  double dx = 0.0;
};

MarchResult march(const ShapeParams& sp, const std::shared_ptr<const FarFieldSeries>& series,
                  double left, double right, double dx, const ShapeOptions& opt) {
  const Geometry geom = Geometry::planar(left, right);
  SolveSetup setup;
  setup.model = ReactionDiffusion{sp.m, sp.beta, sp.b};
  const auto x = make_grid(geom, dx);
  setup.initial.resize(x.size());
  std::transform(x.begin(), x.end(), setup.initial.begin(),
                 [&](double y) { return y > 0.0 ? sp.C * std::pow(y, sp.alpha) : 0.0; });
  const double y_end = x.back();
  setup.right_value = [series, y_end](double t) { return series->value(y_end, t); };
  setup.params = ProblemParams{sp.m, sp.beta, sp.b, sp.C, sp.alpha, 1.0, 1};
  NumericsConfig num;
  num.dx = dx;
  num.cfl_sigma = opt.cfl_sigma;
  num.t_end = 1.0;
  num.support_threshold_rel = opt.support_threshold_rel;
  auto trace = solve(setup, geom, num);
  return MarchResult{trace.x, std::move(trace.fields.back()), dx};
}

std::optional<std::size_t> support_edge(const std::vector<double>& u, double rel) {
  const double top = *std::max_element(u.begin(), u.end());
  return first_above(u, rel * top);
}

// Interface from a coarse march on a domain widened until it holds the front.
double coarse_interface(const ShapeParams& sp, const std::shared_ptr<const FarFieldSeries>& series,
                        const ShapeOptions& opt) {
  const double dx = std::max(opt.dx, 1.0 / 40.0);
  double left = -4.0;
  double right = 4.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double y_end = far_right_end(*series, right, opt.boundary_tol);
    try {
      const auto r = march(sp, series, left, y_end, dx, opt);
      const auto edge = support_edge(r.u, opt.support_threshold_rel);
      if (edge && r.x[*edge] < r.x.back() - 6.0 * dx) return r.x[*edge];
      right *= 2.0;
    } catch (const SolverAbort& e) {
      if (e.reason() != AbortReason::LeftBoundary) throw ShapeError(e.what());
      left *= 2.0;
    }
  }
  throw ShapeError("could not bracket the interface on a truncated line");
}

ShapeProfile march_profile(ShapeKind kind, const ShapeParams& sp, std::optional<double> guess,
                           const ShapeOptions& opt) {
  auto series = std::make_shared<const FarFieldSeries>(sp.m, sp.beta, sp.b, sp.C, sp.alpha,
                                                       opt.series_order);
  const double estimate = guess ? *guess : coarse_interface(sp, series, opt);
  const double scale = std::abs(estimate);
  double pad = std::max({0.5, 0.3 * scale, 20.0 * opt.dx});
  const double y_end = far_right_end(*series, std::max(0.0, estimate) + std::max(2.5, 0.5 * scale),
                                     opt.boundary_tol);

  for (int attempt = 0; attempt < 4; ++attempt) {
    const double left = std::min(0.0, estimate) - pad;
    MarchResult r;
    try {
      r = march(sp, series, left, y_end, opt.dx, opt);
    } catch (const SolverAbort& e) {
      if (e.reason() != AbortReason::LeftBoundary) throw ShapeError(e.what());
      pad *= 2.0;
      continue;
    }
    const auto edge = support_edge(r.u, opt.support_threshold_rel);
    if (!edge || *edge + 1 >= r.u.size() - 6) {
      throw ShapeError("interface not resolved inside the truncated line");
    }
    if (*edge <= 5) {
      pad *= 2.0;
      continue;
    }
    ShapeProfile prof;
    prof.kind = kind;
    prof.xi = std::move(r.x);
    prof.value = std::move(r.u);
    prof.interface = prof.xi[*edge];
    prof.dx = opt.dx;
    prof.params = sp;
    prof.method = ShapeMethod::TimeMarch;
    const std::size_t probe = prof.xi.size() - 2;
    const double expected = series->value(prof.xi[probe], 1.0);
    prof.right_asymptote_error = std::abs(prof.value[probe] - expected) / expected;
    if (!(prof.right_asymptote_error <= opt.asymptote_tol)) {
      throw ShapeError("far-field mismatch " + std::to_string(prof.right_asymptote_error) +
                       " exceeds tolerance");
    }
    return prof;
  }
  throw ShapeError("interface within 5 cells of the left boundary; domain too small");
}

void require_shape_options(const ShapeOptions& opt) {
  if (!(opt.dx > 0.0)) throw DomainError("shape: dx must be positive");
  if (!(opt.cfl_sigma > 0.0 && opt.cfl_sigma <= 1.0)) {
    throw DomainError("shape: cfl_sigma must lie in (0, 1]");
  }
  if (opt.series_order < 1) throw DomainError("shape: series_order must be >= 1");
}

}  // namespace

double pme_interface_by_ode(double C, double alpha, double m) {
  const double p = 2.0 - alpha * (m - 1.0);
  if (!(m > 1.0) || !(alpha > 0.0) || !(p > 0.0) || !(C > 0.0)) {
    throw DomainError("shape defined only for alpha<2/(m-1)");
  }
  // (f^m)'' + ξ f'/p - α f/p = 0 as a system in F = f^m, G = F'.
  const double xi0 = -1.0;
  auto rhs = [&](double xi, const std::array<double, 2>& y) {
    const double f = std::pow(std::max(y[0], 0.0), 1.0 / m);
    const double fp = y[1] / (m * std::pow(f, m - 1.0));
    return std::array<double, 2>{y[1], -xi * fp / p + alpha * f / p};
  };
  // Near the front the flux balance gives (f^{m-1})' = (m-1)/m * (-ξ0/p).
  double s = 1e-6;
  const double f0 = std::pow((m - 1.0) / m * (-xi0 / p) * s, 1.0 / (m - 1.0));
  std::array<double, 2> y{std::pow(f0, m), -xi0 / p * f0};
  double xi = xi0 + s;

  const std::array<double, 3> probes{50.0, 100.0, 200.0};
  std::array<double, 3> ratio{};
  for (std::size_t k = 0; k < probes.size(); ++k) {
    while (xi < probes[k]) {
      // The decaying mode has rate ~ ξ / (p m f^{m-1}); RK4 needs h * rate < 2.7.
      const double f = std::pow(y[0], 1.0 / m);
      const double rate = std::abs(xi) / (p * m * std::pow(f, m - 1.0));
      const double h = std::min({0.01 * (xi - xi0), 1.0 / rate, probes[k] - xi});
      const auto k1 = rhs(xi, y);
      const std::array<double, 2> y2{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
      const auto k2 = rhs(xi + 0.5 * h, y2);
      const std::array<double, 2> y3{y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
      const auto k3 = rhs(xi + 0.5 * h, y3);
      const std::array<double, 2> y4{y[0] + h * k3[0], y[1] + h * k3[1]};
      const auto k4 = rhs(xi + h, y4);
      y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
      xi += h;
      if (!(y[0] > 0.0) || !std::isfinite(y[0])) throw ShapeError("profile ODE lost positivity");
    }
    ratio[k] = std::pow(y[0], 1.0 / m) / std::pow(xi, alpha);
  }
  // f/ξ^α = C + A ξ^{-p} + B ξ^{-2p}; extrapolate the quadratic in ξ^{-p} to 0.
  std::array<double, 3> z{};
  for (std::size_t k = 0; k < 3; ++k) z[k] = std::pow(probes[k], -p);
  double c_found = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) w *= z[j] / (z[j] - z[i]);
    }
    c_found += w * ratio[i];
  }
  return xi0 * std::pow(C / c_found, (m - 1.0) / p);
}

ShapeProfile shape_pme(double C, double alpha, double m, const ShapeOptions& opt) {
  require_shape_options(opt);
  if (!(m > 1.0) || !(C > 0.0) || !(alpha > 0.0) || !(alpha < 2.0 / (m - 1.0))) {
    throw DomainError("shape defined only for alpha<2/(m-1)");
  }
  if (C != 1.0 && !opt.force_direct) return rescale_shape(shape_pme(1.0, alpha, m, opt), C);
  const ShapeParams sp{C, alpha, m, 1.0, 0.0};
  std::optional<double> guess;
  try {
    guess = pme_interface_by_ode(C, alpha, m);
  } catch (const Error&) {
    guess.reset();
  }
  return march_profile(ShapeKind::Diffusion, sp, guess, opt);
}

ShapeProfile shape_reaction(double C, double m, double beta, double b, const ShapeOptions& opt) {
  require_shape_options(opt);
  if (!(m > 1.0) || !(beta > 0.0) || !(beta < 1.0) || !(b > 0.0) || !(C > 0.0)) {
    throw DomainError("reaction shape requires m>1, 0<beta<1, b>0, C>0");
  }
  const double alpha = 2.0 / (m - beta);
  const ShapeParams sp{C, alpha, m, beta, b};
  const double cstar = critical_C(m, beta, b);

  ShapeProfile prof;
  if (nearly_equal(m + beta, 2.0) && !opt.force_time_march) {
    const double zs = marginal_zeta_star(C, m, beta, b);
    const double left = std::min(0.0, zs) - std::max(1.0, 0.3 * std::abs(zs));
    const double right = std::max(0.0, zs) + std::max(2.5, 0.5 * std::abs(zs));
    const auto cells = static_cast<std::size_t>(std::ceil((right - left) / opt.dx));
    prof.kind = ShapeKind::Reaction;
    prof.method = ShapeMethod::ClosedForm;
    prof.params = sp;
    prof.dx = opt.dx;
    prof.interface = zs;
    prof.xi.resize(cells + 1);
    prof.value.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double z = left + static_cast<double>(i) * opt.dx;
      prof.xi[i] = z;
      prof.value[i] = z > zs ? C * std::pow(z - zs, 1.0 / (1.0 - beta)) : 0.0;
    }
    const FarFieldSeries series(m, beta, b, C, alpha, opt.series_order);
    const double z = prof.xi[cells - 1];
    const double expected = series.value(z, 1.0);
    prof.right_asymptote_error = std::abs(prof.value[cells - 1] - expected) / expected;
  } else {
    prof = march_profile(ShapeKind::Reaction, sp, std::nullopt, opt);
  }

  const double gap = C / cstar - 1.0;
  if (std::abs(gap) > 0.1 && prof.interface * gap > 0.0) {
    throw ShapeError("interface sign contradicts sign(C* - C)");
  }
  return prof;
}

ShapeProfile rescale_shape(const ShapeProfile& base, double C) {
  if (base.kind != ShapeKind::Diffusion || base.params.C != 1.0) {
    throw DomainError("rescale_shape needs a C = 1 diffusion profile");
  }
  if (!(C > 0.0)) throw DomainError("rescale_shape requires C > 0");
  const double m = base.params.m;
  const double p = 2.0 - base.params.alpha * (m - 1.0);
  const double stretch = std::pow(C, (m - 1.0) / p);
  const double lift = std::pow(C, 2.0 / p);
  ShapeProfile out = base;
  out.params.C = C;
  out.dx = base.dx * stretch;
  out.interface = base.interface * stretch;
  for (auto& x : out.xi) x *= stretch;
  for (auto& v : out.value) v *= lift;
  return out;
}

double cbar(double m) {
  if (!(m > 1.0)) throw DomainError("C_bar requires m > 1");
  return std::pow((m - 1.0) * (m - 1.0) / (2.0 * m * (m + 1.0)), 1.0 / (m - 1.0));
}

double cbar_beta(double m, double beta) {
  if (!(m > beta) || !(beta > 0.0)) throw DomainError("C_bar(beta) requires 0 < beta < m");
  return std::pow((m - beta) * (m - beta) / (2.0 * m * (m + beta)), 1.0 / (m - beta));
}

double waiting_time_horizon(double m, double b, double C) {
  if (!(m > 1.0) || !(C > 0.0)) throw DomainError("waiting time requires m > 1, C > 0");
  const double k = std::pow(C / cbar(m), m - 1.0);
  if (b >= k) return std::numeric_limits<double>::infinity();
  if (b == 0.0) return k / (m - 1.0);
  const double arg = 1.0 - b * k;
  if (!(arg > 0.0)) throw DomainError("waiting time: logarithm argument is not positive");
  return std::log(arg) / (b * (1.0 - m));
}

double delta_objective(double delta, double Gamma, double C_ratio, double m, double beta) {
  const double dg = 1.0 - delta * Gamma;
  return std::pow(delta, (2.0 - beta - m) / (m - beta)) *
         (dg - std::pow(C_ratio, m - beta) / dg);
}

ConstantsBundle appendix_constants(double C, double m, double beta, double b, double A1) {
  if (!(m > 1.0) || !(beta > 0.0) || !(beta < 1.0) || !(b > 0.0) || !(C > 0.0)) {
    throw DomainError("constants require m>1, 0<beta<1, b>0, C>0");
  }
  if (!(A1 >= 0.0)) throw DomainError("constants require A1 = h(0) >= 0");
  ConstantsBundle out;
  out.C = C;
  out.m = m;
  out.beta = beta;
  out.b = b;
  out.A1 = A1;
  out.C_star = critical_C(m, beta, b);
  out.C_bar = cbar(m);
  const double cs = out.C_star;
  const double mb = m - beta;

  if (nearly_equal(m + beta, 2.0)) {
    out.branch = ConstantsBranch::Marginal;
    out.zeta_star = marginal_zeta_star(C, m, beta, b);
  } else if (m + beta > 2.0) {
    out.branch = ConstantsBranch::SuperCritSum;
    if (!(A1 > 0.0)) throw DomainError("zeta1 requires A1 > 0");
    const double rad = 1.0 + b * (1.0 - beta) * std::pow(A1, beta - 1.0);
    const double z1 = -std::pow(A1, (m - 1.0) / 2.0) / std::sqrt(rad) *
                      std::sqrt(2.0 * m * (m + beta) * (1.0 - beta)) / mb;
    out.zeta1 = z1;
    out.C1 = A1 * std::pow(-z1, 2.0 / mb);
  } else {
    out.branch = ConstantsBranch::SubCritSum;
    out.zeta1 = -std::pow(A1 / cs, mb / 2.0);
    out.C1 = cs;
  }

  if (C < cs && !nearly_equal(C, cs)) {
    ShrinkingConstants sh;
    const double ratio = C / cs;
    sh.Gamma = 1.0 - std::pow(ratio, mb / 2.0);
    if (out.branch == ConstantsBranch::SuperCritSum) {
      const double rad = b * (1.0 - beta) * (1.0 - std::pow(ratio, mb));
      sh.zeta2 = std::pow(C, -mb / 2.0) * std::pow(rad, mb / (2.0 * (1.0 - beta)));
    }
    const auto best = maximize_scalar(
        [&](double d) { return delta_objective(d, sh.Gamma, ratio, m, beta); }, 1e-8,
        1.0 - 1e-8, 1024, 1e-10);
    if (best.interior && best.value > 0.0) {
      const double dG = best.x * sh.Gamma;
      const double bracket =
          b * (1.0 - beta) / dG * (1.0 - dG - std::pow(ratio, mb) / (1.0 - dG));
      if (bracket < 0.0) throw DomainError("l1: negative radicand");
      sh.delta_star = best.x;
      sh.l1 = std::pow(C, -mb / 2.0) * std::pow(bracket, mb / (2.0 * (1.0 - beta)));
      sh.C2 = C * std::pow(1.0 - dG, 2.0 / (beta - m));
      if (out.branch == ConstantsBranch::SubCritSum) sh.zeta2 = dG * *sh.l1;
    } else {
      out.notes.push_back("delta_star: g has no interior positive maximum on (0,1)");
    }
    out.shrinking = sh;
  }
  return out;
}

}  // namespace rdfront
