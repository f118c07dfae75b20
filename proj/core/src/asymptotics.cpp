#include "rdfront/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "rdfront/errors.hpp"

namespace rdfront {

FrontEstimator default_estimator(Regime r) {
  return r == Regime::Expanding || r == Regime::CriticalExpanding ? FrontEstimator::Pressure
                                                                   : FrontEstimator::Node;
}

PowerLawFit fit_power_law(const InterfaceTrace& itrace, FitWindow window) {
  if (!(window.t_min > 0.0) || !(window.t_max > window.t_min)) {
    throw DomainError("fit window must satisfy 0 < t_min < t_max");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < itrace.times.size(); ++i) {
    const double t = itrace.times[i];
    const double e = std::abs(itrace.front[i] - itrace.R);
    if (t < window.t_min || t > window.t_max || !(e > 2.0 * itrace.dx)) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(e));
  }
  if (lx.size() < 8) {
    throw InsufficientMotion("only " + std::to_string(lx.size()) +
                             " samples move more than 2 dx inside the fit window");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientMotion("fit samples share a single time");
  PowerLawFit fit;
  fit.exponent_q = sxy / sxx;
  fit.coefficient_k = std::exp(my - fit.exponent_q * mx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (my + fit.exponent_q * (lx[i] - mx));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.n_points = static_cast<int>(lx.size());
  return fit;
}

Prediction predict(const ProblemParams& params, const PredictOptions& opt) {
  Prediction out;
  out.verdict = classify(params);
  const Regime regime = out.verdict.regime;
  if (regime == Regime::Unsupported || regime == Regime::Undetermined) {
    throw DomainError("no interface law for a " + std::string(to_string(regime)) +
                      " instance" + (out.verdict.reason.empty() ? "" : ": " + out.verdict.reason));
  }
  out.q = out.verdict.time_exponent;

  switch (regime) {
    case Regime::Expanding: {
      double xi_star = 0.0;
      if (opt.xi_from_ode) {
        xi_star = pme_interface_by_ode(params.C, params.alpha, params.m);
      } else {
        out.shape = shape_pme(params.C, params.alpha, params.m, opt.shape);
        xi_star = out.shape->interface;
      }
      out.interface_constant = xi_star;
      out.k = -xi_star;
      break;
    }
    case Regime::CriticalExpanding:
    case Regime::CriticalShrinking: {
      out.shape = shape_reaction(params.C, params.m, params.beta, params.b, opt.shape);
      const double zeta_star = out.shape->interface;
      out.interface_constant = zeta_star;
      const double A1 = out.shape->value_at(0.0).value_or(0.0);
      out.constants = appendix_constants(params.C, params.m, params.beta, params.b, A1);
      const auto& c = *out.constants;
      for (const auto& n : c.notes) out.notes.push_back(n);
      if (c.branch == ConstantsBranch::Marginal) {
        out.k = std::abs(zeta_star);
        break;
      }
      std::optional<double> bound;
      if (regime == Regime::CriticalExpanding) {
        bound = c.zeta1;
      } else if (c.shrinking) {
        bound = c.shrinking->zeta2;
      }
      const double a = std::abs(zeta_star);
      const double b = bound ? std::abs(*bound) : a;
      if (!bound) out.notes.push_back("interval bound unavailable; interval collapsed to |zeta*|");
      out.k_lo = std::min(a, b);
      out.k_hi = std::max(a, b);
      break;
    }
    case Regime::Shrinking:
      out.k = shrinking_coefficient(params.C, params.alpha, params.beta, params.b);
      break;
    case Regime::Stationary:
      try {
        out.waiting_horizon = waiting_time_horizon(params.m, params.b, params.C);
      } catch (const DomainError& e) {
        out.notes.push_back(std::string("waiting horizon undefined: ") + e.what());
      }
      break;
    default: break;
  }
  return out;
}

std::optional<double> sample_xt(const SolutionTrace& trace, double x, double t) {
  const auto& ts = trace.times;
  if (ts.empty() || t < ts.front() || t > ts.back()) return std::nullopt;
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  auto j = static_cast<std::size_t>(it - ts.begin());
  if (ts[j] == t) return sample(trace, j, x);
  const auto a = sample(trace, j - 1, x);
  const auto b = sample(trace, j, x);
  if (!a || !b) return std::nullopt;
  const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
  return (1.0 - w) * *a + w * *b;
}

namespace {

std::vector<ProbeResult> profile_probes(const ProblemParams& p, const SolutionTrace& trace,
                                        const Prediction& pred, FitWindow window) {
  std::vector<ProbeResult> out;
  if (trace.geometry.kind != GeometryKind::Radial || !pred.q) return out;
  // Snapshot closest (in log t) to the middle of the window.
  const double target = std::sqrt(window.t_min * window.t_max);
  std::size_t best = 0;
  double best_gap = INFINITY;
  for (std::size_t i = 1; i < trace.times.size(); ++i) {
    const double gap = std::abs(std::log(trace.times[i] / target));
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (best == 0) return out;
  const double t = trace.times[best];
  const double q = *pred.q;

  std::vector<std::pair<double, double>> rays;  // (coordinate, expected)
  double amplitude_power = 0.0;
  const Regime r = pred.verdict.regime;
  if (r == Regime::Expanding && pred.shape) {
    const double xs = pred.shape->interface;
    for (double f : {0.75, 0.5, 0.25}) {
      const double rho = f * xs;
      if (auto v = pred.shape->value_at(rho)) rays.emplace_back(rho, *v);
    }
    amplitude_power = p.alpha * q;
  } else if ((r == Regime::CriticalExpanding || r == Regime::CriticalShrinking) && pred.shape) {
    const double zs = pred.shape->interface;
    const double span = std::max(std::abs(zs), 1.0);
    for (double f : {0.25, 0.5, 1.0}) {
      const double rho = zs + f * span;
      if (auto v = pred.shape->value_at(rho)) rays.emplace_back(rho, *v);
    }
    amplitude_power = 1.0 / (1.0 - p.beta);
  } else if (r == Regime::Shrinking && pred.k) {
    for (double f : {1.5, 2.0, 3.0}) {
      const double l = f * *pred.k;
      const double base =
          std::pow(p.C, 1.0 - p.beta) * std::pow(l, p.alpha * (1.0 - p.beta)) -
          p.b * (1.0 - p.beta);
      rays.emplace_back(l, std::pow(std::max(base, 0.0), 1.0 / (1.0 - p.beta)));
    }
    amplitude_power = 1.0 / (1.0 - p.beta);
  }
  for (const auto& [coord, expected] : rays) {
    const double radius = p.R - coord * std::pow(t, q);
    if (radius < 0.0) continue;
    const auto u = sample(trace, best, radius);
    if (!u) continue;
    ProbeResult pr;
    pr.coordinate = coord;
    pr.time = t;
    pr.expected = expected;
    pr.measured = *u / std::pow(t, amplitude_power);
    pr.rel_error = expected > 0.0 ? std::abs(pr.measured - expected) / expected : INFINITY;
    out.push_back(pr);
  }
  return out;
}

}  // namespace

VerdictReport verify(const ProblemParams& params, const SolutionTrace& trace,
                     const InterfaceTrace& itrace, const Prediction& prediction,
                     const VerifyOptions& opt) {
  VerdictReport rep;
  rep.regime_expected = prediction.verdict.regime;
  rep.tol_q = opt.tol_q;
  rep.tol_k = opt.tol_k;
  rep.dx = itrace.dx;
  rep.notes = prediction.notes;
  const double t_end = trace.times.empty() ? 0.0 : trace.times.back();

  if (rep.regime_expected == Regime::Stationary) {
    double delta = t_end;
    if (prediction.waiting_horizon) {
      delta = std::min(0.1 * *prediction.waiting_horizon, t_end);
    } else {
      rep.notes.push_back("no waiting horizon; stationary check runs to t_end");
    }
    double largest = 0.0;
    for (std::size_t i = 0; i < itrace.times.size(); ++i) {
      if (itrace.times[i] > delta) break;
      const double e = itrace.excursion(i);
      if (std::abs(e) > std::abs(largest)) largest = e;
    }
    rep.stationary_delta = delta;
    rep.max_excursion = std::abs(largest);
    const bool still = std::abs(largest) <= 2.0 * itrace.dx;
    rep.regime_observed =
        still ? Regime::Stationary : (largest > 0.0 ? Regime::Expanding : Regime::Shrinking);
    rep.regime_ok = still;
    rep.q_ok = rep.k_ok = true;
    rep.pass = still;
    return rep;
  }

  rep.predicted_q = prediction.q;
  rep.predicted_k = prediction.k;
  rep.k_lo = prediction.k_lo;
  rep.k_hi = prediction.k_hi;
  const FitWindow window = opt.window.value_or(FitWindow::default_for(t_end));
  try {
    const auto fit = fit_power_law(itrace, window);
    rep.fit = fit;
    rep.measured_q = fit.exponent_q;
    rep.measured_k = fit.coefficient_k;
    double mean_excursion = 0.0;
    for (std::size_t i = 0; i < itrace.times.size(); ++i) {
      if (itrace.times[i] >= window.t_min && itrace.times[i] <= window.t_max) {
        mean_excursion += itrace.excursion(i);
      }
    }
    const int observed_dir = mean_excursion > 0.0 ? 1 : -1;
    if (observed_dir == direction(rep.regime_expected)) {
      rep.regime_observed = rep.regime_expected;
    } else {
      rep.regime_observed = observed_dir > 0 ? Regime::Expanding : Regime::Shrinking;
    }
  } catch (const InsufficientMotion& e) {
    rep.regime_observed = Regime::Stationary;
    rep.notes.push_back(e.what());
  }
  rep.regime_ok = rep.regime_observed == rep.regime_expected;

  if (rep.measured_q && rep.predicted_q) {
    rep.q_ok = std::abs(*rep.measured_q / *rep.predicted_q - 1.0) <= opt.tol_q;
  }
  if (rep.measured_k) {
    if (rep.predicted_k) {
      rep.k_ok = std::abs(*rep.measured_k / *rep.predicted_k - 1.0) <= opt.tol_k;
    } else if (rep.k_lo && rep.k_hi) {
      rep.k_ok = *rep.measured_k >= *rep.k_lo * (1.0 - opt.tol_k) &&
                 *rep.measured_k <= *rep.k_hi * (1.0 + opt.tol_k);
    }
  }
  rep.pass = rep.regime_ok && rep.q_ok && rep.k_ok;
  rep.probes = profile_probes(params, trace, prediction, window);
  return rep;
}

std::vector<RescaleDiscrepancy> rescale_convergence(const SolutionTrace& trace,
                                                    const ShapeProfile* shape,
                                                    const std::vector<double>& ks,
                                                    const RescaleProbes& probes,
                                                    RescaleKind kind) {
  const ProblemParams& p = trace.params;
  if (kind == RescaleKind::Diffusion && shape == nullptr) {
    throw DomainError("diffusion rescaling needs a shape profile");
  }
  const double alpha = p.alpha;
  const double pe = 2.0 + alpha * (1.0 - p.m);
  std::vector<RescaleDiscrepancy> out;
  for (double k : ks) {
    RescaleDiscrepancy d;
    d.k = k;
    const double space = std::pow(k, -1.0 / alpha);
    const double time =
        kind == RescaleKind::Diffusion ? std::pow(k, -pe / alpha) : std::pow(k, p.beta - 1.0);
    for (double s : probes.s) {
      for (double tau : probes.tau) {
        const double radius = p.R - space * s;
        const auto u = radius >= 0.0 ? sample_xt(trace, radius, time * tau) : std::nullopt;
        std::optional<double> limit;
        if (kind == RescaleKind::Diffusion) {
          const auto f = shape->value_at(s * std::pow(tau, -1.0 / pe));
          if (f) limit = std::pow(tau, alpha / pe) * *f;
        } else {
          const double base = std::pow(p.C, 1.0 - p.beta) *
                                  std::pow(std::max(s, 0.0), alpha * (1.0 - p.beta)) -
                              p.b * (1.0 - p.beta) * tau;
          limit = std::pow(std::max(base, 0.0), 1.0 / (1.0 - p.beta));
        }
        if (!u || !limit) {
          ++d.skipped;
          continue;
        }
        const double diff = std::abs(k * *u - *limit);
        d.discrepancy = std::max(d.discrepancy.value_or(0.0), diff);
        ++d.evaluated;
      }
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace rdfront
