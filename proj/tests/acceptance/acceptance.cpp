// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rdfront/asymptotics.hpp"
#include "rdfront/bounds.hpp"
#include "rdfront/errors.hpp"
#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

using namespace rdfront;

namespace tol {
constexpr double kPmeInterfaceRel = 1e-2;
constexpr double kPmeRuntime = 30.0;
constexpr double kReactionSup = 2e-2;
constexpr double kReactionInterface = 2e-2;
constexpr double kWaveSpeedRel = 2e-2;
constexpr double kWaveProfileRel = 5e-2;
constexpr double kWaveRuntime = 60.0;
constexpr double kExponentRel = 0.10;
constexpr double kCoefficientRel = 0.15;
constexpr double kRadialRuntime = 300.0;
constexpr double kScalingSup = 1e-2;
constexpr double kScalingRatio = 1e-2;
constexpr double kMassDrift = 1e-9;
constexpr double kComparison = 1e-12;
constexpr double kCertificateFactor = 2.0;
}  // namespace tol

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

NumericsConfig radial_numerics(double dx, double t_end) {
  NumericsConfig num;
  num.dx = dx;
  num.cfl_sigma = 0.9;
  num.t_end = t_end;
  num.snapshot_times = log_spaced_times(t_end / 1000.0, t_end, 80);
  return num;
}

// Radial run plus power-law fit over the default window.
struct RadialFit {
  double q = 0.0;
  double k = 0.0;
  double runtime = 0.0;
};

RadialFit radial_fit(const ProblemParams& p, double r_max, double dx, double t_end,
                     FrontEstimator est) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = solve(p, Geometry::radial(p.N, r_max), radial_numerics(dx, t_end));
  const auto it = interface_trace(tr, est);
  const auto fit = fit_power_law(it, FitWindow::default_for(t_end));
  return {fit.exponent_q, fit.coefficient_k, seconds_since(t0)};
}

Outcome c1_pme_traveling_wave() {
  ShapeOptions opt;
  opt.dx = 1.0 / 400.0;
  opt.cfl_sigma = 0.9;
  bool ok = true;
  std::string d;
  for (double m : {2.0, 3.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = shape_pme(1.0, 1.0 / (m - 1.0), m, opt);
    const double secs = seconds_since(t0);
    const double exact = -m / (m - 1.0);
    const double rel = std::abs(f.interface / exact - 1.0);
    ok = ok && rel <= tol::kPmeInterfaceRel && secs < tol::kPmeRuntime;
    d += fmt("m=%g xi*=%.5f exact=%.5f rel=%.2e %.1fs; ", m, f.interface, exact, rel, secs);
  }
  return {ok, d};
}

Outcome c2_marginal_reaction() {
  const double m = 1.5, beta = 0.5, b = 6.0;
  ShapeOptions opt;
  opt.force_time_march = true;
  bool ok = true;
  std::string d;
  const double cases[][2] = {{0.25, 4.5}, {1.0, 0.0}, {4.0, -4.5}};
  for (const auto& c : cases) {
    const double C = c[0], zs = c[1];
    const auto h = shape_reaction(C, m, beta, b, opt);
    double worst = 0.0;
    for (double z = zs + 0.1; z <= zs + 2.0 + 1e-12; z += 0.01) {
      const auto v = h.value_at(z);
      if (!v) {
        worst = INFINITY;
        break;
      }
      const double exact = C * (z - zs) * (z - zs);
      worst = std::max(worst, std::abs(*v - exact) / exact);
    }
    const double dz = std::abs(h.interface - zs);
    ok = ok && h.method == ShapeMethod::TimeMarch && worst <= tol::kReactionSup &&
         dz <= tol::kReactionInterface;
    d += fmt("C=%g sup=%.2e dzeta=%.2e; ", C, worst, dz);
  }
  return {ok, d};
}

Outcome c3_sign_law() {
  const double m = 2.0, beta = 0.5, b = 1.0;
  const double cs = std::pow(b * (m - beta) * (m - beta) / (2.0 * m * (m + beta)), 1.0 / (m - beta));
  ShapeOptions opt;
  opt.dx = 1.0 / 100.0;
  int agree = 0;
  std::string d;
  const double ladder[] = {0.3, 0.45, 0.6, 0.75, 0.85, 1.15, 1.4, 1.8, 2.4, 3.0};
  for (double ratio : ladder) {
    const double C = ratio * cs;
    double zs = NAN;
    try {
      zs = shape_reaction(C, m, beta, b, opt).interface;
    } catch (const Error& e) {
      d += fmt("C/C*=%g error: %s; ", ratio, e.what());
      continue;
    }
    const bool same = (zs > 0.0) == (cs - C > 0.0) && zs != 0.0;
    agree += same;
    d += fmt("%g:%+.3f ", ratio, zs);
  }
  return {agree == 10, fmt("%d/10 agree; ", agree) + d};
}

Outcome c4_traveling_wave_pde() {
  const auto tw = traveling_wave_check(1.0 / 200.0, 0.9, 0.5);
  const double speed_rel = std::abs(tw.speed / -4.5 - 1.0);
  const bool ok = speed_rel <= tol::kWaveSpeedRel && tw.rel_linf_error <= tol::kWaveProfileRel &&
                  tw.runtime_seconds < tol::kWaveRuntime;
  return {ok, fmt("speed=%.5f (rel %.2e) profile rel err=%.2e %.1fs", tw.speed, speed_rel,
                  tw.rel_linf_error, tw.runtime_seconds)};
}

Outcome c5_expanding_radial() {
  const ProblemParams p{2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 2};
  const auto r = radial_fit(p, 1.3, 1.0 / 400.0, 0.05, FrontEstimator::Pressure);
  // q = 1/(2 + α(1-m)) = 1; k = -ξ* = m/(m-1) = 2 for the traveling-wave family.
  const double eq = std::abs(r.q - 1.0);
  const double ek = std::abs(r.k / 2.0 - 1.0);
  const bool ok = eq <= tol::kExponentRel && ek <= tol::kCoefficientRel && r.runtime < tol::kRadialRuntime;
  return {ok, fmt("q=%.4f (rel %.3f) k=%.4f (rel %.3f) %.1fs", r.q, eq, r.k, ek, r.runtime)};
}

Outcome c6_shrinking_radial() {
  const ProblemParams p{2.0, 0.5, 1.0, 1.0, 4.0, 1.0, 2};
  const auto r = radial_fit(p, 1.2, 1.0 / 400.0, 0.04, FrontEstimator::Node);
  const double q = 1.0 / (4.0 * 0.5);
  const double l = std::pow(1.0, -0.25) * std::pow(1.0 * 0.5, 1.0 / (4.0 * 0.5));
  const double eq = std::abs(r.q / q - 1.0);
  const double ek = std::abs(r.k / l - 1.0);
  const bool ok = eq <= tol::kExponentRel && ek <= tol::kCoefficientRel;
  return {ok, fmt("q=%.4f vs %.4f (rel %.3f) k=%.4f vs %.5f (rel %.3f) %.1fs", r.q, q, eq, r.k, l,
                  ek, r.runtime)};
}

struct WaitingRun {
  ProblemParams p{2.0, 1.0, 1.0, 1.0 / 12.0, 2.0, 1.0, 2};
  double dx = 1.0 / 200.0;
  SolutionTrace trace;
  double T = 0.0;
  double delta = 0.0;
};

const WaitingRun& waiting_run() {
  static const WaitingRun run = [] {
    WaitingRun w;
    w.T = waiting_time_horizon(w.p.m, w.p.b, w.p.C);
    const double t_end = 0.2;
    w.delta = std::min(0.1 * w.T, t_end);
    w.trace = solve(w.p, Geometry::radial(2, 1.3), radial_numerics(w.dx, t_end));
    return w;
  }();
  return run;
}

Outcome c7_waiting_time() {
  const auto& w = waiting_run();
  const auto it = interface_trace(w.trace, FrontEstimator::Node);
  double worst = 0.0;
  for (std::size_t i = 0; i < it.times.size(); ++i) {
    if (it.times[i] <= w.delta) worst = std::max(worst, std::abs(it.front[i] - it.R));
  }
  bool insufficient = false;
  try {
    fit_power_law(it, FitWindow::default_for(w.trace.times.back()));
  } catch (const InsufficientMotion&) {
    insufficient = true;
  }
  const bool ok = worst <= 2.0 * w.dx && insufficient;
  return {ok, fmt("T=%g delta=%g max excursion=%.4f (2dx=%.4f) InsufficientMotion=%s", w.T, w.delta,
                  worst, 2.0 * w.dx, insufficient ? "yes" : "no")};
}

Outcome c8_sandwich() {
  const auto& w = waiting_run();
  const auto tw = traveling_wave_check(w.dx, 0.9, 0.5);
  const double tol_abs = tol::kCertificateFactor * tw.rel_linf_error * w.trace.max_u0;
  StationaryBoundOptions o;
  o.delta_cap = w.delta;
  const auto bp = stationary_bounds(BoundCase::S5a, w.p, 0.1, o);
  const auto rep = certify(w.trace, bp, tol_abs);
  const bool ok = rep.pass && rep.violations_lower == 0;
  return {ok, fmt("tol=%.3e worst=%.3e nodes=%lld lower=%lld upper=%lld delta_eps=%g", tol_abs,
                  rep.worst_violation, static_cast<long long>(rep.nodes_checked),
                  static_cast<long long>(rep.violations_lower),
                  static_cast<long long>(rep.violations_upper), bp.delta_eps)};
}

Outcome c9_scaling() {
  const double m = 2.0, alpha = 1.0, C = 2.0;
  ShapeOptions opt;
  opt.dx = 1.0 / 400.0;
  const auto base = shape_pme(1.0, alpha, m, opt);
  const auto scaled = rescale_shape(base, C);
  auto direct_opt = opt;
  direct_opt.force_direct = true;
  const auto direct = shape_pme(C, alpha, m, direct_opt);
  const double lo = std::max(direct.xi.front(), scaled.xi.front());
  const double hi = std::min(direct.xi.back(), scaled.xi.back());
  double diff = 0.0, top = 0.0;
  for (double x = lo; x <= hi; x += opt.dx) {
    const auto a = direct.value_at(x);
    const auto b = scaled.value_at(x);
    if (!a || !b) continue;
    diff = std::max(diff, std::abs(*a - *b));
    top = std::max(top, std::abs(*b));
  }
  const double sup_rel = diff / top;
  const double p = 2.0 - alpha * (m - 1.0);
  const double ratio = direct.interface / base.interface;
  const double ratio_err = std::abs(ratio / std::pow(C, (m - 1.0) / p) - 1.0);
  const bool ok = sup_rel <= tol::kScalingSup && ratio_err <= tol::kScalingRatio;
  return {ok, fmt("sup rel=%.2e ratio=%.5f (rel %.2e) on [%.2f, %.2f]", sup_rel, ratio, ratio_err, lo,
                  hi)};
}

// Decision table for b > 0 written out cell by cell. Grid values that land
// within 1e-12 (relative) of a boundary count as on it.
Regime table_regime(double m, double beta, double b, double C, double alpha) {
  auto on = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };
  if (beta < 1.0) {
    const double line = 2.0 / (m - beta);
    if (on(alpha, line)) {
      const double cs =
          std::pow(b * (m - beta) * (m - beta) / (2.0 * m * (m + beta)), 1.0 / (m - beta));
      if (on(C, cs)) return Regime::Undetermined;
      return C > cs ? Regime::CriticalExpanding : Regime::CriticalShrinking;
    }
    return alpha < line ? Regime::Expanding : Regime::Shrinking;
  }
  const double line = 2.0 / (m - 1.0);
  return alpha < line && !on(alpha, line) ? Regime::Expanding : Regime::Stationary;
}

Outcome c10_truth_table() {
  const double m = 2.0, b = 1.0, C = 1.0;
  int mismatches = 0, cells = 0;
  int seen[8] = {};
  auto check = [&](double alpha, double beta) {
    const auto r = classify({m, beta, b, C, alpha, 1.0, 2}).regime;
    const auto want = table_regime(m, beta, b, C, alpha);
    mismatches += r != want;
    ++cells;
    ++seen[static_cast<int>(want)];
  };
  for (int j = 0; j < 20; ++j) {
    const double beta = 0.2 + (3.0 - 0.2) * j / 19.0;
    for (int i = 0; i < 20; ++i) check(0.2 + (4.0 - 0.2) * i / 19.0, beta);
    if (beta < 1.0) check(2.0 / (m - beta), beta);
  }
  int kinds = 0;
  for (int s : seen) kinds += s > 0;
  return {mismatches == 0 && kinds >= 4,
          fmt("%d cells, %d mismatches, %d regimes present", cells, mismatches, kinds)};
}

Outcome c11_conservation_and_comparison() {
  const ProblemParams p{2.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1};
  NumericsConfig num;
  num.dx = 1.0 / 200.0;
  num.cfl_sigma = 0.9;
  num.t_end = 0.05;
  num.snapshot_stride = 100;
  const auto tr = solve(p, Geometry::planar(-2.0, 2.0), num);
  double drift = 0.0;
  for (double mk : tr.mass_series) drift = std::max(drift, std::abs(mk / tr.mass_series.front() - 1.0));

  std::mt19937_64 rng(20261015);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  double worst = 0.0;
  for (int pair = 0; pair < 5; ++pair) {
    const auto geom = Geometry::radial(2, 2.0);
    NumericsConfig n2;
    n2.dx = 0.01;
    n2.t_end = 0.005;
    n2.snapshot_stride = 25;
    const auto x = make_grid(geom, n2.dx);
    SolveSetup lo;
    lo.model = {uni(1.2, 3.0), uni(0.3, 2.0), uni(0.0, 3.0)};
    lo.initial.assign(x.size(), 0.0);
    const double width = uni(0.5, 1.2);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < width) lo.initial[i] = uni(0.3, 1.0) * (width - x[i]);
    }
    SolveSetup hi = lo;
    for (auto& v : hi.initial) v += v > 0.0 ? uni(0.0, 0.2) : 0.0;
    const double umax = *std::max_element(hi.initial.begin(), hi.initial.end());
    n2.fixed_dt = stable_dt(lo.model, geom, n2.dx, 0.5, umax * 1.01);
    const auto a = solve(lo, geom, n2);
    const auto b = solve(hi, geom, n2);
    for (std::size_t k = 0; k < a.fields.size(); ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, a.fields[k][i] - b.fields[k][i]);
      }
    }
  }
  const bool ok = drift <= tol::kMassDrift && worst <= tol::kComparison;
  return {ok, fmt("mass drift=%.2e, worst ordering excess=%.2e over 5 pairs", drift, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pme traveling-wave interface", c1_pme_traveling_wave},
      {"marginal reaction profile by time march", c2_marginal_reaction},
      {"interface sign against C*", c3_sign_law},
      {"planar PDE vs exact traveling wave", c4_traveling_wave_pde},
      {"radial expanding interface law", c5_expanding_radial},
      {"radial shrinking interface law", c6_shrinking_radial},
      {"waiting time", c7_waiting_time},
      {"stationary sandwich certificate", c8_sandwich},
      {"profile scaling in C", c9_scaling},
      {"classifier truth table", c10_truth_table},
      {"mass conservation and comparison", c11_conservation_and_comparison},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
