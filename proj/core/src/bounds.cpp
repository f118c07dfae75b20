#include "rdfront/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "rdfront/asymptotics.hpp"
#include "rdfront/errors.hpp"

namespace rdfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pos(double v) { return v > 0.0 ? v : 0.0; }

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// (1 - e^{-b(m-1)t}) / b, continuous at b = 0.
double decay_integral(double b, double m, double t) {
  if (b == 0.0) return (m - 1.0) * t;
  return -std::expm1(-b * (m - 1.0) * t) / b;
}

// s_+^a with the convention 0^a = 0 for a > 0.
double spow(double s, double a) { return s > 0.0 ? std::pow(s, a) : 0.0; }

std::function<bool(double, double)> outside_of(double R_eps, double delta) {
  return [R_eps, delta](double r, double t) { return r >= R_eps && t <= delta; };
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

std::string_view to_string(BoundCase c) {
  switch (c) {
    case BoundCase::S5a: return "S5a";
    case BoundCase::S5b: return "S5b";
    case BoundCase::S5c: return "S5c";
    case BoundCase::S5dCritical: return "S5d_critical";
    case BoundCase::S5dSuper: return "S5d_super";
    case BoundCase::ExpandUpperCgtCstar: return "ExpandUpper_CgtCstar";
    case BoundCase::ShrinkUpperSumGe2: return "ShrinkUpper_mbge2";
    case BoundCase::CriticalShrinkUpperSumLt2: return "CriticalShrinkUpper_mblt2";
    case BoundCase::ShrinkUpperSumLt2: return "ShrinkUpper_mblt2";
    case BoundCase::ShrinkUpperEps: return "ShrinkUpper_eps";
  }
  return "?";
}

BoundCase bound_case_from_string(std::string_view s) {
  for (auto c : {BoundCase::S5a, BoundCase::S5b, BoundCase::S5c, BoundCase::S5dCritical,
                 BoundCase::S5dSuper, BoundCase::ExpandUpperCgtCstar, BoundCase::ShrinkUpperSumGe2,
                 BoundCase::CriticalShrinkUpperSumLt2, BoundCase::ShrinkUpperSumLt2,
                 BoundCase::ShrinkUpperEps}) {
    if (to_string(c) == s) return c;
  }
  throw DomainError("unknown bound case: " + std::string(s));
}

std::string_view to_string(CbarReading r) {
  return r == CbarReading::DiffusionOnly ? "diffusion_only" : "beta_analog";
}

double gamma_eps(double m, double C, double eps) {
  return 2.0 * m * (m + 1.0) * std::pow(pos(C + eps), m - 1.0) / (m - 1.0) + eps;
}

double d_eps(const ProblemParams& p, double eps, CbarReading reading) {
  const double sb = sign(p.b);
  const double line = 2.0 / (p.m - p.beta);
  if (nearly_equal(p.alpha, line)) {
    const double cb = reading == CbarReading::DiffusionOnly ? cbar(p.m) : cbar_beta(p.m, p.beta);
    return (std::pow(pos(p.C + eps) / cb, p.m - p.beta) + eps) * sb;
  }
  return eps * sb;
}

std::optional<BoundCase> stationary_case_for(const ProblemParams& p) {
  const double m = p.m;
  const double beta = p.beta;
  const double a = p.alpha;
  const double pme_line = 2.0 / (m - 1.0);
  if (nearly_equal(beta, 1.0)) {
    if (nearly_equal(a, pme_line)) return BoundCase::S5a;
    if (a > pme_line) return BoundCase::S5b;
    return std::nullopt;
  }
  if (beta > 1.0 && beta < m && !nearly_equal(beta, m)) {
    const double line = 2.0 / (m - beta);
    if (a > line || nearly_equal(a, line)) return BoundCase::S5c;
  }
  const bool lower_band = beta > 1.0 && beta < m && !nearly_equal(beta, m);
  const bool at_or_above = beta > m || nearly_equal(beta, m);
  if ((lower_band || at_or_above) && (a > pme_line || nearly_equal(a, pme_line))) {
    return nearly_equal(a, pme_line) ? BoundCase::S5dCritical : BoundCase::S5dSuper;
  }
  return std::nullopt;
}

BoundPair stationary_bounds(BoundCase c, const ProblemParams& p, double eps,
                            const StationaryBoundOptions& opt) {
  validate(p);
  require(eps > 0.0, "eps must be positive");
  const auto expected = stationary_case_for(p);
  if (!expected || *expected != c) {
    throw DomainError("bound case " + std::string(to_string(c)) +
                      " does not match (beta, alpha) of the params");
  }
  const double m = p.m;
  const double beta = p.beta;
  const double b = p.b;
  const double C = p.C;
  const double a = p.alpha;
  const double R = p.R;

  BoundPair bp;
  bp.tag = c;
  bp.params = p;
  bp.eps = eps;
  bp.R_eps = opt.R_eps.value_or(R - 0.2 * R);
  require(bp.R_eps >= 0.0 && bp.R_eps < R, "R_eps must lie in [0, R)");

  const double g_up = gamma_eps(m, C, eps);
  const double g_lo = gamma_eps(m, C, -eps);
  bp.constants["gamma_eps"] = g_up;
  bp.constants["C_bar"] = cbar(m);

  double delta = 0.5 / g_up;
  if (b != 0.0 && !nearly_equal(beta, 1.0)) {
    delta = std::min(delta, 0.5 / std::abs(b * (beta - 1.0)) * std::pow(C + eps, 1.0 - beta) *
                                std::pow(R - bp.R_eps, a * (1.0 - beta)));
  }
  if (opt.delta_cap) delta = std::min(delta, *opt.delta_cap);

  // Smallest value of the upper bracket over the region at time t; must stay
  // positive up to delta.
  std::function<double(double)> upper_bracket;

  switch (c) {
    case BoundCase::S5a: {
      const double k = std::pow(C / cbar(m), m - 1.0);
      bp.constants["k"] = k;
      const double T = waiting_time_horizon(m, b, C);
      bp.constants["T"] = T;
      if (std::isfinite(T)) delta = std::min(delta, 0.5 * T);
      bp.lower = [=](double r, double t) { return (C - eps) * spow(R - r, a) * std::exp(-b * t); };
      bp.upper = [=](double r, double t) {
        const double br = 1.0 - k * decay_integral(b, m, t);
        return (C + eps) * spow(R - r, a) * std::exp(-b * t) * std::pow(br, 1.0 / (1.0 - m));
      };
      upper_bracket = [=](double t) { return 1.0 - k * decay_integral(b, m, t); };
      break;
    }
    case BoundCase::S5b: {
      // Zero of 1 - ε (b(m-1))^{-1}(1 - e^{-b(m-1)t}), when it exists.
      const double bm = b * (m - 1.0);
      if (bm == 0.0) {
        delta = std::min(delta, 0.5 / eps);
      } else if (bm / eps < 1.0) {
        delta = std::min(delta, -0.5 * std::log1p(-bm / eps) / bm);
      }
      bp.lower = [=](double r, double t) { return (C - eps) * spow(R - r, a) * std::exp(-b * t); };
      auto bracket = [=](double t) { return 1.0 - eps / (m - 1.0) * decay_integral(b, m, t); };
      bp.upper = [=](double r, double t) {
        return (C + eps) * spow(R - r, a) * std::exp(-b * t) *
               std::pow(bracket(t), 1.0 / (1.0 - m));
      };
      upper_bracket = bracket;
      break;
    }
    case BoundCase::S5c: {
      const double dp = d_eps(p, eps, opt.cbar_reading);
      const double dm = d_eps(p, -eps, opt.cbar_reading);
      bp.constants["d_eps"] = dp;
      bp.constants["d_minus_eps"] = dm;
      bp.constants["C_bar_used"] =
          opt.cbar_reading == CbarReading::DiffusionOnly ? cbar(m) : cbar_beta(m, beta);
      if (nearly_equal(a, 2.0 / (m - beta))) {
        bp.notes.push_back("d_eps on alpha=2/(m-beta) read as ((C+eps)/C_bar)^(m-beta)+eps, C_bar: " +
                           std::string(to_string(opt.cbar_reading)));
      }
      const double e = 1.0 / (1.0 - beta);
      auto g = [=](double Ce, double d, double r, double t) {
        const double s = R - r;
        if (!(s > 0.0) || !(Ce > 0.0)) return 0.0;
        const double br =
            std::pow(Ce, 1.0 - beta) * std::pow(s, a * (1.0 - beta)) + b * (beta - 1.0) * (1.0 - d) * t;
        if (!(br > 0.0)) return kInf;
        return std::pow(br, e);
      };
      bp.lower = [=](double r, double t) { return g(C - eps, dm, r, t); };
      bp.upper = [=](double r, double t) { return g(C + eps, dp, r, t); };
      upper_bracket = [=](double t) {
        return std::pow(C + eps, 1.0 - beta) * std::pow(R - bp.R_eps, a * (1.0 - beta)) +
               b * (beta - 1.0) * (1.0 - dp) * t;
      };
      break;
    }
    case BoundCase::S5dCritical: {
      bp.constants["gamma_minus_eps"] = g_lo;
      const double pl = 2.0 / (m - 1.0);
      bp.lower = [=](double r, double t) {
        return (C - eps) * spow(R - r, a) * std::pow(1.0 - g_lo * t, 1.0 / (1.0 - m));
      };
      bp.upper = [=](double r, double t) {
        return (C + eps) * spow(R - r, pl) * std::pow(1.0 - g_up * t, 1.0 / (1.0 - m));
      };
      upper_bracket = [=](double t) { return 1.0 - g_up * t; };
      break;
    }
    case BoundCase::S5dSuper: {
      bp.lower = [=](double r, double) { return (C - eps) * spow(R - r, a); };
      bp.upper = [=](double r, double t) {
        return (C + eps) * spow(R - r, a) * std::pow(1.0 - eps * t, 1.0 / (1.0 - m));
      };
      upper_bracket = [=](double t) { return 1.0 - eps * t; };
      break;
    }
    default:
      throw DomainError("not a stationary bound case");
  }

  if (!(upper_bracket(delta) > 0.0) || !(upper_bracket(0.0) > 0.0)) {
    throw DomainError("upper bound bracket is nonpositive inside the region");
  }
  bp.delta_eps = delta;
  bp.constants["delta_eps"] = delta;
  bp.constants["R_eps"] = bp.R_eps;
  bp.in_region = outside_of(bp.R_eps, delta);
  return bp;
}

BoundPair moving_bounds(BoundCase c, const ProblemParams& p, double eps,
                        const MovingBoundOptions& opt) {
  validate(p);
  const double m = p.m;
  const double beta = p.beta;
  const double b = p.b;
  const double C = p.C;
  const double R = p.R;
  require(beta < 1.0, "moving bounds require beta < 1");

  BoundPair bp;
  bp.tag = c;
  bp.params = p;
  bp.eps = eps;
  bp.has_lower = false;
  bp.lower = [](double, double) { return 0.0; };
  bp.delta_eps = opt.delta_cap.value_or(kInf);
  bp.R_eps = 0.0;

  const double mb = m - beta;
  const bool on_line = nearly_equal(p.alpha, 2.0 / mb);

  auto constants = [&]() {
    require(on_line, "critical bounds require alpha = 2/(m-beta)");
    require(b > 0.0, "critical bounds require b > 0");
    const double A1 = opt.A1.value_or(0.0);
    if (!nearly_equal(m + beta, 2.0)) require(opt.A1.has_value(), "A1 = h(0) is required");
    return appendix_constants(C, m, beta, b, A1);
  };

  switch (c) {
    case BoundCase::ExpandUpperCgtCstar: {
      const auto k = constants();
      require(k.zeta1 && k.C1, "zeta1/C1 undefined on the marginal line");
      require(C > k.C_star, "ExpandUpper requires C > C*");
      const double q = critical_exponent(m, beta);
      const double z1 = *k.zeta1;
      const double C1 = *k.C1;
      bp.constants["zeta1"] = z1;
      bp.constants["C1"] = C1;
      bp.constants["C_star"] = k.C_star;
      bp.upper = [=](double r, double t) {
        return C1 * spow(R - r - z1 * std::pow(t, q), 2.0 / mb);
      };
      bp.R_eps = R;
      bp.in_region = [R, d = bp.delta_eps](double r, double t) { return r >= R && t <= d; };
      break;
    }
    case BoundCase::ShrinkUpperSumGe2: {
      require(on_line, "critical bounds require alpha = 2/(m-beta)");
      require(m + beta > 2.0 || nearly_equal(m + beta, 2.0), "requires m + beta >= 2");
      const double cs = b > 0.0 ? critical_C(m, beta, b) : kInf;
      const double ratio = b > 0.0 ? std::pow(C / cs, mb) : 0.0;
      const double ex = 2.0 * (1.0 - beta) / mb;
      const double rate = b * (1.0 - beta) * (1.0 - ratio);
      const bool linear = nearly_equal(ex, 1.0);
      const double Cb = std::pow(C, 1.0 - beta);
      bp.constants["C_star"] = cs;
      bp.upper = [=](double r, double t) {
        const double s = R - r;
        const double sp = linear ? s : spow(s, ex);
        return spow(Cb * sp - rate * t, 1.0 / (1.0 - beta));
      };
      bp.in_region = [d = bp.delta_eps](double, double t) { return t <= d; };
      break;
    }
    case BoundCase::CriticalShrinkUpperSumLt2: {
      const auto k = constants();
      require(m + beta < 2.0, "requires m + beta < 2");
      require(k.shrinking && k.shrinking->zeta2 && k.shrinking->l1 && k.shrinking->C2,
              "shrinking constants unavailable (C >= C* or no interior delta*)");
      const double q = critical_exponent(m, beta);
      const double z2 = *k.shrinking->zeta2;
      const double l1 = *k.shrinking->l1;
      const double C2 = *k.shrinking->C2;
      bp.constants["zeta2"] = z2;
      bp.constants["l1"] = l1;
      bp.constants["C2"] = C2;
      bp.constants["delta_star"] = *k.shrinking->delta_star;
      bp.upper = [=](double r, double t) {
        return C2 * spow(R - r - z2 * std::pow(t, q), 2.0 / mb);
      };
      bp.in_region = [=, d = bp.delta_eps](double r, double t) {
        return t <= d && r >= R - l1 * std::pow(t, q);
      };
      break;
    }
    case BoundCase::ShrinkUpperSumLt2: {
      require(b > 0.0, "shrinking bounds require b > 0");
      require(opt.l.has_value(), "ShrinkUpper_mblt2 requires l");
      require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
      const double a = p.alpha;
      const double ls = shrinking_coefficient(C, a, beta, b);
      const double l = *opt.l;
      require(l > ls, "l must exceed l*");
      const double ab = a * (1.0 - beta);
      const double frac = std::pow(ls / l, ab) * (1.0 - eps);
      const double z3 = frac * l;
      const double inner = std::pow(C, 1.0 - beta) - std::pow(l, -ab) * b * (1.0 - beta) * (1.0 - eps);
      require(inner > 0.0, "C3: negative radicand");
      const double C3 = std::pow(1.0 - frac, -a) * std::pow(inner, 1.0 / (1.0 - beta));
      const double q = 1.0 / ab;
      bp.constants["l_star"] = ls;
      bp.constants["l"] = l;
      bp.constants["zeta3"] = z3;
      bp.constants["C3"] = C3;
      bp.upper = [=](double r, double t) {
        return C3 * spow(R - r - z3 * std::pow(t, q), a);
      };
      bp.in_region = [=, d = bp.delta_eps](double r, double t) {
        return t <= d && r >= R - l * std::pow(t, q);
      };
      break;
    }
    case BoundCase::ShrinkUpperEps: {
      require(eps > 0.0, "eps must be positive");
      const double a = p.alpha;
      bp.R_eps = opt.R_eps.value_or(R - 0.2 * R);
      const double Ce = std::pow(C + 3.0 * eps, 1.0 - beta);
      const double rate = b * (1.0 - beta) * (1.0 - eps);
      bp.upper = [=](double r, double t) {
        return spow(Ce * spow(R - r, a * (1.0 - beta)) - rate * t, 1.0 / (1.0 - beta));
      };
      bp.in_region = outside_of(bp.R_eps, bp.delta_eps);
      break;
    }
    default:
      throw DomainError("not a moving bound case");
  }
  bp.constants["delta_eps"] = bp.delta_eps;
  return bp;
}

CertificateReport certify(const SolutionTrace& trace, const BoundPair& bp, double tol_abs,
                          std::size_t max_dump) {
  CertificateReport rep;
  rep.tol_abs = tol_abs;
  const bool radial = trace.geometry.kind == GeometryKind::Radial;
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    const double t = trace.times[s];
    const auto& u = trace.fields[s];
    for (std::size_t i = 0; i < trace.x.size(); ++i) {
      const double r = radial ? trace.x[i] : std::abs(trace.x[i]);
      if (!bp.in_region(r, t)) continue;
      ++rep.nodes_checked;
      const double lo = bp.lower(r, t);
      const double hi = bp.upper(r, t);
      const double dlo = lo - u[i];
      const double dhi = u[i] - hi;
      const double worst = std::max({dlo, dhi, 0.0});
      rep.worst_violation = std::max(rep.worst_violation, worst);
      const bool bad_lo = dlo > tol_abs;
      const bool bad_hi = dhi > tol_abs;
      rep.violations_lower += bad_lo;
      rep.violations_upper += bad_hi;
      if ((bad_lo || bad_hi) && rep.violations.size() < max_dump) {
        rep.violations.push_back({trace.x[i], t, lo, u[i], hi});
      }
    }
  }
  rep.pass = rep.worst_violation <= tol_abs;
  return rep;
}

double default_certificate_tolerance(const SolutionTrace& trace) { return 1e-2 * trace.max_u0; }

TravelingWaveCheck traveling_wave_check(double dx, double cfl_sigma, double t_end) {
  const double m = 1.5;
  const double beta = 0.5;
  const double b = 6.0;
  const double C = 4.0;
  const double z = marginal_zeta_star(C, m, beta, b);
  const double y0 = 0.0;
  const double travel = -z * t_end;
  const double lo = y0 - travel - 1.0;
  const double hi = y0 + 2.0;
  auto exact = [=](double y, double t) {
    const double s = y - y0 - z * t;
    return s > 0.0 ? C * s * s : 0.0;
  };

  const auto geom = Geometry::planar(lo, hi);
  NumericsConfig num;
  num.dx = dx;
  num.cfl_sigma = cfl_sigma;
  num.t_end = t_end;
  num.snapshot_times = log_spaced_times(t_end / 50.0, t_end, 50);

  SolveSetup setup;
  setup.model = {m, beta, b};
  setup.params = ProblemParams{m, beta, b, C, 2.0, 1.0, 1};
  const auto x = make_grid(geom, dx);
  setup.initial.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) setup.initial[i] = exact(x[i], 0.0);
  const double xr = x.back();
  setup.right_value = [=](double t) { return exact(xr, t); };

  const auto start = std::chrono::steady_clock::now();
  TravelingWaveCheck out;
  out.trace = solve(setup, geom, num);
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.zeta_exact = z;

  const auto& tr = out.trace;
  const auto itr = interface_trace(tr, FrontEstimator::Pressure);
  double st = 0, sf = 0, stt = 0, stf = 0;
  int n = 0;
  for (std::size_t i = 0; i < itr.times.size(); ++i) {
    const double t = itr.times[i];
    if (t < 0.1 * t_end) continue;
    st += t;
    sf += itr.front[i];
    stt += t * t;
    stf += t * itr.front[i];
    ++n;
  }
  out.speed = (n * stf - st * sf) / (n * stt - st * st);

  const auto& uf = tr.fields.back();
  const double tf = tr.times.back();
  double err = 0.0;
  double wmax = 0.0;
  for (std::size_t i = 0; i < tr.x.size(); ++i) {
    const double w = exact(tr.x[i], tf);
    err = std::max(err, std::abs(uf[i] - w));
    wmax = std::max(wmax, w);
  }
  out.rel_linf_error = err / wmax;
  return out;
}

}  // namespace rdfront
