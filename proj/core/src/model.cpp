#include "rdfront/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdfront/errors.hpp"

namespace rdfront {

void validate(const ProblemParams& p) {
  std::ostringstream why;
  if (!(p.m > 1.0)) why << "m must exceed 1; ";
  if (!(p.beta > 0.0)) why << "beta must be positive; ";
  if (!(p.C > 0.0)) why << "C must be positive; ";
  if (!(p.alpha > 0.0)) why << "alpha must be positive; ";
  if (!(p.R > 0.0)) why << "R must be positive; ";
  if (p.N < 1) why << "N must be at least 1; ";
  if (!std::isfinite(p.b)) why << "b must be finite; ";
  auto msg = why.str();
  if (!msg.empty()) {
    msg.resize(msg.size() - 2);
    throw UnsupportedError("invalid parameters: " + msg);
  }
  if (p.b < 0.0 && p.beta < 1.0) {
    throw UnsupportedError("unsupported: b<0 requires beta>=1");
  }
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Expanding: return "Expanding";
    case Regime::CriticalExpanding: return "CriticalExpanding";
    case Regime::CriticalShrinking: return "CriticalShrinking";
    case Regime::Shrinking: return "Shrinking";
    case Regime::Stationary: return "Stationary";
    case Regime::Undetermined: return "Undetermined";
    case Regime::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

std::string_view to_string(ConstantRef c) {
  switch (c) {
    case ConstantRef::XiStar: return "XiStar";
    case ConstantRef::ZetaStar: return "ZetaStar";
    case ConstantRef::LStar: return "LStar";
    case ConstantRef::None: return "None";
  }
  return "None";
}

Regime regime_from_string(std::string_view s) {
  for (auto r : {Regime::Expanding, Regime::CriticalExpanding, Regime::CriticalShrinking,
                 Regime::Shrinking, Regime::Stationary, Regime::Undetermined,
                 Regime::Unsupported}) {
    if (to_string(r) == s) return r;
  }
  throw Error("unknown regime name: " + std::string(s));
}

bool is_moving(Regime r) {
  return r == Regime::Expanding || r == Regime::CriticalExpanding ||
         r == Regime::CriticalShrinking || r == Regime::Shrinking;
}

int direction(Regime r) {
  switch (r) {
    case Regime::Expanding:
    case Regime::CriticalExpanding: return 1;
    case Regime::CriticalShrinking:
    case Regime::Shrinking: return -1;
    default: return 0;
  }
}

bool nearly_equal(double x, double y, double rel_tol) {
  return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
}

double critical_C(double m, double beta, double b) {
  if (!(m > 1.0) || !(beta > 0.0) || beta >= 1.0 || beta >= m) {
    throw DomainError("critical_C requires m > 1 and 0 < beta < 1");
  }
  if (b < 0.0) throw DomainError("critical_C requires b >= 0");
  const double base = b * (m - beta) * (m - beta) / (2.0 * m * (m + beta));
  return std::pow(base, 1.0 / (m - beta));
}

double expanding_exponent(double m, double alpha) { return 1.0 / (2.0 + alpha * (1.0 - m)); }

double critical_exponent(double m, double beta) { return (m - beta) / (2.0 * (1.0 - beta)); }

double shrinking_exponent(double alpha, double beta) { return 1.0 / (alpha * (1.0 - beta)); }

double shrinking_coefficient(double C, double alpha, double beta, double b) {
  if (!(beta < 1.0) || !(b > 0.0)) throw DomainError("l* requires b > 0 and beta < 1");
  return std::pow(C, -1.0 / alpha) * std::pow(b * (1.0 - beta), 1.0 / (alpha * (1.0 - beta)));
}

double marginal_zeta_star(double C, double m, double beta, double b) {
  const double cstar = critical_C(m, beta, b);
  return b * (1.0 - beta) * std::pow(C, beta - 1.0) *
         (1.0 - std::pow(C / cstar, 2.0 * (1.0 - beta)));
}

namespace {

RegimeVerdict moving(Regime r, double q, ConstantRef c) {
  RegimeVerdict v;
  v.regime = r;
  v.time_exponent = q;
  v.constant_ref = c;
  return v;
}

RegimeVerdict fixed(Regime r, std::string reason = {}) {
  RegimeVerdict v;
  v.regime = r;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

RegimeVerdict classify(const ProblemParams& p) {
  try {
    validate(p);
  } catch (const UnsupportedError& e) {
    return fixed(Regime::Unsupported, e.what());
  }

  const double m = p.m;
  const double beta = p.beta;
  const double alpha = p.alpha;
  const double diffusion_line = 2.0 / (m - 1.0);

  // Pure porous medium: expand below 2/(m-1), wait otherwise.
  if (p.b == 0.0) {
    if (alpha < diffusion_line && !nearly_equal(alpha, diffusion_line)) {
      return moving(Regime::Expanding, expanding_exponent(m, alpha), ConstantRef::XiStar);
    }
    return fixed(Regime::Stationary);
  }

  const double edge_line = 2.0 / (m - std::min(1.0, beta));
  if (alpha < edge_line && !nearly_equal(alpha, edge_line)) {
    auto v = moving(Regime::Expanding, expanding_exponent(m, alpha), ConstantRef::XiStar);
    if (p.b > 0.0 && beta < 1.0) v.critical_C = critical_C(m, beta, p.b);
    return v;
  }

  if (p.b > 0.0 && beta < 1.0) {
    const double cstar = critical_C(m, beta, p.b);
    const double crit_line = 2.0 / (m - beta);
    RegimeVerdict v;
    if (nearly_equal(alpha, crit_line)) {
      if (nearly_equal(p.C, cstar)) {
        v = fixed(Regime::Undetermined, "C equals C* on the critical line");
      } else if (p.C > cstar) {
        v = moving(Regime::CriticalExpanding, critical_exponent(m, beta), ConstantRef::ZetaStar);
      } else {
        v = moving(Regime::CriticalShrinking, critical_exponent(m, beta), ConstantRef::ZetaStar);
      }
    } else {
      v = moving(Regime::Shrinking, shrinking_exponent(alpha, beta), ConstantRef::LStar);
    }
    v.critical_C = cstar;
    return v;
  }

  if (beta >= 1.0 && (alpha > diffusion_line || nearly_equal(alpha, diffusion_line))) {
    return fixed(Regime::Stationary);
  }
  return fixed(Regime::Undetermined, "no theorem covers this parameter cell");
}

}  // namespace rdfront
