#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rdfront {

/// One Cauchy problem instance for u_t - Δu^m + b u^β = 0 with radially
/// symmetric data u0 = C (R - |x|)_+^α.
struct ProblemParams {
  double m = 2.0;
  double beta = 1.0;
  double b = 0.0;
  double C = 1.0;
  double alpha = 1.0;
  double R = 1.0;
  int N = 1;
};

/// Throws UnsupportedError with a human readable reason when `p` breaks an
/// invariant (m > 1, beta > 0, C > 0, alpha > 0, R > 0, N >= 1, and
/// beta >= 1 whenever b < 0).
void validate(const ProblemParams& p);

enum class Regime {
  Expanding,
  CriticalExpanding,
  CriticalShrinking,
  Shrinking,
  Stationary,
  Undetermined,
  Unsupported,
};

/// Constant that governs the interface coefficient in each moving regime.
enum class ConstantRef { XiStar, ZetaStar, LStar, None };

std::string_view to_string(Regime r);
std::string_view to_string(ConstantRef c);
Regime regime_from_string(std::string_view s);

/// True for regimes whose interface moves with a power law in t.
bool is_moving(Regime r);

/// +1 for outward motion, -1 for inward, 0 otherwise.
int direction(Regime r);

struct RegimeVerdict {
  Regime regime = Regime::Undetermined;
  /// q in |front(t) - R| ~ k t^q. Present iff the regime is moving.
  std::optional<double> time_exponent;
  ConstantRef constant_ref = ConstantRef::None;
  std::optional<double> critical_C;
  /// Why the verdict is Unsupported or Undetermined; empty otherwise.
  std::string reason;
};

/// Relative tolerance for every equality test of the decision table.
inline constexpr double kCriticalRelTol = 1e-12;

/// Critical edge slope {b (m-β)^2 / (2m (m+β))}^{1/(m-β)} separating expansion
/// from shrinking on the line α = 2/(m-β). Requires m > 1, 0 < β < 1, b >= 0.
double critical_C(double m, double beta, double b);

/// Regime classification over the (α, β) plane. Total on every input: invalid
/// parameters yield Unsupported instead of throwing.
RegimeVerdict classify(const ProblemParams& params);

/// Interface exponents of the moving regimes.
double expanding_exponent(double m, double alpha);
double critical_exponent(double m, double beta);
double shrinking_exponent(double alpha, double beta);

/// l* = C^{-1/α} (b(1-β))^{1/(α(1-β))}: recession coefficient of the
/// reaction-dominated shrinking regime.
double shrinking_coefficient(double C, double alpha, double beta, double b);

/// Closed-form interface ζ* of the marginal case m + β = 2.
double marginal_zeta_star(double C, double m, double beta, double b);

/// |x - y| <= tol * max(|x|, |y|)
bool nearly_equal(double x, double y, double rel_tol = kCriticalRelTol);

}  // namespace rdfront
