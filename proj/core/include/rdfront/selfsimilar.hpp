#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdfront {

enum class ShapeMethod { TimeMarch, ClosedForm };
/// Diffusion: f of w_t = (w^m)_yy. Reaction: h of w_t = (w^m)_yy - b w^β.
enum class ShapeKind { Diffusion, Reaction };

std::string_view to_string(ShapeMethod m);
std::string_view to_string(ShapeKind k);

struct ShapeParams {
  double C = 1.0;
  /// Edge exponent; 2/(m-β) for reaction shapes.
  double alpha = 1.0;
  double m = 2.0;
  double beta = 1.0;
  double b = 0.0;
};

/// Tabulated shape function w(ξ, 1) of the one-dimensional problem with data
/// C ξ_+^α.
struct ShapeProfile {
  ShapeKind kind = ShapeKind::Diffusion;
  std::vector<double> xi;
  std::vector<double> value;
  /// Leftmost support point (ξ* or ζ*).
  double interface = 0.0;
  double dx = 0.0;
  ShapeParams params;
  ShapeMethod method = ShapeMethod::TimeMarch;
  /// Relative mismatch against the far-field expansion at the last interior
  /// sample.
  double right_asymptote_error = 0.0;

  /// Linear interpolation; zero left of the table, nullopt right of it.
  std::optional<double> value_at(double x) const;
};

struct ShapeOptions {
  double dx = 1.0 / 200.0;
  double cfl_sigma = 0.9;
  double asymptote_tol = 1e-2;
  /// Accepted relative truncation of the far-field series at the right end.
  double boundary_tol = 1e-4;
  int series_order = 10;
  /// March the profile even when a closed form exists (m + β = 2).
  bool force_time_march = false;
  /// March at the requested C instead of rescaling the C = 1 profile.
  bool force_direct = false;
  double support_threshold_rel = 1e-12;
};

/// f for w_t = (w^m)_yy, w(y, 0) = C y_+^α, 0 < α < 2/(m-1).
ShapeProfile shape_pme(double C, double alpha, double m, const ShapeOptions& opt = {});

/// h for w_t = (w^m)_yy - b w^β, w(y, 0) = C y_+^{2/(m-β)}, 0 < β < 1, b > 0.
ShapeProfile shape_reaction(double C, double m, double beta, double b,
                            const ShapeOptions& opt = {});

/// f_C(ρ) = C^{2/p} f_1(C^{-(m-1)/p} ρ), ξ*(C) = C^{(m-1)/p} ξ*(1) with
/// p = 2 - α(m-1). `base` must be a C = 1 diffusion profile.
ShapeProfile rescale_shape(const ShapeProfile& base, double C);

/// Interface ξ* from the profile ODE, integrated rightward from a trial
/// interface with the front flux condition and rescaled to the far-field
/// constant C. Independent of the time march.
double pme_interface_by_ode(double C, double alpha, double m);

/// C̄ = [(m-1)^2 / (2m(m+1))]^{1/(m-1)}.
double cbar(double m);

/// [(m-β)^2 / (2m(m+β))]^{1/(m-β)}: C̄ with m+1 replaced by m+β.
double cbar_beta(double m, double beta);

/// Waiting-time horizon T: +inf when b >= (C/C̄)^{m-1}, otherwise
/// ln(1 - b (C/C̄)^{m-1}) / (b(1-m)), and (C/C̄)^{m-1}/(m-1) at b = 0.
double waiting_time_horizon(double m, double b, double C);

enum class ConstantsBranch { SuperCritSum, SubCritSum, Marginal };

std::string_view to_string(ConstantsBranch b);

/// Constants of the upper bound for the critical shrinking interface.
struct ShrinkingConstants {
  double Gamma = 0.0;
  std::optional<double> delta_star;
  std::optional<double> zeta2;
  std::optional<double> l1;
  std::optional<double> C2;
};

struct ConstantsBundle {
  double C = 0.0;
  double m = 0.0;
  double beta = 0.0;
  double b = 0.0;
  double C_star = 0.0;
  double A1 = 0.0;
  ConstantsBranch branch = ConstantsBranch::SuperCritSum;
  std::optional<double> zeta1;
  std::optional<double> C1;
  /// Closed-form ζ* of the marginal branch.
  std::optional<double> zeta_star;
  /// Present when C < C*.
  std::optional<ShrinkingConstants> shrinking;
  double C_bar = 0.0;
  /// Failed optional searches, in words.
  std::vector<std::string> notes;
};

/// g(δ) = δ^{(2-β-m)/(m-β)} [1 - δΓ - (1-δΓ)^{-1} (C/C*)^{m-β}].
double delta_objective(double delta, double Gamma, double C_ratio, double m, double beta);

/// Constants of the critical-line bounds for data C ξ_+^{2/(m-β)} with
/// A1 = h(0). Throws DomainError for a negative radicand.
ConstantsBundle appendix_constants(double C, double m, double beta, double b, double A1);

}  // namespace rdfront
