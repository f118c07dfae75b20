#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

namespace rdfront {

struct FitWindow {
  double t_min = 0.0;
  double t_max = 0.0;

  /// [t_end/100, t_end/4].
  static FitWindow default_for(double t_end) { return {t_end / 100.0, t_end / 4.0}; }
};

struct PowerLawFit {
  double exponent_q = 0.0;
  double coefficient_k = 0.0;
  double r_squared = 0.0;
  FitWindow window;
  int n_points = 0;
};

/// Pressure for fronts driven by diffusion (Expanding, CriticalExpanding),
/// Node otherwise.
FrontEstimator default_estimator(Regime r);

/// Least squares of log|front - R| against log t over the samples inside
/// `window` whose excursion exceeds 2 dx. Throws InsufficientMotion with fewer
/// than 8 such samples.
PowerLawFit fit_power_law(const InterfaceTrace& itrace, FitWindow window);

struct PredictOptions {
  ShapeOptions shape;
  /// Skip the time march and take ξ* from the profile ODE.
  bool xi_from_ode = false;
};

/// Interface law expected from the classification of `params`.
struct Prediction {
  RegimeVerdict verdict;
  std::optional<double> q;
  /// Point prediction of k.
  std::optional<double> k;
  /// Interval prediction [k_lo, k_hi] for the critical regime off m + β = 2.
  std::optional<double> k_lo;
  std::optional<double> k_hi;
  /// ξ* (expanding) or ζ* (critical).
  std::optional<double> interface_constant;
  std::optional<ShapeProfile> shape;
  std::optional<ConstantsBundle> constants;
  /// Waiting horizon T for the stationary regime; nullopt when undefined.
  std::optional<double> waiting_horizon;
  std::vector<std::string> notes;
};

/// Throws DomainError for Unsupported or Undetermined verdicts.
Prediction predict(const ProblemParams& params, const PredictOptions& opt = {});

struct VerifyOptions {
  double tol_q = 0.10;
  double tol_k = 0.15;
  /// Defaults to FitWindow::default_for(t_end of the trace).
  std::optional<FitWindow> window;
};

/// Comparison of u on a similarity ray with the limiting profile.
struct ProbeResult {
  /// ρ (expanding, critical) or l (shrinking).
  double coordinate = 0.0;
  double time = 0.0;
  double expected = 0.0;
  double measured = 0.0;
  double rel_error = 0.0;
};

struct VerdictReport {
  Regime regime_expected = Regime::Undetermined;
  Regime regime_observed = Regime::Undetermined;
  std::optional<double> predicted_q;
  std::optional<double> measured_q;
  std::optional<double> predicted_k;
  std::optional<double> k_lo;
  std::optional<double> k_hi;
  std::optional<double> measured_k;
  std::optional<PowerLawFit> fit;
  double tol_q = 0.0;
  double tol_k = 0.0;
  /// Stationary check: sup_{t <= delta} |front - R| against 2 dx.
  std::optional<double> stationary_delta;
  std::optional<double> max_excursion;
  double dx = 0.0;
  std::vector<ProbeResult> probes;
  bool q_ok = false;
  bool k_ok = false;
  bool regime_ok = false;
  bool pass = false;
  std::vector<std::string> notes;
};

/// pass iff the regime matches and, for moving regimes, q and k agree with
/// the prediction within the relative tolerances (interval membership for
/// interval predictions). The stationary regime passes when the front stays
/// within 2 dx of R up to δ = min(0.1 T, t_end).
VerdictReport verify(const ProblemParams& params, const SolutionTrace& trace,
                     const InterfaceTrace& itrace, const Prediction& prediction,
                     const VerifyOptions& opt = {});

enum class RescaleKind { Diffusion, Reaction };

struct RescaleDiscrepancy {
  double k = 1.0;
  /// Sup over evaluated probes; nullopt when every probe was skipped.
  std::optional<double> discrepancy;
  int evaluated = 0;
  int skipped = 0;
};

/// Probe set (s, τ) in the rescaled variables.
struct RescaleProbes {
  std::vector<double> s;
  std::vector<double> tau;
};

/// D(k) = sup |k u(R - k^{-1/α} s, k^{-p/α} τ) - τ^{α/p} f(s τ^{-1/p})| with
/// p = 2 + α(1-m) for the diffusion scaling. The reaction scaling uses time
/// k^{β-1} τ and the limit {C^{1-β} s_+^{α(1-β)} - b(1-β)τ}_+^{1/(1-β)}.
/// The trace is interpolated linearly in space and time; probes outside it
/// are skipped.
std::vector<RescaleDiscrepancy> rescale_convergence(const SolutionTrace& trace,
                                                    const ShapeProfile* shape,
                                                    const std::vector<double>& ks,
                                                    const RescaleProbes& probes,
                                                    RescaleKind kind = RescaleKind::Diffusion);

/// Linear interpolation of a trace in x and t; nullopt outside the stored
/// range.
std::optional<double> sample_xt(const SolutionTrace& trace, double x, double t);

}  // namespace rdfront
