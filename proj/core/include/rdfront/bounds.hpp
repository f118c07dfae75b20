#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

namespace rdfront {

/// Envelope families. S5a..S5d are the waiting-time cases:
///   S5a  β = 1, α = 2/(m-1)
///   S5b  β = 1, α > 2/(m-1)
///   S5c  1 < β < m, α >= 2/(m-β)
///   S5d  the remaining stationary cells, split at α = 2/(m-1).
/// The others are single-sided upper envelopes of moving regimes.
enum class BoundCase {
  S5a,
  S5b,
  S5c,
  S5dCritical,
  S5dSuper,
  ExpandUpperCgtCstar,
  ShrinkUpperSumGe2,
  CriticalShrinkUpperSumLt2,
  ShrinkUpperSumLt2,
  ShrinkUpperEps,
};

std::string_view to_string(BoundCase c);
BoundCase bound_case_from_string(std::string_view s);

/// Which constant stands for C̄ in d_ε on the line α = 2/(m-β).
enum class CbarReading {
  /// [(m-1)^2 / (2m(m+1))]^{1/(m-1)}
  DiffusionOnly,
  /// [(m-β)^2 / (2m(m+β))]^{1/(m-β)}
  BetaAnalog,
};

std::string_view to_string(CbarReading r);

struct BoundPair {
  BoundCase tag = BoundCase::S5a;
  ProblemParams params;
  double eps = 0.0;
  /// Region |x| >= R_eps (or the moving region of the one-sided cases),
  /// 0 <= t <= delta_eps.
  double R_eps = 0.0;
  double delta_eps = 0.0;
  /// Functions of (|x|, t).
  std::function<double(double, double)> lower;
  std::function<double(double, double)> upper;
  std::function<bool(double, double)> in_region;
  bool has_lower = true;
  std::map<std::string, double> constants;
  std::vector<std::string> notes;
};

struct StationaryBoundOptions {
  /// Defaults to 0.8 R.
  std::optional<double> R_eps;
  /// Upper cap on the validity horizon.
  std::optional<double> delta_cap;
  CbarReading cbar_reading = CbarReading::BetaAnalog;
};

/// γ_ε = 2m(m+1)(C+ε)^{m-1}/(m-1) + ε, with (C+ε)_+ in the base.
double gamma_eps(double m, double C, double eps);

/// d_ε: ε sign b for α > 2/(m-β); (((C+ε)/C̄)^{m-β} + ε) sign b on the line
/// α = 2/(m-β). Pass -ε for d_{-ε}.
double d_eps(const ProblemParams& p, double eps, CbarReading reading);

/// Stationary case matching (β, α); nullopt outside the waiting-time cells.
std::optional<BoundCase> stationary_case_for(const ProblemParams& p);

/// Two-sided waiting-time envelopes. Throws DomainError when `c` does not
/// match (β, α) or an upper bracket is not positive on the region.
BoundPair stationary_bounds(BoundCase c, const ProblemParams& p, double eps,
                            const StationaryBoundOptions& opt = {});

struct MovingBoundOptions {
  /// Required for ShrinkUpperSumLt2: any l > l*.
  std::optional<double> l;
  /// h(0) of the critical profile; required by the critical cases off
  /// m + β = 2.
  std::optional<double> A1;
  /// Defaults to 0.8 R for the ε cases.
  std::optional<double> R_eps;
  /// Horizon; defaults to +inf where the envelope is global in time.
  std::optional<double> delta_cap;
};

/// Single-sided upper envelopes (lower ≡ 0) of the moving regimes.
BoundPair moving_bounds(BoundCase c, const ProblemParams& p, double eps,
                        const MovingBoundOptions& opt = {});

struct NodeViolation {
  double x = 0.0;
  double t = 0.0;
  double lower = 0.0;
  double u = 0.0;
  double upper = 0.0;
};

struct CertificateReport {
  std::int64_t nodes_checked = 0;
  std::int64_t violations_lower = 0;
  std::int64_t violations_upper = 0;
  /// max over checked nodes of max(lower - u, u - upper, 0).
  double worst_violation = 0.0;
  double tol_abs = 0.0;
  bool pass = false;
  /// Up to `max_dump` nodes beyond tolerance.
  std::vector<NodeViolation> violations;
};

/// Checks lower - tol <= u <= upper + tol at every node and snapshot in the
/// region. Never throws for a well-formed trace.
CertificateReport certify(const SolutionTrace& trace, const BoundPair& bp, double tol_abs,
                          std::size_t max_dump = 64);

/// 1e-2 * max(u0).
double default_certificate_tolerance(const SolutionTrace& trace);

/// Planar run of the exact traveling wave w = C (y - y0 - ζ* t)_+^2 for
/// m = 1.5, β = 0.5, b = 6, C = 4 (ζ* = -4.5).
struct TravelingWaveCheck {
  double zeta_exact = 0.0;
  double speed = 0.0;
  /// max |u - w| / max |w| at t_end.
  double rel_linf_error = 0.0;
  double runtime_seconds = 0.0;
  SolutionTrace trace;
};

TravelingWaveCheck traveling_wave_check(double dx, double cfl_sigma, double t_end = 0.5);

}  // namespace rdfront
