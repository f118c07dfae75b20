#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdfront/model.hpp"

namespace rdfront {

enum class GeometryKind { Planar, Radial };

std::string_view to_string(GeometryKind k);

/// Computational domain. Radial domains always start at r = 0 and carry the
/// spatial dimension N of the radially symmetric problem; planar domains are
/// one-dimensional lines [x_lo, x_hi].
struct Geometry {
  GeometryKind kind = GeometryKind::Radial;
  int N = 1;
  double x_lo = 0.0;
  double x_hi = 1.0;

  static Geometry planar(double x_lo, double x_hi);
  static Geometry radial(int N, double r_max);

  /// Throws DomainError when x_lo >= x_hi, N < 1, or a radial domain does not
  /// start at the origin.
  void validate() const;
};

struct NumericsConfig {
  double dx = 1.0 / 200.0;
  /// Safety factor applied to the monotonicity limit of the explicit step.
  double cfl_sigma = 0.5;
  double t_end = 1.0;
  /// Store a snapshot every `snapshot_stride` steps; 0 keeps only the
  /// initial and final states (plus any `snapshot_times`).
  int snapshot_stride = 0;
  double support_threshold_rel = 1e-12;
  /// Extra snapshot instants; steps are shortened to land on them exactly.
  std::vector<double> snapshot_times;
  /// Overrides the adaptive step. Callers are responsible for stability.
  std::optional<double> fixed_dt;

  void validate() const;
};

/// `count` logarithmically spaced instants in [t_first, t_last].
std::vector<double> log_spaced_times(double t_first, double t_last, int count);

/// Coefficients of u_t = Δ(u^m) - b u^β.
struct ReactionDiffusion {
  double m = 2.0;
  double beta = 1.0;
  double b = 0.0;
};

/// Time-dependent Dirichlet value at a domain end.
using BoundaryValue = std::function<double(double t)>;

/// A solve with arbitrary initial data on the grid of `geom`. Unset boundary
/// values mean homogeneous Dirichlet; the radial origin is always a symmetry
/// point and ignores `left_value`.
struct SolveSetup {
  ReactionDiffusion model;
  std::vector<double> initial;
  std::optional<BoundaryValue> left_value;
  std::optional<BoundaryValue> right_value;
  /// Echoed into the trace; not used by the scheme.
  ProblemParams params;
};

struct SolutionTrace {
  Geometry geometry;
  double dx = 0.0;
  std::vector<double> x;
  std::vector<double> times;
  std::vector<std::vector<double>> fields;
  ProblemParams params;
  ReactionDiffusion model;
  std::int64_t clamp_count = 0;
  std::int64_t steps = 0;
  double min_dt = 0.0;
  double max_u0 = 0.0;
  double support_threshold_rel = 1e-12;
  std::vector<double> mass_series;
};

/// Uniform node positions x_lo + i*dx covering the geometry. The last node is
/// placed at x_hi rounded to the nearest whole number of cells.
std::vector<double> make_grid(const Geometry& geom, double dx);

/// Initial data C (R - |x|)_+^α sampled at the grid nodes.
std::vector<double> sample_initial(const ProblemParams& params, std::span<const double> x);

/// Explicit conservative scheme for the Cauchy problem with initial data
/// C (R - |x|)_+^α and homogeneous Dirichlet data at the outer boundary.
SolutionTrace solve(const ProblemParams& params, const Geometry& geom, const NumericsConfig& num);

/// Same scheme, caller-supplied data and boundary values.
SolutionTrace solve(const SolveSetup& setup, const Geometry& geom, const NumericsConfig& num);

/// Largest stable step for the given field maximum:
/// sigma dx^2 / (2 N m max^{m-1} + dx^2 b_+ β max^{β-1}).
double stable_dt(const ReactionDiffusion& model, const Geometry& geom, double dx, double sigma,
                 double u_max);

/// Trapezoidal integral of u ω_N r^{N-1} (radial) or of u (planar).
double mass(std::span<const double> field, const Geometry& geom, double dx);

enum class FrontSide { Outward, Inward, StationaryCandidate };

std::string_view to_string(FrontSide s);

struct InterfaceTrace {
  std::vector<double> times;
  /// Outer support edge (radial) or left support edge (planar).
  std::vector<double> front;
  double R = 0.0;
  double dx = 0.0;
  /// +1 when outward motion increases `front` (radial), -1 for a planar left
  /// edge.
  int orientation = 1;
  FrontSide side = FrontSide::StationaryCandidate;

  /// Signed displacement from R, positive when the support grows.
  double excursion(std::size_t i) const { return orientation * (front[i] - R); }
};

/// Node: the edge node itself. Pressure: skips up to 8 precursor nodes whose
/// pressure u^{m-1} is below a third of the next inner one, then extrapolates
/// u^{m-1} linearly to zero, at most one cell outward.
enum class FrontEstimator { Node, Pressure };

std::string_view to_string(FrontEstimator e);

/// Support edge per snapshot. Radial traces use the outermost node with
/// u > threshold * max(u0) and R from the params echo; planar traces use the
/// leftmost such node and R = the initial left edge.
InterfaceTrace interface_trace(const SolutionTrace& trace,
                               FrontEstimator estimator = FrontEstimator::Node);

/// Index of the first/last node exceeding `threshold`; nullopt for an
/// all-zero field.
std::optional<std::size_t> first_above(std::span<const double> field, double threshold);
std::optional<std::size_t> last_above(std::span<const double> field, double threshold);

/// Linear interpolation of a trace snapshot at position `x`; nullopt outside
/// the grid.
std::optional<double> sample(const SolutionTrace& trace, std::size_t snapshot, double x);

}  // namespace rdfront
