#include "rdfront/pdesolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rdfront/errors.hpp"
#include "power.hpp"

namespace rdfront {

std::string_view to_string(GeometryKind k) {
  return k == GeometryKind::Planar ? "planar" : "radial";
}

std::string_view to_string(FrontSide s) {
  switch (s) {
    case FrontSide::Outward: return "Outward";
    case FrontSide::Inward: return "Inward";
    case FrontSide::StationaryCandidate: return "Stationary-candidate";
  }
  return "Stationary-candidate";
}

Geometry Geometry::planar(double x_lo, double x_hi) {
  return Geometry{GeometryKind::Planar, 1, x_lo, x_hi};
}

Geometry Geometry::radial(int N, double r_max) {
  return Geometry{GeometryKind::Radial, N, 0.0, r_max};
}

void Geometry::validate() const {
  if (!(x_lo < x_hi)) throw DomainError("geometry requires x_lo < x_hi");
  if (N < 1) throw DomainError("geometry requires N >= 1");
  if (kind == GeometryKind::Radial && x_lo != 0.0) {
    throw DomainError("radial geometry must start at r = 0");
  }
}

void NumericsConfig::validate() const {
  if (!(dx > 0.0)) throw DomainError("numerics: dx must be positive");
  if (!(cfl_sigma > 0.0 && cfl_sigma <= 1.0)) {
    throw DomainError("numerics: cfl_sigma must lie in (0, 1]");
  }
  if (!(t_end > 0.0)) throw DomainError("numerics: t_end must be positive");
  if (snapshot_stride < 0) throw DomainError("numerics: snapshot_stride must be >= 0");
  if (!(support_threshold_rel > 0.0)) {
    throw DomainError("numerics: support_threshold_rel must be positive");
  }
  if (fixed_dt && !(*fixed_dt > 0.0)) throw DomainError("numerics: fixed_dt must be positive");
}

std::vector<double> log_spaced_times(double t_first, double t_last, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {t_last};
  const double a = std::log(t_first);
  const double b = std::log(t_last);
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(a + (b - a) * i / (count - 1)));
  }
  out.back() = t_last;
  return out;
}

std::vector<double> make_grid(const Geometry& geom, double dx) {
  geom.validate();
  const auto cells = static_cast<std::size_t>(std::llround((geom.x_hi - geom.x_lo) / dx));
  if (cells < 4) throw DomainError("grid needs at least 4 cells");
  std::vector<double> x(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) x[i] = geom.x_lo + static_cast<double>(i) * dx;
  return x;
}

std::vector<double> sample_initial(const ProblemParams& p, std::span<const double> x) {
  std::vector<double> u(x.size());
  std::transform(x.begin(), x.end(), u.begin(), [&](double xi) {
    const double s = p.R - std::abs(xi);
    return s > 0.0 ? p.C * std::pow(s, p.alpha) : 0.0;
  });
  return u;
}

double stable_dt(const ReactionDiffusion& model, const Geometry& geom, double dx, double sigma,
                 double u_max) {
  if (!(u_max > 0.0)) return std::numeric_limits<double>::infinity();
  const int n = geom.kind == GeometryKind::Radial ? geom.N : 1;
  const double diffusion = 2.0 * n * model.m * std::pow(u_max, model.m - 1.0);
  const double reaction =
      dx * dx * std::max(model.b, 0.0) * model.beta * std::pow(u_max, model.beta - 1.0);
  return sigma * dx * dx / (diffusion + reaction);
}

double mass(std::span<const double> field, const Geometry& geom, double dx) {
  if (field.size() < 2) return 0.0;
  double sum = 0.0;
  if (geom.kind == GeometryKind::Planar) {
    for (std::size_t i = 0; i < field.size(); ++i) {
      const double w = (i == 0 || i + 1 == field.size()) ? 0.5 : 1.0;
      sum += w * field[i];
    }
    return sum * dx;
  }
  const int n = geom.N;
  const double omega = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double r = geom.x_lo + static_cast<double>(i) * dx;
    const double w = (i == 0 || i + 1 == field.size()) ? 0.5 : 1.0;
    sum += w * field[i] * std::pow(r, n - 1);
  }
  return omega * sum * dx;
}

std::optional<std::size_t> first_above(std::span<const double> field, double threshold) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] > threshold) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> last_above(std::span<const double> field, double threshold) {
  for (std::size_t i = field.size(); i-- > 0;) {
    if (field[i] > threshold) return i;
  }
  return std::nullopt;
}

namespace {

// Flux-form stencil weights, already divided by dx * cell volume.
struct Stencil {
  std::vector<double> left;
  std::vector<double> right;
  bool uniform = false;
  double inv_dx2 = 0.0;
};

Stencil make_stencil(const Geometry& geom, std::size_t n, double dx) {
  Stencil s;
  s.inv_dx2 = 1.0 / (dx * dx);
  if (geom.kind == GeometryKind::Planar || geom.N == 1) {
    s.uniform = geom.kind == GeometryKind::Planar;
    if (s.uniform) return s;
  }
  // Node-centred control volumes [r_i - dx/2, r_i + dx/2], the first one
  // truncated to [0, dx/2] where the face weight r^{N-1} vanishes.
  const int N = geom.N;
  s.left.assign(n, 0.0);
  s.right.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = static_cast<double>(i) * dx;
    const double r_minus = i == 0 ? 0.0 : r - 0.5 * dx;
    const double r_plus = r + 0.5 * dx;
    const double volume = (std::pow(r_plus, N) - std::pow(r_minus, N)) / N;
    s.right[i] = std::pow(r_plus, N - 1) / (dx * volume);
    s.left[i] = i == 0 ? 0.0 : std::pow(r_minus, N - 1) / (dx * volume);
  }
  return s;
}

// Explicit updates of u on [a, z); negative results are clamped to zero and
// counted.
std::int64_t update_planar(double* __restrict u, const double* __restrict w,
                           const double* __restrict react, std::size_t a, std::size_t z, double c,
                           double bdt) {
  std::int64_t clamps = 0;
#pragma omp simd reduction(+ : clamps)
  for (std::size_t i = a; i < z; ++i) {
    const double v = u[i] + c * (w[i + 1] - 2.0 * w[i] + w[i - 1]) - bdt * react[i];
    clamps += v < 0.0;
    u[i] = v < 0.0 ? 0.0 : v;
  }
  return clamps;
}

std::int64_t update_radial(double* __restrict u, const double* __restrict w,
                           const double* __restrict react, const double* __restrict cl,
                           const double* __restrict cr, std::size_t a, std::size_t z, double dt,
                           double bdt) {
  std::int64_t clamps = 0;
#pragma omp simd reduction(+ : clamps)
  for (std::size_t i = a; i < z; ++i) {
    const double v =
        u[i] + dt * (cr[i] * (w[i + 1] - w[i]) - cl[i] * (w[i] - w[i - 1])) - bdt * react[i];
    clamps += v < 0.0;
    u[i] = v < 0.0 ? 0.0 : v;
  }
  return clamps;
}

// Maximum of a non-negative span; NaN entries are skipped.
double span_max(const double* v, std::size_t n) {
  double m = 0.0;
#pragma omp simd reduction(max : m)
  for (std::size_t i = 0; i < n; ++i) m = v[i] > m ? v[i] : m;
  return m;
}

bool all_finite(const double* v, std::size_t n) {
  std::int64_t bad = 0;
#pragma omp simd reduction(+ : bad)
  for (std::size_t i = 0; i < n; ++i) bad += !(v[i] - v[i] == 0.0);
  return bad == 0;
}

std::string describe_abort(const char* what, double t) {
  std::ostringstream os;
  os << what << " at t = " << t;
  return os.str();
}

}  // namespace

SolutionTrace solve(const ProblemParams& params, const Geometry& geom, const NumericsConfig& num) {
  validate(params);
  SolveSetup setup;
  setup.model = ReactionDiffusion{params.m, params.beta, params.b};
  setup.initial = sample_initial(params, make_grid(geom, num.dx));
  setup.params = params;
  return solve(setup, geom, num);
}

SolutionTrace solve(const SolveSetup& setup, const Geometry& geom, const NumericsConfig& num) {
  num.validate();
  const auto x = make_grid(geom, num.dx);
  const std::size_t n = x.size();
  if (setup.initial.size() != n) {
    throw DomainError("initial data does not match the grid size");
  }
  const bool radial = geom.kind == GeometryKind::Radial;
  const double dx = num.dx;
  const ReactionDiffusion model = setup.model;
  const Stencil stencil = make_stencil(geom, n, dx);
  const detail::Power diffusion_power(model.m);
  const detail::Power reaction_power(model.beta);
  const bool has_reaction = model.b != 0.0;

  std::vector<double> u = setup.initial;
  for (double v : u) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("initial data must be finite and >= 0");
  }

  // Updatable node range; Dirichlet ends are overwritten from the boundary data.
  const std::size_t first = radial ? 0 : 1;
  const std::size_t last = n - 2;
  const bool left_homogeneous = radial || !setup.left_value;
  const bool right_homogeneous = !setup.right_value;
  auto apply_boundaries = [&](double t) {
    if (!radial) u[0] = setup.left_value ? std::max(0.0, (*setup.left_value)(t)) : 0.0;
    u[n - 1] = setup.right_value ? std::max(0.0, (*setup.right_value)(t)) : 0.0;
  };
  apply_boundaries(0.0);

  SolutionTrace trace;
  trace.geometry = geom;
  trace.dx = dx;
  trace.x = x;
  trace.params = setup.params;
  trace.model = model;
  trace.support_threshold_rel = num.support_threshold_rel;
  trace.max_u0 = *std::max_element(u.begin(), u.end());
  trace.min_dt = std::numeric_limits<double>::infinity();

  auto store = [&](double t) {
    trace.times.push_back(t);
    trace.fields.push_back(u);
    trace.mass_series.push_back(mass(u, geom, dx));
  };
  store(0.0);

  std::vector<double> stops = num.snapshot_times;
  stops.push_back(num.t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::remove_if(stops.begin(), stops.end(),
                             [&](double s) { return !(s > 0.0) || s > num.t_end; }),
              stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  std::size_t next_stop = 0;

  // u^m with one zero guard cell on each side so the origin stencil can read w[-1].
  std::vector<double> w_store(n + 2, 0.0);
  double* const w = w_store.data() + 1;
  std::vector<double> react(n, 0.0);
  const double abort_dt = 1e-14 * num.t_end;

  auto support = [&]() -> std::pair<std::size_t, std::size_t> {
    std::size_t lo = 0;
    while (lo < n && u[lo] <= 0.0) ++lo;
    if (lo == n) return {n, 0};
    std::size_t hi = n - 1;
    while (u[hi] <= 0.0) --hi;
    return {lo, hi};
  };
  auto [lo, hi] = support();
  // Only [a, z] and the two boundary nodes can change during a step.
  auto support_within = [&](std::size_t a, std::size_t z) -> std::pair<std::size_t, std::size_t> {
    std::size_t new_lo = n, new_hi = 0;
    if (u[0] > 0.0) {
      new_lo = 0;
    } else {
      for (std::size_t i = a; i <= z; ++i) {
        if (u[i] > 0.0) {
          new_lo = i;
          break;
        }
      }
      if (new_lo == n && u[n - 1] > 0.0) new_lo = n - 1;
    }
    if (new_lo == n) return {n, 0};
    if (u[n - 1] > 0.0) {
      new_hi = n - 1;
    } else {
      for (std::size_t i = z + 1; i-- > a;) {
        if (u[i] > 0.0) {
          new_hi = i;
          break;
        }
      }
      if (new_hi < new_lo) new_hi = new_lo;
    }
    return {new_lo, new_hi};
  };

  double t = 0.0;
  std::int64_t step = 0;
  while (next_stop < stops.size()) {
    const double t_stop = stops[next_stop];
    const bool empty = lo > hi;
    std::size_t a = 0, z = 0;
    double u_max = 0.0;
    if (!empty) {
      a = std::max(first, lo > 0 ? lo - 1 : 0);
      z = std::min(last, hi + 1);
      const std::size_t wa = a > 0 ? a - 1 : 0;
      const std::size_t wz = std::min(n - 1, z + 1);
      diffusion_power.apply(std::span<const double>(u).subspan(wa, wz - wa + 1),
                            std::span<double>(w + wa, wz - wa + 1));
      u_max = span_max(u.data() + wa, wz - wa + 1);
      if (has_reaction && a <= z) {
        reaction_power.apply(std::span<const double>(u).subspan(a, z - a + 1),
                             std::span<double>(react).subspan(a, z - a + 1));
      }
    }

    double dt = num.fixed_dt ? *num.fixed_dt
                             : stable_dt(model, geom, dx, num.cfl_sigma, u_max);
    bool lands = false;
    if (dt >= t_stop - t) {
      dt = t_stop - t;
      lands = true;
    } else if (dt < abort_dt) {
      throw SolverAbort(AbortReason::StepUnderflow, describe_abort("time step underflow", t));
    }

    if (!empty && a <= z) {
      std::int64_t clamps = 0;
      const double bdt = model.b * dt;
      clamps = stencil.uniform
                   ? update_planar(u.data(), w, react.data(), a, z + 1, dt * stencil.inv_dx2, bdt)
                   : update_radial(u.data(), w, react.data(), stencil.left.data(),
                                   stencil.right.data(), a, z + 1, dt, bdt);
      trace.clamp_count += clamps;
    }

    t = lands ? t_stop : t + dt;
    apply_boundaries(t);
    ++step;
    trace.min_dt = std::min(trace.min_dt, dt);

    if ((step % 256 == 0 || lands) && !all_finite(u.data(), n)) {
      throw SolverAbort(AbortReason::NonFinite, describe_abort("non-finite value", t));
    }

    const auto [new_lo, new_hi] = empty ? support() : support_within(a, z);
    if (new_lo <= new_hi && !empty) {
      if ((new_lo + 1 < lo && left_homogeneous) || (new_hi > hi + 1 && right_homogeneous)) {
        throw SolverAbort(AbortReason::SupportJump, describe_abort("support grew by more than one cell in a step", t));
      }
    }
    if (new_lo <= new_hi) {
      if (right_homogeneous && new_hi + 3 >= n - 1) {
        throw SolverAbort(AbortReason::OuterBoundary, describe_abort("support reached the outer boundary", t));
      }
      if (!radial && left_homogeneous && new_lo <= 3) {
        throw SolverAbort(AbortReason::LeftBoundary, describe_abort("support reached the left boundary", t));
      }
    }
    lo = new_lo;
    hi = new_hi;

    const bool stride_hit = num.snapshot_stride > 0 && step % num.snapshot_stride == 0;
    if (lands) {
      store(t);
      ++next_stop;
    } else if (stride_hit) {
      store(t);
    }
  }
  trace.steps = step;
  return trace;
}

namespace {

// Zero of the linear extrapolation of u^{m-1} through an edge node and its
// inner neighbour. Nodes whose pressure is under a third of their inner
// neighbour's are precursor tail and are skipped first (at most 8 of them).
double pressure_front(const std::vector<double>& u, const std::vector<double>& x, std::size_t edge,
                      int inward, double m, double dx) {
  auto v = [&](std::size_t i) { return std::pow(u[i], m - 1.0); };
  auto inner_of = [&](std::size_t i) -> std::optional<std::size_t> {
    if (inward < 0 ? i == 0 : i + 1 >= u.size()) return std::nullopt;
    return inward < 0 ? i - 1 : i + 1;
  };
  std::size_t e = edge;
  for (int walk = 0; walk < 8; ++walk) {
    const auto in = inner_of(e);
    if (!in || v(*in) <= 3.0 * v(e)) break;
    e = *in;
  }
  const auto in = inner_of(e);
  if (!in || !(v(*in) > v(e))) return x[edge];
  const double shift = std::min(1.0, v(e) / (v(*in) - v(e))) * dx;
  return x[e] - inward * shift;
}

}  // namespace

std::string_view to_string(FrontEstimator e) {
  return e == FrontEstimator::Node ? "node" : "pressure";
}

InterfaceTrace interface_trace(const SolutionTrace& trace, FrontEstimator estimator) {
  InterfaceTrace it;
  it.dx = trace.dx;
  it.times = trace.times;
  const bool radial = trace.geometry.kind == GeometryKind::Radial;
  it.orientation = radial ? 1 : -1;
  const double threshold = trace.support_threshold_rel * trace.max_u0;
  it.front.reserve(trace.fields.size());
  for (const auto& field : trace.fields) {
    const auto idx = radial ? last_above(field, threshold) : first_above(field, threshold);
    // An extinct solution is reported at the origin (radial) or domain end.
    const std::size_t i = idx ? *idx : (radial ? 0 : field.size() - 1);
    double front = trace.x[i];
    if (estimator == FrontEstimator::Pressure && idx) {
      front = pressure_front(field, trace.x, i, radial ? -1 : 1, trace.model.m, trace.dx);
    }
    it.front.push_back(front);
  }
  it.R = radial ? trace.params.R : (it.front.empty() ? 0.0 : it.front.front());

  double largest = 0.0;
  for (std::size_t i = 0; i < it.front.size(); ++i) {
    const double e = it.excursion(i);
    if (std::abs(e) > std::abs(largest)) largest = e;
  }
  if (std::abs(largest) > 2.0 * it.dx) {
    it.side = largest > 0.0 ? FrontSide::Outward : FrontSide::Inward;
  }
  return it;
}

std::optional<double> sample(const SolutionTrace& trace, std::size_t snapshot, double x) {
  const auto& field = trace.fields.at(snapshot);
  const double s = (x - trace.x.front()) / trace.dx;
  if (s < 0.0 || s > static_cast<double>(field.size() - 1)) return std::nullopt;
  const auto i = std::min(static_cast<std::size_t>(s), field.size() - 2);
  const double f = s - static_cast<double>(i);
  return (1.0 - f) * field[i] + f * field[i + 1];
}

}  // namespace rdfront
