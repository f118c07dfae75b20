#include "config.hpp"

#include <algorithm>
#include <fstream>

#include "rdfront/errors.hpp"

namespace rdfront::app {

using nlohmann::json;

namespace {

template <class T>
void read(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::vector<double> grid(const json& j, const char* name) {
  if (!j.contains(name)) throw ConfigError(std::string("sweep.") + name + " missing");
  const auto& g = j.at(name);
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& v : g) {
      if (!v.is_number()) throw ConfigError(std::string("sweep.") + name + ": non-numeric entry");
      out.push_back(v.get<double>());
    }
  } else if (g.is_object()) {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    read(g, "min", lo);
    read(g, "max", hi);
    read(g, "count", count);
    if (count < 1) throw ConfigError(std::string("sweep.") + name + ".count must be >= 1");
    if (count == 1) {
      out.push_back(lo);
    } else {
      for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    }
  } else {
    throw ConfigError(std::string("sweep.") + name + " must be an array or {min,max,count}");
  }
  if (out.empty()) throw ConfigError(std::string("sweep.") + name + " is empty");
  if (!std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ConfigError(std::string("sweep.") + name + " must be strictly increasing");
  }
  return out;
}

EstimatorChoice estimator_from(const std::string& s) {
  if (s == "auto") return EstimatorChoice::Auto;
  if (s == "node") return EstimatorChoice::Node;
  if (s == "pressure") return EstimatorChoice::Pressure;
  throw ConfigError("verification.front_estimator must be auto, node or pressure");
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;

  if (doc.contains("params")) {
    const auto& p = doc.at("params");
    read(p, "m", cfg.params.m);
    read(p, "beta", cfg.params.beta);
    read(p, "b", cfg.params.b);
    read(p, "C", cfg.params.C);
    read(p, "alpha", cfg.params.alpha);
    read(p, "R", cfg.params.R);
    read(p, "N", cfg.params.N);
  }

  cfg.geometry = Geometry::radial(std::max(cfg.params.N, 1), 1.5 * cfg.params.R);
  if (doc.contains("geometry")) {
    const auto& g = doc.at("geometry");
    std::string kind = "radial";
    read(g, "kind", kind);
    if (kind == "radial") {
      int N = cfg.params.N;
      double r_max = 1.5 * cfg.params.R;
      read(g, "N", N);
      read(g, "r_max", r_max);
      read(g, "x_hi", r_max);
      cfg.geometry = Geometry::radial(N, r_max);
    } else if (kind == "planar") {
      double lo = -1.5 * cfg.params.R;
      double hi = 1.5 * cfg.params.R;
      read(g, "x_lo", lo);
      read(g, "x_hi", hi);
      cfg.geometry = Geometry::planar(lo, hi);
    } else {
      throw ConfigError("geometry.kind must be radial or planar");
    }
  }

  if (doc.contains("numerics")) {
    const auto& n = doc.at("numerics");
    read(n, "dx", cfg.numerics.dx);
    read(n, "cfl_sigma", cfg.numerics.cfl_sigma);
    read(n, "t_end", cfg.numerics.t_end);
    read(n, "snapshot_stride", cfg.numerics.snapshot_stride);
    read(n, "support_threshold_rel", cfg.numerics.support_threshold_rel);
    read(n, "snapshot_count", cfg.snapshot_count);
    if (n.contains("fixed_dt")) {
      double dt = 0.0;
      read(n, "fixed_dt", dt);
      cfg.numerics.fixed_dt = dt;
    }
  }
  if (cfg.snapshot_count < 0) throw ConfigError("numerics.snapshot_count must be >= 0");

  if (doc.contains("shape")) {
    const auto& s = doc.at("shape");
    read(s, "dx", cfg.shape.dx);
    read(s, "cfl_sigma", cfg.shape.cfl_sigma);
    read(s, "asymptote_tol", cfg.shape.asymptote_tol);
    read(s, "force_time_march", cfg.shape.force_time_march);
    read(s, "force_direct", cfg.shape.force_direct);
    std::string kind = "auto";
    read(s, "kind", kind);
    if (kind == "reaction") {
      cfg.shape_reaction = true;
    } else if (kind != "auto" && kind != "diffusion") {
      throw ConfigError("shape.kind must be auto, diffusion or reaction");
    }
  }

  if (doc.contains("verification")) {
    const auto& v = doc.at("verification");
    auto& vc = cfg.verification;
    read(v, "tol_q", vc.tol_q);
    read(v, "tol_k", vc.tol_k);
    read(v, "eps", vc.eps);
    read(v, "xi_from_ode", vc.xi_from_ode);
    if (v.contains("window")) {
      const auto& w = v.at("window");
      if (!(w.is_array() && w.size() == 2 && w[0].is_number() && w[1].is_number())) {
        throw ConfigError("verification.window must be [t_min, t_max]");
      }
      vc.window = FitWindow{w[0].get<double>(), w[1].get<double>()};
      if (!(vc.window->t_min > 0.0 && vc.window->t_min < vc.window->t_max)) {
        throw ConfigError("verification.window must satisfy 0 < t_min < t_max");
      }
    }
    std::string est = "auto";
    read(v, "front_estimator", est);
    vc.front_estimator = estimator_from(est);
    std::string cb = "beta_analog";
    read(v, "cbar_reading", cb);
    if (cb == "beta_analog") {
      vc.cbar_reading = CbarReading::BetaAnalog;
    } else if (cb == "diffusion_only") {
      vc.cbar_reading = CbarReading::DiffusionOnly;
    } else {
      throw ConfigError("verification.cbar_reading must be beta_analog or diffusion_only");
    }
    if (v.contains("certificate_tol")) {
      double tol = 0.0;
      read(v, "certificate_tol", tol);
      vc.certificate_tol = tol;
    }
    if (!(vc.tol_q > 0.0) || !(vc.tol_k > 0.0)) throw ConfigError("tolerances must be positive");
  }

  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    SweepConfig sc;
    sc.m = cfg.params.m;
    sc.b = cfg.params.b;
    sc.C = cfg.params.C;
    read(s, "m", sc.m);
    read(s, "b", sc.b);
    read(s, "C", sc.C);
    sc.alpha_grid = grid(s, "alpha_grid");
    sc.beta_grid = grid(s, "beta_grid");
    cfg.sweep = std::move(sc);
  }

  try {
    cfg.geometry.validate();
    cfg.numerics.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

NumericsConfig run_numerics(const ExperimentConfig& cfg) {
  NumericsConfig n = cfg.numerics;
  if (cfg.snapshot_count > 1) {
    n.snapshot_times = log_spaced_times(n.t_end / 1000.0, n.t_end, cfg.snapshot_count);
  }
  return n;
}

FrontEstimator resolve_estimator(EstimatorChoice c, Regime r) {
  switch (c) {
    case EstimatorChoice::Node: return FrontEstimator::Node;
    case EstimatorChoice::Pressure: return FrontEstimator::Pressure;
    case EstimatorChoice::Auto: break;
  }
  return default_estimator(r);
}

}  // namespace rdfront::app
