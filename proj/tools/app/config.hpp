#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdfront/asymptotics.hpp"
#include "rdfront/bounds.hpp"
#include "rdfront/errors.hpp"
#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

namespace rdfront::app {

/// Malformed configuration; maps to exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

enum class EstimatorChoice { Auto, Node, Pressure };

struct VerificationConfig {
  double tol_q = 0.10;
  double tol_k = 0.15;
  std::optional<FitWindow> window;
  EstimatorChoice front_estimator = EstimatorChoice::Auto;
  /// ε of the stationary certificate.
  double eps = 0.1;
  CbarReading cbar_reading = CbarReading::BetaAnalog;
  /// Take ξ* from the profile ODE instead of a time march.
  bool xi_from_ode = true;
  /// Fixed certificate tolerance; defaults to 2x the traveling-wave error
  /// at the run's dx, scaled by max(u0).
  std::optional<double> certificate_tol;
};

struct SweepConfig {
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  double m = 2.0;
  double b = 1.0;
  double C = 1.0;
};

struct ExperimentConfig {
  ProblemParams params;
  Geometry geometry;
  NumericsConfig numerics;
  /// Log-spaced snapshots from t_end/1000 to t_end.
  int snapshot_count = 80;
  ShapeOptions shape;
  /// Force the reaction shape (critical line) in `shape`.
  bool shape_reaction = false;
  VerificationConfig verification;
  std::optional<SweepConfig> sweep;
};

/// Parses a config document. Missing blocks take defaults; the geometry
/// defaults to a radial domain of radius 1.5 R in dimension params.N.
/// Throws ConfigError on malformed input.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Numerics with the log-spaced snapshot instants filled in.
NumericsConfig run_numerics(const ExperimentConfig& cfg);

FrontEstimator resolve_estimator(EstimatorChoice c, Regime r);

}  // namespace rdfront::app
