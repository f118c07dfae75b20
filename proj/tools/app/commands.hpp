#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace rdfront::app {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitInvalid = 2 };

struct CommandOptions {
  std::optional<std::filesystem::path> out_dir;
  bool with_runs = false;
  int jobs = 1;
};

struct ResultsRow {
  double alpha = 0.0;
  double beta = 0.0;
  Regime regime = Regime::Undetermined;
  std::optional<double> predicted_q;
  std::optional<double> measured_q;
  std::optional<double> predicted_k;
  std::optional<double> k_lo;
  std::optional<double> k_hi;
  std::optional<double> measured_k;
  bool pass = false;
  double runtime_seconds = 0.0;
};

/// Cells in beta-major order (outer loop beta, inner loop alpha). Without
/// runs, rows carry only the classification and closed-form predictions,
/// pass means a determinate regime and runtime_seconds is 0.
std::vector<ResultsRow> sweep_rows(const ExperimentConfig& cfg, bool with_runs, int jobs);

/// Header plus one line per row; interval predictions print as "lo..hi".
void write_results_csv(std::ostream& os, const std::vector<ResultsRow>& rows);

int cmd_classify(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
                 std::ostream& err);
int cmd_shape(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream& err);
int cmd_constants(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
                  std::ostream& err);
int cmd_solve(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream& err);
int cmd_verify(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
               std::ostream& err);
int cmd_sweep(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream& err);

/// Loads the config and dispatches; maps exceptions onto exit codes
/// (invalid input 2, numerical failure 1).
int run(const std::string& command, const std::filesystem::path& config, const CommandOptions& o,
        std::ostream& out, std::ostream& err);

}  // namespace rdfront::app
