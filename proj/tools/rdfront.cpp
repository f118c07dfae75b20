#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Interface motion for u_t = Δu^m - b u^β with data C (R - |x|)_+^α"};
  cli.require_subcommand(1);

  std::string config;
  std::string out_dir;
  bool with_runs = false;
  int jobs = 1;

  const char* commands[][2] = {
      {"classify", "Print the regime verdict as JSON"},
      {"shape", "Compute the self-similar profile (profile.csv)"},
      {"constants", "Print C_bar, T, C* and the critical-line constants"},
      {"solve", "Run the PDE solver and dump snapshots"},
      {"verify", "Solve, fit the interface law and compare with the prediction"},
      {"sweep", "Classify (or run) every cell of an (alpha, beta) grid"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = cli.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    if (std::string(name) == "sweep") {
      sub->add_flag("--with-runs", with_runs, "Attach desk-scale solves and fits");
      sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    }
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : rdfront::app::kExitInvalid;
  }

  rdfront::app::CommandOptions opts;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  opts.with_runs = with_runs;
  opts.jobs = jobs;
  const auto* sub = cli.get_subcommands().front();
  return rdfront::app::run(sub->get_name(), config, opts, std::cout, std::cerr);
}
