#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "rdfront/errors.hpp"
#include "serialize.hpp"

namespace rdfront::app {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string csv_num(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

ShapeProfile compute_shape(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  if (cfg.shape_reaction) return shape_reaction(p.C, p.m, p.beta, p.b, cfg.shape);
  return shape_pme(p.C, p.alpha, p.m, cfg.shape);
}

// Closed-form k where one exists, without shape computations.
void cheap_prediction(const ProblemParams& p, const RegimeVerdict& v, ResultsRow& row) {
  switch (v.regime) {
    case Regime::Expanding:
      row.predicted_k = -pme_interface_by_ode(p.C, p.alpha, p.m);
      break;
    case Regime::CriticalExpanding:
    case Regime::CriticalShrinking:
      if (nearly_equal(p.m + p.beta, 2.0)) {
        row.predicted_k = std::abs(marginal_zeta_star(p.C, p.m, p.beta, p.b));
      }
      break;
    case Regime::Shrinking:
      row.predicted_k = shrinking_coefficient(p.C, p.alpha, p.beta, p.b);
      break;
    default: break;
  }
}

struct VerifyOutcome {
  Prediction prediction;
  SolutionTrace trace;
  InterfaceTrace itrace;
  FrontEstimator estimator = FrontEstimator::Node;
  VerdictReport report;
  std::optional<BoundPair> bound;
  std::optional<CertificateReport> certificate;
  std::optional<double> scheme_error;
  bool pass = false;
};

VerifyOutcome run_verification(const ExperimentConfig& cfg) {
  VerifyOutcome o;
  const auto& p = cfg.params;
  PredictOptions po;
  po.shape = cfg.shape;
  po.xi_from_ode = cfg.verification.xi_from_ode;
  o.prediction = predict(p, po);
  o.trace = solve(p, cfg.geometry, run_numerics(cfg));
  o.estimator = resolve_estimator(cfg.verification.front_estimator, o.prediction.verdict.regime);
  o.itrace = interface_trace(o.trace, o.estimator);
  VerifyOptions vo;
  vo.tol_q = cfg.verification.tol_q;
  vo.tol_k = cfg.verification.tol_k;
  vo.window = cfg.verification.window;
  o.report = verify(p, o.trace, o.itrace, o.prediction, vo);
  o.pass = o.report.pass;

  if (o.prediction.verdict.regime == Regime::Stationary) {
    const auto bc = stationary_case_for(p);
    if (!bc) {
      o.report.notes.push_back("no stationary envelope for this (beta, alpha) cell");
      return o;
    }
    StationaryBoundOptions so;
    so.cbar_reading = cfg.verification.cbar_reading;
    if (o.report.stationary_delta) so.delta_cap = *o.report.stationary_delta;
    try {
      o.bound = stationary_bounds(*bc, p, cfg.verification.eps, so);
    } catch (const DomainError& e) {
      o.report.notes.push_back(std::string("certificate skipped: ") + e.what());
      return o;
    }
    double tol = 0.0;
    if (cfg.verification.certificate_tol) {
      tol = *cfg.verification.certificate_tol;
    } else {
      const auto tw = traveling_wave_check(cfg.numerics.dx, cfg.numerics.cfl_sigma);
      o.scheme_error = tw.rel_linf_error;
      tol = 2.0 * tw.rel_linf_error * o.trace.max_u0;
    }
    o.certificate = certify(o.trace, *o.bound, tol);
    o.pass = o.pass && o.certificate->pass;
  }
  return o;
}

}  // namespace

std::vector<ResultsRow> sweep_rows(const ExperimentConfig& cfg, bool with_runs, int jobs) {
  if (!cfg.sweep) throw ConfigError("sweep block missing");
  const auto& sw = *cfg.sweep;
  std::vector<ResultsRow> rows;
  for (double beta : sw.beta_grid) {
    for (double alpha : sw.alpha_grid) {
      ResultsRow r;
      r.alpha = alpha;
      r.beta = beta;
      rows.push_back(r);
    }
  }

  auto fill = [&](ResultsRow& row) {
    ProblemParams p = cfg.params;
    p.m = sw.m;
    p.b = sw.b;
    p.C = sw.C;
    p.alpha = row.alpha;
    p.beta = row.beta;
    const auto v = classify(p);
    row.regime = v.regime;
    row.predicted_q = v.time_exponent;
    const bool determinate = v.regime != Regime::Unsupported && v.regime != Regime::Undetermined;
    if (!with_runs) {
      if (determinate) cheap_prediction(p, v, row);
      row.pass = determinate;
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    if (determinate) {
      ExperimentConfig cell = cfg;
      cell.params = p;
      try {
        const auto o = run_verification(cell);
        row.predicted_k = o.report.predicted_k;
        row.k_lo = o.report.k_lo;
        row.k_hi = o.report.k_hi;
        row.measured_q = o.report.measured_q;
        row.measured_k = o.report.measured_k;
        row.pass = o.pass;
      } catch (const Error&) {
        cheap_prediction(p, v, row);
        row.pass = false;
      }
    }
    row.runtime_seconds = seconds_since(t0);
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) fill(rows[i]);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

void write_results_csv(std::ostream& os, const std::vector<ResultsRow>& rows) {
  os << "alpha,beta,regime,predicted_q,measured_q,predicted_k,measured_k,pass,runtime_seconds\n";
  for (const auto& r : rows) {
    std::string k = csv_num(r.predicted_k);
    if (!r.predicted_k && r.k_lo && r.k_hi) k = csv_num(r.k_lo) + ".." + csv_num(r.k_hi);
    os << csv_num(r.alpha) << ',' << csv_num(r.beta) << ',' << to_string(r.regime) << ','
       << csv_num(r.predicted_q) << ',' << csv_num(r.measured_q) << ',' << k << ','
       << csv_num(r.measured_k) << ',' << (r.pass ? "true" : "false") << ','
       << csv_num(r.runtime_seconds) << '\n';
  }
}

int cmd_classify(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
                 std::ostream& err) {
  const auto v = classify(cfg.params);
  if (v.regime == Regime::Unsupported) {
    err << v.reason << '\n';
    return kExitInvalid;
  }
  const json j = to_json(v);
  emit(out, j);
  if (o.out_dir) write_json_file(*o.out_dir / "report.json", j);
  return kExitOk;
}

int cmd_shape(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream&) {
  const auto s = compute_shape(cfg);
  if (o.out_dir) {
    std::filesystem::create_directories(*o.out_dir);
    std::ofstream f(*o.out_dir / "profile.csv");
    write_profile_csv(f, s);
    emit(out, shape_meta(s));
  } else {
    write_profile_csv(out, s);
  }
  return kExitOk;
}

int cmd_constants(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
                  std::ostream&) {
  const auto& p = cfg.params;
  validate(p);
  json j;
  j["params"] = to_json(p);
  j["C_bar"] = cbar(p.m);
  try {
    const double T = waiting_time_horizon(p.m, p.b, p.C);
    j["T"] = std::isfinite(T) ? json(T) : json("inf");
  } catch (const DomainError&) {
    j["T"] = nullptr;
  }
  j["gamma_eps"] = gamma_eps(p.m, p.C, cfg.verification.eps);
  j["eps"] = cfg.verification.eps;
  if (p.beta < 1.0 && p.b > 0.0) {
    j["C_star"] = critical_C(p.m, p.beta, p.b);
    j["C_bar_beta"] = cbar_beta(p.m, p.beta);
    j["l_star"] = shrinking_coefficient(p.C, p.alpha, p.beta, p.b);
    if (nearly_equal(p.alpha, 2.0 / (p.m - p.beta))) {
      const auto h = shape_reaction(p.C, p.m, p.beta, p.b, cfg.shape);
      const double A1 = h.value_at(0.0).value_or(0.0);
      j["zeta_star_measured"] = h.interface;
      j["appendix"] = to_json(appendix_constants(p.C, p.m, p.beta, p.b, A1));
    }
  }
  emit(out, j);
  if (o.out_dir) write_json_file(*o.out_dir / "constants.json", j);
  return kExitOk;
}

int cmd_solve(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto trace = solve(cfg.params, cfg.geometry, run_numerics(cfg));
  const auto verdict = classify(cfg.params);
  const auto est = resolve_estimator(cfg.verification.front_estimator, verdict.regime);
  const auto it = interface_trace(trace, est);
  json j = trace_meta(trace);
  j["front_estimator"] = std::string(to_string(est));
  j["front_final"] = it.front.empty() ? 0.0 : it.front.back();
  j["runtime_seconds"] = seconds_since(t0);
  if (o.out_dir) {
    write_snapshots(*o.out_dir / "snapshots", trace);
    std::ofstream f(*o.out_dir / "interface.csv");
    write_interface_csv(f, it);
    write_json_file(*o.out_dir / "trace.json", j);
  }
  emit(out, j);
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
               std::ostream& err) {
  const auto v = classify(cfg.params);
  if (v.regime == Regime::Unsupported || v.regime == Regime::Undetermined) {
    err << to_string(v.regime) << ": " << v.reason << '\n';
    return kExitInvalid;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = run_verification(cfg);
  json j;
  j["params"] = to_json(cfg.params);
  j["verdict"] = to_json(res.report);
  j["front_estimator"] = std::string(to_string(res.estimator));
  j["prediction"] = {{"interface_constant", res.prediction.interface_constant
                                                ? json(*res.prediction.interface_constant)
                                                : json(nullptr)},
                     {"notes", res.prediction.notes}};
  if (res.prediction.waiting_horizon) {
    const double T = *res.prediction.waiting_horizon;
    j["prediction"]["waiting_horizon"] = std::isfinite(T) ? json(T) : json("inf");
  }
  if (res.prediction.constants) j["constants"] = to_json(*res.prediction.constants);
  if (res.bound) j["bound"] = to_json(*res.bound);
  if (res.certificate) j["certificate"] = to_json(*res.certificate);
  if (res.scheme_error) j["scheme_error"] = *res.scheme_error;
  j["trace"] = trace_meta(res.trace);
  j["pass"] = res.pass;
  j["runtime_seconds"] = seconds_since(t0);
  if (o.out_dir) {
    write_json_file(*o.out_dir / "report.json", j);
    std::ofstream f(*o.out_dir / "interface.csv");
    write_interface_csv(f, res.itrace);
    if (res.certificate) {
      std::ofstream c(*o.out_dir / "violations.csv");
      write_violations_csv(c, *res.certificate);
    }
  }
  emit(out, j);
  return res.pass ? kExitOk : kExitFail;
}

int cmd_sweep(const ExperimentConfig& cfg, const CommandOptions& o, std::ostream& out,
              std::ostream&) {
  const auto rows = sweep_rows(cfg, o.with_runs, o.jobs);
  if (o.out_dir) {
    std::filesystem::create_directories(*o.out_dir);
    std::ofstream f(*o.out_dir / "results.csv");
    write_results_csv(f, rows);
  } else {
    write_results_csv(out, rows);
  }
  if (!o.with_runs) return kExitOk;
  for (const auto& r : rows) {
    if (!r.pass) return kExitFail;
  }
  return kExitOk;
}

int run(const std::string& command, const std::filesystem::path& config, const CommandOptions& o,
        std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = load_config(config);
    if (command == "classify") return cmd_classify(cfg, o, out, err);
    if (command == "shape") return cmd_shape(cfg, o, out, err);
    if (command == "constants") return cmd_constants(cfg, o, out, err);
    if (command == "solve") return cmd_solve(cfg, o, out, err);
    if (command == "verify") return cmd_verify(cfg, o, out, err);
    if (command == "sweep") return cmd_sweep(cfg, o, out, err);
    err << "unknown command: " << command << '\n';
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const UnsupportedError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace rdfront::app
