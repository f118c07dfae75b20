#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "rdfront/errors.hpp"

namespace rdfront::app {

using nlohmann::json;

namespace {

// JSON has no infinities; they become the strings "inf" / "-inf".
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

json to_json(const ProblemParams& p) {
  return {{"m", p.m},         {"beta", p.beta}, {"b", p.b}, {"C", p.C},
          {"alpha", p.alpha}, {"R", p.R},       {"N", p.N}};
}

json to_json(const RegimeVerdict& v) {
  json j;
  j["regime"] = std::string(to_string(v.regime));
  j["time_exponent"] = opt(v.time_exponent);
  j["constant_ref"] = std::string(to_string(v.constant_ref));
  j["critical_C"] = opt(v.critical_C);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json to_json(const PowerLawFit& f) {
  return {{"exponent_q", num(f.exponent_q)},
          {"coefficient_k", num(f.coefficient_k)},
          {"r_squared", num(f.r_squared)},
          {"window", {num(f.window.t_min), num(f.window.t_max)}},
          {"n_points", f.n_points}};
}

json to_json(const VerdictReport& r) {
  json j;
  j["regime_expected"] = std::string(to_string(r.regime_expected));
  j["regime_observed"] = std::string(to_string(r.regime_observed));
  j["predicted_q"] = opt(r.predicted_q);
  j["measured_q"] = opt(r.measured_q);
  j["predicted_k"] = opt(r.predicted_k);
  j["k_lo"] = opt(r.k_lo);
  j["k_hi"] = opt(r.k_hi);
  j["measured_k"] = opt(r.measured_k);
  j["fit"] = r.fit ? to_json(*r.fit) : json(nullptr);
  j["tol_q"] = r.tol_q;
  j["tol_k"] = r.tol_k;
  j["stationary_delta"] = opt(r.stationary_delta);
  j["max_excursion"] = opt(r.max_excursion);
  j["dx"] = r.dx;
  j["probes"] = json::array();
  for (const auto& p : r.probes) {
    j["probes"].push_back({{"coordinate", p.coordinate},
                           {"time", p.time},
                           {"expected", num(p.expected)},
                           {"measured", num(p.measured)},
                           {"rel_error", num(p.rel_error)}});
  }
  j["q_ok"] = r.q_ok;
  j["k_ok"] = r.k_ok;
  j["regime_ok"] = r.regime_ok;
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j;
}

json to_json(const CertificateReport& r) {
  return {{"nodes_checked", r.nodes_checked},
          {"violations_lower", r.violations_lower},
          {"violations_upper", r.violations_upper},
          {"worst_violation", num(r.worst_violation)},
          {"tol_abs", num(r.tol_abs)},
          {"pass", r.pass}};
}

json to_json(const ConstantsBundle& c) {
  json j;
  j["C"] = c.C;
  j["m"] = c.m;
  j["beta"] = c.beta;
  j["b"] = c.b;
  j["C_star"] = num(c.C_star);
  j["A1"] = num(c.A1);
  j["branch"] = std::string(to_string(c.branch));
  j["zeta1"] = opt(c.zeta1);
  j["C1"] = opt(c.C1);
  j["zeta_star"] = opt(c.zeta_star);
  if (c.shrinking) {
    const auto& s = *c.shrinking;
    j["shrinking"] = {{"Gamma", num(s.Gamma)},
                      {"delta_star", opt(s.delta_star)},
                      {"zeta2", opt(s.zeta2)},
                      {"l1", opt(s.l1)},
                      {"C2", opt(s.C2)}};
  } else {
    j["shrinking"] = nullptr;
  }
  j["C_bar"] = num(c.C_bar);
  j["notes"] = c.notes;
  return j;
}

json to_json(const BoundPair& bp) {
  json j;
  j["case"] = std::string(to_string(bp.tag));
  j["eps"] = bp.eps;
  j["R_eps"] = num(bp.R_eps);
  j["delta_eps"] = num(bp.delta_eps);
  j["has_lower"] = bp.has_lower;
  json c = json::object();
  for (const auto& [k, v] : bp.constants) c[k] = num(v);
  j["constants"] = c;
  j["notes"] = bp.notes;
  return j;
}

json trace_meta(const SolutionTrace& t) {
  json j;
  j["params"] = to_json(t.params);
  j["geometry"] = {{"kind", std::string(to_string(t.geometry.kind))},
                   {"N", t.geometry.N},
                   {"x_lo", t.geometry.x_lo},
                   {"x_hi", t.geometry.x_hi}};
  j["dx"] = t.dx;
  j["nodes"] = t.x.size();
  j["snapshots"] = t.times.size();
  j["t_end"] = t.times.empty() ? 0.0 : t.times.back();
  j["steps"] = t.steps;
  j["clamp_count"] = t.clamp_count;
  j["min_dt"] = t.min_dt;
  j["max_u0"] = t.max_u0;
  if (!t.mass_series.empty()) {
    j["mass_initial"] = t.mass_series.front();
    j["mass_final"] = t.mass_series.back();
  }
  return j;
}

json shape_meta(const ShapeProfile& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"method", std::string(to_string(s.method))},
          {"interface", s.interface},
          {"dx", s.dx},
          {"C", s.params.C},
          {"alpha", s.params.alpha},
          {"m", s.params.m},
          {"beta", s.params.beta},
          {"b", s.params.b},
          {"right_asymptote_error", num(s.right_asymptote_error)},
          {"points", s.xi.size()}};
}

void write_profile_csv(std::ostream& os, const ShapeProfile& s) {
  os << "# kind=" << to_string(s.kind) << " method=" << to_string(s.method)
     << " C=" << fmt(s.params.C) << " alpha=" << fmt(s.params.alpha)
     << " m=" << fmt(s.params.m) << " beta=" << fmt(s.params.beta) << " b=" << fmt(s.params.b)
     << " interface=" << fmt(s.interface) << " dx=" << fmt(s.dx) << "\n";
  os << "xi,value\n";
  for (std::size_t i = 0; i < s.xi.size(); ++i) {
    os << fmt(s.xi[i]) << ',' << fmt(s.value[i]) << '\n';
  }
}

void write_snapshot_csv(std::ostream& os, const SolutionTrace& t, std::size_t i) {
  os << "x,u\n";
  const auto& u = t.fields.at(i);
  for (std::size_t k = 0; k < t.x.size(); ++k) os << fmt(t.x[k]) << ',' << fmt(u[k]) << '\n';
}

void write_snapshots(const std::filesystem::path& dir, const SolutionTrace& t) {
  std::filesystem::create_directories(dir);
  std::ofstream idx(dir / "index.csv");
  idx << "index,t,file\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
    std::ofstream f(dir / name);
    write_snapshot_csv(f, t, i);
    idx << i << ',' << fmt(t.times[i]) << ',' << name << '\n';
  }
}

void write_interface_csv(std::ostream& os, const InterfaceTrace& it) {
  os << "t,front,excursion\n";
  for (std::size_t i = 0; i < it.times.size(); ++i) {
    os << fmt(it.times[i]) << ',' << fmt(it.front[i]) << ',' << fmt(it.excursion(i)) << '\n';
  }
}

void write_violations_csv(std::ostream& os, const CertificateReport& r) {
  os << "x,t,lower,u,upper\n";
  for (const auto& v : r.violations) {
    os << fmt(v.x) << ',' << fmt(v.t) << ',' << fmt(v.lower) << ',' << fmt(v.u) << ','
       << fmt(v.upper) << '\n';
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

}  // namespace rdfront::app
