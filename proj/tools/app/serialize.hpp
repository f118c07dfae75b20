#pragma once

#include <filesystem>
#include <ostream>

#include "json.hpp"
#include "rdfront/asymptotics.hpp"
#include "rdfront/bounds.hpp"
#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

namespace rdfront::app {

nlohmann::json to_json(const ProblemParams& p);
nlohmann::json to_json(const RegimeVerdict& v);
nlohmann::json to_json(const PowerLawFit& f);
nlohmann::json to_json(const VerdictReport& r);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const ConstantsBundle& c);
nlohmann::json to_json(const BoundPair& bp);
/// Trace metadata; fields are written separately as CSV.
nlohmann::json trace_meta(const SolutionTrace& t);
nlohmann::json shape_meta(const ShapeProfile& s);

/// "# key=value ..." comment line, then "xi,value" rows.
void write_profile_csv(std::ostream& os, const ShapeProfile& s);
/// "x,u" rows of one snapshot.
void write_snapshot_csv(std::ostream& os, const SolutionTrace& t, std::size_t i);
/// snapshots/snapshot_NNNN.csv plus snapshots/index.csv (index,t).
void write_snapshots(const std::filesystem::path& dir, const SolutionTrace& t);
/// "t,front,excursion" rows.
void write_interface_csv(std::ostream& os, const InterfaceTrace& it);
/// "x,t,lower,u,upper" rows of the dumped violations.
void write_violations_csv(std::ostream& os, const CertificateReport& r);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rdfront::app
