#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include "json.hpp"
#include <string>
#include <vector>

#include "fuhp/heat.hpp"
#include "fuhp/spherical.hpp"
#include "fuhp/theta.hpp"
#include "fuhp/uhp_graph.hpp"

namespace fuhp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "fuhp 1.0.0";

/// 17 significant digits, "%.17g".
std::string format_double(double x);
double parse_double(const std::string& s);

/// Top-level {config, version, data}.
struct Document {
  Json config = Json::object();
  std::string version = kVersion;
  Json data = Json::object();

  friend bool operator==(const Document&, const Document&) = default;
};

std::string to_json_text(const Document& doc);
/// Throws InvalidParameter on malformed input or missing keys.
Document parse_document(const std::string& text);

/// Comma-separated, header row first, no quoting (fields never contain commas).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string to_csv_text(const CsvTable& table);
/// Throws InvalidParameter on ragged rows or an empty input.
CsvTable parse_csv(const std::string& text);

// Graph: JSON with parameters, vertices and edges; CSV adjacency matrix.
struct GraphExport {
  std::int64_t q = 0;
  Residue delta = 0;
  Residue r_s = 0;
  std::vector<Point> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, each once

  friend bool operator==(const GraphExport&, const GraphExport&) = default;
};

GraphExport export_graph(const UhpGraph& g);
Json graph_to_json(const GraphExport& g);
GraphExport graph_from_json(const Json& data);
CsvTable adjacency_to_csv(const Eigen::MatrixXd& adjacency);
Eigen::MatrixXd adjacency_from_csv(const CsvTable& csv);

Json spectrum_to_json(const std::vector<SpectrumEntry>& spec);
std::vector<SpectrumEntry> spectrum_from_json(const Json& data);
CsvTable spectrum_to_csv(const std::vector<SpectrumEntry>& spec);
std::vector<SpectrumEntry> spectrum_from_csv(const CsvTable& csv);

Json spherical_to_json(const SphericalTable& table);
SphericalTable spherical_from_json(const Json& data);
/// Rows are spherical functions; columns d, adjacency, lambda, then r=<radius>.
/// Orbit sizes and parameters are not in the CSV.
CsvTable spherical_to_csv(const SphericalTable& table);
SphericalTable spherical_from_csv(const CsvTable& csv);

/// Time series of E(t; r): one entry per t, radii ascending.
Json heat_series_to_json(const std::vector<HeatKernelResult>& series);
std::vector<HeatKernelResult> heat_series_from_json(const Json& data);
CsvTable heat_series_to_csv(const std::vector<HeatKernelResult>& series);
std::vector<HeatKernelResult> heat_series_from_csv(const CsvTable& csv);

Json theta_report_to_json(const ThetaReport& rep);
ThetaReport theta_report_from_json(const Json& data);
CsvTable theta_report_to_csv(const ThetaReport& rep);
ThetaReport theta_report_from_csv(const CsvTable& csv);

bool operator==(const SpectrumEntry& a, const SpectrumEntry& b);
bool same_table(const SphericalTable& a, const SphericalTable& b, bool with_orbits);
bool same_series(const std::vector<HeatKernelResult>& a, const std::vector<HeatKernelResult>& b);
bool same_report(const ThetaReport& a, const ThetaReport& b);

}  // namespace fuhp
