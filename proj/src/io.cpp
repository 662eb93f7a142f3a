#include "fuhp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "fuhp/errors.hpp"

namespace fuhp {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw InternalError("non-finite value in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidParameter("not a number: '" + s + "'");
  return x;
}

namespace {

// nlohmann prints the shortest round-trip form; floats are written here
// with format_double instead.
void write_json(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write_json(os, v, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidParameter(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t column(const CsvTable& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return i;
  throw InvalidParameter("missing CSV column '" + name + "'");
}

Residue parse_radius_column(const std::string& name) {
  if (name.rfind("r=", 0) != 0) throw InvalidParameter("bad radius column '" + name + "'");
  return static_cast<Residue>(std::stoll(name.substr(2)));
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw InvalidParameter("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::string to_json_text(const Document& doc) {
  Json top = Json::object();
  top["config"] = doc.config;
  top["version"] = doc.version;
  top["data"] = doc.data;
  std::ostringstream os;
  write_json(os, top, 0);
  os << "\n";
  return os.str();
}

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidParameter(std::string("malformed JSON: ") + e.what());
  }
  Document doc;
  doc.config = at(j, "config");
  doc.version = at(j, "version").get<std::string>();
  doc.data = at(j, "data");
  return doc;
}

std::string to_csv_text(const CsvTable& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw InvalidParameter("ragged CSV row");
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw InvalidParameter("empty CSV");
  return t;
}

// ---------------------------------------------------------------- graph

GraphExport export_graph(const UhpGraph& g) {
  GraphExport out{g.ctx().q(), g.ctx().delta(), g.generating_radius(), {}, {}};
  for (std::size_t v = 0; v < g.size(); ++v) {
    out.vertices.push_back(g.point_at(v));
    for (auto w : g.neighbours(v))
      if (v < w) out.edges.emplace_back(v, w);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Json graph_to_json(const GraphExport& g) {
  Json j = Json::object();
  j["parameters"] = {{"q", g.q}, {"delta", g.delta}, {"r_s", g.r_s}};
  Json verts = Json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    verts.push_back(Json{{"index", i}, {"x", g.vertices[i].x}, {"y", g.vertices[i].y}});
  j["vertices"] = verts;
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = edges;
  return j;
}

GraphExport graph_from_json(const Json& data) {
  GraphExport g;
  const Json& p = at(data, "parameters");
  g.q = at(p, "q").get<std::int64_t>();
  g.delta = at(p, "delta").get<Residue>();
  g.r_s = at(p, "r_s").get<Residue>();
  for (const auto& v : at(data, "vertices")) g.vertices.push_back({at(v, "x").get<Residue>(), at(v, "y").get<Residue>()});
  for (const auto& e : at(data, "edges")) g.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return g;
}

CsvTable adjacency_to_csv(const Eigen::MatrixXd& adjacency) {
  CsvTable t;
  t.header.push_back("vertex");
  for (Eigen::Index j = 0; j < adjacency.cols(); ++j) t.header.push_back("v" + std::to_string(j));
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j)
      row.push_back(std::to_string(static_cast<long long>(std::llround(adjacency(i, j)))));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Eigen::MatrixXd adjacency_from_csv(const CsvTable& csv) {
  const auto n = static_cast<Eigen::Index>(csv.rows.size());
  if (static_cast<Eigen::Index>(csv.header.size()) != n + 1) throw InvalidParameter("adjacency CSV is not square");
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = static_cast<double>(parse_int(csv.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)]));
  return a;
}

// ---------------------------------------------------------------- spectrum

bool operator==(const SpectrumEntry& a, const SpectrumEntry& b) {
  return a.adjacency == b.adjacency && a.laplacian == b.laplacian && a.multiplicity == b.multiplicity;
}

Json spectrum_to_json(const std::vector<SpectrumEntry>& spec) {
  Json eig = Json::array(), lap = Json::array(), mult = Json::array();
  for (const auto& e : spec) {
    eig.push_back(e.adjacency);
    lap.push_back(e.laplacian);
    mult.push_back(e.multiplicity);
  }
  return Json{{"adjacency_eigenvalues", eig}, {"laplacian_eigenvalues", lap}, {"multiplicities", mult}};
}

std::vector<SpectrumEntry> spectrum_from_json(const Json& data) {
  const Json& eig = at(data, "adjacency_eigenvalues");
  const Json& lap = at(data, "laplacian_eigenvalues");
  const Json& mult = at(data, "multiplicities");
  if (eig.size() != lap.size() || eig.size() != mult.size()) throw InvalidParameter("spectrum arrays differ in length");
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < eig.size(); ++i)
    out.push_back({eig[i].get<double>(), lap[i].get<double>(), mult[i].get<int>()});
  return out;
}

CsvTable spectrum_to_csv(const std::vector<SpectrumEntry>& spec) {
  CsvTable t{{"adjacency", "laplacian", "multiplicity"}, {}};
  for (const auto& e : spec)
    t.rows.push_back({format_double(e.adjacency), format_double(e.laplacian), std::to_string(e.multiplicity)});
  return t;
}

std::vector<SpectrumEntry> spectrum_from_csv(const CsvTable& csv) {
  const auto a = column(csv, "adjacency"), l = column(csv, "laplacian"), m = column(csv, "multiplicity");
  std::vector<SpectrumEntry> out;
  for (const auto& r : csv.rows)
    out.push_back({parse_double(r[a]), parse_double(r[l]), static_cast<int>(parse_int(r[m]))});
  return out;
}

// ---------------------------------------------------------------- spherical

Json spherical_to_json(const SphericalTable& table) {
  Json j = Json::object();
  j["q"] = table.q;
  j["delta"] = table.delta;
  j["r_s"] = table.r_s;
  j["radii"] = table.radii;
  j["orbit_sizes"] = table.orbit_sizes;
  j["distinct_adjacency_eigenvalues"] = table.distinct_adjacency_eigenvalues;
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json vals = Json::array();
    for (double v : r.values) vals.push_back(v);
    rows.push_back(Json{{"multiplicity", r.multiplicity},
                        {"adjacency_eigenvalue", r.adjacency_eigenvalue},
                        {"laplace_eigenvalue", r.laplace_eigenvalue},
                        {"values", vals}});
  }
  j["rows"] = rows;
  return j;
}

SphericalTable spherical_from_json(const Json& data) {
  SphericalTable t;
  t.q = at(data, "q").get<std::int64_t>();
  t.delta = at(data, "delta").get<Residue>();
  t.r_s = at(data, "r_s").get<Residue>();
  t.radii = at(data, "radii").get<std::vector<Residue>>();
  t.orbit_sizes = at(data, "orbit_sizes").get<std::vector<std::size_t>>();
  t.distinct_adjacency_eigenvalues = at(data, "distinct_adjacency_eigenvalues").get<std::size_t>();
  for (const auto& r : at(data, "rows")) {
    SphericalRow row;
    row.multiplicity = at(r, "multiplicity").get<int>();
    row.adjacency_eigenvalue = at(r, "adjacency_eigenvalue").get<double>();
    row.laplace_eigenvalue = at(r, "laplace_eigenvalue").get<double>();
    row.values = at(r, "values").get<std::vector<double>>();
    if (row.values.size() != t.radii.size()) throw InvalidParameter("row length differs from radii");
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable spherical_to_csv(const SphericalTable& table) {
  CsvTable t{{"d", "adjacency", "lambda"}, {}};
  for (auto r : table.radii) t.header.push_back("r=" + std::to_string(r));
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{std::to_string(row.multiplicity), format_double(row.adjacency_eigenvalue),
                                   format_double(row.laplace_eigenvalue)};
    for (double v : row.values) cells.push_back(format_double(v));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

SphericalTable spherical_from_csv(const CsvTable& csv) {
  SphericalTable t;
  const auto d = column(csv, "d"), a = column(csv, "adjacency"), l = column(csv, "lambda");
  std::vector<std::size_t> value_cols;
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i].rfind("r=", 0) == 0) {
      t.radii.push_back(parse_radius_column(csv.header[i]));
      value_cols.push_back(i);
    }
  for (const auto& r : csv.rows) {
    SphericalRow row;
    row.multiplicity = static_cast<int>(parse_int(r[d]));
    row.adjacency_eigenvalue = parse_double(r[a]);
    row.laplace_eigenvalue = parse_double(r[l]);
    for (auto c : value_cols) row.values.push_back(parse_double(r[c]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool same_table(const SphericalTable& a, const SphericalTable& b, bool with_orbits) {
  if (a.radii != b.radii || a.rows.size() != b.rows.size()) return false;
  if (with_orbits && (a.q != b.q || a.delta != b.delta || a.r_s != b.r_s || a.orbit_sizes != b.orbit_sizes ||
                      a.distinct_adjacency_eigenvalues != b.distinct_adjacency_eigenvalues))
    return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto &x = a.rows[i], &y = b.rows[i];
    if (x.values != y.values || x.multiplicity != y.multiplicity ||
        x.adjacency_eigenvalue != y.adjacency_eigenvalue || x.laplace_eigenvalue != y.laplace_eigenvalue)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------- heat

Json heat_series_to_json(const std::vector<HeatKernelResult>& series) {
  Json j = Json::object();
  if (!series.empty()) j["parameters"] = {{"q", series.front().params.q}, {"delta", series.front().params.delta},
                                          {"r_s", series.front().params.r_s}};
  Json rows = Json::array();
  for (const auto& e : series) {
    Json by_r = Json::object();
    for (const auto& [r, v] : e.by_radius) by_r[std::to_string(r)] = v;
    rows.push_back(Json{{"t", e.t}, {"by_radius", by_r}});
  }
  j["series"] = rows;
  return j;
}

std::vector<HeatKernelResult> heat_series_from_json(const Json& data) {
  HeatParams params;
  if (data.contains("parameters")) {
    const Json& p = data.at("parameters");
    params = {at(p, "q").get<std::int64_t>(), at(p, "delta").get<Residue>(), at(p, "r_s").get<Residue>()};
  }
  std::vector<HeatKernelResult> out;
  for (const auto& row : at(data, "series")) {
    HeatKernelResult e;
    e.t = at(row, "t").get<double>();
    e.params = params;
    for (const auto& [k, v] : at(row, "by_radius").items()) e.by_radius[static_cast<Residue>(std::stoll(k))] = v.get<double>();
    out.push_back(std::move(e));
  }
  return out;
}

CsvTable heat_series_to_csv(const std::vector<HeatKernelResult>& series) {
  CsvTable t{{"t"}, {}};
  if (series.empty()) return t;
  for (const auto& [r, v] : series.front().by_radius) t.header.push_back("r=" + std::to_string(r));
  for (const auto& e : series) {
    std::vector<std::string> cells{format_double(e.t)};
    for (const auto& [r, v] : e.by_radius) cells.push_back(format_double(v));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::vector<HeatKernelResult> heat_series_from_csv(const CsvTable& csv) {
  const auto tc = column(csv, "t");
  std::vector<std::pair<std::size_t, Residue>> cols;
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (i != tc) cols.emplace_back(i, parse_radius_column(csv.header[i]));
  std::vector<HeatKernelResult> out;
  for (const auto& r : csv.rows) {
    HeatKernelResult e;
    e.t = parse_double(r[tc]);
    for (const auto& [c, radius] : cols) e.by_radius[radius] = parse_double(r[c]);
    out.push_back(std::move(e));
  }
  return out;
}

bool same_series(const std::vector<HeatKernelResult>& a, const std::vector<HeatKernelResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].t != b[i].t || a[i].by_radius != b[i].by_radius) return false;
  return true;
}

// ---------------------------------------------------------------- theta

Json theta_report_to_json(const ThetaReport& rep) {
  Json j = Json::object();
  j["parameters"] = {{"q", rep.params.q}, {"delta", rep.params.delta}, {"r_s", rep.params.r_s}};
  j["max_reconciled_error"] = rep.max_reconciled_error;
  j["max_verbatim_deviation"] = rep.max_verbatim_deviation;
  j["phase_two_valued"] = rep.phase_two_valued;
  j["passed"] = rep.passed;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row{{"r", r.r}, {"t", r.t}, {"oracle", r.oracle}, {"reconciled", r.reconciled}};
    if (r.verbatim) {
      row["verbatim_re"] = r.verbatim->real();
      row["verbatim_im"] = r.verbatim->imag();
      row["verbatim_deviation"] = *r.verbatim_deviation;
    } else {
      row["verbatim_re"] = nullptr;
      row["verbatim_im"] = nullptr;
      row["verbatim_deviation"] = nullptr;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

ThetaReport theta_report_from_json(const Json& data) {
  ThetaReport rep;
  const Json& p = at(data, "parameters");
  rep.params = {at(p, "q").get<std::int64_t>(), at(p, "delta").get<Residue>(), at(p, "r_s").get<Residue>()};
  rep.max_reconciled_error = at(data, "max_reconciled_error").get<double>();
  rep.max_verbatim_deviation = at(data, "max_verbatim_deviation").get<double>();
  rep.phase_two_valued = at(data, "phase_two_valued").get<bool>();
  rep.passed = at(data, "passed").get<bool>();
  for (const auto& r : at(data, "rows")) {
    ThetaReportRow row;
    row.r = at(r, "r").get<Residue>();
    row.t = at(r, "t").get<double>();
    row.oracle = at(r, "oracle").get<double>();
    row.reconciled = at(r, "reconciled").get<double>();
    if (!at(r, "verbatim_re").is_null()) {
      row.verbatim = Complex(r.at("verbatim_re").get<double>(), at(r, "verbatim_im").get<double>());
      row.verbatim_deviation = at(r, "verbatim_deviation").get<double>();
    }
    rep.rows.push_back(row);
  }
  return rep;
}

CsvTable theta_report_to_csv(const ThetaReport& rep) {
  CsvTable t{{"r", "t", "oracle", "reconciled", "verbatim_re", "verbatim_im", "verbatim_deviation"}, {}};
  for (const auto& r : rep.rows) {
    std::vector<std::string> cells{std::to_string(r.r), format_double(r.t), format_double(r.oracle),
                                   format_double(r.reconciled)};
    if (r.verbatim) {
      cells.push_back(format_double(r.verbatim->real()));
      cells.push_back(format_double(r.verbatim->imag()));
      cells.push_back(format_double(*r.verbatim_deviation));
    } else {
      cells.insert(cells.end(), {"", "", ""});
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

ThetaReport theta_report_from_csv(const CsvTable& csv) {
  const auto rc = column(csv, "r"), tc = column(csv, "t"), oc = column(csv, "oracle"),
             cc = column(csv, "reconciled"), vr = column(csv, "verbatim_re"), vi = column(csv, "verbatim_im"),
             vd = column(csv, "verbatim_deviation");
  ThetaReport rep;
  for (const auto& r : csv.rows) {
    ThetaReportRow row;
    row.r = static_cast<Residue>(parse_int(r[rc]));
    row.t = parse_double(r[tc]);
    row.oracle = parse_double(r[oc]);
    row.reconciled = parse_double(r[cc]);
    if (!r[vr].empty()) {
      row.verbatim = Complex(parse_double(r[vr]), parse_double(r[vi]));
      row.verbatim_deviation = parse_double(r[vd]);
    }
    rep.max_reconciled_error = std::max(rep.max_reconciled_error, std::abs(row.reconciled - row.oracle));
    if (row.verbatim_deviation) rep.max_verbatim_deviation = std::max(rep.max_verbatim_deviation, *row.verbatim_deviation);
    rep.rows.push_back(row);
  }
  rep.passed = rep.max_reconciled_error <= 1e-9;
  return rep;
}

bool same_report(const ThetaReport& a, const ThetaReport& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto &x = a.rows[i], &y = b.rows[i];
    if (x.r != y.r || x.t != y.t || x.oracle != y.oracle || x.reconciled != y.reconciled ||
        x.verbatim != y.verbatim || x.verbatim_deviation != y.verbatim_deviation)
      return false;
  }
  return true;
}

}  // namespace fuhp
