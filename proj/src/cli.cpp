#include "fuhp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fuhp/errors.hpp"
#include "fuhp/heat.hpp"
#include "fuhp/io.hpp"
#include "fuhp/theta.hpp"
#include "fuhp/verify.hpp"

namespace fuhp {

std::int64_t max_q_from_env() {
  const char* v = std::getenv("FUHP_MAX_Q");
  if (!v || !*v) return 101;
  char* end = nullptr;
  const long long m = std::strtoll(v, &end, 10);
  if (*end != '\0' || m < 3) throw InvalidParameter("FUHP_MAX_Q must be an integer >= 3");
  return m;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::int64_t parse_integer(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InvalidParameter(what + " must be an integer (got '" + s + "')");
  }
  if (pos != s.size()) throw InvalidParameter(what + " must be an integer (got '" + s + "')");
  return v;
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  for (const auto& piece : split(s, ',')) {
    double t = 0.0;
    try {
      t = parse_double(piece);
    } catch (const InvalidParameter&) {
      throw InvalidParameter("--t expects comma-separated numbers (got '" + piece + "')");
    }
    if (!(t >= 0.0)) throw DomainError("times must be >= 0");
    out.push_back(t);
  }
  if (out.empty()) throw InvalidParameter("--t is empty");
  return out;
}

struct RawOptions {
  std::string q = "3";
  std::string q_list;
  std::string delta = "auto";
  std::string r_s;
  std::string t;
  std::string format = "json";
  std::string out;
  std::string mode = "both";
  bool include_lift = false;
};

RunConfig resolve(const std::string& command, const RawOptions& raw) {
  RunConfig cfg;
  cfg.command = command;
  const std::string qs = raw.q_list.empty() ? raw.q : raw.q_list;
  for (const auto& piece : split(qs, ',')) cfg.q_list.push_back(parse_integer(piece, "q"));
  if (cfg.q_list.empty()) throw InvalidParameter("q must be an odd prime (got nothing)");
  if (command != "verify" && cfg.q_list.size() != 1) throw InvalidParameter("only verify accepts a list of q");
  const std::int64_t cap = max_q_from_env();
  for (auto q : cfg.q_list) {
    if (q < 3 || !is_prime(q)) throw InvalidParameter("q must be an odd prime (got " + std::to_string(q) + ")");
    if (q > cap) throw InvalidParameter("q = " + std::to_string(q) + " exceeds FUHP_MAX_Q = " + std::to_string(cap));
  }
  if (raw.delta != "auto") cfg.delta = parse_integer(raw.delta, "delta");
  if (raw.r_s != "all-regular" && !raw.r_s.empty()) cfg.r_s = parse_integer(raw.r_s, "r_s");

  std::string t = raw.t;
  if (t.empty()) t = command == "theta" ? "0.1,1" : "0,0.01,0.1,1,10";
  cfg.t_grid = parse_times(t);

  if (raw.format == "json") cfg.format = OutputFormat::Json;
  else if (raw.format == "csv") cfg.format = OutputFormat::Csv;
  else throw InvalidParameter("--format must be json or csv");
  if (raw.mode != "verbatim" && raw.mode != "reconciled" && raw.mode != "both")
    throw InvalidParameter("--mode must be verbatim, reconciled or both");
  cfg.mode = raw.mode;
  cfg.out_path = raw.out;
  cfg.include_lift = raw.include_lift;
  return cfg;
}

Json config_json(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii) {
  Json j = Json::object();
  j["command"] = cfg.command;
  j["q"] = ctx.q();
  j["delta"] = ctx.delta();
  j["delta_source"] = cfg.delta ? "given" : "auto";
  j["r_s"] = radii;
  j["t_grid"] = cfg.t_grid;
  j["format"] = cfg.format == OutputFormat::Json ? "json" : "csv";
  if (cfg.command == "theta") j["mode"] = cfg.mode;
  return j;
}

/// Radii a command runs over: the given one, or all regular radii. Without
/// --r-s, the smallest regular radius.
std::vector<Residue> radii_for(const RunConfig& cfg, const FieldCtx& ctx, bool explicit_all) {
  if (cfg.r_s) {
    const Residue r = ctx.reduce(*cfg.r_s);
    if (is_degenerate_radius(ctx, r))
      throw InvalidParameter("r_s = " + std::to_string(r) + " is degenerate (0 or 4*delta)");
    return {r};
  }
  auto regular = regular_radii(ctx);
  if (!explicit_all) regular.resize(1);
  return regular;
}

/// Prefixes every row with its generating radius when several are exported.
CsvTable stack(const std::vector<std::pair<Residue, CsvTable>>& parts) {
  if (parts.size() == 1) return parts.front().second;
  CsvTable out;
  out.header.push_back("r_s");
  out.header.insert(out.header.end(), parts.front().second.header.begin(), parts.front().second.header.end());
  for (const auto& [r, t] : parts)
    for (const auto& row : t.rows) {
      std::vector<std::string> cells{std::to_string(r)};
      cells.insert(cells.end(), row.begin(), row.end());
      out.rows.push_back(std::move(cells));
    }
  return out;
}

Json gather(const std::vector<std::pair<Residue, Json>>& parts) {
  if (parts.size() == 1) return parts.front().second;
  Json runs = Json::array();
  for (const auto& [r, j] : parts) runs.push_back(Json{{"r_s", r}, {"result", j}});
  return Json{{"runs", runs}};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InvalidParameter("cannot open output file " + cfg.out_path);
  f << text;
  if (!f) throw InvalidParameter("cannot write output file " + cfg.out_path);
}

void emit_result(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii,
                 const std::vector<std::pair<Residue, Json>>& json_parts,
                 const std::vector<std::pair<Residue, CsvTable>>& csv_parts, std::ostream& out) {
  if (cfg.format == OutputFormat::Csv) {
    emit(cfg, to_csv_text(stack(csv_parts)), out);
    return;
  }
  Document doc;
  doc.config = config_json(cfg, ctx, radii);
  doc.data = gather(json_parts);
  emit(cfg, to_json_text(doc), out);
}

std::string ext_string(ExtElement z) { return std::to_string(z.a) + " + " + std::to_string(z.b) + "*sqrt(delta)"; }

int cmd_info(const RunConfig& cfg, const FieldCtx& ctx, std::ostream& out) {
  const auto orbits = orbit_decomposition(ctx);
  if (cfg.format == OutputFormat::Json) {
    Document doc;
    doc.config = config_json(cfg, ctx, {});
    Json sizes = Json::object();
    for (const auto& [r, m] : orbits.orbits) sizes[std::to_string(r)] = m.size();
    doc.data = Json{{"q", ctx.q()},
                    {"delta", ctx.delta()},
                    {"base_generator", ctx.g()},
                    {"extension_generator", {ctx.zeta().a, ctx.zeta().b}},
                    {"vertex_count", half_plane_size(ctx)},
                    {"degenerate_radii", {0, antipodal_radius(ctx)}},
                    {"regular_radii", regular_radii(ctx)},
                    {"orbit_sizes", sizes}};
    emit(cfg, to_json_text(doc), out);
    return kExitOk;
  }
  std::ostringstream os;
  os << "q = " << ctx.q() << "\n";
  os << "delta = " << ctx.delta() << (cfg.delta ? "" : " (auto)") << "\n";
  os << "generator of F_q^x = " << ctx.g() << "\n";
  os << "generator of F_q(sqrt(delta))^x = " << ext_string(ctx.zeta()) << "\n";
  os << "vertices = " << half_plane_size(ctx) << "\n";
  os << "degenerate radii = 0, " << antipodal_radius(ctx) << "\n";
  os << "regular radii =";
  for (auto r : regular_radii(ctx)) os << " " << r;
  os << "\norbit sizes =";
  for (const auto& [r, m] : orbits.orbits) os << " " << r << ":" << m.size();
  os << "\n";
  emit(cfg, os.str(), out);
  return kExitOk;
}

int cmd_graph(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii, std::ostream& out) {
  std::vector<std::pair<Residue, Json>> js;
  std::vector<std::pair<Residue, CsvTable>> cs;
  for (auto r : radii) {
    const UhpGraph g = build_graph(ctx, r);
    if (cfg.format == OutputFormat::Json) js.emplace_back(r, graph_to_json(export_graph(g)));
    else cs.emplace_back(r, adjacency_to_csv(g.adjacency()));
  }
  emit_result(cfg, ctx, radii, js, cs, out);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii, std::ostream& out) {
  std::vector<std::pair<Residue, Json>> js;
  std::vector<std::pair<Residue, CsvTable>> cs;
  for (auto r : radii) {
    const auto spec = adjacency_spectrum(build_graph(ctx, r));
    js.emplace_back(r, spectrum_to_json(spec));
    cs.emplace_back(r, spectrum_to_csv(spec));
  }
  emit_result(cfg, ctx, radii, js, cs, out);
  return kExitOk;
}

int cmd_spherical(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii, std::ostream& out) {
  std::vector<std::pair<Residue, Json>> js;
  std::vector<std::pair<Residue, CsvTable>> cs;
  for (auto r : radii) {
    const auto table = radial_eigenbasis(build_graph(ctx, r));
    js.emplace_back(r, spherical_to_json(table));
    cs.emplace_back(r, spherical_to_csv(table));
  }
  emit_result(cfg, ctx, radii, js, cs, out);
  return kExitOk;
}

int cmd_heat(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii, std::ostream& out) {
  std::vector<std::pair<Residue, Json>> js;
  std::vector<std::pair<Residue, CsvTable>> cs;
  for (auto r : radii) {
    const auto table = radial_eigenbasis(build_graph(ctx, r));
    std::vector<HeatKernelResult> series;
    for (double t : cfg.t_grid) series.push_back(heat_kernel_spectral(table, t));
    js.emplace_back(r, heat_series_to_json(series));
    cs.emplace_back(r, heat_series_to_csv(series));
  }
  emit_result(cfg, ctx, radii, js, cs, out);
  return kExitOk;
}

int cmd_theta(const RunConfig& cfg, const FieldCtx& ctx, const std::vector<Residue>& radii, std::ostream& out) {
  std::vector<std::pair<Residue, Json>> js;
  std::vector<std::pair<Residue, CsvTable>> cs;
  bool ok = true;
  for (auto r : radii) {
    ThetaReport rep = theta_consistency_report(ctx, r, cfg.t_grid);
    if (cfg.mode == "reconciled")
      for (auto& row : rep.rows) {
        row.verbatim.reset();
        row.verbatim_deviation.reset();
      }
    ok = ok && rep.passed;
    js.emplace_back(r, theta_report_to_json(rep));
    cs.emplace_back(r, theta_report_to_csv(rep));
  }
  emit_result(cfg, ctx, radii, js, cs, out);
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opts;
  opts.q_list = cfg.q_list;
  opts.delta = cfg.delta;
  opts.include_lift = cfg.include_lift;
  const VerifyReport rep = run_verification(opts);

  if (cfg.format == OutputFormat::Json) {
    Document doc;
    doc.config = Json{{"command", cfg.command}, {"q_list", cfg.q_list},
                      {"delta", cfg.delta ? Json(*cfg.delta) : Json("auto")}, {"include_lift", cfg.include_lift}};
    Json checks = Json::array(), findings = Json::array();
    for (const auto& c : rep.checks)
      checks.push_back(Json{{"suite", c.suite}, {"name", c.name}, {"passed", c.passed},
                            {"measured", c.measured}, {"tolerance", c.tolerance}});
    for (const auto& f : rep.findings) findings.push_back(Json{{"name", f.name}, {"detail", f.detail}});
    doc.data = Json{{"passed", rep.passed()}, {"checks", checks}, {"findings", findings}};
    emit(cfg, to_json_text(doc), out);
  } else {
    std::ostringstream os;
    for (const auto& c : rep.checks)
      os << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << format_double(c.measured)
         << " vs " << format_double(c.tolerance) << ")\n";
    for (const auto& f : rep.findings) os << "NOTE " << f.name << ": " << f.detail << "\n";
    const auto failures = rep.failures();
    os << rep.checks.size() - failures.size() << "/" << rep.checks.size() << " checks passed\n";
    for (const auto* f : failures) os << "failed: " << f->suite << ": " << f->name << "\n";
    emit(cfg, os.str(), out);
  }
  return rep.passed() ? kExitOk : kExitVerificationFailed;
}

int dispatch(const RunConfig& cfg, bool all_regular, std::ostream& out) {
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  const FieldCtx ctx = FieldCtx::create(cfg.q_list.front(), cfg.delta);
  if (cfg.command == "info") return cmd_info(cfg, ctx, out);
  const auto radii = radii_for(cfg, ctx, all_regular);
  if (cfg.command == "graph") return cmd_graph(cfg, ctx, radii, out);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg, ctx, radii, out);
  if (cfg.command == "spherical") return cmd_spherical(cfg, ctx, radii, out);
  if (cfg.command == "heat") return cmd_heat(cfg, ctx, radii, out);
  if (cfg.command == "theta") return cmd_theta(cfg, ctx, radii, out);
  throw InvalidParameter("unknown command " + cfg.command);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat kernels and theta functions on finite upper half-plane graphs", "fuhp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RawOptions raw;
  auto add_common = [&](CLI::App* sub, bool radius, bool times) {
    sub->add_option("--q", raw.q, "Odd prime q (verify: comma-separated list)");
    sub->add_option("--delta", raw.delta, "Non-square delta, or auto");
    if (radius) sub->add_option("--r-s,--r", raw.r_s, "Generating radius, or all-regular");
    if (times) sub->add_option("--t", raw.t, "Comma-separated times");
    sub->add_option("--format", raw.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", raw.out, "Output file (default: standard output)");
  };

  auto* info = app.add_subcommand("info", "Field and graph facts for q");
  add_common(info, false, false);
  auto* graph = app.add_subcommand("graph", "Cayley graph: JSON vertices/edges or CSV adjacency");
  add_common(graph, true, false);
  auto* spectrum = app.add_subcommand("spectrum", "Adjacency and Laplacian eigenvalues with multiplicities");
  add_common(spectrum, true, false);
  auto* spherical = app.add_subcommand("spherical", "Spherical function table");
  add_common(spherical, true, false);
  auto* heat = app.add_subcommand("heat", "Heat kernel E(t; r) time series");
  add_common(heat, true, true);
  auto* theta = app.add_subcommand("theta", "Finite theta consistency report");
  add_common(theta, true, true);
  theta->add_option("--mode", raw.mode, "verbatim, reconciled or both")
      ->check(CLI::IsMember({"verbatim", "reconciled", "both"}));
  auto* verify = app.add_subcommand("verify", "Run the invariant battery");
  add_common(verify, false, false);
  verify->add_option("--q-list", raw.q_list, "Comma-separated list of q");
  verify->add_flag("--include-lift", raw.include_lift, "Also check the lift to GL(2, F_q)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  // info and verify print text unless --format json is given.
  if ((chosen == info || chosen == verify) && chosen->count("--format") == 0) raw.format = "csv";

  try {
    const RunConfig cfg = resolve(chosen->get_name(), raw);
    return dispatch(cfg, raw.r_s == "all-regular", out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ReconciliationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace fuhp
