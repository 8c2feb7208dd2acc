// gfb — command line front end for the coframe diagnostics library.
//
// Subcommands:
//   catalog    list the built-in examples
//   validate   Monte Carlo verticality sweep over a chart
//   flow       fibre orbit diagnostics: closure, canonical-loop holonomy, trace
//   curvature  invariant panel and Bianchi residual at a point
//   isotropy   stabiliser scan (exact quotient isotropy where available)
//
// Every run is driven by a JSON config file and emits a JSON report envelope
// on stdout (optionally mirrored into --out). Reports are deterministic for a
// fixed config; only the timestamp field varies between runs.
//
// Exit codes: 0 success, 1 a validation that ran cleanly but failed,
// 2 configuration or usage errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfb/cartan.hpp"
#include "gfb/catalog.hpp"
#include "gfb/curvature.hpp"
#include "gfb/flows.hpp"
#include "gfb/groups.hpp"
#include "gfb/report.hpp"

namespace fs = std::filesystem;
using gfb::json;
using gfb::Vec;

namespace {

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  return json::parse(is);
}

std::map<std::string, double> params_from(const json& cfg) {
  std::map<std::string, double> out;
  if (cfg.contains("params"))
    for (const auto& [k, v] : cfg.at("params").items()) out[k] = v.get<double>();
  return out;
}

Vec vec_from(const json& j) {
  Vec v(static_cast<int>(j.size()));
  int i = 0;
  for (const auto& x : j) v(i++) = x.get<double>();
  return v;
}

gfb::CatalogEntry entry_from(const json& cfg) {
  if (!cfg.contains("example")) throw std::runtime_error("config is missing \"example\"");
  return gfb::build_catalog_entry(cfg.at("example").get<std::string>(), params_from(cfg));
}

Vec point_from(const json& cfg, const gfb::CatalogEntry& e) {
  Vec p = cfg.contains("point") ? vec_from(cfg.at("point")) : e.canonical_point;
  if (p.size() != e.coframe.dim())
    throw std::runtime_error("config \"point\" has the wrong dimension for " + e.id);
  return p;
}

void emit(const json& envelope, const std::optional<fs::path>& out_dir,
          const std::string& kind) {
  std::cout << envelope.dump(2) << "\n";
  if (out_dir) {
    fs::create_directories(*out_dir);
    std::ofstream os(*out_dir / (kind + "_report.json"));
    if (!os) throw std::runtime_error("cannot write report into " + out_dir->string());
    os << envelope.dump(2) << "\n";
  }
}

int run_catalog(const std::optional<fs::path>& out_dir, const json& cfg) {
  json items = json::array();
  for (const std::string& id : gfb::catalog_ids()) {
    gfb::CatalogEntry e = gfb::build_catalog_entry(id);
    json j;
    j["id"] = e.id;
    j["description"] = e.description;
    j["dim"] = e.coframe.dim();
    j["g_dim"] = e.coframe.g_dim();
    j["domain"] = gfb::to_json(e.coframe.domain);
    j["has_group"] = e.group.has_value();
    j["has_quotient"] = e.quotient.has_value();
    j["has_invariant_form"] = e.eta.has_value();
    j["has_canonical_loop"] = e.canonical_loop.has_value();
    items.push_back(j);
  }
  json payload;
  payload["examples"] = items;
  emit(gfb::report_envelope("catalog", cfg, payload), out_dir, "catalog");
  return 0;
}

int run_validate(const json& cfg, const std::optional<fs::path>& out_dir) {
  gfb::CatalogEntry e = entry_from(cfg);
  gfb::CartanScanOptions opts;
  opts.samples = cfg.value("samples", 100);
  opts.seed = cfg.value("seed", std::uint64_t{0});
  opts.h = cfg.value("h", 1e-4);
  opts.tol = cfg.value("tol", 1e-6);
  opts.cond_cap = cfg.value("cond_cap", 1e6);
  opts.threads = cfg.value("threads", 0);
  gfb::CartanScanReport rep = gfb::is_cartan_form(e.coframe, opts);
  emit(gfb::report_envelope("validate", cfg, gfb::to_json(rep)), out_dir, "validate");
  return rep.pass ? 0 : 1;
}

int run_flow(const json& cfg, const std::optional<fs::path>& out_dir) {
  gfb::CatalogEntry e = entry_from(cfg);
  Vec p0 = point_from(cfg, e);
  Vec xi = cfg.contains("xi") ? vec_from(cfg.at("xi")) : Vec(Vec::Ones(e.coframe.g_dim()));
  if (xi.size() != e.coframe.g_dim())
    throw std::runtime_error("config \"xi\" must have one entry per generator");
  const double t_max = cfg.value("t_max", 15.0);
  const double tol = cfg.value("tol", 1e-4);
  const int steps = cfg.value("steps", 4096);

  json payload;
  payload["example"] = e.id;
  payload["point"] = gfb::to_json(p0);
  payload["xi"] = gfb::to_json(xi);
  payload["closure"] = gfb::to_json(gfb::detect_closure(e.coframe, xi, p0, t_max, tol, steps));

  if (e.canonical_loop) {
    gfb::HolonomyResult h =
        gfb::holonomy_defect(e.coframe, p0, *e.canonical_loop, cfg.value("loop_steps", 512));
    json hj;
    hj["defect"] = h.defect;
    hj["completed"] = h.completed;
    hj["endpoint"] = h.completed ? gfb::to_json(h.endpoint) : json();
    payload["holonomy"] = hj;
  }

  if (out_dir) {
    const int trace_steps = cfg.value("trace_steps", 1024);
    gfb::OrbitTrace tr = gfb::flow(e.coframe, xi, p0, t_max, trace_steps);
    fs::create_directories(*out_dir);
    gfb::write_trace_csv(*out_dir / "orbit_trace.csv", tr);
    payload["trace_file"] = "orbit_trace.csv";
  }

  emit(gfb::report_envelope("flow", cfg, payload), out_dir, "flow");
  return 0;
}

int run_curvature(const json& cfg, const std::optional<fs::path>& out_dir) {
  gfb::CatalogEntry e = entry_from(cfg);
  if (!e.eta) throw std::runtime_error(e.id + " has no invariant form to contract with");
  Vec p = point_from(cfg, e);
  const double h = cfg.value("h", 1e-4);
  gfb::CurvaturePanel panel = gfb::einstein_panel(e.coframe, p, *e.eta, h);
  json payload = gfb::to_json(panel);
  payload["example"] = e.id;
  payload["bianchi_residual"] = gfb::bianchi_residual(e.coframe, p, cfg.value("bianchi_h", 1e-3));
  emit(gfb::report_envelope("curvature", cfg, payload), out_dir, "curvature");
  return 0;
}

int run_isotropy(const json& cfg, const std::optional<fs::path>& out_dir) {
  gfb::CatalogEntry e = entry_from(cfg);
  if (!e.action) throw std::runtime_error(e.id + " has no group action to scan");
  Vec p = point_from(cfg, e);
  gfb::IsotropyScanOptions opts;
  opts.samples = cfg.value("samples", 512);
  opts.refine_top = cfg.value("refine_top", 32);
  opts.max_refine_iters = cfg.value("max_refine_iters", 300);
  opts.tol = cfg.value("tol", 1e-3);
  opts.seed = cfg.value("seed", std::uint64_t{1});

  json payload;
  payload["example"] = e.id;
  payload["scan"] = gfb::to_json(gfb::isotropy_scan(*e.action, p, opts));
  if (e.quotient) {
    Vec rep = e.action->lift(p);
    gfb::IsotropyFinding exact =
        gfb::quotient_isotropy(*e.quotient, rep, cfg.value("quotient_tol", 1e-9));
    payload["exact"] = gfb::to_json(exact);
  }
  emit(gfb::report_envelope("isotropy", cfg, payload), out_dir, "isotropy");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagnostics for algebra-valued coframes on box charts"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "list the built-in examples");
  cmd_catalog->add_option("--config", config_path, "optional JSON config (echoed into the report)");
  cmd_catalog->add_option("--out", out_path, "directory for report files");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--out", out_path, "directory for report files");
  };
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "verticality sweep; exit 1 when the coframe fails");
  add_common(cmd_validate);
  CLI::App* cmd_flow =
      app.add_subcommand("flow", "orbit closure, canonical-loop holonomy, CSV trace");
  add_common(cmd_flow);
  CLI::App* cmd_curvature =
      app.add_subcommand("curvature", "invariant panel and Bianchi residual at a point");
  add_common(cmd_curvature);
  CLI::App* cmd_isotropy =
      app.add_subcommand("isotropy", "stabiliser scan at a point");
  add_common(cmd_isotropy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version are fine; usage errors are config errors
  }

  try {
    std::optional<fs::path> out_dir;
    if (!out_path.empty()) out_dir = fs::path(out_path);

    if (cmd_catalog->parsed()) {
      json cfg = config_path.empty() ? json::object() : load_config(config_path);
      return run_catalog(out_dir, cfg);
    }
    json cfg = load_config(config_path);
    if (cmd_validate->parsed()) return run_validate(cfg, out_dir);
    if (cmd_flow->parsed()) return run_flow(cfg, out_dir);
    if (cmd_curvature->parsed()) return run_curvature(cfg, out_dir);
    if (cmd_isotropy->parsed()) return run_isotropy(cfg, out_dir);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
