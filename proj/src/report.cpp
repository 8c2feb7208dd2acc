#include "gfb/report.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gfb {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const json& config) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(config.dump());
  return os.str();
}

std::string iso_timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json to_json(const ChartDomain& d) {
  json j;
  j["lower"] = std::vector<double>(d.lower.data(), d.lower.data() + d.lower.size());
  j["upper"] = std::vector<double>(d.upper.data(), d.upper.data() + d.upper.size());
  j["periodic"] = d.periodic;
  return j;
}

json to_json(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const CartanScanReport& r) {
  json j;
  j["example"] = r.example;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["h"] = r.h;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["worst_violation"] = r.worst_violation;
  j["worst_point"] = to_json(r.worst_point);
  j["worst_condition"] = r.worst_cond;
  j["eval_failures"] = r.eval_failures;
  j["omega_stats"] = {{"max_abs", r.omega_max_abs},
                      {"mean_abs", r.omega_mean_abs},
                      {"row_max", r.omega_row_max}};
  return j;
}

json to_json(const ClosureResult& r) {
  json j;
  j["found"] = r.found;
  j["period"] = r.period;
  j["distance"] = r.distance;
  j["left_domain"] = r.left_domain;
  return j;
}

json to_json(const IsotropyFinding& f) {
  json j;
  j["base_point"] = to_json(f.base_point);
  j["order"] = f.order;
  j["residual"] = f.residual;
  j["closed_under_product"] = f.closed_under_product;
  json els = json::array();
  for (const Vec& e : f.elements) els.push_back(to_json(e));
  j["elements"] = els;
  json acts = json::array();
  for (const Mat& m : f.v_actions) acts.push_back(to_json(m));
  j["v_actions"] = acts;
  return j;
}

json to_json(const CurvaturePanel& p) {
  json j;
  j["point"] = to_json(p.point);
  j["eta"] = to_json(p.eta);
  json om = json::array();
  for (const Mat& m : p.omega) om.push_back(to_json(m));
  j["omega"] = om;
  json th = json::array();
  for (const Mat& m : p.theta) th.push_back(to_json(m));
  j["theta"] = th;
  j["ric"] = to_json(p.ric);
  j["scal"] = p.scal;
  j["ein"] = to_json(p.ein);
  j["vertical_violation"] = p.vertical_violation;
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const OrbitTrace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "t";
  int d = trace.x.empty() ? 0 : static_cast<int>(trace.x.front().size());
  for (int i = 1; i <= d; ++i) os << ",x" << i;
  os << "\n";
  os << std::setprecision(17);
  for (size_t k = 0; k < trace.t.size(); ++k) {
    os << trace.t[k];
    for (int i = 0; i < d; ++i) os << "," << trace.x[k](i);
    os << "\n";
  }
}

json report_envelope(const std::string& kind, const json& config, json payload) {
  json j;
  j["kind"] = kind;
  j["config"] = config;
  j["config_hash"] = config_hash(config);
  j["timestamp"] = iso_timestamp_utc();
  j["result"] = std::move(payload);
  return j;
}

}  // namespace gfb
