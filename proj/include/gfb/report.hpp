#pragma once

/// @file report.hpp
/// @brief JSON report assembly, config hashing, CSV traces.
///
/// Reports are deterministic for a fixed config and seed: keys are emitted
/// sorted, numbers through the default shortest-roundtrip formatter, and the
/// only run-dependent field is "timestamp", which consumers comparing runs
/// are expected to drop (the CLI determinism test does exactly that).

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gfb/cartan.hpp"
#include "gfb/catalog.hpp"
#include "gfb/curvature.hpp"
#include "gfb/flows.hpp"

namespace gfb {

using nlohmann::json;

/// FNV-1a over the canonical (sorted-key) dump — stable across runs/builds.
std::uint64_t fnv1a64(const std::string& s);
std::string config_hash(const json& config);

std::string iso_timestamp_utc();

json to_json(const ChartDomain& d);
json to_json(const Vec& v);
json to_json(const Mat& m);
json to_json(const CartanScanReport& r);
json to_json(const ClosureResult& r);
json to_json(const IsotropyFinding& f);
json to_json(const CurvaturePanel& p);

/// Comma-separated, dot-decimal, header "t,x1,..,xd".
void write_trace_csv(const std::filesystem::path& path, const OrbitTrace& trace);

/// Standard envelope: payload plus config hash, seed/tolerance echo and
/// timestamp. `config` is the parsed CLI config the run was driven by.
json report_envelope(const std::string& kind, const json& config, json payload);

}  // namespace gfb
