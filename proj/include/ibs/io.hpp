#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ibs/diagnostics.hpp"
#include "ibs/dynamics.hpp"

namespace ibs {

// key = value lines, '#' starts a comment. Errors carry ErrorKind::Config and the line number.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config(const std::filesystem::path& path);
std::string emit_config(const SimConfig& config);

const char* scheme_name(Scheme s);

// equilibrium, theta-mode, y-mode, mixed, random.
CurveState preset_state(const std::string& name, const SimConfig& config);

extern const char* const kTimeseriesHeader;
std::string format_record(const DiagnosticsRecord& r);

void write_snapshot(const std::filesystem::path& path, const CurveState& state);
CurveState load_snapshot(const std::filesystem::path& path);

struct RunManifest {
  std::string config_echo;
  std::string version;
  std::string start_time;
  std::string end_time;
  Termination termination = Termination::Completed;
  std::string message;
  long steps = 0;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

// Runs the configured preset and writes timeseries.csv, snapshot_<step>.csv and manifest.txt.
RunResult run_to_directory(const SimConfig& config, const std::filesystem::path& out_dir);

}  // namespace ibs
