#pragma once

#include <filesystem>
#include <string>

#include "ivhs/cli/config.hpp"
#include "json.hpp"

namespace ivhs::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  nlohmann::ordered_json body;

  bool has_error() const { return body.contains("error") && !body["error"].is_null(); }
  std::string verdict() const;
  // 0 ok, 1 config error, 2 computation error, 3 verdict violated.
  int exit_code() const;
};

// FNV-1a over the canonical config plus the tool version, as 16 hex digits.
std::string input_hash(const RunConfig& cfg);

// Runs the configured command without touching any cache. Engine errors end
// up in the report's error block.
Report run(const RunConfig& cfg);

struct CacheSettings {
  bool enabled = true;
  std::filesystem::path dir;
};

// Consults <dir>/<input_hash>.json first; successful fresh reports are stored
// by writing a temporary file and renaming it into place.
Report run_cached(const RunConfig& cfg, const CacheSettings& cache);

// Cache directory from an explicit flag, then IVHS_CACHE_DIR, then
// $HOME/.cache/ivhs.
std::filesystem::path resolve_cache_dir(const std::string& flag);

std::string emit(const Report& report, OutputFormat format);
// The line of the text table that carries the verdict.
std::string verdict_line(const Report& report);

// Report for a failure that happened before a RunConfig existed.
Report error_report(const std::string& command, const Error& e);

}  // namespace ivhs::cli
