#pragma once

/// @file reference_cache.hpp
/// The systematic-search optimum stored beside a run config.
///
/// The cache file `<config stem>.reference.json` records the SHA-256 of the
/// landscape fingerprint (axes, fixtures, conditions, merit spec). A cache
/// whose hash differs from the current config is stale and ignored.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pdopt/circuit_model.hpp"
#include "pdopt/config.hpp"
#include "pdopt/design_space.hpp"
#include "pdopt/merit.hpp"

namespace pdopt::app {

struct ReferenceResult {
  DesignPoint point;
  PerformanceVariables performance;
  MeritBreakdown merit;
  std::uint64_t evaluations = 0;

  friend bool operator==(const ReferenceResult&, const ReferenceResult&) = default;
};

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// sha256_hex(landscape_fingerprint(config)).
std::string landscape_hash(const RunConfig& config);

std::filesystem::path reference_cache_path(const std::filesystem::path& config_file);

std::string reference_to_json(const ReferenceResult& ref, const std::string& hash);

/// The cached result when the file exists, parses and carries `hash`.
std::optional<ReferenceResult> load_reference(const std::filesystem::path& cache_file,
                                              const std::string& hash);

void store_reference(const std::filesystem::path& cache_file, const ReferenceResult& ref,
                     const std::string& hash);

}  // namespace pdopt::app
