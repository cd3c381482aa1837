#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sykclt/harness.hpp"

namespace sykclt {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Checks a document against the experiment config schema and builds the
/// config. Violations throw SchemaError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json load_config_document(const std::string& path);

/// Applies "key=value" overrides (n, q, samples, seed, distribution,
/// test_function, dump_eigenvalues, parallel_width) to a document before
/// validation.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Canonical document for cfg; parallel_width is execution detail and is
/// left out so it does not change the hash.
nlohmann::json to_json(const ExperimentConfig& cfg);

/// FNV-1a 64 of the compact dump of doc (object keys sorted), as 16 hex digits.
std::string config_hash(const nlohmann::json& doc);

nlohmann::json to_json(const RunSummary& s);

/// "# tool=sykclt version=... subcommand=... config_hash=... seed=..."
std::string provenance_line(const std::string& subcommand, const std::string& hash, std::uint64_t seed);

} // namespace sykclt
