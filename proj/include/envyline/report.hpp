#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "envyline/core.hpp"
#include "envyline/verify.hpp"

// Serialization shared by the CLI and tests. All numeric output is rendered
// with nine significant digits (banker's rounding), so identical inputs
// produce byte-identical files.

namespace envyline::report {

inline constexpr const char* kToolVersion = "0.1.0";

// Nine-significant-digit decimal rendering; infinities become "inf".
std::string format_number(double value);

// The double nearest to the nine-digit rendering; used before storing
// numbers in JSON so dumps match the CSV convention.
double round_to_nine_digits(double value);

// Reproducible run timestamp: SOURCE_DATE_EPOCH when set, else the epoch.
std::string run_timestamp();

// Provenance block embedded in (or written alongside) every output file.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string rng;  // randomness algorithm identifier, empty if unused
  std::string timestamp;
};

RunManifest make_manifest(std::string command,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          std::uint64_t seed, std::string rng);

nlohmann::ordered_json to_json(const RunManifest& manifest);

// Writes `key` as a rounded number, or null plus "<key>_unbounded": true.
void set_ratio_field(nlohmann::ordered_json& object, const std::string& key,
                     const ExtendedRatio& value);

nlohmann::ordered_json to_json(const Witness& witness);
nlohmann::ordered_json to_json(const VerificationReport& report);

// Writes content atomically enough for our purposes; throws std::runtime_error
// on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace envyline::report
