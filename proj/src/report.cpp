#include "envyline/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace envyline::report {

std::string format_number(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

double round_to_nine_digits(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return std::strtod(buf, nullptr);
}

std::string run_timestamp() {
  std::time_t epoch = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v >= 0) epoch = static_cast<std::time_t>(v);
  }
  std::tm tm_utc{};
  gmtime_r(&epoch, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

RunManifest make_manifest(std::string command,
                          std::vector<std::pair<std::string, std::string>> parameters,
                          std::uint64_t seed, std::string rng) {
  RunManifest manifest;
  manifest.command = std::move(command);
  manifest.parameters = std::move(parameters);
  manifest.seed = seed;
  manifest.rng = std::move(rng);
  manifest.timestamp = run_timestamp();
  return manifest;
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.parameters) {
    params[key] = value;
  }
  return {{"command", manifest.command},
          {"parameters", params},
          {"seed", manifest.seed},
          {"tool_version", manifest.tool_version},
          {"rng", manifest.rng},
          {"timestamp", manifest.timestamp}};
}

void set_ratio_field(nlohmann::ordered_json& object, const std::string& key,
                     const ExtendedRatio& value) {
  if (value.is_infinite()) {
    object[key] = nullptr;
    object[key + "_unbounded"] = true;
  } else {
    object[key] = round_to_nine_digits(value.value());
  }
}

nlohmann::ordered_json to_json(const Witness& witness) {
  nlohmann::ordered_json j{{"x1", round_to_nine_digits(witness.x1)},
                           {"x2", round_to_nine_digits(witness.x2)}};
  if (witness.yhat) {
    j["yhat"] = round_to_nine_digits(*witness.yhat);
  }
  if (std::isinf(witness.ratio)) {
    j["ratio"] = nullptr;
    j["ratio_unbounded"] = true;
  } else {
    j["ratio"] = round_to_nine_digits(witness.ratio);
  }
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json empirical = nlohmann::ordered_json::object();
  set_ratio_field(empirical, "consistency", report.empirical.consistency);
  set_ratio_field(empirical, "robustness", report.empirical.robustness);
  nlohmann::ordered_json closed = nlohmann::ordered_json::object();
  set_ratio_field(closed, "consistency", report.closed_form.consistency);
  set_ratio_field(closed, "robustness", report.closed_form.robustness);
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  for (const Witness& w : report.witnesses) {
    witnesses.push_back(to_json(w));
  }
  return {{"mechanism", report.mechanism}, {"empirical", empirical},
          {"closed_form", closed},         {"witnesses", witnesses},
          {"bound_only", report.bound_only}, {"pass", report.pass}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

}  // namespace envyline::report
