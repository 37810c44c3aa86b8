#include "envyline/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace envyline {

namespace {

// Parameters of the ratio-optimal 3-atom mix, used as the fallback of the
// randomized clamp mechanism and as the base of the bias-aware mix.
constexpr double kOptimalLrmAlpha = 1.118033988749894848 - 1.0;  // sqrt(5)/2 - 1
constexpr double kOptimalLrmP = 0.4;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

double parse_number(std::string_view text) {
  try {
    return std::stod(std::string(text));
  } catch (const std::exception&) {
    throw std::invalid_argument("MechanismSpec: malformed number in \"" +
                                std::string(text) + "\"");
  }
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

MechanismSpec MechanismSpec::midpoint() {
  return MechanismSpec(MechanismKind::kMidpoint, 0.0, 0.0);
}

MechanismSpec MechanismSpec::constant_half() {
  return MechanismSpec(MechanismKind::kConstantHalf, 0.0, 0.0);
}

MechanismSpec MechanismSpec::bim(double alpha) {
  require(std::isfinite(alpha) && alpha >= 1.0 && alpha <= 2.0,
          "MechanismSpec: bim requires alpha in [1, 2]");
  return MechanismSpec(MechanismKind::kAlphaBim, alpha, 0.0);
}

MechanismSpec MechanismSpec::lrm(double alpha, double p) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.5,
          "MechanismSpec: lrm requires alpha in [0, 1/2]");
  require(std::isfinite(p) && p >= 0.0 && p <= 0.5,
          "MechanismSpec: lrm requires p in [0, 1/2]");
  return MechanismSpec(MechanismKind::kLrmConstant, alpha, p);
}

MechanismSpec MechanismSpec::bam() {
  return MechanismSpec(MechanismKind::kBam, 0.0, 0.0);
}

MechanismSpec MechanismSpec::birm(double alpha) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
          "MechanismSpec: birm requires alpha in (1, 2]");
  return MechanismSpec(MechanismKind::kBiRandomized, alpha, 0.0);
}

MechanismSpec MechanismSpec::balrm() {
  return MechanismSpec(MechanismKind::kBiasAwareLrm, 0.0, 0.0);
}

bool MechanismSpec::uses_prediction() const {
  switch (kind_) {
    case MechanismKind::kAlphaBim:
    case MechanismKind::kBam:
    case MechanismKind::kBiRandomized:
    case MechanismKind::kBiasAwareLrm:
      return true;
    default:
      return false;
  }
}

MechanismSpec MechanismSpec::parse(std::string_view text) {
  std::string_view name = text;
  std::string_view params;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    params = text.substr(colon + 1);
  }

  double alpha = std::nan("");
  double p = std::nan("");
  std::string_view rest = params;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = (comma == std::string_view::npos) ? std::string_view{} : rest.substr(comma + 1);
    auto eq = item.find('=');
    require(eq != std::string_view::npos, "MechanismSpec: expected key=value parameter");
    std::string_view key = item.substr(0, eq);
    double value = parse_number(item.substr(eq + 1));
    if (key == "alpha") {
      alpha = value;
    } else if (key == "p") {
      p = value;
    } else {
      throw std::invalid_argument("MechanismSpec: unknown parameter \"" +
                                  std::string(key) + "\"");
    }
  }

  bool has_alpha = !std::isnan(alpha);
  bool has_p = !std::isnan(p);
  if (name == "midpoint") {
    require(!has_alpha && !has_p, "MechanismSpec: midpoint takes no parameters");
    return midpoint();
  }
  if (name == "half") {
    require(!has_alpha && !has_p, "MechanismSpec: half takes no parameters");
    return constant_half();
  }
  if (name == "bim") {
    require(has_alpha && !has_p, "MechanismSpec: bim takes exactly alpha=");
    return bim(alpha);
  }
  if (name == "lrm") {
    require(has_alpha && has_p, "MechanismSpec: lrm takes alpha= and p=");
    return lrm(alpha, p);
  }
  if (name == "bam") {
    require(!has_alpha && !has_p, "MechanismSpec: bam takes no parameters");
    return bam();
  }
  if (name == "birm") {
    require(has_alpha && !has_p, "MechanismSpec: birm takes exactly alpha=");
    return birm(alpha);
  }
  if (name == "balrm") {
    require(!has_alpha && !has_p, "MechanismSpec: balrm takes no parameters");
    return balrm();
  }
  throw std::invalid_argument("MechanismSpec: unknown mechanism \"" +
                              std::string(name) + "\"");
}

std::string MechanismSpec::to_string() const {
  switch (kind_) {
    case MechanismKind::kMidpoint:
      return "midpoint";
    case MechanismKind::kConstantHalf:
      return "half";
    case MechanismKind::kAlphaBim:
      return "bim:alpha=" + format_param(alpha_);
    case MechanismKind::kLrmConstant:
      return "lrm:alpha=" + format_param(alpha_) + ",p=" + format_param(p_);
    case MechanismKind::kBam:
      return "bam";
    case MechanismKind::kBiRandomized:
      return "birm:alpha=" + format_param(alpha_);
    case MechanismKind::kBiasAwareLrm:
      return "balrm";
  }
  throw std::logic_error("MechanismSpec: unreachable kind");
}

PlacementDistribution midpoint_mechanism(const LocationProfile& profile) {
  return PlacementDistribution::point(optimal_location(profile));
}

PlacementDistribution constant_half_mechanism() {
  return PlacementDistribution::point(0.5);
}

PlacementDistribution alpha_bim(double alpha, const Prediction& prediction) {
  require(std::isfinite(alpha) && alpha >= 1.0 && alpha <= 2.0,
          "alpha_bim: alpha must lie in [1, 2]");
  double lo = 1.0 - 1.0 / alpha;
  double hi = 1.0 / alpha;
  double y = std::clamp(prediction.value(), lo, hi);
  return PlacementDistribution::point(y);
}

PlacementDistribution lrm_constant(double alpha, double p) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.5,
          "lrm_constant: alpha must lie in [0, 1/2]");
  require(std::isfinite(p) && p >= 0.0 && p <= 0.5,
          "lrm_constant: p must lie in [0, 1/2]");
  return PlacementDistribution(
      {{0.5 - alpha, p}, {0.5, 1.0 - 2.0 * p}, {0.5 + alpha, p}});
}

PlacementDistribution bam(const Prediction& prediction) {
  double c = std::abs(prediction.value() - 0.5);
  double p = 0.5 - c;
  return PlacementDistribution({{prediction.value(), p}, {0.5, 1.0 - p}});
}

PlacementDistribution alpha_bi_randomized(double alpha, const Prediction& prediction) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
          "alpha_bi_randomized: alpha must lie in (1, 2]");
  double lo = 1.0 - 1.0 / alpha;
  double hi = 1.0 / alpha;
  double y = prediction.value();
  // Small slack keeps the interval closed despite rounding in 1 - 1/alpha.
  if (y >= lo - 1e-12 && y <= hi + 1e-12) {
    return PlacementDistribution::point(y);
  }
  return lrm_constant(kOptimalLrmAlpha, kOptimalLrmP);
}

PlacementDistribution bias_aware_lrm(const Prediction& prediction) {
  double c = std::abs(prediction.value() - 0.5);
  double p = 0.5 - c;
  double rest = 1.0 - p;
  return PlacementDistribution({{prediction.value(), p},
                                {0.5 - kOptimalLrmAlpha, rest * kOptimalLrmP},
                                {0.5, rest * (1.0 - 2.0 * kOptimalLrmP)},
                                {0.5 + kOptimalLrmAlpha, rest * kOptimalLrmP}});
}

PlacementDistribution run(const MechanismSpec& spec, const LocationProfile& profile,
                          const std::optional<Prediction>& prediction) {
  if (spec.uses_prediction() != prediction.has_value()) {
    throw std::invalid_argument(spec.uses_prediction()
                                    ? "run: mechanism requires a prediction"
                                    : "run: mechanism takes no prediction");
  }
  switch (spec.kind()) {
    case MechanismKind::kMidpoint:
      return midpoint_mechanism(profile);
    case MechanismKind::kConstantHalf:
      return constant_half_mechanism();
    case MechanismKind::kAlphaBim:
      return alpha_bim(spec.alpha(), *prediction);
    case MechanismKind::kLrmConstant:
      return lrm_constant(spec.alpha(), spec.p());
    case MechanismKind::kBam:
      return bam(*prediction);
    case MechanismKind::kBiRandomized:
      return alpha_bi_randomized(spec.alpha(), *prediction);
    case MechanismKind::kBiasAwareLrm:
      return bias_aware_lrm(*prediction);
  }
  throw std::logic_error("run: unreachable kind");
}

double sample(const PlacementDistribution& dist, SplitMix64& rng) {
  double u = rng.next_double();
  double cumulative = 0.0;
  for (const Atom& a : dist.atoms()) {
    cumulative += a.probability;
    if (u < cumulative) return a.location;
  }
  return dist.atoms().back().location;  // guard against rounding at u ~ 1
}

}  // namespace envyline
