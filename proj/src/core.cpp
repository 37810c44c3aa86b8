#include "envyline/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace envyline {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kRatioSlack = 1e-12;

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

// Round to 15 significant digits via a decimal round trip. Used to merge
// atoms whose locations agree up to the last binary digits of an otherwise
// identical closed-form expression.
double round_15_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

ExtendedRatio::ExtendedRatio(double value) : value_(value), infinite_(false) {
  if (std::isinf(value)) {
    infinite_ = true;
    value_ = 0.0;
    return;
  }
  if (!std::isfinite(value) || value < 1.0 - kRatioSlack) {
    throw std::invalid_argument("ExtendedRatio: finite value must be >= 1, got " +
                                std::to_string(value));
  }
}

ExtendedRatio ExtendedRatio::infinite() { return ExtendedRatio(); }

double ExtendedRatio::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

LocationProfile::LocationProfile(std::vector<double> positions)
    : positions_(std::move(positions)) {
  if (positions_.empty()) {
    throw std::invalid_argument("LocationProfile: at least one agent required");
  }
  for (double p : positions_) {
    if (!in_unit_interval(p)) {
      throw std::invalid_argument("LocationProfile: positions must lie in [0,1]");
    }
  }
  std::sort(positions_.begin(), positions_.end());
}

LocationProfile::LocationProfile(std::initializer_list<double> positions)
    : LocationProfile(std::vector<double>(positions)) {}

PlacementDistribution::PlacementDistribution(std::vector<Atom> atoms) {
  if (atoms.empty()) {
    throw std::invalid_argument("PlacementDistribution: empty support");
  }
  double mass = 0.0;
  for (Atom& a : atoms) {
    if (!in_unit_interval(a.location)) {
      throw std::invalid_argument("PlacementDistribution: location outside [0,1]");
    }
    if (!std::isfinite(a.probability) || a.probability < 0.0) {
      throw std::invalid_argument("PlacementDistribution: negative probability");
    }
    a.location = round_15_digits(a.location);
    mass += a.probability;
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw std::invalid_argument("PlacementDistribution: total mass must be 1");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (const Atom& a : atoms) {
    if (a.probability == 0.0) continue;  // zero-mass atoms carry no outcome
    if (!atoms_.empty() && atoms_.back().location == a.location) {
      atoms_.back().probability += a.probability;
    } else {
      atoms_.push_back(a);
    }
  }
  if (atoms_.empty()) {
    throw std::invalid_argument("PlacementDistribution: all atoms have zero mass");
  }
}

PlacementDistribution PlacementDistribution::point(double location) {
  return PlacementDistribution({{location, 1.0}});
}

Prediction::Prediction(double value) : value_(value) {
  if (!in_unit_interval(value)) {
    throw std::invalid_argument("Prediction: value must lie in [0,1]");
  }
}

Interval::Interval(double lo, double hi) : lo(lo), hi(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo >= hi) {
    throw std::invalid_argument("Interval: requires lo < hi");
  }
}

double utility(double facility, double position) {
  if (!in_unit_interval(facility) || !in_unit_interval(position)) {
    throw std::domain_error("utility: arguments must lie in [0,1]");
  }
  return 1.0 - std::abs(facility - position);
}

double expected_utility(const PlacementDistribution& dist, double position) {
  double total = 0.0;
  for (const Atom& a : dist.atoms()) {
    total += a.probability * utility(a.location, position);
  }
  return total;
}

ExtendedRatio envy_ratio(double facility, const LocationProfile& profile) {
  if (profile.size() == 1 || profile.all_coincident()) {
    return ExtendedRatio(1.0);
  }
  double min_u = std::numeric_limits<double>::infinity();
  double max_u = -std::numeric_limits<double>::infinity();
  for (double p : profile.positions()) {
    double u = utility(facility, p);
    min_u = std::min(min_u, u);
    max_u = std::max(max_u, u);
  }
  if (min_u == 0.0) {
    return ExtendedRatio::infinite();
  }
  return ExtendedRatio(std::max(1.0, max_u / min_u));
}

ExtendedRatio expected_envy_ratio(const PlacementDistribution& dist,
                                  const LocationProfile& profile) {
  double total = 0.0;
  for (const Atom& a : dist.atoms()) {
    ExtendedRatio r = envy_ratio(a.location, profile);
    if (r.is_infinite()) {
      return ExtendedRatio::infinite();  // positive mass on an infinite ratio
    }
    total += a.probability * r.value();
  }
  return ExtendedRatio(std::max(1.0, total));
}

double optimal_location(const LocationProfile& profile) {
  return (profile.leftmost() + profile.rightmost()) / 2.0;
}

ExtendedRatio optimal_envy_ratio(const LocationProfile& profile) {
  return envy_ratio(optimal_location(profile), profile);
}

ExtendedRatio approximation_ratio(const PlacementDistribution& dist,
                                  const LocationProfile& profile) {
  ExtendedRatio expected = expected_envy_ratio(dist, profile);
  if (expected.is_infinite()) {
    return ExtendedRatio::infinite();
  }
  ExtendedRatio best = optimal_envy_ratio(profile);
  // The midpoint placement keeps every utility at least 1/2, so the optimum
  // is always finite.
  return ExtendedRatio(std::max(1.0, expected.value() / best.value()));
}

LocationProfile reduce_to_two_agents(const LocationProfile& profile) {
  return LocationProfile({profile.leftmost(), profile.rightmost()});
}

LocationProfile rescale(std::span<const double> raw_positions, const Interval& domain) {
  std::vector<double> mapped;
  mapped.reserve(raw_positions.size());
  double width = domain.hi - domain.lo;
  for (double r : raw_positions) {
    if (!std::isfinite(r) || r < domain.lo || r > domain.hi) {
      throw std::invalid_argument("rescale: raw position outside source interval");
    }
    mapped.push_back(std::clamp((r - domain.lo) / width, 0.0, 1.0));
  }
  return LocationProfile(std::move(mapped));
}

LocationProfile reflect(const LocationProfile& profile) {
  std::vector<double> mirrored;
  mirrored.reserve(profile.size());
  for (double p : profile.positions()) {
    mirrored.push_back(1.0 - p);
  }
  return LocationProfile(std::move(mirrored));
}

}  // namespace envyline
