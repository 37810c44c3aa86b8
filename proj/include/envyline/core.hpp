#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

// Core domain types and envy-ratio arithmetic for facility location on the
// unit interval. All positions, facility locations, and predictions live in
// [0,1]; agent utility is 1 minus the distance to the facility.

namespace envyline {

// Extended ratio value: a real >= 1 or +infinity. Infinity arises when a
// placement drives some agent's utility to exactly zero.
class ExtendedRatio {
 public:
  explicit ExtendedRatio(double value);
  static ExtendedRatio infinite();

  bool is_infinite() const { return infinite_; }
  // +inf when infinite.
  double value() const;

  friend bool operator==(const ExtendedRatio&, const ExtendedRatio&) = default;

 private:
  ExtendedRatio() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

// Ordered list of agent positions in [0,1], sorted ascending on construction.
class LocationProfile {
 public:
  explicit LocationProfile(std::vector<double> positions);
  LocationProfile(std::initializer_list<double> positions);

  const std::vector<double>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  double leftmost() const { return positions_.front(); }
  double rightmost() const { return positions_.back(); }
  bool all_coincident() const { return positions_.front() == positions_.back(); }

 private:
  std::vector<double> positions_;
};

// One support point of a placement distribution.
struct Atom {
  double location;
  double probability;
};

// Finite-support probability distribution over facility locations. Atoms are
// merged at equal locations (after rounding locations to 15 significant
// digits), zero-mass atoms dropped, and the support sorted ascending. Total
// mass must be 1 within 1e-12.
class PlacementDistribution {
 public:
  explicit PlacementDistribution(std::vector<Atom> atoms);
  static PlacementDistribution point(double location);

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

// Predicted optimal facility location in [0,1].
class Prediction {
 public:
  explicit Prediction(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Compact source interval for rescaling arbitrary-domain instances.
struct Interval {
  double lo;
  double hi;
  Interval(double lo, double hi);
};

// u(y, x) = 1 - |y - x|; both arguments must lie in [0,1].
double utility(double facility, double position);

// Expected utility of an agent under a placement distribution.
double expected_utility(const PlacementDistribution& dist, double position);

// Max-over-min utility quotient across agents. Defined as 1 for a single
// agent or an all-coincident profile; +infinity when the minimum utility is
// zero.
ExtendedRatio envy_ratio(double facility, const LocationProfile& profile);

// Expectation of per-location envy ratios over the distribution's atoms.
ExtendedRatio expected_envy_ratio(const PlacementDistribution& dist,
                                  const LocationProfile& profile);

// Midpoint of the extreme agents; minimizes the envy ratio.
double optimal_location(const LocationProfile& profile);

ExtendedRatio optimal_envy_ratio(const LocationProfile& profile);

// expected_envy_ratio(dist, profile) / optimal_envy_ratio(profile).
ExtendedRatio approximation_ratio(const PlacementDistribution& dist,
                                  const LocationProfile& profile);

// The 2-agent instance (leftmost, rightmost); a singleton profile maps to its
// position duplicated. The approximation ratio of any distribution on the
// reduced instance dominates the ratio on the original.
LocationProfile reduce_to_two_agents(const LocationProfile& profile);

// Affine map of raw positions from [lo, hi] onto [0,1].
LocationProfile rescale(std::span<const double> raw_positions, const Interval& domain);

// Each position p becomes 1 - p.
LocationProfile reflect(const LocationProfile& profile);

}  // namespace envyline
