#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "envyline/core.hpp"
#include "envyline/rng.hpp"

// Facility placement mechanisms. Apart from the midpoint baseline, every
// mechanism here ignores the reported profile (its output depends only on its
// parameters and, where applicable, the prediction), which makes it
// strategyproof and anonymous by construction.

namespace envyline {

enum class MechanismKind {
  kMidpoint,          // optimal baseline: midpoint of the extreme agents
  kConstantHalf,      // deterministic point 1/2
  kAlphaBim,          // prediction clamped into [1 - 1/alpha, 1/alpha]
  kLrmConstant,       // atoms (1/2 - a, p), (1/2, 1 - 2p), (1/2 + a, p)
  kBam,               // atoms (yhat, 1/2 - c), (1/2, 1/2 + c), c = |yhat - 1/2|
  kBiRandomized,      // prediction inside the clamp interval, else fixed 3-atom mix
  kBiasAwareLrm,      // atom (yhat, 1/2 - c) plus scaled 3-atom mix
};

// Validated mechanism identity plus parameters. Canonical textual forms:
//   "midpoint", "half", "bim:alpha=1.5", "lrm:alpha=0.118033989,p=0.4",
//   "bam", "birm:alpha=1.5", "balrm".
class MechanismSpec {
 public:
  static MechanismSpec midpoint();
  static MechanismSpec constant_half();
  static MechanismSpec bim(double alpha);         // alpha in [1, 2]
  static MechanismSpec lrm(double alpha, double p);  // alpha in [0,1/2], p in [0,1/2]
  static MechanismSpec bam();
  static MechanismSpec birm(double alpha);        // alpha in (1, 2]
  static MechanismSpec balrm();

  static MechanismSpec parse(std::string_view text);
  std::string to_string() const;

  MechanismKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double p() const { return p_; }
  bool uses_prediction() const;
  // True for every kind except the midpoint baseline.
  bool profile_independent() const { return kind_ != MechanismKind::kMidpoint; }

 private:
  MechanismSpec(MechanismKind kind, double alpha, double p)
      : kind_(kind), alpha_(alpha), p_(p) {}
  MechanismKind kind_;
  double alpha_;
  double p_;
};

// Individual mechanisms.
PlacementDistribution midpoint_mechanism(const LocationProfile& profile);
PlacementDistribution constant_half_mechanism();
PlacementDistribution alpha_bim(double alpha, const Prediction& prediction);
PlacementDistribution lrm_constant(double alpha, double p);
PlacementDistribution bam(const Prediction& prediction);
PlacementDistribution alpha_bi_randomized(double alpha, const Prediction& prediction);
PlacementDistribution bias_aware_lrm(const Prediction& prediction);

// Dispatch on a spec. Mechanisms that use a prediction require one; the
// others reject a supplied prediction.
PlacementDistribution run(const MechanismSpec& spec, const LocationProfile& profile,
                          const std::optional<Prediction>& prediction = std::nullopt);

// Draw one facility location via the inverse CDF over the sorted atoms.
double sample(const PlacementDistribution& dist, SplitMix64& rng);

}  // namespace envyline
