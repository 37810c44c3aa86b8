#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "envyline/core.hpp"
#include "envyline/mechanisms.hpp"
#include "envyline/rng.hpp"

using namespace envyline;

namespace {

constexpr double kPhiSpread = 1.118033988749894848 - 1.0;  // sqrt(5)/2 - 1

void check_atoms(const PlacementDistribution& dist,
                 const std::vector<Atom>& expected, double tol = 1e-12) {
  REQUIRE(dist.atoms().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(dist.atoms()[i].location ==
          doctest::Approx(expected[i].location).epsilon(tol));
    CHECK(dist.atoms()[i].probability ==
          doctest::Approx(expected[i].probability).epsilon(tol));
  }
}

}  // namespace

TEST_CASE("mechanism spec canonical text round trip") {
  const char* forms[] = {
      "midpoint", "half", "bim:alpha=1.5", "bim:alpha=1",
      "lrm:alpha=0.118033989,p=0.4", "bam", "birm:alpha=1.5", "balrm",
  };
  for (const char* form : forms) {
    CHECK(MechanismSpec::parse(form).to_string() == form);
  }
  CHECK(MechanismSpec::bim(1.5).to_string() == "bim:alpha=1.5");
  CHECK(MechanismSpec::lrm(1.0 / 6.0, 4.0 / 11.0).to_string() ==
        "lrm:alpha=0.166666667,p=0.363636364");
  CHECK(MechanismSpec::parse("bim:alpha=1.5").kind() == MechanismKind::kAlphaBim);
  CHECK(MechanismSpec::parse("bim:alpha=1.5").alpha() == 1.5);
  CHECK(MechanismSpec::parse("lrm:alpha=0.1,p=0.25").p() == 0.25);
}

TEST_CASE("mechanism spec rejects malformed or out-of-range input") {
  CHECK_THROWS_AS(MechanismSpec::parse("frontier"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("bim"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("bim:alpha=2.5"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("bim:alpha=abc"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("bim:beta=1.5"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("lrm:alpha=0.1"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("lrm:alpha=0.7,p=0.4"),
                  std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::parse("birm:alpha=1"), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::bim(0.9), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::lrm(0.1, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(MechanismSpec::birm(2.1), std::invalid_argument);
}

TEST_CASE("prediction usage flags") {
  CHECK(!MechanismSpec::midpoint().uses_prediction());
  CHECK(!MechanismSpec::constant_half().uses_prediction());
  CHECK(MechanismSpec::bim(1.5).uses_prediction());
  CHECK(!MechanismSpec::lrm(0.1, 0.4).uses_prediction());
  CHECK(MechanismSpec::bam().uses_prediction());
  CHECK(MechanismSpec::birm(1.5).uses_prediction());
  CHECK(MechanismSpec::balrm().uses_prediction());
  CHECK(!MechanismSpec::midpoint().profile_independent());
  CHECK(MechanismSpec::constant_half().profile_independent());
}

TEST_CASE("midpoint and constant-half mechanisms") {
  check_atoms(midpoint_mechanism({0.0, 1.0}), {{0.5, 1.0}});
  check_atoms(midpoint_mechanism({0.29, 0.71}), {{0.5, 1.0}});
  check_atoms(midpoint_mechanism({0.2, 0.9, 0.4}), {{0.55, 1.0}});
  check_atoms(constant_half_mechanism(), {{0.5, 1.0}});
}

TEST_CASE("clamp mechanism") {
  check_atoms(alpha_bim(2.0, Prediction(0.9)), {{0.5, 1.0}});
  check_atoms(alpha_bim(1.5, Prediction(0.9)), {{2.0 / 3.0, 1.0}});
  check_atoms(alpha_bim(1.5, Prediction(0.4)), {{0.4, 1.0}});
  check_atoms(alpha_bim(1.5, Prediction(0.1)), {{1.0 / 3.0, 1.0}});
  // Boundary predictions pass through (closed interval).
  check_atoms(alpha_bim(1.5, Prediction(1.0 / 3.0)), {{1.0 / 3.0, 1.0}});
  // alpha = 1 follows the prediction verbatim.
  check_atoms(alpha_bim(1.0, Prediction(0.73)), {{0.73, 1.0}});

  // Output always lies in the clamp interval.
  for (double alpha : {1.0, 1.2, 1.5, 1.8, 2.0}) {
    for (int i = 0; i <= 50; ++i) {
      const double yhat = i / 50.0;
      const double y = alpha_bim(alpha, Prediction(yhat)).atoms()[0].location;
      CHECK(y >= 1.0 - 1.0 / alpha - 1e-15);
      CHECK(y <= 1.0 / alpha + 1e-15);
    }
  }
}

TEST_CASE("three-atom mix") {
  check_atoms(lrm_constant(kPhiSpread, 0.4),
              {{0.381966, 0.4}, {0.5, 0.2}, {0.618034, 0.4}}, 1e-6);
  check_atoms(lrm_constant(1.0 / 6.0, 4.0 / 11.0),
              {{1.0 / 3.0, 4.0 / 11.0}, {0.5, 3.0 / 11.0}, {2.0 / 3.0, 4.0 / 11.0}});
  // Degenerate spreads and masses collapse to a single atom.
  check_atoms(lrm_constant(0.0, 0.3), {{0.5, 1.0}});
  check_atoms(lrm_constant(0.2, 0.0), {{0.5, 1.0}});
  check_atoms(lrm_constant(0.25, 0.5), {{0.25, 0.5}, {0.75, 0.5}});
  CHECK_THROWS_AS(lrm_constant(0.6, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(lrm_constant(0.1, -0.1), std::invalid_argument);
}

TEST_CASE("two-atom bias-aware mechanism") {
  check_atoms(bam(Prediction(0.5)), {{0.5, 1.0}});
  check_atoms(bam(Prediction(0.25)), {{0.25, 0.25}, {0.5, 0.75}});
  check_atoms(bam(Prediction(0.75)), {{0.5, 0.75}, {0.75, 0.25}});
  // At the endpoints the prediction atom has zero mass and is dropped.
  check_atoms(bam(Prediction(0.0)), {{0.5, 1.0}});
  check_atoms(bam(Prediction(1.0)), {{0.5, 1.0}});
}

TEST_CASE("randomized clamp mechanism") {
  check_atoms(alpha_bi_randomized(1.5, Prediction(0.5)), {{0.5, 1.0}});
  check_atoms(alpha_bi_randomized(1.5, Prediction(0.4)), {{0.4, 1.0}});
  // Boundary of the clamp interval still follows the prediction.
  check_atoms(alpha_bi_randomized(1.5, Prediction(1.0 / 3.0)), {{1.0 / 3.0, 1.0}});
  // Outside the interval the fixed three-atom mix is used.
  const std::vector<Atom> mix{{0.381966, 0.4}, {0.5, 0.2}, {0.618034, 0.4}};
  check_atoms(alpha_bi_randomized(1.5, Prediction(0.9)), mix, 1e-6);
  check_atoms(alpha_bi_randomized(2.0, Prediction(0.4)), mix, 1e-6);
}

TEST_CASE("four-atom bias-aware mix") {
  // Central prediction merges with the middle atom of the scaled mix.
  check_atoms(bias_aware_lrm(Prediction(0.5)),
              {{0.381966, 0.2}, {0.5, 0.6}, {0.618034, 0.2}}, 1e-6);
  // Extreme prediction carries zero mass: the plain mix remains.
  check_atoms(bias_aware_lrm(Prediction(0.0)),
              {{0.381966, 0.4}, {0.5, 0.2}, {0.618034, 0.4}}, 1e-6);
  check_atoms(bias_aware_lrm(Prediction(0.25)),
              {{0.25, 0.25}, {0.381966, 0.3}, {0.5, 0.15}, {0.618034, 0.3}}, 1e-6);
}

TEST_CASE("dispatch enforces prediction presence") {
  const LocationProfile profile{0.0, 1.0};
  check_atoms(run(MechanismSpec::constant_half(), profile), {{0.5, 1.0}});
  check_atoms(run(MechanismSpec::bim(1.5), profile, Prediction(0.1)),
              {{1.0 / 3.0, 1.0}});
  check_atoms(run(MechanismSpec::lrm(1.0 / 6.0, 4.0 / 11.0), profile),
              {{1.0 / 3.0, 4.0 / 11.0}, {0.5, 3.0 / 11.0}, {2.0 / 3.0, 4.0 / 11.0}});
  CHECK_THROWS_AS(run(MechanismSpec::bam(), profile), std::invalid_argument);
  CHECK_THROWS_AS(run(MechanismSpec::constant_half(), profile, Prediction(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run(MechanismSpec::midpoint(), profile, Prediction(0.5)),
                  std::invalid_argument);
}

TEST_CASE("profile independence and anonymity") {
  const MechanismSpec specs[] = {
      MechanismSpec::constant_half(), MechanismSpec::bim(1.3),
      MechanismSpec::lrm(kPhiSpread, 0.4), MechanismSpec::bam(),
      MechanismSpec::birm(1.7), MechanismSpec::balrm(),
  };
  const LocationProfile profiles[] = {
      {0.0, 1.0}, {0.5}, {0.12, 0.34, 0.56, 0.78}, {0.9, 0.9, 0.9},
  };
  for (const MechanismSpec& spec : specs) {
    std::optional<Prediction> yhat;
    if (spec.uses_prediction()) yhat = Prediction(0.3);
    const PlacementDistribution base = run(spec, profiles[0], yhat);
    for (const LocationProfile& profile : profiles) {
      const PlacementDistribution out = run(spec, profile, yhat);
      REQUIRE(out.atoms().size() == base.atoms().size());
      for (std::size_t i = 0; i < out.atoms().size(); ++i) {
        CHECK(out.atoms()[i].location == base.atoms()[i].location);
        CHECK(out.atoms()[i].probability == base.atoms()[i].probability);
      }
    }
  }
}

TEST_CASE("reflection equivariance") {
  const MechanismSpec specs[] = {
      MechanismSpec::bim(1.4), MechanismSpec::bam(),
      MechanismSpec::birm(1.6), MechanismSpec::balrm(),
  };
  const LocationProfile profile{0.1, 0.7};
  const LocationProfile mirrored = reflect(profile);
  for (const MechanismSpec& spec : specs) {
    for (int i = 0; i <= 20; ++i) {
      const double yhat = i / 20.0;
      const PlacementDistribution a = run(spec, profile, Prediction(yhat));
      const PlacementDistribution b = run(spec, mirrored, Prediction(1.0 - yhat));
      REQUIRE(a.atoms().size() == b.atoms().size());
      const std::size_t n = a.atoms().size();
      for (std::size_t k = 0; k < n; ++k) {
        const Atom& fwd = a.atoms()[k];
        const Atom& rev = b.atoms()[n - 1 - k];
        CHECK(fwd.location == doctest::Approx(1.0 - rev.location).epsilon(1e-12));
        CHECK(fwd.probability == doctest::Approx(rev.probability).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sampler matches atom probabilities and is deterministic") {
  const PlacementDistribution dist = lrm_constant(kPhiSpread, 0.4);
  SplitMix64 rng(2024u);
  std::map<double, int> counts;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) counts[sample(dist, rng)] += 1;
  REQUIRE(counts.size() == 3);
  for (const Atom& atom : dist.atoms()) {
    const double freq = counts[atom.location] / static_cast<double>(draws);
    CHECK(freq == doctest::Approx(atom.probability).epsilon(0.05));
  }
  // Identical seeds reproduce the identical draw stream.
  SplitMix64 r1(99u), r2(99u);
  for (int i = 0; i < 100; ++i) CHECK(sample(dist, r1) == sample(dist, r2));
}
