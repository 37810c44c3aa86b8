#pragma once

#include <utility>
#include <vector>

#include "envyline/core.hpp"

// Closed-form worst-case guarantees for the mechanisms, plus the optimizer
// algebra and the lower-bound certificate. Everything in this module is
// arithmetic on formulas; the independent grid searches that confirm these
// numbers live in verify.hpp.

namespace envyline {

// Worst-case approximation ratios with an accurate prediction (consistency)
// and with an arbitrary prediction (robustness).
struct GuaranteePair {
  ExtendedRatio consistency;
  ExtendedRatio robustness;
};

// Clamp mechanism with parameter alpha in [1, 2]: consistency alpha,
// robustness alpha / (alpha - 1) (+infinity at alpha = 1).
GuaranteePair bim_guarantees(double alpha);

// 1/consistency + 1/robustness for the clamp mechanism, alpha in (1, 2].
// Identically 1 along the deterministic trade-off frontier.
double bim_frontier_identity(double alpha);

// Piecewise approximation-ratio curve of the clamp mechanism as a function of
// the prediction error eta = |yhat - y*|.
enum class ErrorPiece {
  kConstantAlpha,        // value alpha
  kInteriorShift,        // 1 + 4 eta / (1 - 2 eta)
  kEndpointShift,        // 1 + 2 alpha eta / (alpha - 1)
  kTerminalRobustness,   // alpha / (alpha - 1)
};

struct ErrorCurve {
  double alpha;
  // pieces[i] applies on (breakpoints[i-1], breakpoints[i]], with the first
  // piece starting at eta = 0 and the last piece unbounded above.
  std::vector<double> breakpoints;
  std::vector<ErrorPiece> pieces;
};

ErrorCurve bim_error_curve(double alpha);  // alpha in [1, 2]
ExtendedRatio evaluate(const ErrorCurve& curve, double eta);
double evaluate_piece(ErrorPiece piece, double alpha, double eta);

// Approximation ratios of the 3-atom mix with spread alpha <= 1/4 and side
// mass p on its two critical instances: x = (0, 1/2) and x' = (0, 1/2+alpha).
std::pair<double, double> lrm_instance_ratios(double alpha, double p);

// Ratio of the 3-atom mix on the instance (0, 1/2) alone, valid for any
// spread alpha in [0, 1/2).
double lrm_primary_instance_ratio(double alpha, double p);

// Value of the primary-instance ratio at p = 1/2 for spread alpha in
// (1/4, 1/2]; +infinity at alpha = 1/2. Always at least 2 in this range.
ExtendedRatio lrm_high_alpha_bound(double alpha);

// Bias-aware 2-atom mechanism, keyed by the prediction bias c = |yhat - 1/2|.
// Piecewise over the bias regimes [0, 1/4) and [1/4, 1/2].
GuaranteePair bam_guarantees(double c);

// Exact per-bias values: consistency 4c^2 + 2c + 1 for c < 1/4 and
// 2 - 4c^2 beyond; robustness 2 + c throughout (the supremum over profiles
// at a fixed prediction; at c = 1/2 exactly, the prediction atom has zero
// mass and the attained value drops to 2).
GuaranteePair bam_pointwise(double c);

// Randomized clamp mechanism guarantees, alpha in (1, 2].
GuaranteePair birm_guarantees(double alpha);

// Bias-aware 4-atom mix guarantees (upper bounds), keyed by c in [0, 1/2].
GuaranteePair balrm_guarantees(double c);

// Impossibility bound for consistency-1 randomized mechanisms: the pivot
// delta* solves 14(2 delta - 0.13) = 15(0.29 - delta), and the bound is
// 1 + (15/14)(0.21 - delta*)/(0.71 - delta*).
struct LowerBoundCertificate {
  double delta_star;
  double bound;
  // Residual of the defining linear equation at delta_star.
  double residual;
};

LowerBoundCertificate lower_bound_certificate();

}  // namespace envyline
