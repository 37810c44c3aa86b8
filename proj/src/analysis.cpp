#include "envyline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace envyline {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kGoldenRatio = (1.0 + kSqrt5) / 2.0;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

GuaranteePair bim_guarantees(double alpha) {
  require(std::isfinite(alpha) && alpha >= 1.0 && alpha <= 2.0,
          "bim_guarantees: alpha must lie in [1, 2]");
  ExtendedRatio robustness = (alpha == 1.0)
                                 ? ExtendedRatio::infinite()
                                 : ExtendedRatio(alpha / (alpha - 1.0));
  return {ExtendedRatio(alpha), robustness};
}

double bim_frontier_identity(double alpha) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
          "bim_frontier_identity: alpha must lie in (1, 2]");
  GuaranteePair g = bim_guarantees(alpha);
  return 1.0 / g.consistency.value() + 1.0 / g.robustness.value();
}

ErrorCurve bim_error_curve(double alpha) {
  require(std::isfinite(alpha) && alpha >= 1.0 && alpha <= 2.0,
          "bim_error_curve: alpha must lie in [1, 2]");
  ErrorCurve curve;
  curve.alpha = alpha;
  if (alpha == 1.0) {
    // No clamping at all: the ratio grows with the error until the placement
    // can pin an agent's utility near zero.
    curve.breakpoints = {0.5};
    curve.pieces = {ErrorPiece::kInteriorShift, ErrorPiece::kTerminalRobustness};
    return curve;
  }
  if (alpha <= kGoldenRatio) {
    curve.breakpoints = {(alpha - 1.0) / (2.0 * (alpha + 1.0)), 1.0 / alpha - 0.5,
                         1.0 / (2.0 * alpha)};
    curve.pieces = {ErrorPiece::kConstantAlpha, ErrorPiece::kInteriorShift,
                    ErrorPiece::kEndpointShift, ErrorPiece::kTerminalRobustness};
  } else {
    curve.breakpoints = {(alpha - 1.0) * (alpha - 1.0) / (2.0 * alpha),
                         1.0 / (2.0 * alpha)};
    curve.pieces = {ErrorPiece::kConstantAlpha, ErrorPiece::kEndpointShift,
                    ErrorPiece::kTerminalRobustness};
  }
  return curve;
}

double evaluate_piece(ErrorPiece piece, double alpha, double eta) {
  switch (piece) {
    case ErrorPiece::kConstantAlpha:
      return alpha;
    case ErrorPiece::kInteriorShift: {
      double denom = 1.0 - 2.0 * eta;
      if (denom <= 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 + 4.0 * eta / denom;
    }
    case ErrorPiece::kEndpointShift:
      if (alpha == 1.0) return std::numeric_limits<double>::infinity();
      return 1.0 + 2.0 * alpha * eta / (alpha - 1.0);
    case ErrorPiece::kTerminalRobustness:
      if (alpha == 1.0) return std::numeric_limits<double>::infinity();
      return alpha / (alpha - 1.0);
  }
  throw std::logic_error("evaluate_piece: unreachable piece");
}

ExtendedRatio evaluate(const ErrorCurve& curve, double eta) {
  require(std::isfinite(eta) && eta >= 0.0, "evaluate: eta must be non-negative");
  std::size_t i = 0;
  while (i < curve.breakpoints.size() && eta > curve.breakpoints[i]) {
    ++i;
  }
  return ExtendedRatio(evaluate_piece(curve.pieces[i], curve.alpha, eta));
}

double lrm_primary_instance_ratio(double alpha, double p) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha < 0.5,
          "lrm_primary_instance_ratio: alpha must lie in [0, 1/2)");
  require(std::isfinite(p) && p >= 0.0 && p <= 0.5,
          "lrm_primary_instance_ratio: p must lie in [0, 1/2]");
  return 2.0 * (1.0 - 2.0 * p) +
         p * (4.0 - 4.0 * alpha) / (1.0 - 4.0 * alpha * alpha);
}

std::pair<double, double> lrm_instance_ratios(double alpha, double p) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 0.25,
          "lrm_instance_ratios: alpha must lie in [0, 1/4]");
  require(std::isfinite(p) && p >= 0.0 && p <= 0.5,
          "lrm_instance_ratios: p must lie in [0, 1/2]");
  double primary = lrm_primary_instance_ratio(alpha, p);
  double shifted;
  if (alpha <= 1.0 / 6.0) {
    shifted = p * (2.0 - 4.0 * alpha) / (1.0 + 2.0 * alpha) +
              (1.0 - 2.0 * p) * (2.0 - 2.0 * alpha) + 2.0 * p / (1.0 - 2.0 * alpha);
  } else {
    shifted = p * (1.0 + 2.0 * alpha) / (2.0 - 4.0 * alpha) +
              (1.0 - 2.0 * p) * (2.0 - 2.0 * alpha) + 2.0 * p / (1.0 - 2.0 * alpha);
  }
  return {primary, shifted};
}

ExtendedRatio lrm_high_alpha_bound(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.25 && alpha <= 0.5,
          "lrm_high_alpha_bound: alpha must lie in (1/4, 1/2]");
  if (alpha == 0.5) {
    // The side atoms sit at 0 and 1, where an extreme instance has an agent
    // with zero utility.
    return ExtendedRatio::infinite();
  }
  return ExtendedRatio(lrm_primary_instance_ratio(alpha, 0.5));
}

GuaranteePair bam_guarantees(double c) {
  require(std::isfinite(c) && c >= 0.0 && c <= 0.5,
          "bam_guarantees: c must lie in [0, 1/2]");
  if (c < 0.25) {
    return {ExtendedRatio(7.0 / 4.0), ExtendedRatio(9.0 / 4.0)};
  }
  return {ExtendedRatio(2.0 - 4.0 * c * c), ExtendedRatio(2.0 + c)};
}

GuaranteePair bam_pointwise(double c) {
  require(std::isfinite(c) && c >= 0.0 && c <= 0.5,
          "bam_pointwise: c must lie in [0, 1/2]");
  double consistency = (c < 0.25) ? 4.0 * c * c + 2.0 * c + 1.0 : 2.0 - 4.0 * c * c;
  return {ExtendedRatio(consistency), ExtendedRatio(2.0 + c)};
}

GuaranteePair birm_guarantees(double alpha) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
          "birm_guarantees: alpha must lie in (1, 2]");
  double slack = 1.0 - 1.0 / alpha;
  double t1 = 1.0 + ((12.0 + 4.0 * kSqrt5) / 5.0) * slack;
  double t2 = (3.0 + 2.0 * kSqrt5) / 5.0 + (8.0 / 5.0) * slack;
  double t3 = 1.0 + 2.0 / kSqrt5;
  return {ExtendedRatio(std::min({t1, t2, t3})), ExtendedRatio(alpha / (alpha - 1.0))};
}

GuaranteePair balrm_guarantees(double c) {
  require(std::isfinite(c) && c >= 0.0 && c <= 0.5,
          "balrm_guarantees: c must lie in [0, 1/2]");
  if (c < 0.25) {
    return {ExtendedRatio((23.0 + 9.0 * kSqrt5) / 20.0),
            ExtendedRatio(0.5 + 4.0 / kSqrt5)};
  }
  ExtendedRatio robustness((4.0 * kSqrt5 * c + 7.0 * kSqrt5 + 5.0) / 10.0);
  double pivot = (kSqrt5 - 1.0) / 4.0;
  if (c <= pivot) {
    return {ExtendedRatio((-8.0 * c * c + 2.0 * (kSqrt5 - 1.0) * c + kSqrt5 + 6.0) / 5.0),
            robustness};
  }
  return {ExtendedRatio(-(4.0 * (3.0 + kSqrt5) / 5.0) * c * c + (kSqrt5 + 8.0) / 5.0),
          robustness};
}

LowerBoundCertificate lower_bound_certificate() {
  // Pivot where the coefficient of the free mass term vanishes.
  auto residual = [](double delta) {
    return 14.0 * (2.0 * delta - 0.13) - 15.0 * (0.29 - delta);
  };
  double lo = 0.0;
  double hi = 0.29;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2.0;
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double delta = (lo + hi) / 2.0;
  double bound = 1.0 + (15.0 / 14.0) * (0.21 - delta) / (0.71 - delta);
  return {delta, bound, residual(delta)};
}

}  // namespace envyline
