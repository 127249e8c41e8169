#pragma once

#include <span>
#include <vector>

#include "rcurves/curve.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/model.hpp"
#include "rcurves/norm.hpp"

namespace rcurves {

struct ExactDistanceResult {
  double distance = 0.0;       ///< |w.x + b| / ||w||_q
  std::vector<double> witness;  ///< minimal perturbation; x + witness lies on the boundary
};

/// Closed-form minimal lp perturbation that moves x onto the hyperplane
/// w.x + b = 0. The [0,1] input box is not taken into account.
///
/// For L1 the witness moves only the coordinate with the largest |w_j|
/// (smallest such j on ties); otherwise
///   delta_i = (-(w.x + b) / ||w||_q^q) * sgn(w_i) * |w_i|^{1/(p-1)},
/// with |w_i|^0 = 1 for p = inf.
///
/// Throws DegenerateInput when x is already on the boundary.
ExactDistanceResult exact_distance(const BinaryLinear& f, std::span<const double> x, NormKind p);

/// c = ||w||_{q1} / ||w||_{q2}, so that R_{p1}(eps) = R_{p2}(c * eps).
double scale_factor(const BinaryLinear& f, NormKind p1, NormKind p2);

/// Exact robustness curve (infinite horizon). Misclassified points carry
/// their mass at 0; a correctly classified point on the boundary also sits at 0.
RobustnessCurve exact_curve(const BinaryLinear& f, const Dataset& data, NormKind p,
                            std::string model_name = "binary_linear");

}  // namespace rcurves
