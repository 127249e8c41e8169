#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcurves/curve.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/model.hpp"
#include "rcurves/norm.hpp"

namespace rcurves {

struct AttackConfig {
  NormKind norm = NormKind::Linf;
  double eps_max = 1.0;  ///< bisection ceiling; also the curve horizon
  int bisection_steps = 20;
  int pgd_steps = 100;
  double pgd_rel_step = 0.025;  ///< step size as a fraction of eps
  int random_restarts = 1;
  int cw_binary_search_steps = 10;
  int cw_opt_steps = 1000;
  double cw_learning_rate = 0.01;
  double cw_initial_const = 1e-3;
  std::uint64_t seed = 0;

  /// Throws InvalidInput when a count is < 1 or a size is not positive.
  void validate() const;
};

/// Smallest l-inf perturbation found by bisecting eps over (0, eps_max]
/// around fixed-eps PGD on the cross-entropy loss. Iterates stay in the
/// eps-ball intersected with [0,1]^m; the random start depends only on
/// (cfg.seed, index, restart).
PerturbationRecord pgd_minimal_linf(const Classifier& model, std::span<const double> x, int y,
                                    const AttackConfig& cfg, std::size_t index = 0);

/// Carlini-Wagner style l2 attack: Adam on ||x' - x||^2 + c * margin in the
/// tanh-reparameterized box, with a binary search over c. Returns the
/// smallest adversarial found across all rounds; results farther than
/// eps_max are reported as censored.
PerturbationRecord cw_minimal_l2(const Classifier& model, std::span<const double> x, int y,
                                 const AttackConfig& cfg, std::size_t index = 0);

/// Exhaustive grid search over delta in [-1,1]^m with step `resolution`,
/// keeping x + delta inside [0,1]^m. Returns +inf when no grid point is
/// adversarial and 0 when x itself is misclassified. Only for m <= 3.
double brute_force_minimal(const Classifier& model, std::span<const double> x, int y, NormKind p,
                           double resolution);

/// One record per point, in index order, using PGD for Linf and the CW
/// attack for L2. Throws Unsupported for L1.
std::vector<PerturbationRecord> estimate_distances(const Classifier& model, const Dataset& data, NormKind p,
                                                   const AttackConfig& cfg, unsigned threads = 1);

/// Lower-bound curve from attack records; horizon = cfg.eps_max.
RobustnessCurve attack_curve(std::span<const PerturbationRecord> records, const Dataset& data, NormKind p,
                             const AttackConfig& cfg, std::string model_name);

}  // namespace rcurves
