#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcurves/norm.hpp"

namespace rcurves {

enum class RecordStatus { Misclassified, Found, Censored };

std::string_view to_string(RecordStatus s);

/// Outcome of a minimal-perturbation search for one data point.
struct PerturbationRecord {
  std::size_t index = 0;
  RecordStatus status = RecordStatus::Censored;
  double distance = 0.0;  ///< 0 if misclassified, the search ceiling if censored
  std::optional<std::vector<double>> witness;
};

enum class Estimator { Exact, Attack, Empirical };

std::string_view to_string(Estimator e);

struct CurveMetadata {
  NormKind norm = NormKind::L2;
  std::string model;
  std::string dataset;
  Estimator estimator = Estimator::Exact;
};

/// Right-continuous, nondecreasing step function eps -> robust error.
///
/// R(eps) is the value at the largest breakpoint <= eps and 0 before the
/// first breakpoint. Beyond `horizon` the curve is only a lower bound.
/// Mass of censored points is tracked separately and never enters `values`.
class RobustnessCurve {
 public:
  RobustnessCurve() = default;

  /// Validates the invariants; throws InvalidInput on violation.
  RobustnessCurve(std::vector<double> breakpoints, std::vector<double> values, double horizon, CurveMetadata meta,
                  double censored_mass = 0.0);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double horizon() const noexcept { return horizon_; }
  double censored_mass() const noexcept { return censored_mass_; }
  const CurveMetadata& metadata() const noexcept { return meta_; }
  bool empty() const noexcept { return breakpoints_.empty(); }

  /// Plain step evaluation, no horizon handling.
  double operator()(double eps) const noexcept;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double horizon_ = 0.0;
  double censored_mass_ = 0.0;
  CurveMetadata meta_;
};

/// Distances closer than this are merged into one breakpoint.
inline constexpr double kDistanceTolerance = 1e-9;

/// R(eps) = total weight of misclassified/found records with distance <= eps.
/// `weights[i]` belongs to `records[i]`; weights must sum to 1 +- 1e-9.
RobustnessCurve build_curve(std::span<const PerturbationRecord> records, std::span<const double> weights,
                            double horizon, CurveMetadata meta);

enum class BoundQuality { Exact, LowerBoundBeyondHorizon };

struct Evaluation {
  double value = 0.0;
  BoundQuality bound_quality = BoundQuality::Exact;
};

/// Throws InvalidInput for eps < 0. Past the horizon the value is R(horizon).
Evaluation evaluate(const RobustnessCurve& curve, double eps);

struct LabeledCurve {
  std::string id;
  RobustnessCurve curve;
};

struct RankEntry {
  std::string id;
  double value = 0.0;
};

/// Ascending robust error at eps, ties broken by id. Throws HorizonError
/// naming the first curve whose horizon is below eps.
std::vector<RankEntry> rank_at(std::span<const LabeledCurve> curves, double eps);

enum class CrossingDirection {
  FirstBecomesSmaller,   ///< a < b from this point on
  SecondBecomesSmaller,  ///< b < a from this point on
  Touch,                 ///< curves meet on a plateau and separate again on the same side
};

std::string_view to_string(CrossingDirection d);

struct Crossing {
  double epsilon = 0.0;
  CrossingDirection direction = CrossingDirection::Touch;
};

/// Sign changes of a - b over the joint breakpoints in [0, min(horizons)].
/// Equal stretches before the first difference and after the last one are
/// not reported; an interior equal stretch is reported once, at its start.
std::vector<Crossing> intersections(const RobustnessCurve& a, const RobustnessCurve& b);

/// True when both curves measure distance in the same norm.
bool comparable(const RobustnessCurve& a, const RobustnessCurve& b);

/// CSV with `#`-prefixed metadata lines, a header `epsilon,robust_error`,
/// and one row per breakpoint written with 17 significant digits.
std::string export_curve(const RobustnessCurve& curve);

/// Inverse of export_curve. Throws ParseError with the 1-based line number.
RobustnessCurve import_curve(std::string_view csv);

}  // namespace rcurves
