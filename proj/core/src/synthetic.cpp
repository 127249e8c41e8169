#include "rcurves/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcurves/error.hpp"
#include "rcurves/linear_exact.hpp"

namespace rcurves {

ConstructionSpec::ConstructionSpec(std::vector<double> t1, std::vector<double> t2)
    : t1_(std::move(t1)), t2_(std::move(t2)) {
  if (t1_.empty() || t2_.empty()) throw InvalidInput("both threshold sets must be non-empty");
  std::sort(t1_.begin(), t1_.end());
  std::sort(t2_.begin(), t2_.end());
  for (double t : t1_)
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("thresholds must be positive and finite");
  for (double t : t2_)
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("thresholds must be positive and finite");
  if (t1_.size() != t2_.size())
    throw InvalidInput("T1 and T2 must have the same size to interleave (" + std::to_string(t1_.size()) + " vs " +
                       std::to_string(t2_.size()) + ")");
  for (std::size_t i = 0; i < t1_.size(); ++i) {
    if (!(t1_[i] < t2_[i])) throw InvalidInput("interleaving t_i < t'_i violated at i = " + std::to_string(i + 1));
    if (i + 1 < t1_.size() && !(t2_[i] < t1_[i + 1]))
      throw InvalidInput("interleaving t'_i < t_{i+1} violated at i = " + std::to_string(i + 1));
  }
}

IntersectingConstruction construct_intersecting(const ConstructionSpec& spec) {
  const auto& t = spec.t1();
  const auto& tp = spec.t2();
  const std::size_t n = spec.n();
  const double d = spec.d();
  const auto den = static_cast<std::int64_t>(4 * n + 1);

  IntersectingConstruction out{{}, Threshold1D(-d), Threshold1D(d)};
  auto& dist = out.distribution;
  for (std::size_t i = 0; i < n; ++i) dist.push_back({d + (t[i] + tp[i]) / 2.0, 1, 2, den});
  for (std::size_t i = 0; i + 1 < n; ++i) dist.push_back({-d - (tp[i] + t[i + 1]) / 2.0, 0, 2, den});
  dist.push_back({-(2.0 * d + tp[n - 1] + 1.0), 0, 2, den});
  dist.push_back({-d - t[0] / 2.0, 0, 1, den});
  return out;
}

namespace {

/// Distance at which the mass becomes adversarial; 0 when misclassified.
double mass_distance(const Threshold1D& c, const PointMass1D& pm) {
  const int predicted = pm.location >= c.threshold() ? 1 : 0;
  if (predicted != pm.label) return 0.0;
  return std::abs(pm.location - c.threshold());
}

}  // namespace

RobustnessCurve threshold_curve(const Threshold1D& c, std::span<const PointMass1D> dist, std::string model_name,
                                std::string dataset_name) {
  std::vector<PerturbationRecord> records;
  std::vector<double> weights;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const auto& pm = dist[i];
    PerturbationRecord r;
    r.index = i;
    const int predicted = pm.location >= c.threshold() ? 1 : 0;
    r.status = predicted != pm.label ? RecordStatus::Misclassified : RecordStatus::Found;
    r.distance = mass_distance(c, pm);
    records.push_back(std::move(r));
    weights.push_back(pm.weight());
  }
  CurveMetadata meta{NormKind::L1, std::move(model_name), std::move(dataset_name), Estimator::Exact};
  return build_curve(records, weights, std::numeric_limits<double>::infinity(), std::move(meta));
}

std::int64_t threshold_curve_numerator(const Threshold1D& c, std::span<const PointMass1D> dist, double t) {
  std::int64_t num = 0;
  for (const auto& pm : dist)
    if (mass_distance(c, pm) <= t) num += pm.numerator;
  return num;
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::C1SmallerOnT1: return "c1-smaller-on-T1";
    case Orientation::C2SmallerOnT1: return "c2-smaller-on-T1";
    case Orientation::None: return "none";
  }
  return "?";
}

OrderingReport verify_ordering(const ConstructionSpec& spec, const IntersectingConstruction& construction) {
  OrderingReport rep;
  const auto& dist = construction.distribution;
  if (!dist.empty()) rep.denominator = dist.front().denominator;
  for (const auto& pm : dist)
    if (pm.denominator != rep.denominator) throw InvalidInput("point masses must share one denominator");

  auto sign = [](std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  int t1_sign = 0, t2_sign = 0;
  bool consistent = true;
  auto check = [&](double t, bool in_t1) {
    OrderingCheck c{t, in_t1, threshold_curve_numerator(construction.c1, dist, t),
                    threshold_curve_numerator(construction.c2, dist, t)};
    const int s = sign(c.c1 - c.c2);
    int& seen = in_t1 ? t1_sign : t2_sign;
    if (s == 0 || (seen != 0 && s != seen)) consistent = false;
    if (seen == 0) seen = s;
    rep.checks.push_back(c);
  };
  for (double t : spec.t1()) check(t, true);
  for (double t : spec.t2()) check(t, false);

  rep.holds = consistent && t1_sign != 0 && t2_sign == -t1_sign;
  if (rep.holds) rep.orientation = t1_sign < 0 ? Orientation::C1SmallerOnT1 : Orientation::C2SmallerOnT1;
  return rep;
}

Dataset to_dataset(std::span<const PointMass1D> dist, std::string name) {
  std::vector<LabeledPoint> pts;
  pts.reserve(dist.size());
  for (const auto& pm : dist) pts.push_back({{pm.location}, pm.label, pm.weight()});
  return Dataset::normalized(std::move(pts), std::move(name), 2);
}

ToyExample toy_example() {
  // Binary fractions keep every distance exact.
  ToyExample ex;
  ex.eps = 0.125;
  ex.distribution = {{0.3125, 0, 1, 2}, {0.6875, 1, 1, 2}};
  ex.blue = Threshold1D(0.375);   // distances 0.0625 and 0.3125
  ex.orange = Threshold1D(0.5);   // distances 0.1875 and 0.1875
  ex.blue_curve = threshold_curve(ex.blue, ex.distribution, "blue", "toy");
  ex.orange_curve = threshold_curve(ex.orange, ex.distribution, "orange", "toy");
  return ex;
}

Linear2dExample linear_2d_example() {
  // blue:   x1 - 0.5        l2 = l-inf distances 0.1, 0.3, 0.32, 0.4
  // orange: x1 + x2 - 1     l-inf distances 0.2, 0.08, 0.22, 0.09 (l2 = l-inf * sqrt 2)
  Linear2dExample ex;
  ex.data = Dataset::uniform({{{0.6, 0.8}, 1, 0.0}, {{0.2, 0.64}, 0, 0.0}, {{0.82, 0.62}, 1, 0.0}, {{0.1, 0.72}, 0, 0.0}},
                             "linear-2d", 2);
  ex.blue_l2 = exact_curve(ex.blue, ex.data, NormKind::L2, "blue");
  ex.orange_l2 = exact_curve(ex.orange, ex.data, NormKind::L2, "orange");
  ex.blue_linf = exact_curve(ex.blue, ex.data, NormKind::Linf, "blue");
  ex.orange_linf = exact_curve(ex.orange, ex.data, NormKind::Linf, "orange");
  return ex;
}

}  // namespace rcurves
