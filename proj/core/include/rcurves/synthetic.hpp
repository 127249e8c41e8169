#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcurves/curve.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/model.hpp"

namespace rcurves {

/// Two disjoint, interleaved threshold sets t_1 < t'_1 < t_2 < ... < t_n < t'_n.
class ConstructionSpec {
 public:
  /// Sorts both sets and throws InvalidInput unless they are non-empty,
  /// positive, disjoint, of equal size and interleaved as above.
  ConstructionSpec(std::vector<double> t1, std::vector<double> t2);

  const std::vector<double>& t1() const noexcept { return t1_; }
  const std::vector<double>& t2() const noexcept { return t2_; }
  std::size_t n() const noexcept { return t1_.size(); }
  double d() const noexcept { return t2_.back(); }

 private:
  std::vector<double> t1_;
  std::vector<double> t2_;
};

/// A labelled point mass on the real line with rational weight
/// numerator / denominator.
struct PointMass1D {
  double location = 0.0;
  int label = 0;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double weight() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

struct IntersectingConstruction {
  std::vector<PointMass1D> distribution;
  Threshold1D c1{0.0};  ///< threshold at -d
  Threshold1D c2{0.0};  ///< threshold at +d
};

/// Point masses over the common denominator 4n+1:
///   label 1, weight 2: d + (t_i + t'_i)/2          for i = 1..n
///   label 0, weight 2: -d - (t'_i + t_{i+1})/2     for i = 1..n-1
///   label 0, weight 2: -(2d + t'_n + 1)            (outside the evaluated range)
///   label 0, weight 1: -d - t_1/2
IntersectingConstruction construct_intersecting(const ConstructionSpec& spec);

/// Exact curve of a threshold classifier on point masses.
RobustnessCurve threshold_curve(const Threshold1D& c, std::span<const PointMass1D> dist,
                                std::string model_name = "threshold_1d", std::string dataset_name = "point masses");

/// Numerator (over the distribution's denominator) of R_c(t), in exact
/// integer arithmetic.
std::int64_t threshold_curve_numerator(const Threshold1D& c, std::span<const PointMass1D> dist, double t);

enum class Orientation {
  C1SmallerOnT1,  ///< R_c1 < R_c2 on T1 and R_c1 > R_c2 on T2
  C2SmallerOnT1,  ///< R_c2 < R_c1 on T1 and R_c2 > R_c1 on T2
  None,
};

std::string_view to_string(Orientation o);

struct OrderingCheck {
  double t = 0.0;
  bool in_t1 = true;
  std::int64_t c1 = 0;  ///< numerators over `denominator`
  std::int64_t c2 = 0;
};

struct OrderingReport {
  Orientation orientation = Orientation::None;
  bool holds = false;
  std::int64_t denominator = 1;
  std::vector<OrderingCheck> checks;
};

/// Evaluates both exact curves at every threshold; holds iff one classifier
/// is strictly better on all of T1 and strictly worse on all of T2.
OrderingReport verify_ordering(const ConstructionSpec& spec, const IntersectingConstruction& construction);

/// Point masses as a one-dimensional weighted dataset.
Dataset to_dataset(std::span<const PointMass1D> dist, std::string name);

/// Two perfectly separating thresholds on two equally weighted points. At
/// `eps` the blue classifier has robust error 0.5 and the orange one 0; at
/// 2 * eps orange has robust error 1 while blue stays at 0.5.
struct ToyExample {
  std::vector<PointMass1D> distribution;
  Threshold1D blue{0.0};
  Threshold1D orange{0.0};
  double eps = 0.0;
  RobustnessCurve blue_curve;
  RobustnessCurve orange_curve;
};

ToyExample toy_example();

/// Two linear classifiers separating four points in [0,1]^2 whose exact l2
/// curves intersect while their l-inf curves do not.
struct Linear2dExample {
  Dataset data;
  BinaryLinear blue{{1.0, 0.0}, -0.5};
  BinaryLinear orange{{1.0, 1.0}, -1.0};
  RobustnessCurve blue_l2;
  RobustnessCurve orange_l2;
  RobustnessCurve blue_linf;
  RobustnessCurve orange_linf;
};

Linear2dExample linear_2d_example();

}  // namespace rcurves
