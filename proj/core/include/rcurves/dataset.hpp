#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rcurves {

struct LabeledPoint {
  std::vector<double> x;
  int y = 0;
  double weight = 1.0;
};

/// A finite weighted sample standing in for the data distribution.
///
/// Invariants (checked by every constructor): all points share `dim`,
/// 0 <= y < num_classes, weights are positive and sum to 1 within 1e-9.
class Dataset {
 public:
  Dataset() = default;

  /// Validates and takes the points as-is. Weights must already sum to 1.
  /// `num_classes` of 0 means "infer as max label + 1, at least 2".
  Dataset(std::vector<LabeledPoint> points, std::string name, int num_classes = 0);

  /// Assigns uniform weights 1/n, overwriting whatever the points carry.
  static Dataset uniform(std::vector<LabeledPoint> points, std::string name, int num_classes = 0);

  /// Rescales positive weights so that they sum to one.
  static Dataset normalized(std::vector<LabeledPoint> points, std::string name, int num_classes = 0);

  const std::vector<LabeledPoint>& points() const noexcept { return points_; }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t dim() const noexcept { return dim_; }
  int num_classes() const noexcept { return num_classes_; }
  const std::string& name() const noexcept { return name_; }

  std::vector<double> weights() const;

 private:
  std::vector<LabeledPoint> points_;
  std::size_t dim_ = 0;
  int num_classes_ = 2;
  std::string name_;
};

}  // namespace rcurves
