#include "rcurves/dataset.hpp"

#include <cmath>

#include "rcurves/error.hpp"

namespace rcurves {

Dataset::Dataset(std::vector<LabeledPoint> points, std::string name, int num_classes)
    : points_(std::move(points)), name_(std::move(name)) {
  int max_label = -1;
  double total = 0.0;
  dim_ = points_.empty() ? 0 : points_.front().x.size();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.x.size() != dim_)
      throw InvalidInput("point " + std::to_string(i) + " has dimension " + std::to_string(p.x.size()) +
                         ", expected " + std::to_string(dim_));
    if (p.y < 0) throw InvalidInput("point " + std::to_string(i) + " has a negative label");
    if (!(p.weight > 0.0) || !std::isfinite(p.weight))
      throw InvalidInput("point " + std::to_string(i) + " has non-positive weight");
    max_label = std::max(max_label, p.y);
    total += p.weight;
  }
  if (num_classes == 0) {
    num_classes_ = std::max(2, max_label + 1);
  } else {
    if (num_classes < 2) throw InvalidInput("num_classes must be at least 2");
    if (max_label >= num_classes) throw InvalidInput("label " + std::to_string(max_label) + " >= num_classes");
    num_classes_ = num_classes;
  }
  if (!points_.empty() && std::abs(total - 1.0) > 1e-9)
    throw InvalidInput("weights sum to " + std::to_string(total) + ", expected 1");
}

Dataset Dataset::uniform(std::vector<LabeledPoint> points, std::string name, int num_classes) {
  const double w = points.empty() ? 1.0 : 1.0 / static_cast<double>(points.size());
  for (auto& p : points) p.weight = w;
  return Dataset(std::move(points), std::move(name), num_classes);
}

Dataset Dataset::normalized(std::vector<LabeledPoint> points, std::string name, int num_classes) {
  double total = 0.0;
  for (const auto& p : points) {
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) throw InvalidInput("non-positive weight");
    total += p.weight;
  }
  for (auto& p : points) p.weight /= total;
  return Dataset(std::move(points), std::move(name), num_classes);
}

std::vector<double> Dataset::weights() const {
  std::vector<double> w;
  w.reserve(points_.size());
  for (const auto& p : points_) w.push_back(p.weight);
  return w;
}

}  // namespace rcurves
