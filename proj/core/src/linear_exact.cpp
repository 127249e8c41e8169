#include "rcurves/linear_exact.hpp"

#include <cmath>
#include <limits>

#include "rcurves/error.hpp"

namespace rcurves {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

ExactDistanceResult exact_distance(const BinaryLinear& f, std::span<const double> x, NormKind p) {
  const double z = f.decision(x);
  if (z == 0.0) throw DegenerateInput("point lies on the decision boundary");
  const auto w = f.weights();
  const double wq = dual_norm_value(w, p);

  ExactDistanceResult r;
  r.distance = std::abs(z) / wq;
  r.witness.assign(w.size(), 0.0);
  switch (p) {
    case NormKind::L1: {
      std::size_t j = 0;
      for (std::size_t i = 1; i < w.size(); ++i)
        if (std::abs(w[i]) > std::abs(w[j])) j = i;
      r.witness[j] = (-z / wq) * sgn(w[j]);
      break;
    }
    case NormKind::L2: {
      const double scale = -z / (wq * wq);
      for (std::size_t i = 0; i < w.size(); ++i) r.witness[i] = scale * w[i];
      break;
    }
    case NormKind::Linf: {
      const double scale = -z / wq;  // ||w||_1^1
      for (std::size_t i = 0; i < w.size(); ++i) r.witness[i] = scale * sgn(w[i]);
      break;
    }
  }
  return r;
}

double scale_factor(const BinaryLinear& f, NormKind p1, NormKind p2) {
  return dual_norm_value(f.weights(), p1) / dual_norm_value(f.weights(), p2);
}

RobustnessCurve exact_curve(const BinaryLinear& f, const Dataset& data, NormKind p, std::string model_name) {
  if (data.num_classes() != 2) throw InvalidInput("exact curves need a binary dataset");
  if (!data.empty() && data.dim() != f.input_dim())
    throw InvalidInput("dataset dimension does not match the model");
  const double wq = dual_norm_value(f.weights(), p);
  std::vector<PerturbationRecord> records;
  records.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& pt = data[i];
    const double z = f.decision(pt.x);
    const int label = z >= 0.0 ? 1 : 0;
    PerturbationRecord rec;
    rec.index = i;
    if (label != pt.y) {
      rec.status = RecordStatus::Misclassified;
      rec.distance = 0.0;
    } else {
      rec.status = RecordStatus::Found;
      rec.distance = std::abs(z) / wq;
    }
    records.push_back(std::move(rec));
  }
  CurveMetadata meta{p, std::move(model_name), data.name(), Estimator::Exact};
  return build_curve(records, data.weights(), std::numeric_limits<double>::infinity(), std::move(meta));
}

}  // namespace rcurves
