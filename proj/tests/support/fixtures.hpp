#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rcurves/curve.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/model.hpp"

namespace rcurves::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Dense random_dense(Rng& rng, std::size_t in, std::size_t out, double scale) {
  Dense d;
  d.in = in;
  d.out = out;
  d.weights = random_vector(rng, in * out, -scale, scale);
  d.bias = random_vector(rng, out, -0.5, 0.5);
  return d;
}

/// Fixed 2-input, 3-class MLP: Dense(2->6), ReLU, Dense(6->6), ReLU, Dense(6->3).
inline MultiClassNet n1() {
  Dense l0{6, 2,
           {1.5, -0.8, -1.2, 1.1, 0.7, 0.9, -0.4, -1.6, 2.0, 0.3, -0.9, 0.6},
           {-0.2, 0.1, -0.5, 0.6, -0.7, 0.05}};
  Dense l1{6, 6,
           {0.8,  -0.3, 0.5,  -0.6, 0.2,  0.4,   //
            -0.5, 0.9,  0.1,  0.3,  -0.8, 0.2,   //
            0.3,  0.4,  -0.7, 0.5,  0.6,  -0.1,  //
            -0.2, -0.6, 0.8,  0.1,  0.3,  0.7,   //
            0.6,  0.2,  0.3,  -0.9, -0.4, 0.5,   //
            -0.7, 0.5,  -0.2, 0.4,  0.9,  -0.3},
           {0.1, -0.2, 0.05, 0.0, 0.15, -0.1}};
  Dense l2{3, 6,
           {1.0, -0.5, 0.7, -0.8, 0.4, 0.3,  //
            -0.6, 1.1, -0.3, 0.5, -0.2, 0.8,  //
            0.2, -0.4, 0.9, 0.6, -0.7, -0.5},
           {0.05, -0.05, 0.0}};
  return MultiClassNet(TensorShape{{2}}, {l0, ReLU{}, l1, ReLU{}, l2});
}

/// Random MLP with `depth` hidden layers.
inline MultiClassNet random_mlp(Rng& rng, std::size_t in, std::size_t classes) {
  const int depth = uniform_int(rng, 1, 3);
  std::vector<Layer> layers;
  std::size_t width = in;
  for (int k = 0; k < depth; ++k) {
    const auto next = static_cast<std::size_t>(uniform_int(rng, 3, 12));
    layers.push_back(random_dense(rng, width, next, 1.0));
    layers.push_back(ReLU{});
    width = next;
  }
  layers.push_back(random_dense(rng, width, classes, 1.0));
  return MultiClassNet(TensorShape{{in}}, std::move(layers));
}

/// Random conv net on a small HWC image: Conv2D, ReLU, optional second
/// Conv2D, ReLU, Dense.
inline MultiClassNet random_conv_net(Rng& rng) {
  const auto h = static_cast<std::size_t>(uniform_int(rng, 4, 7));
  const auto w = static_cast<std::size_t>(uniform_int(rng, 4, 7));
  const auto c = static_cast<std::size_t>(uniform_int(rng, 1, 3));
  TensorShape shape{{h, w, c}};
  std::vector<Layer> layers;
  std::size_t ch = c, cur_h = h, cur_w = w;
  const int convs = uniform_int(rng, 1, 2);
  for (int k = 0; k < convs; ++k) {
    Conv2D cv;
    cv.filters = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    cv.kernel_h = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    cv.kernel_w = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    cv.in_channels = ch;
    cv.stride = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    cv.padding = uniform_int(rng, 0, 1) ? Padding::Same : Padding::Valid;
    if (cv.padding == Padding::Valid && (cv.kernel_h > cur_h || cv.kernel_w > cur_w)) cv.padding = Padding::Same;
    cv.weights = random_vector(rng, cv.filters * cv.kernel_h * cv.kernel_w * ch, -1.0, 1.0);
    cv.bias = random_vector(rng, cv.filters, -0.3, 0.3);
    if (cv.padding == Padding::Same) {
      cur_h = (cur_h + cv.stride - 1) / cv.stride;
      cur_w = (cur_w + cv.stride - 1) / cv.stride;
    } else {
      cur_h = (cur_h - cv.kernel_h) / cv.stride + 1;
      cur_w = (cur_w - cv.kernel_w) / cv.stride + 1;
    }
    ch = cv.filters;
    layers.push_back(std::move(cv));
    layers.push_back(ReLU{});
  }
  const auto classes = static_cast<std::size_t>(uniform_int(rng, 2, 4));
  layers.push_back(random_dense(rng, cur_h * cur_w * ch, classes, 1.0));
  return MultiClassNet(shape, std::move(layers));
}

/// Random binary linear model with a nonzero weight vector.
inline BinaryLinear random_linear(Rng& rng, std::size_t m) {
  for (;;) {
    auto w = random_vector(rng, m, -1.0, 1.0);
    double s = 0;
    for (double v : w) s += std::abs(v);
    if (s > 1e-3) return BinaryLinear(std::move(w), uniform(rng, -0.5, 0.5));
  }
}

/// Random weighted dataset in [0,1]^m with labels from the model.
inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t m, int classes) {
  std::vector<LabeledPoint> pts(n);
  for (auto& p : pts) {
    p.x = random_vector(rng, m, 0.0, 1.0);
    p.y = uniform_int(rng, 0, classes - 1);
    p.weight = uniform(rng, 0.1, 1.0);
  }
  pts[0].y = 0;
  pts[1].y = 1;
  return Dataset::normalized(std::move(pts), "random", classes);
}

/// Step curves holding the published l-inf robust errors of five CIFAR-10
/// models at 1/255, 4/255 and 8/255.
inline std::vector<LabeledCurve> table1_curves() {
  const std::vector<double> eps{1.0 / 255, 4.0 / 255, 8.0 / 255};
  const auto make = [&](const char* id, std::vector<double> v) {
    return LabeledCurve{id, RobustnessCurve(eps, std::move(v), 10.0 / 255,
                                            {NormKind::Linf, id, "cifar10", Estimator::Attack}, 0.0)};
  };
  return {make("ST", {0.60, 0.99, 1.00}), make("AT", {0.38, 0.68, 0.92}), make("KW", {0.43, 0.57, 0.73}),
          make("MMR+AT", {0.42, 0.63, 0.84}), make("MMR-UNIV", {0.54, 0.74, 0.91})};
}

inline const std::vector<std::vector<std::string>>& table1_rankings() {
  static const std::vector<std::vector<std::string>> r{{"AT", "MMR+AT", "KW", "MMR-UNIV", "ST"},
                                                      {"KW", "MMR+AT", "AT", "MMR-UNIV", "ST"},
                                                      {"KW", "MMR+AT", "MMR-UNIV", "AT", "ST"}};
  return r;
}

struct RecordSet {
  std::vector<PerturbationRecord> records;
  std::vector<double> weights;
  double horizon = 1.0;
};

/// Random mix of misclassified, found (with repeated distances) and
/// censored records with random positive weights summing to one.
inline RecordSet random_record_set(Rng& rng) {
  RecordSet rs;
  rs.horizon = uniform(rng, 0.1, 5.0);
  const int n = uniform_int(rng, 1, 60);
  double total = 0;
  std::vector<double> pool;
  for (int i = 0; i < n; ++i) {
    PerturbationRecord r;
    r.index = static_cast<std::size_t>(i);
    const int kind = uniform_int(rng, 0, 9);
    if (kind == 0) {
      r.status = RecordStatus::Misclassified;
    } else if (kind == 1) {
      r.status = RecordStatus::Censored;
      r.distance = rs.horizon;
    } else {
      r.status = RecordStatus::Found;
      if (!pool.empty() && uniform_int(rng, 0, 3) == 0) {
        r.distance = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
      } else {
        r.distance = uniform(rng, 0.0, rs.horizon);
        pool.push_back(r.distance);
      }
    }
    rs.records.push_back(r);
    rs.weights.push_back(uniform(rng, 0.01, 1.0));
    total += rs.weights.back();
  }
  for (auto& w : rs.weights) w /= total;
  return rs;
}

/// Empty string when `c` satisfies monotonicity, R(0) = clean error mass,
/// the horizon/censoring bound and pointwise agreement with a direct sum.
inline std::string curve_invariant_violation(const RobustnessCurve& c, const RecordSet& rs, Rng& rng) {
  double clean = 0, reachable = 0, censored = 0;
  for (std::size_t i = 0; i < rs.records.size(); ++i) {
    const auto& r = rs.records[i];
    if (r.status == RecordStatus::Censored) {
      censored += rs.weights[i];
      continue;
    }
    reachable += rs.weights[i];
    if (r.status == RecordStatus::Misclassified || r.distance == 0.0) clean += rs.weights[i];
  }
  if (std::abs(c(0.0) - clean) > 1e-9) return "R(0) differs from the clean error mass";
  if (std::abs(c(rs.horizon) - reachable) > 1e-9) return "R(horizon) differs from the non-censored mass";
  if (c(rs.horizon) + c.censored_mass() > 1.0 + 1e-9) return "R(horizon) + censored mass exceeds 1";
  if (std::abs(c.censored_mass() - censored) > 1e-9) return "censored mass mismatch";
  for (int k = 0; k < 100; ++k) {
    double a = uniform(rng, 0.0, rs.horizon * 1.2), b = uniform(rng, 0.0, rs.horizon * 1.2);
    if (a > b) std::swap(a, b);
    if (c(a) > c(b)) return "curve is not monotone";
    double direct = 0;
    bool near_breakpoint = false;
    for (std::size_t i = 0; i < rs.records.size(); ++i) {
      const auto& r = rs.records[i];
      if (r.status == RecordStatus::Censored) continue;
      if (std::abs(r.distance - a) <= 2e-9) near_breakpoint = true;
      if (r.distance <= a) direct += rs.weights[i];
    }
    if (!near_breakpoint && std::abs(direct - c(a)) > 1e-9) return "R(eps) differs from the direct weight sum";
  }
  return {};
}

}  // namespace rcurves::testing
