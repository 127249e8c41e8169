#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rcurves {

/// f(x) = 1 if w.x + b >= 0 else 0. The boundary itself belongs to class 1.
class BinaryLinear {
 public:
  BinaryLinear(std::vector<double> w, double b);

  std::span<const double> weights() const noexcept { return w_; }
  double bias() const noexcept { return b_; }
  std::size_t input_dim() const noexcept { return w_.size(); }

  /// w.x + b
  double decision(std::span<const double> x) const;

 private:
  std::vector<double> w_;
  double b_;
};

/// One-dimensional threshold classifier: predicts 1 iff x >= threshold.
class Threshold1D {
 public:
  explicit Threshold1D(double threshold);
  double threshold() const noexcept { return t_; }

 private:
  double t_;
};

/// {n} for flat inputs or {height, width, channels} for images (HWC order).
struct TensorShape {
  std::vector<std::size_t> dims;

  std::size_t size() const noexcept;
  bool spatial() const noexcept { return dims.size() == 3; }
  bool operator==(const TensorShape&) const = default;
};

/// Fully connected layer; `weights` is out x in, row-major.
struct Dense {
  std::size_t out = 0;
  std::size_t in = 0;
  std::vector<double> weights;
  std::vector<double> bias;
};

enum class Padding { Valid, Same };

/// 2-D convolution over HWC tensors. `weights` has layout
/// (filter, row, col, in_channel), row-major. `Same` padding follows the
/// usual ceil(in / stride) output size with the extra row/column of padding
/// placed at the bottom/right.
struct Conv2D {
  std::size_t filters = 0;
  std::size_t kernel_h = 0;
  std::size_t kernel_w = 0;
  std::size_t in_channels = 0;
  std::size_t stride = 1;
  Padding padding = Padding::Valid;
  std::vector<double> weights;
  std::vector<double> bias;
};

struct ReLU {};

using Layer = std::variant<Dense, Conv2D, ReLU>;

/// Feed-forward network built from Dense, Conv2D and ReLU layers.
class MultiClassNet {
 public:
  /// Throws ValidationError naming the first layer whose shape does not fit.
  MultiClassNet(TensorShape input_shape, std::vector<Layer> layers);

  const TensorShape& input_shape() const noexcept { return input_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  std::size_t input_dim() const noexcept { return input_.size(); }
  int num_classes() const noexcept { return static_cast<int>(shapes_.back().size()); }

  std::vector<double> forward(std::span<const double> x) const;

  /// All intermediate activations; element 0 is the input, element k+1 the
  /// output of layer k.
  std::vector<std::vector<double>> trace(std::span<const double> x) const;

  /// Pulls d(loss)/d(logits) back to d(loss)/d(input) through a trace.
  std::vector<double> backward(const std::vector<std::vector<double>>& trace,
                               std::vector<double> grad_logits) const;

 private:
  struct ConvGeometry {
    std::size_t in_h, in_w, out_h, out_w, pad_top, pad_left;
  };

  TensorShape input_;
  std::vector<Layer> layers_;
  std::vector<TensorShape> shapes_;      // shapes_[k] = input shape of layer k; back() = output
  std::vector<ConvGeometry> geometry_;   // per layer, only meaningful for Conv2D
};

/// A classifier f: X -> Y. Binary variants expose a single logit z and
/// predict 1 iff z >= 0; nets predict the argmax with ties to the smaller index.
class Classifier {
 public:
  using Variant = std::variant<BinaryLinear, MultiClassNet, Threshold1D>;

  Classifier(BinaryLinear m) : model_(std::move(m)) {}
  Classifier(MultiClassNet m) : model_(std::move(m)) {}
  Classifier(Threshold1D m) : model_(m) {}

  const Variant& variant() const noexcept { return model_; }
  std::size_t input_dim() const noexcept;
  int num_classes() const noexcept;
  bool is_binary() const noexcept { return !std::holds_alternative<MultiClassNet>(model_); }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&model_);
  }

 private:
  Variant model_;
};

/// Logits. Length 1 (w.x + b, or x - t) for the binary variants.
std::vector<double> forward(const Classifier& model, std::span<const double> x);

int predict(const Classifier& model, std::span<const double> x);

/// Label from logits using the same rules as predict().
int predict_from_logits(std::span<const double> logits);

enum class Loss {
  CrossEntropy,  ///< -log softmax(Z)_y
  CwMargin,      ///< max(Z_y - max_{j != y} Z_j, -kappa) with kappa = 0
};

struct LossEvaluation {
  double loss = 0.0;
  int prediction = 0;
  std::vector<double> gradient;  ///< d(loss)/dx
};

/// Loss, prediction and input gradient from one forward/backward pass.
/// Binary variants are treated as the two-logit model (0, z).
LossEvaluation evaluate_loss(const Classifier& model, std::span<const double> x, int y, Loss loss);

std::vector<double> loss_gradient(const MultiClassNet& model, std::span<const double> x, int y, Loss loss);
std::vector<double> loss_gradient(const Classifier& model, std::span<const double> x, int y, Loss loss);

}  // namespace rcurves
