#include "rcurves/model.hpp"

#include <algorithm>
#include <cmath>

#include "rcurves/error.hpp"

namespace rcurves {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

void check_input(std::size_t expected, std::span<const double> x) {
  if (x.size() != expected)
    throw InvalidInput("input has dimension " + std::to_string(x.size()) + ", model expects " +
                       std::to_string(expected));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

BinaryLinear::BinaryLinear(std::vector<double> w, double b) : w_(std::move(w)), b_(b) {
  if (w_.empty()) throw InvalidInput("binary linear model needs a non-empty weight vector");
  if (!all_finite(w_) || !std::isfinite(b_)) throw InvalidInput("binary linear model has non-finite parameters");
  if (std::all_of(w_.begin(), w_.end(), [](double e) { return e == 0.0; }))
    throw InvalidInput("binary linear model has a zero weight vector");
}

double BinaryLinear::decision(std::span<const double> x) const {
  check_input(w_.size(), x);
  double z = b_;
  for (std::size_t i = 0; i < w_.size(); ++i) z += w_[i] * x[i];
  return z;
}

Threshold1D::Threshold1D(double threshold) : t_(threshold) {
  if (!std::isfinite(t_)) throw InvalidInput("threshold must be finite");
}

std::size_t TensorShape::size() const noexcept {
  if (dims.empty()) return 0;
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

MultiClassNet::MultiClassNet(TensorShape input_shape, std::vector<Layer> layers)
    : input_(std::move(input_shape)), layers_(std::move(layers)) {
  if (input_.dims.size() != 1 && input_.dims.size() != 3)
    throw ValidationError("input shape must be {n} or {height, width, channels}", 0);
  if (input_.size() == 0) throw ValidationError("input shape has zero size", 0);
  if (layers_.empty()) throw ValidationError("network has no layers", 0);

  shapes_.push_back(input_);
  geometry_.resize(layers_.size());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const TensorShape& in = shapes_.back();
    TensorShape out = std::visit(
        overloaded{
            [&](const Dense& d) -> TensorShape {
              if (d.in != in.size())
                throw ValidationError("dense layer expects " + std::to_string(d.in) + " inputs, previous output has " +
                                          std::to_string(in.size()),
                                      k);
              if (d.out == 0) throw ValidationError("dense layer has zero outputs", k);
              if (d.weights.size() != d.out * d.in) throw ValidationError("dense weight count mismatch", k);
              if (d.bias.size() != d.out) throw ValidationError("dense bias count mismatch", k);
              if (!all_finite(d.weights) || !all_finite(d.bias)) throw ValidationError("non-finite parameter", k);
              return TensorShape{{d.out}};
            },
            [&](const Conv2D& c) -> TensorShape {
              if (!in.spatial()) throw ValidationError("conv2d needs a {height, width, channels} input", k);
              if (c.in_channels != in.dims[2])
                throw ValidationError("conv2d expects " + std::to_string(c.in_channels) + " channels, got " +
                                          std::to_string(in.dims[2]),
                                      k);
              if (c.filters == 0 || c.kernel_h == 0 || c.kernel_w == 0 || c.stride == 0)
                throw ValidationError("conv2d has a zero-sized dimension or stride", k);
              if (c.weights.size() != c.filters * c.kernel_h * c.kernel_w * c.in_channels)
                throw ValidationError("conv2d weight count mismatch", k);
              if (c.bias.size() != c.filters) throw ValidationError("conv2d bias count mismatch", k);
              if (!all_finite(c.weights) || !all_finite(c.bias)) throw ValidationError("non-finite parameter", k);
              ConvGeometry g{in.dims[0], in.dims[1], 0, 0, 0, 0};
              if (c.padding == Padding::Valid) {
                if (g.in_h < c.kernel_h || g.in_w < c.kernel_w)
                  throw ValidationError("conv2d kernel larger than its input", k);
                g.out_h = (g.in_h - c.kernel_h) / c.stride + 1;
                g.out_w = (g.in_w - c.kernel_w) / c.stride + 1;
              } else {
                g.out_h = (g.in_h + c.stride - 1) / c.stride;
                g.out_w = (g.in_w + c.stride - 1) / c.stride;
                const std::size_t need_h = (g.out_h - 1) * c.stride + c.kernel_h;
                const std::size_t need_w = (g.out_w - 1) * c.stride + c.kernel_w;
                g.pad_top = need_h > g.in_h ? (need_h - g.in_h) / 2 : 0;
                g.pad_left = need_w > g.in_w ? (need_w - g.in_w) / 2 : 0;
              }
              geometry_[k] = g;
              return TensorShape{{g.out_h, g.out_w, c.filters}};
            },
            [&](const ReLU&) -> TensorShape { return in; },
        },
        layers_[k]);
    shapes_.push_back(std::move(out));
  }
  if (shapes_.back().dims.size() != 1)
    throw ValidationError("final layer must produce a flat logit vector", layers_.size() - 1);
  if (shapes_.back().size() < 2)
    throw ValidationError("final layer must produce at least two logits", layers_.size() - 1);
}

std::vector<std::vector<double>> MultiClassNet::trace(std::span<const double> x) const {
  check_input(input_.size(), x);
  std::vector<std::vector<double>> acts;
  acts.reserve(layers_.size() + 1);
  acts.emplace_back(x.begin(), x.end());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const std::vector<double>& in = acts.back();
    std::vector<double> out(shapes_[k + 1].size(), 0.0);
    std::visit(overloaded{
                   [&](const Dense& d) {
                     for (std::size_t o = 0; o < d.out; ++o) {
                       const double* row = d.weights.data() + o * d.in;
                       double s = d.bias[o];
                       for (std::size_t i = 0; i < d.in; ++i) s += row[i] * in[i];
                       out[o] = s;
                     }
                   },
                   [&](const Conv2D& c) {
                     const ConvGeometry& g = geometry_[k];
                     const std::size_t cin = c.in_channels;
                     for (std::size_t oy = 0; oy < g.out_h; ++oy) {
                       for (std::size_t ox = 0; ox < g.out_w; ++ox) {
                         double* o_px = out.data() + (oy * g.out_w + ox) * c.filters;
                         for (std::size_t f = 0; f < c.filters; ++f) o_px[f] = c.bias[f];
                         for (std::size_t ky = 0; ky < c.kernel_h; ++ky) {
                           const long iy = static_cast<long>(oy * c.stride + ky) - static_cast<long>(g.pad_top);
                           if (iy < 0 || iy >= static_cast<long>(g.in_h)) continue;
                           for (std::size_t kx = 0; kx < c.kernel_w; ++kx) {
                             const long ix = static_cast<long>(ox * c.stride + kx) - static_cast<long>(g.pad_left);
                             if (ix < 0 || ix >= static_cast<long>(g.in_w)) continue;
                             const double* i_px = in.data() + (static_cast<std::size_t>(iy) * g.in_w + ix) * cin;
                             for (std::size_t f = 0; f < c.filters; ++f) {
                               const double* wk = c.weights.data() + ((f * c.kernel_h + ky) * c.kernel_w + kx) * cin;
                               double s = 0.0;
                               for (std::size_t ch = 0; ch < cin; ++ch) s += wk[ch] * i_px[ch];
                               o_px[f] += s;
                             }
                           }
                         }
                       }
                     }
                   },
                   [&](const ReLU&) {
                     for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
                   },
               },
               layers_[k]);
    acts.push_back(std::move(out));
  }
  return acts;
}

std::vector<double> MultiClassNet::forward(std::span<const double> x) const { return trace(x).back(); }

std::vector<double> MultiClassNet::backward(const std::vector<std::vector<double>>& acts,
                                            std::vector<double> grad) const {
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const std::vector<double>& in = acts[k];
    std::vector<double> gin(in.size(), 0.0);
    std::visit(overloaded{
                   [&](const Dense& d) {
                     for (std::size_t o = 0; o < d.out; ++o) {
                       const double g = grad[o];
                       if (g == 0.0) continue;
                       const double* row = d.weights.data() + o * d.in;
                       for (std::size_t i = 0; i < d.in; ++i) gin[i] += g * row[i];
                     }
                   },
                   [&](const Conv2D& c) {
                     const ConvGeometry& g = geometry_[k];
                     const std::size_t cin = c.in_channels;
                     for (std::size_t oy = 0; oy < g.out_h; ++oy) {
                       for (std::size_t ox = 0; ox < g.out_w; ++ox) {
                         const double* g_px = grad.data() + (oy * g.out_w + ox) * c.filters;
                         for (std::size_t ky = 0; ky < c.kernel_h; ++ky) {
                           const long iy = static_cast<long>(oy * c.stride + ky) - static_cast<long>(g.pad_top);
                           if (iy < 0 || iy >= static_cast<long>(g.in_h)) continue;
                           for (std::size_t kx = 0; kx < c.kernel_w; ++kx) {
                             const long ix = static_cast<long>(ox * c.stride + kx) - static_cast<long>(g.pad_left);
                             if (ix < 0 || ix >= static_cast<long>(g.in_w)) continue;
                             double* gi_px = gin.data() + (static_cast<std::size_t>(iy) * g.in_w + ix) * cin;
                             for (std::size_t f = 0; f < c.filters; ++f) {
                               const double gf = g_px[f];
                               if (gf == 0.0) continue;
                               const double* wk = c.weights.data() + ((f * c.kernel_h + ky) * c.kernel_w + kx) * cin;
                               for (std::size_t ch = 0; ch < cin; ++ch) gi_px[ch] += gf * wk[ch];
                             }
                           }
                         }
                       }
                     }
                   },
                   [&](const ReLU&) {
                     // Subgradient at 0 is 0.
                     for (std::size_t i = 0; i < in.size(); ++i) gin[i] = in[i] > 0.0 ? grad[i] : 0.0;
                   },
               },
               layers_[k]);
    grad = std::move(gin);
  }
  return grad;
}

std::size_t Classifier::input_dim() const noexcept {
  return std::visit(overloaded{
                        [](const BinaryLinear& m) { return m.input_dim(); },
                        [](const MultiClassNet& m) { return m.input_dim(); },
                        [](const Threshold1D&) { return std::size_t{1}; },
                    },
                    model_);
}

int Classifier::num_classes() const noexcept {
  if (const auto* net = std::get_if<MultiClassNet>(&model_)) return net->num_classes();
  return 2;
}

std::vector<double> forward(const Classifier& model, std::span<const double> x) {
  return std::visit(overloaded{
                        [&](const BinaryLinear& m) { return std::vector<double>{m.decision(x)}; },
                        [&](const MultiClassNet& m) { return m.forward(x); },
                        [&](const Threshold1D& m) {
                          check_input(1, x);
                          return std::vector<double>{x[0] - m.threshold()};
                        },
                    },
                    model.variant());
}

int predict_from_logits(std::span<const double> logits) {
  if (logits.size() == 1) return logits[0] >= 0.0 ? 1 : 0;
  std::size_t best = 0;
  for (std::size_t j = 1; j < logits.size(); ++j)
    if (logits[j] > logits[best]) best = j;
  return static_cast<int>(best);
}

int predict(const Classifier& model, std::span<const double> x) { return predict_from_logits(forward(model, x)); }

namespace {

struct LogitLoss {
  double value;
  std::vector<double> grad;  // d(loss)/d(logits)
};

LogitLoss logit_loss(std::span<const double> z, int y, Loss loss) {
  const std::size_t n = z.size();
  const auto label = static_cast<std::size_t>(y);
  LogitLoss out{0.0, std::vector<double>(n, 0.0)};
  if (loss == Loss::CrossEntropy) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double e : z) sum += std::exp(e - zmax);
    const double lse = zmax + std::log(sum);
    out.value = lse - z[label];
    // The label component is formed from the other probabilities so that it
    // stays non-zero even when softmax saturates.
    double rest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == label) continue;
      out.grad[j] = std::exp(z[j] - lse);
      rest += out.grad[j];
    }
    out.grad[label] = -rest;
  } else {
    std::size_t other = label == 0 ? 1 : 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != label && z[j] > z[other]) other = j;
    const double margin = z[label] - z[other];
    out.value = std::max(margin, 0.0);
    if (margin > 0.0) {
      out.grad[label] = 1.0;
      out.grad[other] = -1.0;
    }
  }
  return out;
}

void check_label(const Classifier& model, int y) {
  if (y < 0 || y >= model.num_classes())
    throw InvalidInput("label " + std::to_string(y) + " outside [0, " + std::to_string(model.num_classes()) + ")");
}

}  // namespace

LossEvaluation evaluate_loss(const Classifier& model, std::span<const double> x, int y, Loss loss) {
  check_label(model, y);
  LossEvaluation ev;
  if (const auto* net = model.get_if<MultiClassNet>()) {
    auto acts = net->trace(x);
    const std::vector<double>& logits = acts.back();
    ev.prediction = predict_from_logits(logits);
    LogitLoss l = logit_loss(logits, y, loss);
    ev.loss = l.value;
    ev.gradient = net->backward(acts, std::move(l.grad));
    return ev;
  }
  const double z = forward(model, x)[0];
  const double pair[2] = {0.0, z};
  ev.prediction = z >= 0.0 ? 1 : 0;
  LogitLoss l = logit_loss(pair, y, loss);
  ev.loss = l.value;
  const double dz = l.grad[1];
  if (const auto* lin = model.get_if<BinaryLinear>()) {
    ev.gradient.resize(lin->input_dim());
    for (std::size_t i = 0; i < ev.gradient.size(); ++i) ev.gradient[i] = dz * lin->weights()[i];
  } else {
    ev.gradient = {dz};
  }
  return ev;
}

std::vector<double> loss_gradient(const MultiClassNet& model, std::span<const double> x, int y, Loss loss) {
  if (y < 0 || y >= model.num_classes()) throw InvalidInput("label outside the model's classes");
  auto acts = model.trace(x);
  LogitLoss l = logit_loss(acts.back(), y, loss);
  return model.backward(acts, std::move(l.grad));
}

std::vector<double> loss_gradient(const Classifier& model, std::span<const double> x, int y, Loss loss) {
  return evaluate_loss(model, x, y, loss).gradient;
}

}  // namespace rcurves
