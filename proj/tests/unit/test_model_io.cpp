#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rcurves/error.hpp"
#include "rcurves/model_io.hpp"

namespace rcurves {
namespace {

using testing::Rng;

TEST(ModelIo, MinimalBinaryLinear) {
  const auto m = load_model(R"({"format_version": 1, "kind": "binary_linear", "input_shape": [2],
    "layers": [{"type": "dense", "out": 1, "in": 2, "weights": [1, 0], "bias": [0]}]})");
  const auto* lin = m.get_if<BinaryLinear>();
  ASSERT_NE(lin, nullptr);
  EXPECT_EQ(lin->weights()[0], 1.0);
  EXPECT_EQ(lin->weights()[1], 0.0);
  EXPECT_EQ(lin->bias(), 0.0);
}

TEST(ModelIo, ThresholdModel) {
  const auto m = load_model(R"({"format_version": 1, "kind": "threshold_1d", "input_shape": [1],
    "layers": [{"type": "threshold", "threshold": -2}]})");
  ASSERT_NE(m.get_if<Threshold1D>(), nullptr);
  EXPECT_EQ(m.get_if<Threshold1D>()->threshold(), -2.0);
}

TEST(ModelIo, ShapeClashNamesLayerOne) {
  const char* text = R"({"format_version": 1, "kind": "multiclass_net", "input_shape": [2], "layers": [
    {"type": "dense", "out": 3, "in": 2, "weights": [1,2,3,4,5,6], "bias": [0,0,0]},
    {"type": "dense", "out": 2, "in": 4, "weights": [1,2,3,4,5,6,7,8], "bias": [0,0]}]})";
  try {
    load_model(text);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.layer(), 1u);
    EXPECT_NE(std::string(e.what()).find("layer 1"), std::string::npos);
  }
}

TEST(ModelIo, MalformedContainerIsParseError) {
  EXPECT_THROW(load_model("{\"format_version\": 1, \"kind\": "), ParseError);
  EXPECT_THROW(load_model("[]"), ParseError);
  EXPECT_THROW(load_model(R"({"format_version": 2, "kind": "binary_linear", "input_shape": [1], "layers": []})"),
               ParseError);
  EXPECT_THROW(load_model(R"({"format_version": 1, "kind": "svm", "input_shape": [1], "layers": []})"), ParseError);
  EXPECT_THROW(load_model(R"({"format_version": 1, "input_shape": [1], "layers": []})"), ParseError);
  try {
    load_model("{\"format_version\": 1,, }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
}

TEST(ModelIo, LayerLevelProblemsAreValidationErrors) {
  EXPECT_THROW(load_model(R"({"format_version": 1, "kind": "multiclass_net", "input_shape": [2], "layers": [
    {"type": "dense", "out": 2, "in": 2, "weights": [1,2,3], "bias": [0,0]}]})"),
               ValidationError);
  EXPECT_THROW(load_model(R"({"format_version": 1, "kind": "multiclass_net", "input_shape": [2], "layers": [
    {"type": "pool"}]})"),
               ValidationError);
  EXPECT_THROW(load_model(R"({"format_version": 1, "kind": "binary_linear", "input_shape": [2],
    "layers": [{"type": "dense", "out": 1, "in": 2, "weights": [0, 0], "bias": [0]}]})"),
               ValidationError);
}

void expect_same(const Classifier& a, const Classifier& b) { EXPECT_EQ(save_model(a), save_model(b)); }

TEST(ModelIo, RoundTripIsBitExact) {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const Classifier net = i % 2 ? testing::random_conv_net(rng) : testing::random_mlp(rng, 5, 3);
    const auto text = save_model(net);
    const auto back = load_model(text);
    EXPECT_EQ(save_model(back), text);
    const auto& a = *net.get_if<MultiClassNet>();
    const auto& b = *back.get_if<MultiClassNet>();
    ASSERT_EQ(a.layers().size(), b.layers().size());
    for (std::size_t k = 0; k < a.layers().size(); ++k) {
      if (const auto* d = std::get_if<Dense>(&a.layers()[k])) {
        EXPECT_EQ(d->weights, std::get<Dense>(b.layers()[k]).weights);
        EXPECT_EQ(d->bias, std::get<Dense>(b.layers()[k]).bias);
      } else if (const auto* c = std::get_if<Conv2D>(&a.layers()[k])) {
        const auto& c2 = std::get<Conv2D>(b.layers()[k]);
        EXPECT_EQ(c->weights, c2.weights);
        EXPECT_EQ(c->stride, c2.stride);
        EXPECT_EQ(c->padding, c2.padding);
      }
    }
    const auto x = testing::random_vector(rng, a.input_dim(), 0, 1);
    EXPECT_EQ(a.forward(x), b.forward(x));
  }
  const Classifier lin = BinaryLinear({0.1, 1.0 / 3.0, -2e-300}, 0.7);
  expect_same(lin, load_model(save_model(lin)));
  EXPECT_EQ(load_model(save_model(lin)).get_if<BinaryLinear>()->weights()[1], 1.0 / 3.0);
  const Classifier th = Threshold1D(-1.0 / 7.0);
  EXPECT_EQ(load_model(save_model(th)).get_if<Threshold1D>()->threshold(), -1.0 / 7.0);
}

TEST(ModelIo, TruncationAlwaysFailsCleanly) {
  Rng rng(22);
  const auto text = save_model(Classifier(testing::random_conv_net(rng)));
  const auto last = text.rfind('}');
  for (std::size_t n = 0; n < last; ++n) EXPECT_THROW(load_model(std::string_view(text).substr(0, n)), ParseError) << n;
}

}  // namespace
}  // namespace rcurves
