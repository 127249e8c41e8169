#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>

#include "fixtures.hpp"
#include "rcurves/error.hpp"
#include "rcurves/ingest.hpp"
#include "rcurves/manifest.hpp"
#include "rcurves/svg.hpp"

namespace rcurves {
namespace {

using Bytes = std::vector<std::uint8_t>;

void put32(Bytes& b, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(v >> s));
}

Bytes idx_images(std::uint32_t n, std::uint32_t rows, std::uint32_t cols, const Bytes& pixels) {
  Bytes b;
  put32(b, 2051);
  put32(b, n);
  put32(b, rows);
  put32(b, cols);
  b.insert(b.end(), pixels.begin(), pixels.end());
  return b;
}

Bytes idx_labels(const Bytes& labels, std::uint32_t magic = 2049) {
  Bytes b;
  put32(b, magic);
  put32(b, static_cast<std::uint32_t>(labels.size()));
  b.insert(b.end(), labels.begin(), labels.end());
  return b;
}

TEST(Idx, SmallPair) {
  const auto im = idx_images(2, 2, 2, {0, 255, 51, 102, 255, 0, 0, 255});
  const auto lb = idx_labels({3, 7});
  const auto d = load_idx(im, lb, "tiny");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.dim(), 4u);
  EXPECT_EQ(d[0].x, (std::vector<double>{0.0, 1.0, 0.2, 0.4}));
  EXPECT_EQ(d[1].x, (std::vector<double>{1.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(d[0].y, 3);
  EXPECT_EQ(d[1].y, 7);
  EXPECT_DOUBLE_EQ(d[0].weight, 0.5);
  EXPECT_EQ(d.num_classes(), 8);
}

TEST(Idx, Errors) {
  const auto im = idx_images(2, 2, 2, {0, 255, 51, 102, 255, 0, 0, 255});
  EXPECT_THROW(load_idx(im, idx_labels({1, 2}, 2051), "x"), ParseError);
  EXPECT_THROW(load_idx(idx_labels({1, 2}), idx_labels({1, 2}), "x"), ParseError);
  EXPECT_THROW(load_idx(im, idx_labels({1, 2, 3}), "x"), InvalidInput);
  try {
    load_idx(Bytes(im.begin(), im.end() - 3), idx_labels({1, 2}), "x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), im.size() - 3);
  }
}

TEST(Idx, TruncationAlwaysErrors) {
  const auto im = idx_images(3, 2, 3, Bytes(18, 17));
  const auto lb = idx_labels({0, 1, 1});
  for (std::size_t n = 0; n < im.size(); ++n)
    EXPECT_THROW(load_idx(Bytes(im.begin(), im.begin() + static_cast<std::ptrdiff_t>(n)), lb, "x"), ParseError);
  for (std::size_t n = 0; n < lb.size(); ++n)
    EXPECT_THROW(load_idx(im, Bytes(lb.begin(), lb.begin() + static_cast<std::ptrdiff_t>(n)), "x"), ParseError);
}

TEST(Csv, Basic) {
  const auto d = load_csv("label,a,b\n0,0.1,0.2\n1,0.3,0.4\n1,0.5,0.6\n");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_EQ(d.num_classes(), 2);
  EXPECT_EQ(d[2].x, (std::vector<double>{0.5, 0.6}));
  EXPECT_DOUBLE_EQ(d[0].weight, 1.0 / 3.0);
}

TEST(Csv, RangeCheckAndNormalization) {
  EXPECT_THROW(load_csv("label,a\n0,1.7\n1,0.2\n"), InvalidInput);
  CsvOptions opts;
  opts.normalize = true;
  const auto d = load_csv("label,a,b\n0,1.7,5\n1,0.2,5\n1,-0.3,5\n", opts);
  EXPECT_DOUBLE_EQ(d[0].x[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1].x[0], 0.25);
  EXPECT_DOUBLE_EQ(d[2].x[0], 0.0);
  EXPECT_EQ(d[0].x[1], 0.0);
  CsvOptions loose;
  loose.require_unit_range = false;
  EXPECT_EQ(load_csv("label,a\n0,-7\n1,3.5\n", loose)[0].x[0], -7.0);
}

TEST(Csv, ParseErrorsNameTheRow) {
  const auto row_of = [](std::string_view text) -> std::size_t {
    try {
      load_csv(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return 0;
  };
  EXPECT_EQ(row_of("label,a\n0,0.1\n1,abc\n"), 3u);
  EXPECT_EQ(row_of("label,a,b\n0,0.1,0.2\n1,0.3\n"), 3u);
  EXPECT_EQ(row_of("label,a\nx,0.1\n"), 2u);
  EXPECT_EQ(row_of("label,a\n-1,0.1\n"), 2u);
  EXPECT_EQ(row_of(""), 1u);
  EXPECT_EQ(row_of("label,a\n"), 1u);
}

TEST(Csv, WeightColumnAndRoundTrip) {
  const auto d = load_csv("label,x1,weight\n0,0.25,1\n1,0.75,3\n");
  EXPECT_DOUBLE_EQ(d[0].weight, 0.25);
  EXPECT_DOUBLE_EQ(d[1].weight, 0.75);
  const auto back = load_csv(write_dataset_csv(d));
  EXPECT_EQ(back[1].weight, d[1].weight);

  testing::Rng rng(81);
  const auto r = testing::random_dataset(rng, 40, 7, 4);
  const auto rt = load_csv(write_dataset_csv(r));
  ASSERT_EQ(rt.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(rt[i].x, r[i].x);
    EXPECT_EQ(rt[i].y, r[i].y);
    EXPECT_NEAR(rt[i].weight, r[i].weight, 1e-15);
  }
  const auto u = Dataset::uniform({{{0.5}, 0, 0}, {{0.25}, 1, 0}}, "u");
  EXPECT_EQ(write_dataset_csv(u), "label,x1\n0,0.5\n1,0.25\n");
}

TEST(Csv, TruncationNeverCrashes) {
  const std::string text = "label,a,b\n0,0.125,0.25\n1,0.375,0.5\n1,0.625,0.75\n";
  for (std::size_t n = 0; n < text.size(); ++n) {
    try {
      load_csv(std::string_view(text).substr(0, n));
    } catch (const InvalidInput&) {
    }
  }
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++c;
  return c;
}

RobustnessCurve toy_curve() {
  return RobustnessCurve({0, 0.2, 0.5}, {0.25, 0.75, 1.0}, INFINITY, {NormKind::L2, "m", "d", Estimator::Exact}, 0);
}

TEST(Svg, OneAndTwoCurves) {
  const std::vector<LabeledCurve> one{{"toy", toy_curve()}};
  const auto s1 = render_svg(one, {.title = "t"});
  EXPECT_EQ(s1.rfind("<svg", 0), 0u);
  EXPECT_NE(s1.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(s1, "<polyline"), 1u);
  const std::vector<LabeledCurve> two{{"a", toy_curve()}, {"b<&>", toy_curve()}};
  const auto s2 = render_svg(two, {.title = "t"});
  EXPECT_EQ(count(s2, "<polyline"), 2u);
  EXPECT_NE(s2.find(">a</text>"), std::string::npos);
  EXPECT_NE(s2.find(">b&lt;&amp;&gt;</text>"), std::string::npos);
  EXPECT_EQ(render_svg(two, {.title = "t"}), s2);
}

TEST(Manifest, HashAndJson) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
  RunManifest m;
  m.command = "synth";
  m.add_input("in.csv", "abc");
  m.set("seed", "1");
  m.set("seed", "2");
  m.outputs.push_back("out/curve.csv");
  m.wall_time_seconds = 0.5;
  const auto j = to_json(m);
  EXPECT_NE(j.find("\"command\": \"synth\""), std::string::npos);
  EXPECT_NE(j.find("\"seed\": \"2\""), std::string::npos);
  EXPECT_EQ(count(j, "\"seed\""), 1u);
  EXPECT_NE(j.find(fnv1a64_hex("abc")), std::string::npos);
  EXPECT_NE(j.find("\"wall_time_seconds\": 0.5"), std::string::npos);
}

}  // namespace
}  // namespace rcurves
