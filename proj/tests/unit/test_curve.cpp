#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "rcurves/curve.hpp"
#include "rcurves/error.hpp"

namespace rcurves {
namespace {

using testing::Rng;

PerturbationRecord rec(std::size_t i, RecordStatus s, double d) { return {i, s, d, std::nullopt}; }

RobustnessCurve example_curve() {
  const std::vector<PerturbationRecord> r{rec(0, RecordStatus::Misclassified, 0), rec(1, RecordStatus::Found, 0.2),
                                          rec(2, RecordStatus::Found, 0.2), rec(3, RecordStatus::Found, 0.5)};
  const std::vector<double> w(4, 0.25);
  return build_curve(r, w, INFINITY, {NormKind::L2, "m", "d", Estimator::Exact});
}

RobustnessCurve step(std::vector<double> bps, std::vector<double> vals, double horizon = 1.0) {
  return RobustnessCurve(std::move(bps), std::move(vals), horizon, {NormKind::Linf, "m", "d", Estimator::Attack}, 0);
}

TEST(Curve, BuildExample) {
  const auto c = example_curve();
  EXPECT_EQ(c.breakpoints(), (std::vector<double>{0, 0.2, 0.5}));
  EXPECT_DOUBLE_EQ(c(0), 0.25);
  EXPECT_DOUBLE_EQ(c(0.2), 0.75);
  EXPECT_DOUBLE_EQ(c(0.5), 1.0);
  EXPECT_DOUBLE_EQ(c(0.1999), 0.25);
  EXPECT_DOUBLE_EQ(evaluate(c, 0.3).value, 0.75);
}

TEST(Curve, AllCensoredIsZero) {
  const std::vector<PerturbationRecord> r{rec(0, RecordStatus::Censored, 0.5), rec(1, RecordStatus::Censored, 0.5)};
  const std::vector<double> w{0.5, 0.5};
  const auto c = build_curve(r, w, 0.5, {NormKind::Linf, "m", "d", Estimator::Attack});
  EXPECT_EQ(c(0), 0.0);
  EXPECT_EQ(c(0.5), 0.0);
  EXPECT_DOUBLE_EQ(c.censored_mass(), 1.0);
}

TEST(Curve, BuildRejectsBadInput) {
  const std::vector<PerturbationRecord> r{rec(0, RecordStatus::Found, 0.1)};
  const std::vector<double> two{0.5, 0.5}, half{0.5};
  const CurveMetadata meta{NormKind::L2, "m", "d", Estimator::Attack};
  EXPECT_THROW(build_curve(r, two, 1.0, meta), InvalidInput);
  EXPECT_THROW(build_curve(r, half, 1.0, meta), InvalidInput);
  const std::vector<double> one{1.0};
  EXPECT_THROW(build_curve(r, one, 0.05, meta), InvalidInput);  // beyond horizon
  EXPECT_THROW(build_curve(r, one, 1.0, {NormKind::L2, "m", "d", Estimator::Exact}), InvalidInput);
}

TEST(Curve, NearlyEqualDistancesShareOneBreakpoint) {
  const std::vector<PerturbationRecord> r{rec(0, RecordStatus::Found, 0.3), rec(1, RecordStatus::Found, 0.3 + 1e-12)};
  const std::vector<double> w{0.5, 0.5};
  const auto c = build_curve(r, w, 1.0, {NormKind::L2, "m", "d", Estimator::Attack});
  EXPECT_EQ(c.breakpoints().size(), 1u);
  EXPECT_DOUBLE_EQ(c(0.3), 1.0);
}

TEST(Curve, ConstructorValidates) {
  EXPECT_THROW(step({0.2, 0.1}, {0.1, 0.2}), InvalidInput);
  EXPECT_THROW(step({0.1, 0.2}, {0.3, 0.2}), InvalidInput);
  EXPECT_THROW(step({0.1}, {1.5}), InvalidInput);
  EXPECT_THROW(step({2.0}, {0.5}, 1.0), InvalidInput);
  EXPECT_THROW(RobustnessCurve({0.1}, {0.8}, 1.0, {NormKind::L2, "m", "d", Estimator::Attack}, 0.5), InvalidInput);
}

TEST(Curve, EvaluateFlagsHorizon) {
  const auto c = step({0.1, 0.4}, {0.2, 0.6}, 0.5);
  const auto inside = evaluate(c, 0.45);
  EXPECT_EQ(inside.bound_quality, BoundQuality::Exact);
  EXPECT_DOUBLE_EQ(inside.value, 0.6);
  const auto beyond = evaluate(c, 0.6);
  EXPECT_EQ(beyond.bound_quality, BoundQuality::LowerBoundBeyondHorizon);
  EXPECT_DOUBLE_EQ(beyond.value, 0.6);
  EXPECT_THROW(evaluate(c, -0.1), InvalidInput);
}

TEST(Curve, RankAtFlipsOrdering) {
  const std::vector<LabeledCurve> cs{{"A", step({0.3}, {0.9})}, {"B", step({0.05, 0.3}, {0.2, 0.5})},
                                     {"C", step({0.01}, {0.4})}};
  const auto r1 = rank_at(cs, 0.1);
  ASSERT_EQ(r1.size(), 3u);
  EXPECT_EQ(r1[0].id, "A");
  EXPECT_EQ(r1[1].id, "B");
  EXPECT_EQ(r1[2].id, "C");
  const auto r2 = rank_at(cs, 0.4);
  EXPECT_EQ(r2[0].id, "C");
  EXPECT_EQ(r2[1].id, "B");
  EXPECT_EQ(r2[2].id, "A");
  const std::vector<LabeledCurve> single{{"only", step({0.1}, {0.5})}};
  EXPECT_EQ(rank_at(single, 0.2).size(), 1u);
}

TEST(Curve, RankAtTiesAndHorizon) {
  const std::vector<LabeledCurve> cs{{"b", step({0.1}, {0.5})}, {"a", step({0.1}, {0.5}, 0.2)}};
  const auto r = rank_at(cs, 0.15);
  EXPECT_EQ(r[0].id, "a");
  try {
    rank_at(cs, 0.3);
    FAIL();
  } catch (const HorizonError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos) << e.what();
  }
}

TEST(Curve, RankAtReproducesTable1Pattern) {
  const auto cs = testing::table1_curves();
  const double eps[] = {1.0 / 255, 4.0 / 255, 8.0 / 255};
  for (int k = 0; k < 3; ++k) {
    const auto r = rank_at(cs, eps[k]);
    std::vector<std::string> ids;
    for (const auto& e : r) ids.push_back(e.id);
    EXPECT_EQ(ids, testing::table1_rankings()[static_cast<std::size_t>(k)]);
  }
}

TEST(Curve, IntersectionExample) {
  const auto a = step({0.1}, {0.5});
  const auto b = step({0.2}, {1.0});
  const auto x = intersections(a, b);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_DOUBLE_EQ(x[0].epsilon, 0.2);
  EXPECT_EQ(x[0].direction, CrossingDirection::FirstBecomesSmaller);
  EXPECT_TRUE(intersections(a, a).empty());
}

TEST(Curve, TouchIsReportedAtPlateauStart) {
  const auto a = step({0.1, 0.3}, {0.5, 0.9});
  const auto b = step({0.2, 0.4}, {0.5, 0.95});
  // a > b on [0.1,0.2), equal on [0.2,0.3), a > b on [0.3,0.4), then a < b.
  const auto x = intersections(a, b);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_DOUBLE_EQ(x[0].epsilon, 0.2);
  EXPECT_EQ(x[0].direction, CrossingDirection::Touch);
  EXPECT_DOUBLE_EQ(x[1].epsilon, 0.4);
  EXPECT_EQ(x[1].direction, CrossingDirection::FirstBecomesSmaller);
}

TEST(Curve, IntersectionsAreSymmetric) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ra = testing::random_record_set(rng);
    auto rb = testing::random_record_set(rng);
    const CurveMetadata meta{NormKind::L2, "m", "d", Estimator::Attack};
    const auto a = build_curve(ra.records, ra.weights, ra.horizon, meta);
    const auto b = build_curve(rb.records, rb.weights, rb.horizon, meta);
    const auto ab = intersections(a, b);
    const auto ba = intersections(b, a);
    ASSERT_EQ(ab.size(), ba.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
      EXPECT_EQ(ab[i].epsilon, ba[i].epsilon);
      if (ab[i].direction == CrossingDirection::Touch)
        EXPECT_EQ(ba[i].direction, CrossingDirection::Touch);
      else
        EXPECT_NE(ab[i].direction, ba[i].direction);
    }
  }
}

TEST(Curve, ExportFormat) {
  const auto csv = export_curve(example_curve());
  EXPECT_NE(csv.find("# norm: l2\n"), std::string::npos);
  EXPECT_NE(csv.find("# horizon: inf\n"), std::string::npos);
  EXPECT_NE(csv.find("epsilon,robust_error\n0,0.25\n0.20000000000000001,0.75\n0.5,1\n"), std::string::npos) << csv;
  const auto empty = export_curve(step({}, {}));
  EXPECT_EQ(empty.substr(empty.size() - std::string("epsilon,robust_error\n").size()), "epsilon,robust_error\n");
}

TEST(Curve, ExportImportRoundTrip) {
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rs = testing::random_record_set(rng);
    const auto c = build_curve(rs.records, rs.weights, rs.horizon, {NormKind::Linf, "model x", "data", Estimator::Attack});
    const auto back = import_curve(export_curve(c));
    EXPECT_EQ(back.breakpoints(), c.breakpoints());
    EXPECT_EQ(back.values(), c.values());
    EXPECT_EQ(back.horizon(), c.horizon());
    EXPECT_EQ(back.censored_mass(), c.censored_mass());
    EXPECT_EQ(back.metadata().model, "model x");
    EXPECT_EQ(back.metadata().norm, NormKind::Linf);
    EXPECT_EQ(back.metadata().estimator, Estimator::Attack);
  }
  const auto exact = import_curve(export_curve(example_curve()));
  EXPECT_TRUE(std::isinf(exact.horizon()));
}

TEST(Curve, ImportErrorsCarryLineNumbers) {
  try {
    import_curve("# norm: l2\nepsilon,robust_error\n0.1,0.5\n0.2,abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(import_curve("0.1,0.5\n"), ParseError);
  EXPECT_THROW(import_curve("epsilon,robust_error\n0.2,0.5\n0.1,0.6\n"), ParseError);
  EXPECT_THROW(import_curve("epsilon,robust_error\n0.2,0.5,1\n"), ParseError);
}

TEST(Curve, ImportTruncationNeverCrashes) {
  const auto csv = export_curve(example_curve());
  for (std::size_t n = 0; n < csv.size(); ++n) {
    try {
      const auto c = import_curve(std::string_view(csv).substr(0, n));
      for (std::size_t k = 1; k < c.values().size(); ++k) EXPECT_GE(c.values()[k], c.values()[k - 1]);
    } catch (const ParseError&) {
    }
  }
}

TEST(Curve, FuzzedRecordSetsSatisfyInvariants) {
  Rng rng(53);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rs = testing::random_record_set(rng);
    const auto c = build_curve(rs.records, rs.weights, rs.horizon, {NormKind::L2, "m", "d", Estimator::Attack});
    EXPECT_EQ(testing::curve_invariant_violation(c, rs, rng), "");
  }
}

}  // namespace
}  // namespace rcurves
