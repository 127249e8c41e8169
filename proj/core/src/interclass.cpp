#include "rcurves/interclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rcurves/error.hpp"
#include "rcurves/parallel.hpp"
#include "lanes.hpp"

namespace rcurves {

using namespace lanes;

namespace {

/// Rows packed contiguously, grouped by label.
struct PackedData {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> rows;            // n * m, class-grouped order
  std::vector<std::size_t> original;   // packed row -> dataset index
  std::vector<int> label;              // per packed row
  std::vector<std::size_t> class_end;  // end of the class block containing each packed row
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end) per present class

  const double* row(std::size_t r) const { return rows.data() + r * m; }
};

PackedData pack(const Dataset& data) {
  PackedData p;
  p.n = data.size();
  p.m = data.dim();
  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data[a].y < data[b].y; });
  p.rows.resize(p.n * p.m);
  p.original = order;
  p.label.resize(p.n);
  for (std::size_t r = 0; r < p.n; ++r) {
    const auto& pt = data[order[r]];
    std::copy(pt.x.begin(), pt.x.end(), p.rows.begin() + static_cast<std::ptrdiff_t>(r * p.m));
    p.label[r] = pt.y;
  }
  p.class_end.resize(p.n);
  for (std::size_t b = 0; b < p.n;) {
    std::size_t e = b;
    while (e < p.n && p.label[e] == p.label[b]) ++e;
    p.blocks.emplace_back(b, e);
    for (std::size_t r = b; r < e; ++r) p.class_end[r] = e;
    b = e;
  }
  if (p.blocks.size() < 2) throw InvalidInput("inter-class distances need at least two classes present");
  return p;
}

template <NormKind P>
void nearest_scan(const PackedData& pd, std::vector<double>& best, std::vector<std::size_t>& arg,
                  unsigned threads) {
  parallel_for(pd.n, threads, 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const double* a = pd.row(r);
      double b_raw = std::numeric_limits<double>::infinity();
      std::size_t b_idx = std::numeric_limits<std::size_t>::max();
      for (const auto& [cb, ce] : pd.blocks) {
        if (pd.label[cb] == pd.label[r]) continue;
        for (std::size_t s = cb; s < ce; ++s) {
          // Ties must still be seen so that the smallest original index wins.
          const double bound = std::nextafter(b_raw, std::numeric_limits<double>::infinity());
          const double d = raw_distance<P>(a, pd.row(s), pd.m, bound);
          if (d < b_raw || (d == b_raw && pd.original[s] < b_idx)) {
            b_raw = d;
            b_idx = pd.original[s];
          }
        }
      }
      best[pd.original[r]] = finish<P>(b_raw);
      arg[pd.original[r]] = b_idx;
    }
  });
}

template <NormKind P>
InterclassExtremes extremes_scan(const PackedData& pd, unsigned threads) {
  std::mutex mu;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const double never = std::numeric_limits<double>::infinity();
  parallel_for(pd.n, threads, 16, [&](std::size_t begin, std::size_t end) {
    double l_lo = std::numeric_limits<double>::infinity();
    double l_hi = 0.0;
    for (std::size_t r = begin; r < end; ++r) {
      const double* a = pd.row(r);
      for (std::size_t s = pd.class_end[r]; s < pd.n; ++s) {
        const double d = raw_distance<P>(a, pd.row(s), pd.m, never);
        l_lo = std::min(l_lo, d);
        l_hi = std::max(l_hi, d);
      }
    }
    std::lock_guard lock(mu);
    lo = std::min(lo, l_lo);
    hi = std::max(hi, l_hi);
  });
  return {finish<P>(lo), finish<P>(hi)};
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DedupResult dedup(const Dataset& data) {
  std::vector<LabeledPoint> kept;
  kept.reserve(data.size());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;  // hash -> positions in kept
  std::size_t removed = 0;
  for (const auto& pt : data.points()) {
    const bool corrupted = std::any_of(pt.x.begin(), pt.x.end(), [](double v) { return !(v >= 0.0 && v <= 1.0); });
    if (corrupted) {
      ++removed;
      continue;
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : pt.x) {
      const double canon = v == 0.0 ? 0.0 : v;  // -0.0 and 0.0 are the same value
      std::uint64_t bits;
      std::memcpy(&bits, &canon, sizeof bits);
      h = (h ^ bits) * 1099511628211ULL;
    }
    auto& bucket = seen[h];
    const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t k) { return kept[k].x == pt.x; });
    if (dup) {
      ++removed;
      continue;
    }
    bucket.push_back(kept.size());
    kept.push_back(pt);
  }
  if (kept.empty()) return {Dataset({}, data.name(), data.num_classes()), removed};
  return {Dataset::normalized(std::move(kept), data.name(), data.num_classes()), removed};
}

InterclassReport interclass_distances(const Dataset& data, NormKind p, unsigned threads,
                                      bool with_largest_pairwise) {
  const PackedData pd = pack(data);
  std::vector<double> best(pd.n);
  std::vector<std::size_t> arg(pd.n);
  dispatch(p, [&](auto tag) {
    nearest_scan<decltype(tag)::value>(pd, best, arg, threads);
    return 0;
  });

  InterclassReport rep;
  rep.norm = p;
  rep.dataset = data.name();
  rep.per_point_min.reserve(pd.n);
  rep.smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pd.n; ++i) {
    rep.per_point_min.push_back({i, best[i], arg[i], data[i].weight});
    rep.smallest = std::min(rep.smallest, best[i]);
    rep.largest_of_minima = std::max(rep.largest_of_minima, best[i]);
  }
  if (with_largest_pairwise) rep.largest_pairwise = interclass_extremes(data, p, threads).largest;
  return rep;
}

InterclassExtremes interclass_extremes(const Dataset& data, NormKind p, unsigned threads) {
  const PackedData pd = pack(data);
  return dispatch(p, [&](auto tag) { return extremes_scan<decltype(tag)::value>(pd, threads); });
}

double tradeoff_threshold(const Dataset& data, NormKind p, TradeoffMode mode, unsigned threads) {
  const double d_min = interclass_distances(data, p, threads).smallest;
  return mode == TradeoffMode::Overlap ? d_min / 2.0 : d_min;
}

RobustnessCurve distance_distribution_curve(const InterclassReport& report) {
  std::vector<PerturbationRecord> records;
  std::vector<double> weights;
  records.reserve(report.per_point_min.size());
  double total = 0.0;
  for (const auto& e : report.per_point_min) total += e.weight;
  for (const auto& e : report.per_point_min) {
    PerturbationRecord r;
    r.index = e.index;
    r.status = RecordStatus::Found;
    r.distance = e.min_distance;
    records.push_back(std::move(r));
    weights.push_back(e.weight / total);
  }
  CurveMetadata meta{report.norm, "inter-class distance", report.dataset, Estimator::Empirical};
  return build_curve(records, weights, std::numeric_limits<double>::infinity(), std::move(meta));
}

std::string export_report(const InterclassReport& report) {
  std::ostringstream os;
  os << "# norm: " << to_string(report.norm) << '\n';
  os << "# dataset: " << report.dataset << '\n';
  os << "# points: " << report.per_point_min.size() << '\n';
  os << "# smallest: " << fmt17(report.smallest) << '\n';
  os << "# largest_of_minima: " << fmt17(report.largest_of_minima) << '\n';
  if (report.largest_pairwise) os << "# largest_pairwise: " << fmt17(*report.largest_pairwise) << '\n';
  os << "# dedup_removed: " << report.dedup_removed << '\n';
  os << "index,min_distance\n";
  for (const auto& e : report.per_point_min) os << e.index << ',' << fmt17(e.min_distance) << '\n';
  return os.str();
}

}  // namespace rcurves
