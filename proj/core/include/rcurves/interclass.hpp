#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcurves/curve.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/norm.hpp"

namespace rcurves {

struct DedupResult {
  Dataset data;
  std::size_t removed = 0;
};

/// Drops points with a non-finite coordinate or one outside [0,1], then exact
/// value duplicates (first occurrence wins, labels ignored). Remaining
/// weights are renormalized.
DedupResult dedup(const Dataset& data);

struct InterclassEntry {
  std::size_t index = 0;    ///< position in the dataset
  double min_distance = 0;  ///< distance to the nearest differently-labeled point
  std::size_t nearest = 0;  ///< index of that point (smallest index on ties)
  double weight = 0;
};

struct InterclassReport {
  std::vector<InterclassEntry> per_point_min;
  double smallest = 0.0;
  double largest_of_minima = 0.0;
  std::optional<double> largest_pairwise;
  NormKind norm = NormKind::L2;
  std::string dataset;
  std::size_t dedup_removed = 0;
};

/// Exact nearest differently-labeled neighbour of every point. Throws
/// InvalidInput when fewer than two classes are present.
InterclassReport interclass_distances(const Dataset& data, NormKind p, unsigned threads = 1,
                                      bool with_largest_pairwise = false);

struct InterclassExtremes {
  double smallest = 0.0;  ///< min over differently-labeled pairs
  double largest = 0.0;   ///< max over differently-labeled pairs
};

InterclassExtremes interclass_extremes(const Dataset& data, NormKind p, unsigned threads = 1);

enum class TradeoffMode {
  Overlap,   ///< eps-balls of some differently-labeled pair intersect: d_min / 2
  FullFlip,  ///< one sample can be moved onto a differently-labeled one: d_min
};

double tradeoff_threshold(const Dataset& data, NormKind p, TradeoffMode mode, unsigned threads = 1);

/// Empirical CDF of the per-point minima, weighted like the dataset.
RobustnessCurve distance_distribution_curve(const InterclassReport& report);

/// CSV `index,min_distance` preceded by `#` summary lines.
std::string export_report(const InterclassReport& report);

}  // namespace rcurves
