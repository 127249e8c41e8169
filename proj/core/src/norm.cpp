#include "rcurves/norm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "rcurves/error.hpp"
#include "lanes.hpp"

namespace rcurves {

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
  }
  return "?";
}

NormKind parse_norm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "l1" || lower == "1") return NormKind::L1;
  if (lower == "l2" || lower == "2") return NormKind::L2;
  if (lower == "linf" || lower == "inf" || lower == "l_inf") return NormKind::Linf;
  throw InvalidInput("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

namespace {

void require_finite(std::span<const double> v) {
  if (v.empty()) throw InvalidInput("norm of an empty vector");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw InvalidInput("non-finite entry at index " + std::to_string(i));
  }
}

}  // namespace

double norm(std::span<const double> v, NormKind kind) {
  require_finite(v);
  switch (kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (double e : v) s += std::abs(e);
      return s;
    }
    case NormKind::L2: {
      // Scaled accumulation keeps tiny and huge entries from under/overflowing.
      double scale = 0.0;
      for (double e : v) scale = std::max(scale, std::abs(e));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double e : v) {
        const double r = e / scale;
        s += r * r;
      }
      return scale * std::sqrt(s);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (double e : v) m = std::max(m, std::abs(e));
      return m;
    }
  }
  return 0.0;
}

double dual_exponent(NormKind kind) {
  switch (kind) {
    case NormKind::L1: return std::numeric_limits<double>::infinity();
    case NormKind::L2: return 2.0;
    case NormKind::Linf: return 1.0;
  }
  return 0.0;
}

NormKind dual_norm(NormKind kind) {
  switch (kind) {
    case NormKind::L1: return NormKind::Linf;
    case NormKind::L2: return NormKind::L2;
    case NormKind::Linf: return NormKind::L1;
  }
  return kind;
}

double dual_norm_value(std::span<const double> w, NormKind kind) { return norm(w, dual_norm(kind)); }

double distance(std::span<const double> a, std::span<const double> b, NormKind kind) {
  if (a.size() != b.size()) throw InvalidInput("distance between vectors of different length");
  return lanes::dispatch(kind, [&](auto tag) {
    constexpr NormKind P = decltype(tag)::value;
    return lanes::finish<P>(
        lanes::raw_distance<P>(a.data(), b.data(), a.size(), std::numeric_limits<double>::infinity()));
  });
}

}  // namespace rcurves
