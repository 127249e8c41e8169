#pragma once

// Shared distance kernel. Every pairwise distance in the library goes through
// raw_distance so that blocked scans and plain calls agree bit-for-bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>

#include "rcurves/norm.hpp"

namespace rcurves::lanes {

constexpr std::size_t kLanes = 16;
constexpr std::size_t kCheckEvery = 64;  // coordinates between early-exit checks

/// Accumulates |a-b| (L1), (a-b)^2 (L2) or max|a-b| (Linf) over [begin, end)
/// into 16 lanes; lane j receives coordinates i with i % 16 == j.
template <NormKind P>
inline void accumulate(const double* a, const double* b, std::size_t begin, std::size_t end, double* acc) {
  for (std::size_t i = begin; i < end; i += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double d = a[i + j] - b[i + j];
      if constexpr (P == NormKind::L1) acc[j] += std::abs(d);
      if constexpr (P == NormKind::L2) acc[j] += d * d;
      if constexpr (P == NormKind::Linf) acc[j] = std::max(acc[j], std::abs(d));
    }
  }
}

template <NormKind P>
inline double combine(const double* acc) {
  if constexpr (P == NormKind::Linf) {
    double r = acc[0];
    for (std::size_t j = 1; j < kLanes; ++j) r = std::max(r, acc[j]);
    return r;
  } else {
    // Pairwise tree over the lanes.
    double t[kLanes];
    std::copy(acc, acc + kLanes, t);
    for (std::size_t w = kLanes / 2; w > 0; w /= 2)
      for (std::size_t j = 0; j < w; ++j) t[j] = t[j] + t[j + w];
    return t[0];
  }
}

template <NormKind P>
inline double tail(const double* a, const double* b, std::size_t begin, std::size_t end, double r) {
  for (std::size_t i = begin; i < end; ++i) {
    const double d = a[i] - b[i];
    if constexpr (P == NormKind::L1) r += std::abs(d);
    if constexpr (P == NormKind::L2) r += d * d;
    if constexpr (P == NormKind::Linf) r = std::max(r, std::abs(d));
  }
  return r;
}

/// Squared for L2. Abandons (returns +inf) once the partial value reaches
/// `bound`, which every remaining term can only increase.
template <NormKind P>
inline double raw_distance(const double* a, const double* b, std::size_t m, double bound) {
  alignas(64) double acc[kLanes] = {};
  const std::size_t body = m - m % kLanes;
  for (std::size_t i = 0; i < body; i += kCheckEvery) {
    accumulate<P>(a, b, i, std::min(body, i + kCheckEvery), acc);
    if (combine<P>(acc) >= bound) return std::numeric_limits<double>::infinity();
  }
  return tail<P>(a, b, body, m, combine<P>(acc));
}

template <NormKind P>
inline double finish(double raw) {
  if constexpr (P == NormKind::L2) return std::sqrt(raw);
  return raw;
}

template <class F>
auto dispatch(NormKind p, F&& f) {
  switch (p) {
    case NormKind::L1: return f(std::integral_constant<NormKind, NormKind::L1>{});
    case NormKind::L2: return f(std::integral_constant<NormKind, NormKind::L2>{});
    case NormKind::Linf: break;
  }
  return f(std::integral_constant<NormKind, NormKind::Linf>{});
}

}  // namespace rcurves::lanes
