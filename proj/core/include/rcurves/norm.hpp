#pragma once

#include <span>
#include <string>
#include <string_view>

namespace rcurves {

enum class NormKind { L1, L2, Linf };

std::string_view to_string(NormKind kind);

/// Accepts "l1", "l2", "linf" (case-insensitive; "inf" and "Linf" too).
NormKind parse_norm(std::string_view text);

/// Sum |v_i|, Euclidean length, or max |v_i|. Throws InvalidInput on
/// non-finite entries or an empty vector.
double norm(std::span<const double> v, NormKind kind);

/// Exponent q with 1/p + 1/q = 1, using 1/inf = 0. L1 maps to +infinity.
double dual_exponent(NormKind kind);

/// The norm that is dual to `kind` (L1 <-> Linf, L2 self-dual).
NormKind dual_norm(NormKind kind);

/// ||w||_q for the dual exponent q of `kind`.
double dual_norm_value(std::span<const double> w, NormKind kind);

/// Norm of a - b without materializing the difference.
double distance(std::span<const double> a, std::span<const double> b, NormKind kind);

}  // namespace rcurves
