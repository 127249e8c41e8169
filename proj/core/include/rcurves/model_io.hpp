#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rcurves/model.hpp"

namespace rcurves {

/// Decodes a model file (JSON, format_version 1).
///
///   {"format_version": 1,
///    "kind": "binary_linear" | "multiclass_net" | "threshold_1d",
///    "input_shape": [n] | [height, width, channels],
///    "layers": [...]}
///
/// binary_linear holds one {"type": "dense", "out": 1, "in": n} layer,
/// threshold_1d one {"type": "threshold", "threshold": t} layer, and
/// multiclass_net any sequence of "dense", "conv2d" and "relu" layers.
/// Tensors are flat row-major arrays; conv2d weights use the
/// (filter, row, col, in_channel) layout.
///
/// Throws ParseError for a malformed container and ValidationError (with
/// the offending layer index) for inconsistent shapes.
Classifier load_model(std::string_view bytes);
Classifier load_model_file(const std::filesystem::path& path);

/// Encodes a model; every real is written with 17 significant digits so
/// that load_model(save_model(m)) reproduces the parameters bit-for-bit.
std::string save_model(const Classifier& model);

}  // namespace rcurves
