#include "rcurves/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rcurves/error.hpp"

namespace rcurves {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_array(std::ostringstream& os, std::span<const double> v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << fmt17(v[i]);
  }
  os << ']';
}

void write_shape(std::ostringstream& os, const std::vector<std::size_t>& dims) {
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
}

const json& field(const json& obj, const char* key, std::size_t layer, bool in_layer) {
  if (!obj.is_object() || !obj.contains(key)) {
    const std::string msg = std::string("missing field '") + key + "'";
    if (in_layer) throw ValidationError(msg, layer);
    throw ParseError(msg, 0);
  }
  return obj.at(key);
}

std::vector<double> read_reals(const json& arr, std::size_t layer, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an array", layer);
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_number()) throw ValidationError(std::string(what) + " contains a non-number", layer);
    out.push_back(e.get<double>());
  }
  return out;
}

std::size_t read_count(const json& obj, const char* key, std::size_t layer) {
  const json& v = field(obj, key, layer, true);
  if (!v.is_number_unsigned()) throw ValidationError(std::string(key) + " must be a non-negative integer", layer);
  return v.get<std::size_t>();
}

Dense read_dense(const json& l, std::size_t k) {
  Dense d;
  d.out = read_count(l, "out", k);
  d.in = read_count(l, "in", k);
  d.weights = read_reals(field(l, "weights", k, true), k, "weights");
  d.bias = read_reals(field(l, "bias", k, true), k, "bias");
  return d;
}

Conv2D read_conv(const json& l, std::size_t k) {
  Conv2D c;
  c.filters = read_count(l, "filters", k);
  const json& kernel = field(l, "kernel", k, true);
  if (!kernel.is_array() || kernel.size() != 2 || !kernel[0].is_number_unsigned() || !kernel[1].is_number_unsigned())
    throw ValidationError("kernel must be [rows, cols]", k);
  c.kernel_h = kernel[0].get<std::size_t>();
  c.kernel_w = kernel[1].get<std::size_t>();
  c.in_channels = read_count(l, "in_channels", k);
  c.stride = read_count(l, "stride", k);
  const json& pad = field(l, "padding", k, true);
  if (pad == "valid")
    c.padding = Padding::Valid;
  else if (pad == "same")
    c.padding = Padding::Same;
  else
    throw ValidationError("padding must be \"valid\" or \"same\"", k);
  c.weights = read_reals(field(l, "weights", k, true), k, "weights");
  c.bias = read_reals(field(l, "bias", k, true), k, "bias");
  return c;
}

}  // namespace

Classifier load_model(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model file: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("model file must be a JSON object", 0);
  const json& version = field(doc, "format_version", 0, false);
  if (version != 1) throw ParseError("unsupported format_version " + version.dump(), 0);
  const json& kind = field(doc, "kind", 0, false);
  const json& shape_j = field(doc, "input_shape", 0, false);
  const json& layers_j = field(doc, "layers", 0, false);
  if (!shape_j.is_array() || !layers_j.is_array()) throw ParseError("input_shape and layers must be arrays", 0);
  TensorShape shape;
  for (const auto& d : shape_j) {
    if (!d.is_number_unsigned()) throw ParseError("input_shape entries must be non-negative integers", 0);
    shape.dims.push_back(d.get<std::size_t>());
  }

  if (kind == "binary_linear") {
    if (layers_j.size() != 1) throw ValidationError("binary_linear needs exactly one dense layer", 0);
    const json& l = layers_j[0];
    if (field(l, "type", 0, true) != "dense") throw ValidationError("binary_linear layer must be dense", 0);
    Dense d = read_dense(l, 0);
    if (d.out != 1) throw ValidationError("binary_linear layer must have out = 1", 0);
    if (shape.dims.size() != 1 || shape.dims[0] != d.in)
      throw ValidationError("input_shape does not match the layer's input size", 0);
    if (d.weights.size() != d.in || d.bias.size() != 1) throw ValidationError("parameter count mismatch", 0);
    try {
      return BinaryLinear(std::move(d.weights), d.bias[0]);
    } catch (const ValidationError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ValidationError(e.what(), 0);
    }
  }
  if (kind == "threshold_1d") {
    if (layers_j.size() != 1) throw ValidationError("threshold_1d needs exactly one threshold layer", 0);
    const json& l = layers_j[0];
    if (field(l, "type", 0, true) != "threshold") throw ValidationError("threshold_1d layer must be 'threshold'", 0);
    if (shape.dims != std::vector<std::size_t>{1}) throw ValidationError("threshold_1d input_shape must be [1]", 0);
    const json& t = field(l, "threshold", 0, true);
    if (!t.is_number()) throw ValidationError("threshold must be a number", 0);
    return Threshold1D(t.get<double>());
  }
  if (kind == "multiclass_net") {
    std::vector<Layer> layers;
    for (std::size_t k = 0; k < layers_j.size(); ++k) {
      const json& l = layers_j[k];
      const json& type = field(l, "type", k, true);
      if (type == "dense")
        layers.emplace_back(read_dense(l, k));
      else if (type == "conv2d")
        layers.emplace_back(read_conv(l, k));
      else if (type == "relu")
        layers.emplace_back(ReLU{});
      else
        throw ValidationError("unknown layer type " + type.dump(), k);
    }
    return MultiClassNet(std::move(shape), std::move(layers));
  }
  throw ParseError("unknown model kind " + kind.dump(), 0);
}

Classifier load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

std::string save_model(const Classifier& model) {
  std::ostringstream os;
  os << "{\n  \"format_version\": 1,\n";
  if (const auto* lin = model.get_if<BinaryLinear>()) {
    os << "  \"kind\": \"binary_linear\",\n  \"input_shape\": [" << lin->input_dim() << "],\n";
    os << "  \"layers\": [\n    {\"type\": \"dense\", \"out\": 1, \"in\": " << lin->input_dim() << ", \"weights\": ";
    write_array(os, lin->weights());
    os << ", \"bias\": [" << fmt17(lin->bias()) << "]}\n  ]\n}\n";
    return os.str();
  }
  if (const auto* th = model.get_if<Threshold1D>()) {
    os << "  \"kind\": \"threshold_1d\",\n  \"input_shape\": [1],\n";
    os << "  \"layers\": [\n    {\"type\": \"threshold\", \"threshold\": " << fmt17(th->threshold()) << "}\n  ]\n}\n";
    return os.str();
  }
  const auto& net = *model.get_if<MultiClassNet>();
  os << "  \"kind\": \"multiclass_net\",\n  \"input_shape\": ";
  write_shape(os, net.input_shape().dims);
  os << ",\n  \"layers\": [\n";
  const auto& layers = net.layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    os << "    ";
    if (const auto* d = std::get_if<Dense>(&layers[k])) {
      os << "{\"type\": \"dense\", \"out\": " << d->out << ", \"in\": " << d->in << ", \"weights\": ";
      write_array(os, d->weights);
      os << ", \"bias\": ";
      write_array(os, d->bias);
      os << '}';
    } else if (const auto* c = std::get_if<Conv2D>(&layers[k])) {
      os << "{\"type\": \"conv2d\", \"filters\": " << c->filters << ", \"kernel\": [" << c->kernel_h << ','
         << c->kernel_w << "], \"in_channels\": " << c->in_channels << ", \"stride\": " << c->stride
         << ", \"padding\": \"" << (c->padding == Padding::Same ? "same" : "valid") << "\", \"weights\": ";
      write_array(os, c->weights);
      os << ", \"bias\": ";
      write_array(os, c->bias);
      os << '}';
    } else {
      os << "{\"type\": \"relu\"}";
    }
    os << (k + 1 < layers.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace rcurves
