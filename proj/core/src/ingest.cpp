#include "rcurves/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "rcurves/error.hpp"

namespace rcurves {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t off, const char* what) {
  if (b.size() < off + 4) throw ParseError(std::string(what) + ": truncated header", off);
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) | (std::uint32_t{b[off + 2]} << 8) |
         std::uint32_t{b[off + 3]};
}

std::span<const std::uint8_t> as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

Dataset load_idx(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels, std::string name) {
  if (be32(images, 0, "images") != 2051) throw ParseError("images: bad magic (expected 2051)", 0);
  if (be32(labels, 0, "labels") != 2049) throw ParseError("labels: bad magic (expected 2049)", 0);
  const std::uint64_t count = be32(images, 4, "images");
  const std::uint64_t rows = be32(images, 8, "images");
  const std::uint64_t cols = be32(images, 12, "images");
  const std::uint64_t lcount = be32(labels, 4, "labels");
  if (count != lcount)
    throw InvalidInput("image count " + std::to_string(count) + " does not match label count " + std::to_string(lcount));
  const std::uint64_t dim = rows * cols;
  if (dim == 0) throw ParseError("images: zero-sized image", 8);
  if (images.size() < 16 + count * dim)
    throw ParseError("images: truncated pixel data", images.size());
  if (labels.size() < 8 + count) throw ParseError("labels: truncated label data", labels.size());

  std::vector<LabeledPoint> pts(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto& p = pts[i];
    p.x.resize(dim);
    const std::uint8_t* px = images.data() + 16 + i * dim;
    for (std::uint64_t j = 0; j < dim; ++j) p.x[j] = px[j] / 255.0;
    p.y = labels[8 + i];
  }
  return Dataset::uniform(std::move(pts), std::move(name));
}

Dataset load_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const std::string im = read_file(images);
  const std::string lb = read_file(labels);
  return load_idx(as_bytes(im), as_bytes(lb), images.filename().string());
}

namespace {

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    auto field = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t row) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ParseError("row " + std::to_string(row) + ": bad number '" + std::string(s) + "'", row);
  return v;
}

int parse_label(std::string_view s, std::size_t row) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || v < 0)
    throw ParseError("row " + std::to_string(row) + ": bad label '" + std::string(s) + "'", row);
  return v;
}

}  // namespace

Dataset load_csv(std::string_view text, const CsvOptions& opts) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find('\n', start);
      auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty csv", 1);

  const auto header = split_row(lines[0]);
  if (header.size() < 2) throw ParseError("row 1: header needs a label and at least one feature", 1);
  const bool has_weight = header.back() == "weight";
  const std::size_t n_features = header.size() - 1 - (has_weight ? 1 : 0);
  if (n_features == 0) throw ParseError("row 1: no feature columns", 1);

  std::vector<LabeledPoint> pts;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    if (lines[li].empty()) throw ParseError("row " + std::to_string(row) + ": empty row", row);
    const auto fields = split_row(lines[li]);
    if (fields.size() != header.size())
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       row);
    LabeledPoint p;
    p.y = parse_label(fields[0], row);
    p.x.resize(n_features);
    for (std::size_t j = 0; j < n_features; ++j) p.x[j] = parse_double(fields[1 + j], row);
    p.weight = has_weight ? parse_double(fields.back(), row) : 1.0;
    if (has_weight && !(p.weight > 0.0))
      throw ParseError("row " + std::to_string(row) + ": weight must be positive", row);
    if (!opts.normalize && opts.require_unit_range)
      for (std::size_t j = 0; j < n_features; ++j)
        if (p.x[j] < 0.0 || p.x[j] > 1.0)
          throw InvalidInput("row " + std::to_string(row) + ": feature " + std::to_string(j + 1) + " = " +
                             std::string(fields[1 + j]) + " outside [0,1] (use normalization)");
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw ParseError("csv has a header but no rows", 1);

  if (opts.normalize) {
    for (std::size_t j = 0; j < n_features; ++j) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& p : pts) {
        lo = std::min(lo, p.x[j]);
        hi = std::max(hi, p.x[j]);
      }
      const double span = hi - lo;
      for (auto& p : pts) p.x[j] = span > 0.0 ? std::clamp((p.x[j] - lo) / span, 0.0, 1.0) : 0.0;
    }
  }
  return Dataset::normalized(std::move(pts), opts.name);
}

Dataset load_csv_file(const std::filesystem::path& path, CsvOptions opts) {
  if (opts.name == "csv") opts.name = path.filename().string();
  return load_csv(read_file(path), opts);
}

std::string write_dataset_csv(const Dataset& data) {
  bool uniform = true;
  const double w0 = data.empty() ? 0.0 : data[0].weight;
  for (const auto& p : data.points())
    if (p.weight != w0) uniform = false;

  std::string out = "label";
  for (std::size_t j = 0; j < data.dim(); ++j) out += ",x" + std::to_string(j + 1);
  if (!uniform) out += ",weight";
  out += '\n';
  char buf[32];
  for (const auto& p : data.points()) {
    out += std::to_string(p.y);
    for (double v : p.x) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    if (!uniform) {
      std::snprintf(buf, sizeof buf, ",%.17g", p.weight);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace rcurves
