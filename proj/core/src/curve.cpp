#include "rcurves/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "rcurves/error.hpp"

namespace rcurves {

std::string_view to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::Misclassified: return "misclassified";
    case RecordStatus::Found: return "found";
    case RecordStatus::Censored: return "censored";
  }
  return "?";
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::Exact: return "exact";
    case Estimator::Attack: return "attack";
    case Estimator::Empirical: return "empirical";
  }
  return "?";
}

std::string_view to_string(CrossingDirection d) {
  switch (d) {
    case CrossingDirection::FirstBecomesSmaller: return "first-becomes-smaller";
    case CrossingDirection::SecondBecomesSmaller: return "second-becomes-smaller";
    case CrossingDirection::Touch: return "touch";
  }
  return "?";
}

RobustnessCurve::RobustnessCurve(std::vector<double> breakpoints, std::vector<double> values, double horizon,
                                 CurveMetadata meta, double censored_mass)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      horizon_(horizon),
      censored_mass_(censored_mass),
      meta_(std::move(meta)) {
  if (breakpoints_.size() != values_.size()) throw InvalidInput("curve has mismatched breakpoints and values");
  if (!(horizon_ > 0.0)) throw InvalidInput("curve horizon must be positive");
  if (meta_.estimator == Estimator::Exact && !std::isinf(horizon_))
    throw InvalidInput("exact curves have an infinite horizon");
  if (!(censored_mass_ >= 0.0) || censored_mass_ > 1.0 + 1e-9) throw InvalidInput("censored mass outside [0, 1]");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double e = breakpoints_[i];
    const double v = values_[i];
    if (!std::isfinite(e) || e < 0.0) throw InvalidInput("breakpoint outside [0, inf)");
    if (e > horizon_) throw InvalidInput("breakpoint beyond the horizon");
    if (!(v >= 0.0) || v > 1.0) throw InvalidInput("curve value outside [0, 1]");
    if (i > 0) {
      if (!(e > breakpoints_[i - 1])) throw InvalidInput("breakpoints must be strictly increasing");
      if (v < values_[i - 1]) throw InvalidInput("curve values must be nondecreasing");
    }
  }
  if (!values_.empty() && values_.back() + censored_mass_ > 1.0 + 1e-9)
    throw InvalidInput("curve mass plus censored mass exceeds 1");
}

double RobustnessCurve::operator()(double eps) const noexcept {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), eps);
  if (it == breakpoints_.begin()) return 0.0;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

RobustnessCurve build_curve(std::span<const PerturbationRecord> records, std::span<const double> weights,
                            double horizon, CurveMetadata meta) {
  if (records.size() != weights.size())
    throw InvalidInput("build_curve: " + std::to_string(records.size()) + " records but " +
                       std::to_string(weights.size()) + " weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("build_curve: invalid weight");
    total += w;
  }
  if (!records.empty() && std::abs(total - 1.0) > 1e-9)
    throw InvalidInput("build_curve: weights sum to " + std::to_string(total));

  struct Mass {
    double at;
    double weight;
  };
  std::vector<Mass> masses;
  masses.reserve(records.size());
  double censored = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    switch (r.status) {
      case RecordStatus::Censored: censored += weights[i]; break;
      case RecordStatus::Misclassified: masses.push_back({0.0, weights[i]}); break;
      case RecordStatus::Found:
        if (!std::isfinite(r.distance) || r.distance < 0.0) throw InvalidInput("build_curve: invalid distance");
        if (r.distance > horizon) throw InvalidInput("build_curve: distance beyond the horizon");
        masses.push_back({r.distance, weights[i]});
        break;
    }
  }
  std::stable_sort(masses.begin(), masses.end(), [](const Mass& a, const Mass& b) { return a.at < b.at; });

  std::vector<double> bps;
  std::vector<double> vals;
  double cum = 0.0;
  for (const Mass& m : masses) {
    cum += m.weight;
    const double v = std::min(cum, 1.0);
    if (!bps.empty() && m.at - bps.back() <= kDistanceTolerance) {
      vals.back() = v;
    } else {
      bps.push_back(m.at);
      vals.push_back(v);
    }
  }
  return RobustnessCurve(std::move(bps), std::move(vals), horizon, std::move(meta), std::min(censored, 1.0));
}

Evaluation evaluate(const RobustnessCurve& curve, double eps) {
  if (!(eps >= 0.0)) throw InvalidInput("evaluate: epsilon must be >= 0");
  if (eps > curve.horizon()) return {curve(curve.horizon()), BoundQuality::LowerBoundBeyondHorizon};
  return {curve(eps), BoundQuality::Exact};
}

std::vector<RankEntry> rank_at(std::span<const LabeledCurve> curves, double eps) {
  std::vector<RankEntry> out;
  out.reserve(curves.size());
  for (const auto& c : curves) {
    if (eps > c.curve.horizon())
      throw HorizonError("epsilon " + std::to_string(eps) + " is beyond the horizon of curve '" + c.id + "'");
    out.push_back({c.id, evaluate(c.curve, eps).value});
  }
  std::stable_sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.id < b.id;
  });
  return out;
}

bool comparable(const RobustnessCurve& a, const RobustnessCurve& b) {
  return a.metadata().norm == b.metadata().norm;
}

std::vector<Crossing> intersections(const RobustnessCurve& a, const RobustnessCurve& b) {
  constexpr double kZero = 1e-12;
  const double limit = std::min(a.horizon(), b.horizon());
  std::vector<double> grid{0.0};
  for (double e : a.breakpoints())
    if (e <= limit) grid.push_back(e);
  for (double e : b.breakpoints())
    if (e <= limit) grid.push_back(e);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Crossing> out;
  int prev = 0;  // last non-zero sign of a - b
  double plateau = -1.0;  // start of the current zero stretch, -1 if none
  for (double e : grid) {
    const double diff = a(e) - b(e);
    const int s = diff > kZero ? 1 : (diff < -kZero ? -1 : 0);
    if (s == 0) {
      if (prev != 0 && plateau < 0.0) plateau = e;
      continue;
    }
    if (prev != 0) {
      if (s != prev) {
        out.push_back({plateau >= 0.0 ? plateau : e,
                       s < 0 ? CrossingDirection::FirstBecomesSmaller : CrossingDirection::SecondBecomesSmaller});
      } else if (plateau >= 0.0) {
        out.push_back({plateau, CrossingDirection::Touch});
      }
    }
    plateau = -1.0;
    prev = s;
  }
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

double parse_real(std::string_view text, std::size_t line) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ParseError("not a number: '" + s + "'", line);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Estimator parse_estimator(std::string_view s, std::size_t line) {
  if (s == "exact") return Estimator::Exact;
  if (s == "attack") return Estimator::Attack;
  if (s == "empirical") return Estimator::Empirical;
  throw ParseError("unknown estimator '" + std::string(s) + "'", line);
}

}  // namespace

std::string export_curve(const RobustnessCurve& curve) {
  std::ostringstream os;
  const auto& m = curve.metadata();
  os << "# norm: " << to_string(m.norm) << '\n';
  os << "# model: " << one_line(m.model) << '\n';
  os << "# dataset: " << one_line(m.dataset) << '\n';
  os << "# estimator: " << to_string(m.estimator) << '\n';
  os << "# horizon: " << fmt17(curve.horizon()) << '\n';
  os << "# censored_mass: " << fmt17(curve.censored_mass()) << '\n';
  os << "epsilon,robust_error\n";
  for (std::size_t i = 0; i < curve.breakpoints().size(); ++i)
    os << fmt17(curve.breakpoints()[i]) << ',' << fmt17(curve.values()[i]) << '\n';
  return os.str();
}

RobustnessCurve import_curve(std::string_view csv) {
  CurveMetadata meta;
  double horizon = std::numeric_limits<double>::infinity();
  double censored = 0.0;
  bool header = false;
  std::vector<double> bps, vals;
  std::size_t line_no = 0;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    std::string_view line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(line.substr(0, colon));
      const auto value = trim(line.substr(colon + 1));
      try {
        if (key == "norm") meta.norm = parse_norm(value);
      } catch (const InvalidInput&) {
        throw ParseError("unknown norm '" + std::string(value) + "'", line_no);
      }
      if (key == "model") meta.model = value;
      if (key == "dataset") meta.dataset = value;
      if (key == "estimator") meta.estimator = parse_estimator(value, line_no);
      if (key == "horizon") horizon = parse_real(value, line_no);
      if (key == "censored_mass") censored = parse_real(value, line_no);
      continue;
    }
    if (!header) {
      if (line != "epsilon,robust_error") throw ParseError("expected header 'epsilon,robust_error'", line_no);
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("expected two columns", line_no);
    bps.push_back(parse_real(trim(line.substr(0, comma)), line_no));
    vals.push_back(parse_real(trim(line.substr(comma + 1)), line_no));
  }
  if (!header) throw ParseError("missing header 'epsilon,robust_error'", line_no);
  try {
    return RobustnessCurve(std::move(bps), std::move(vals), horizon, std::move(meta), censored);
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("invalid curve: ") + e.what(), line_no);
  }
}

}  // namespace rcurves
