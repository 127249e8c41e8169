#include "rcurves/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "rcurves/error.hpp"
#include "rcurves/parallel.hpp"

namespace rcurves {

void AttackConfig::validate() const {
  if (!(eps_max > 0.0) || !std::isfinite(eps_max)) throw InvalidInput("eps_max must be positive");
  if (bisection_steps < 1 || pgd_steps < 1 || random_restarts < 1 || cw_binary_search_steps < 1 ||
      cw_opt_steps < 1)
    throw InvalidInput("attack step counts must be >= 1");
  if (!(pgd_rel_step > 0.0) || !(cw_learning_rate > 0.0) || !(cw_initial_const > 0.0))
    throw InvalidInput("attack step sizes must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t index, int restart) {
  return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ static_cast<std::uint64_t>(restart));
}

void check_point(const Classifier& model, std::span<const double> x, int y) {
  if (x.size() != model.input_dim())
    throw InvalidInput("input has dimension " + std::to_string(x.size()) + ", model expects " +
                       std::to_string(model.input_dim()));
  for (double v : x)
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("attack inputs must lie in [0,1]");
  if (y < 0 || y >= model.num_classes()) throw InvalidInput("label outside the model's classes");
}

/// Adversarial test for x + delta exactly as it will later be re-checked.
bool confirms(const Classifier& model, std::span<const double> x, std::span<const double> delta, int y,
              std::vector<double>& scratch) {
  scratch.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = std::clamp(x[i] + delta[i], 0.0, 1.0);
  return predict(model, scratch) != y;
}

PerturbationRecord misclassified(std::size_t index) {
  PerturbationRecord r;
  r.index = index;
  r.status = RecordStatus::Misclassified;
  r.distance = 0.0;
  return r;
}

PerturbationRecord censored(std::size_t index, double eps_max) {
  PerturbationRecord r;
  r.index = index;
  r.status = RecordStatus::Censored;
  r.distance = eps_max;
  return r;
}

/// Fixed-eps PGD; returns the perturbation of the first adversarial iterate.
std::optional<std::vector<double>> pgd_at(const Classifier& model, std::span<const double> x, int y, double eps,
                                          const AttackConfig& cfg, std::size_t index) {
  const std::size_t m = x.size();
  const double step = cfg.pgd_rel_step * eps;
  std::vector<double> adv(m), delta(m), scratch;
  auto adversarial = [&](int prediction) {
    if (prediction == y) return false;
    for (std::size_t i = 0; i < m; ++i) delta[i] = adv[i] - x[i];
    return confirms(model, x, delta, y, scratch);
  };
  for (int restart = 0; restart < cfg.random_restarts; ++restart) {
    std::mt19937_64 rng(stream_seed(cfg.seed, index, restart));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t i = 0; i < m; ++i) adv[i] = std::clamp(x[i] + eps * unit(rng), 0.0, 1.0);
    for (int it = 0; it < cfg.pgd_steps; ++it) {
      const LossEvaluation ev = evaluate_loss(model, adv, y, Loss::CrossEntropy);
      if (adversarial(ev.prediction)) return delta;
      for (std::size_t i = 0; i < m; ++i) {
        const double g = ev.gradient[i];
        const double s = g > 0.0 ? 1.0 : (g < 0.0 ? -1.0 : 0.0);
        const double lo = std::max(0.0, x[i] - eps);
        const double hi = std::min(1.0, x[i] + eps);
        adv[i] = std::clamp(adv[i] + step * s, lo, hi);
      }
    }
    if (adversarial(predict(model, adv))) return delta;
  }
  return std::nullopt;
}

}  // namespace

PerturbationRecord pgd_minimal_linf(const Classifier& model, std::span<const double> x, int y,
                                    const AttackConfig& cfg, std::size_t index) {
  cfg.validate();
  check_point(model, x, y);
  if (predict(model, x) != y) return misclassified(index);

  auto best = pgd_at(model, x, y, cfg.eps_max, cfg, index);
  if (!best) return censored(index, cfg.eps_max);
  double lo = 0.0;
  double hi = cfg.eps_max;
  for (int s = 0; s < cfg.bisection_steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (auto found = pgd_at(model, x, y, mid, cfg, index)) {
      hi = mid;
      best = std::move(found);
    } else {
      lo = mid;
    }
  }
  PerturbationRecord r;
  r.index = index;
  r.status = RecordStatus::Found;
  r.distance = norm(*best, NormKind::Linf);
  r.witness = std::move(best);
  return r;
}

PerturbationRecord cw_minimal_l2(const Classifier& model, std::span<const double> x, int y,
                                 const AttackConfig& cfg, std::size_t index) {
  cfg.validate();
  check_point(model, x, y);
  if (predict(model, x) != y) return misclassified(index);

  constexpr double kBoxShrink = 1.0 - 1e-6;
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kAdamEps = 1e-8;
  const std::size_t m = x.size();

  std::vector<double> w0(m);
  for (std::size_t i = 0; i < m; ++i) w0[i] = std::atanh((2.0 * x[i] - 1.0) * kBoxShrink);

  std::vector<double> w(m), mom(m), vel(m), adv(m), delta(m), grad(m), scratch;
  std::optional<std::vector<double>> best;
  double best_dist = std::numeric_limits<double>::infinity();

  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double c = cfg.cw_initial_const;
  const int check_every = std::max(1, cfg.cw_opt_steps / 10);

  for (int round = 0; round < cfg.cw_binary_search_steps; ++round) {
    w = w0;
    std::fill(mom.begin(), mom.end(), 0.0);
    std::fill(vel.begin(), vel.end(), 0.0);
    bool success = false;
    double prev_loss = std::numeric_limits<double>::infinity();
    double b1t = 1.0, b2t = 1.0;

    for (int step = 0; step < cfg.cw_opt_steps; ++step) {
      double dist2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        adv[i] = 0.5 * (std::tanh(w[i]) + 1.0);
        delta[i] = adv[i] - x[i];
        dist2 += delta[i] * delta[i];
      }
      const LossEvaluation ev = evaluate_loss(model, adv, y, Loss::CwMargin);
      if (ev.prediction != y && confirms(model, x, delta, y, scratch)) {
        success = true;
        const double d = norm(delta, NormKind::L2);
        if (d < best_dist) {
          best_dist = d;
          best = delta;
        }
      }
      const double loss = dist2 + c * ev.loss;
      if (step % check_every == 0) {
        if (loss > prev_loss * 0.9999) break;
        prev_loss = loss;
      }
      b1t *= kBeta1;
      b2t *= kBeta2;
      const double lr = cfg.cw_learning_rate * std::sqrt(1.0 - b2t) / (1.0 - b1t);
      for (std::size_t i = 0; i < m; ++i) {
        const double t = std::tanh(w[i]);
        grad[i] = (2.0 * delta[i] + c * ev.gradient[i]) * 0.5 * (1.0 - t * t);
        mom[i] = kBeta1 * mom[i] + (1.0 - kBeta1) * grad[i];
        vel[i] = kBeta2 * vel[i] + (1.0 - kBeta2) * grad[i] * grad[i];
        w[i] -= lr * mom[i] / (std::sqrt(vel[i]) + kAdamEps);
      }
    }

    if (success) {
      upper = std::min(upper, c);
      c = 0.5 * (lower + upper);
    } else {
      lower = std::max(lower, c);
      c = std::isinf(upper) ? c * 10.0 : 0.5 * (lower + upper);
    }
  }

  // Anything beyond the ceiling cannot be placed on a curve with that horizon.
  if (!best || best_dist > cfg.eps_max) return censored(index, cfg.eps_max);
  PerturbationRecord r;
  r.index = index;
  r.status = RecordStatus::Found;
  r.distance = best_dist;
  r.witness = std::move(best);
  return r;
}

double brute_force_minimal(const Classifier& model, std::span<const double> x, int y, NormKind p,
                           double resolution) {
  const std::size_t m = x.size();
  if (m > 3) throw Unsupported("brute-force search supports at most 3 dimensions, got " + std::to_string(m));
  if (m != model.input_dim()) throw InvalidInput("input dimension does not match the model");
  if (!(resolution > 0.0) || resolution > 1.0) throw InvalidInput("resolution must lie in (0, 1]");
  if (predict(model, x) != y) return 0.0;

  const auto* lin = model.get_if<BinaryLinear>();
  std::vector<double> cand(m), delta(m);
  auto adversarial = [&]() {
    if (lin) return (lin->decision(cand) >= 0.0 ? 1 : 0) != y;
    return predict(model, cand) != y;
  };

  const long K = std::lround(1.0 / resolution);
  double best = std::numeric_limits<double>::infinity();
  std::vector<long> k(m);

  // Enumerate the grid shell by shell in l-inf radius s; every point of shell
  // s has norm >= s * resolution, so the search stops once that exceeds best.
  for (long s = 1; s <= K; ++s) {
    if (static_cast<double>(s) * resolution > best) break;
    // The first coordinate attaining |k| = s is `face`; earlier ones are < s.
    for (std::size_t face = 0; face < m; ++face) {
      for (int sign : {-1, 1}) {
        // Odometer over the remaining coordinates.
        std::vector<long> lo(m), hi(m);
        for (std::size_t i = 0; i < m; ++i) {
          if (i < face) {
            lo[i] = -(s - 1);
            hi[i] = s - 1;
          } else if (i == face) {
            lo[i] = hi[i] = sign * s;
          } else {
            lo[i] = -s;
            hi[i] = s;
          }
        }
        k = lo;
        for (;;) {
          bool inside = true;
          for (std::size_t i = 0; i < m; ++i) {
            delta[i] = static_cast<double>(k[i]) * resolution;
            cand[i] = x[i] + delta[i];
            if (cand[i] < 0.0 || cand[i] > 1.0) inside = false;
          }
          if (inside) {
            const double d = norm(delta, p);
            if (d < best && adversarial()) best = d;
          }
          std::size_t i = 0;
          for (; i < m; ++i) {
            if (k[i] < hi[i]) {
              ++k[i];
              break;
            }
            k[i] = lo[i];
          }
          if (i == m) break;
        }
      }
    }
  }
  return best;
}

std::vector<PerturbationRecord> estimate_distances(const Classifier& model, const Dataset& data, NormKind p,
                                                   const AttackConfig& cfg, unsigned threads) {
  if (p == NormKind::L1) throw Unsupported("no l1 attack is provided; use l2 or linf");
  AttackConfig run = cfg;
  run.norm = p;
  run.validate();
  std::vector<PerturbationRecord> records(data.size());
  parallel_for(data.size(), threads, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& pt = data[i];
      records[i] = p == NormKind::Linf ? pgd_minimal_linf(model, pt.x, pt.y, run, i)
                                       : cw_minimal_l2(model, pt.x, pt.y, run, i);
    }
  });
  return records;
}

RobustnessCurve attack_curve(std::span<const PerturbationRecord> records, const Dataset& data, NormKind p,
                             const AttackConfig& cfg, std::string model_name) {
  CurveMetadata meta{p, std::move(model_name), data.name(), Estimator::Attack};
  const auto weights = data.weights();
  return build_curve(records, weights, cfg.eps_max, std::move(meta));
}

}  // namespace rcurves
