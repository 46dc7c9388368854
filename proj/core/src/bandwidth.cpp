#include "jumpdens/bandwidth.hpp"

#include "jumpdens/errors.hpp"
#include "jumpdens/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jumpdens {

void
BandwidthConfig::validate() const
{
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("bandwidth: sub-sample exponent p must lie in (0, 1)");
  }
  if (!(q > 0.4 && q < 1.0)) {
    throw ConfigError("bandwidth: rate exponent q must lie in (2/5, 1)");
  }
  if (!(h_lo > 0.0 && h_lo < h_hi && h_hi < 1.0)) {
    throw ConfigError("bandwidth: grid bounds must satisfy 0 < h_lo < h_hi < 1");
  }
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw ConfigError("bandwidth: grid step must be positive");
  }
  if (!std::isfinite(alpha_crit)) {
    throw ConfigError("bandwidth: critical value must be finite");
  }
  try {
    validate_delta(delta);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double>
BandwidthConfig::grid() const
{
  validate();
  const auto count = static_cast<std::size_t>(std::floor((h_hi - h_lo) / grid_step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = h_lo + static_cast<double>(i) * grid_step;
  }
  return out;
}

std::size_t
subsample_count(std::size_t n_minus, std::size_t n_plus, double p)
{
  const double smaller = static_cast<double>(std::min(n_minus, n_plus));
  const auto M = static_cast<std::size_t>(std::floor(std::pow(smaller, p) + 1e-9));
  return std::max<std::size_t>(M, 1);
}

SubSampleSplit
split_subsamples(const Sample& sample, double c, std::size_t M)
{
  const SideView view = sample.split(c);
  if (view.left.empty() || view.right.empty()) {
    throw DegenerateError(Degeneracy::one_sided,
                          "one-sided sample: cannot split into sub-samples around the cutoff");
  }
  if (M < 1 || M > std::min(view.left.size(), view.right.size())) {
    throw ConfigError("sub-sample count M = " + std::to_string(M) + " must lie in [1, min(n-, n+)]");
  }
  SubSampleSplit split;
  split.M = M;
  split.k_minus = view.left.size() / M;
  split.k_plus = view.right.size() / M;
  if (split.k_minus == 0 || split.k_plus == 0) {
    throw DegenerateError(Degeneracy::subsample, "degenerate sub-sample: a side is empty after flooring");
  }
  split.parts.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    SubSample& part = split.parts[m];
    part.left.reserve(split.k_minus);
    part.right.reserve(split.k_plus);
    for (std::size_t i = 0; i < split.k_minus; ++i) {
      part.left.push_back(view.left[m + i * M]);
    }
    for (std::size_t i = 0; i < split.k_plus; ++i) {
      part.right.push_back(view.right[m + i * M]);
    }
  }
  return split;
}

std::vector<PowerPoint>
power_curve(const SubSampleSplit& split, double c, const BandwidthConfig& cfg)
{
  const std::vector<double> grid = cfg.grid();
  std::vector<PowerPoint> curve(grid.size());
  parallel_for(grid.size(), cfg.threads, [&](std::size_t g) {
    PowerPoint& point = curve[g];
    point.b_k = grid[g];
    std::size_t rejections = 0;
    try {
      const JumpTester tester(c, grid[g], cfg.delta);
      for (const SubSample& part : split.parts) {
        try {
          const double t = tester(part.view(), cfg.variant, 0.05).t_stat;
          if ((cfg.two_sided ? std::fabs(t) : t) > cfg.alpha_crit) {
            ++rejections;
          }
        } catch (const DegenerateError&) {
          ++point.degenerate;
        }
      }
    } catch (const DegenerateError&) {
      point.degenerate = split.parts.size();
    }
    point.power = static_cast<double>(rejections) / static_cast<double>(split.parts.size());
  });
  return curve;
}

std::vector<PowerPoint>
power_curve(const Sample& sample, double c, const BandwidthConfig& cfg)
{
  cfg.validate();
  const SideCounts counts = sample.side_counts(c);
  const std::size_t M = subsample_count(counts.n_minus, counts.n_plus, cfg.p);
  return power_curve(split_subsamples(sample, c, M), c, cfg);
}

BandwidthSelection
select_from_curve(std::vector<PowerPoint> curve, std::size_t k, std::size_t n, double q)
{
  if (curve.empty()) {
    throw ConfigError("bandwidth: empty power curve");
  }
  double best_power = curve.front().power;
  double lowest_power = curve.front().power;
  for (const PowerPoint& pt : curve) {
    best_power = std::max(best_power, pt.power);
    lowest_power = std::min(lowest_power, pt.power);
  }
  double b_k = std::numeric_limits<double>::infinity();
  for (const PowerPoint& pt : curve) {
    if (pt.power == best_power) {
      b_k = std::min(b_k, pt.b_k);
    }
  }

  BandwidthSelection sel;
  sel.b_hat_k = b_k;
  sel.B_hat = b_k * std::pow(static_cast<double>(k), q);
  sel.b_hat_n = sel.B_hat * std::pow(static_cast<double>(n), -q);
  sel.n = n;
  sel.flat = best_power == lowest_power;
  sel.power_curve = std::move(curve);
  return sel;
}

BandwidthSelection
select_bandwidth(const Sample& sample, double c, const BandwidthConfig& cfg)
{
  cfg.validate();
  const SideCounts counts = sample.side_counts(c);
  if (counts.n_minus == 0 || counts.n_plus == 0) {
    throw DegenerateError(Degeneracy::one_sided,
                          "one-sided sample: bandwidth selection needs data on both sides of the cutoff");
  }
  const std::size_t M = subsample_count(counts.n_minus, counts.n_plus, cfg.p);
  const SubSampleSplit split = split_subsamples(sample, c, M);
  BandwidthSelection sel = select_from_curve(power_curve(split, c, cfg), split.k(), sample.size(), cfg.q);
  sel.M = split.M;
  sel.k_minus = split.k_minus;
  sel.k_plus = split.k_plus;
  return sel;
}

} // namespace jumpdens
