#include "jumpdens/estim.hpp"

#include "jumpdens/errors.hpp"
#include "jumpdens/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace jumpdens {

namespace {

void
require_cutoff(double c)
{
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("cutoff must be positive and finite");
  }
}

void
require_alpha(double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("significance level must lie in (0, 1)");
  }
}

void
require_both_sides(const SideView& view)
{
  if (view.left.empty() || view.right.empty()) {
    throw DegenerateError(Degeneracy::one_sided,
                          "one-sided sample: need observations both below and at/above the cutoff");
  }
}

// sqrt(pi) * sqrt(c), the denominator shared by both variance estimates.
double
variance_scale(double c)
{
  return std::sqrt(std::numbers::pi * c);
}

} // namespace

std::string_view
to_string(VarianceVariant variant)
{
  return variant == VarianceVariant::v1 ? "v1" : "v2";
}

VarianceVariant
parse_variance_variant(std::string_view text)
{
  if (text == "v1" || text == "V1" || text == "1") {
    return VarianceVariant::v1;
  }
  if (text == "v2" || text == "V2" || text == "2") {
    return VarianceVariant::v2;
  }
  throw ConfigError("unknown variance variant '" + std::string(text) + "' (expected v1 or v2)");
}

std::string_view
to_string(CurveSide side)
{
  switch (side) {
    case CurveSide::left:
      return "left";
    case CurveSide::right:
      return "right";
    case CurveSide::none:
      break;
  }
  return "none";
}

double
fhat_minus(const Sample& sample, double c, double b, double x)
{
  const TruncatedGammaKernel kernel(KernelParams{ x, b, c });
  const SideView view = sample.split(c);
  if (kernel.weights().lower == 0.0) {
    kernel.minus(0.0); // throws the degenerate-truncation error
  }
  double sum = 0.0;
  for (double u : view.left) {
    sum += kernel.minus(u);
  }
  return sum / static_cast<double>(sample.size());
}

double
fhat_plus(const Sample& sample, double c, double b, double x)
{
  const TruncatedGammaKernel kernel(KernelParams{ x, b, c });
  const SideView view = sample.split(c);
  if (kernel.weights().upper == 0.0) {
    kernel.plus(c);
  }
  double sum = 0.0;
  for (double u : view.right) {
    sum += kernel.plus(u);
  }
  return sum / static_cast<double>(sample.size());
}

double
fhat_gamma(const Sample& sample, double b, double x)
{
  const GammaKernel kernel(x, b);
  double sum = 0.0;
  for (double u : sample.values()) {
    sum += kernel(u);
  }
  return sum / static_cast<double>(sample.size());
}

void
validate_delta(double delta)
{
  if (!(delta > 0.0 && delta <= kMaxDelta)) {
    throw DomainError("mixing exponent delta must lie in (0, 0.99], got " + std::to_string(delta));
  }
}

MbcExponents
mbc_exponents(double delta)
{
  validate_delta(delta);
  const double root = std::sqrt(delta);
  return { 1.0 / (1.0 - root), -root / (1.0 - root) };
}

MbcEstimate
mbc_combine(double pilot_narrow, double pilot_wide, double delta)
{
  const MbcExponents e = mbc_exponents(delta);
  MbcEstimate out;
  out.pilot_narrow = pilot_narrow;
  out.pilot_wide = pilot_wide;
  if (pilot_narrow == 0.0 && pilot_wide == 0.0) {
    out.degenerate = true;
    return out;
  }
  if (pilot_wide == 0.0) {
    throw DegenerateError(Degeneracy::pilot,
                          "degenerate pilot: estimate at b/delta vanished while the one at b did not");
  }
  if (pilot_narrow == 0.0) {
    return out;
  }
  out.value = std::exp(e.narrow * std::log(pilot_narrow) + e.wide * std::log(pilot_wide));
  return out;
}

MbcEstimate
mbc_estimate(const Sample& sample, double c, double b, double delta, Side side)
{
  validate_delta(delta);
  const double wide_b = b / delta;
  if (side == Side::left) {
    return mbc_combine(fhat_minus(sample, c, b, c), fhat_minus(sample, c, wide_b, c), delta);
  }
  return mbc_combine(fhat_plus(sample, c, b, c), fhat_plus(sample, c, wide_b, c), delta);
}

JumpEstimate
jump_estimate(const Sample& sample, double c, double b, double delta)
{
  require_cutoff(c);
  require_both_sides(sample.split(c));
  const double f_minus = mbc_estimate(sample, c, b, delta, Side::left).value;
  const double f_plus = mbc_estimate(sample, c, b, delta, Side::right).value;
  return { f_minus, f_plus, f_plus - f_minus };
}

JumpEstimate
jump_estimate_raw(const Sample& sample, double c, double b)
{
  require_cutoff(c);
  const double f_minus = fhat_minus(sample, c, b, c);
  const double f_plus = fhat_plus(sample, c, b, c);
  return { f_minus, f_plus, f_plus - f_minus };
}

double
lambda(double delta)
{
  validate_delta(delta);
  const double root = std::sqrt(delta);
  const double spread = std::sqrt(1.0 + delta);
  const double numerator = (1.0 + delta * root) * spread - 2.0 * std::numbers::sqrt2 * delta;
  const double gap = 1.0 - root;
  return numerator / (spread * gap * gap);
}

double
variance_estimate(const Sample& sample, double c, double b, double delta, VarianceVariant variant)
{
  return jump_test(sample, c, b, delta, variant, 0.05).variance;
}

JumpTester::Pilots
JumpTester::Smoother::apply(const SideView& view) const
{
  double left = 0.0;
  for (double u : view.left) {
    left += kernel(u);
  }
  double right = 0.0;
  for (double u : view.right) {
    right += kernel(u);
  }
  const double n = static_cast<double>(view.size());
  // f^-(c) = sum K_G / (n P), f^+(c) = sum K_G / (n Q), f^(c) = sum K_G / n.
  return { left / (n * weights.lower), right / (n * weights.upper), (left + right) / n };
}

JumpTester::JumpTester(double c, double b, double delta)
  : c_(c)
  , b_(b)
  , delta_(delta)
  , narrow_{ GammaKernel(c, b), truncation_weights(c, b, c) }
  , wide_{ GammaKernel(c, b / delta), truncation_weights(c, b / delta, c) }
{
  require_cutoff(c);
  validate_delta(delta);
  for (const Smoother* s : { &narrow_, &wide_ }) {
    if (s->weights.lower == 0.0 || s->weights.upper == 0.0) {
      throw DegenerateError(Degeneracy::truncation,
                            "degenerate truncation at the cutoff for b = " + std::to_string(b));
    }
  }
}

JumpTestResult
JumpTester::operator()(const SideView& view, VarianceVariant variant, double alpha) const
{
  require_alpha(alpha);
  require_both_sides(view);
  const Pilots narrow = narrow_.apply(view);
  const Pilots wide = wide_.apply(view);
  const MbcEstimate left = mbc_combine(narrow.f_minus, wide.f_minus, delta_);
  const MbcEstimate right = mbc_combine(narrow.f_plus, wide.f_plus, delta_);

  JumpTestResult r;
  r.f_minus = left.value;
  r.f_plus = right.value;
  r.jump = right.value - left.value;
  r.f_gamma = narrow.f_gamma;
  r.mbc_degenerate = left.degenerate || right.degenerate;
  r.alpha = alpha;
  r.b = b_;
  r.delta = delta_;
  r.variant = variant;
  r.n = view.size();
  r.n_minus = view.left.size();
  r.n_plus = view.right.size();

  const double level = variant == VarianceVariant::v1 ? r.f_plus + r.f_minus : 2.0 * r.f_gamma;
  r.variance = lambda(delta_) * level / variance_scale(c_);
  if (!(r.variance > 0.0) || !std::isfinite(r.variance)) {
    throw DegenerateError(Degeneracy::variance,
                          "degenerate variance: all density estimates at the cutoff vanish");
  }
  const double n = static_cast<double>(r.n);
  r.t_stat = std::sqrt(n * std::sqrt(b_)) * r.jump / std::sqrt(r.variance);
  r.p_value = std::erfc(std::fabs(r.t_stat) / std::numbers::sqrt2);
  r.reject = r.p_value < alpha;
  return r;
}

JumpTestResult
jump_test(const Sample& sample,
          double c,
          double b,
          double delta,
          VarianceVariant variant,
          double alpha)
{
  require_cutoff(c);
  return JumpTester(c, b, delta)(sample.split(c), variant, alpha);
}

DensityCurve
density_curve(const Sample& sample, double b, std::span<const double> grid, std::optional<double> c)
{
  DensityCurve curve;
  curve.points.reserve(grid.size() + 1);
  if (c) {
    require_cutoff(*c);
  }
  for (double x : grid) {
    if (!(x >= 0.0)) {
      throw DomainError("density grid points must be nonnegative");
    }
    if (!c) {
      curve.points.push_back({ x, fhat_gamma(sample, b, x), CurveSide::none });
    } else if (x < *c) {
      curve.points.push_back({ x, fhat_minus(sample, *c, b, x), CurveSide::left });
    } else if (x > *c) {
      curve.points.push_back({ x, fhat_plus(sample, *c, b, x), CurveSide::right });
    } else {
      curve.points.push_back({ x, fhat_minus(sample, *c, b, x), CurveSide::left });
      curve.points.push_back({ x, fhat_plus(sample, *c, b, x), CurveSide::right });
    }
  }
  return curve;
}

} // namespace jumpdens
