#include "jumpdens/kernels.hpp"

#include "jumpdens/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace jumpdens {

namespace {

// Must agree with the branch point of specfun::log_gamma_density_prefix.
constexpr double kAsymptoticShape = 10.0;

void
require_point(double u)
{
  if (!(u >= 0.0)) {
    throw DomainError("kernel evaluated at negative or NaN point " + std::to_string(u));
  }
}

} // namespace

void
validate(const KernelParams& params, bool needs_cutoff)
{
  if (!(params.b > 0.0) || !std::isfinite(params.b)) {
    throw DomainError("smoothing parameter b must be positive and finite");
  }
  if (!(params.x >= 0.0) || !std::isfinite(params.x)) {
    throw DomainError("design point x must be nonnegative and finite");
  }
  if (needs_cutoff && (!(params.c > 0.0) || !std::isfinite(params.c))) {
    throw DomainError("cutoff c must be positive and finite");
  }
}

GammaKernel::GammaKernel(double x, double b)
  : x_(x)
  , b_(b)
  , a_(0.0)
  , inv_b_(0.0)
  , offset_(0.0)
  , asymptotic_(false)
{
  validate(KernelParams{ x, b, 0.0 }, false);
  a_ = x / b;
  inv_b_ = 1.0 / b;
  asymptotic_ = a_ >= kAsymptoticShape;
  // At z = a the log1pmx term vanishes, so the prefix there is the constant.
  const double log_norm = asymptotic_ ? specfun::log_gamma_density_prefix(a_, a_)
                                      : -specfun::log_gamma(a_ + 1.0);
  offset_ = log_norm - std::log(b);
}

double
GammaKernel::log_value(double u) const
{
  require_point(u);
  const double z = u * inv_b_;
  if (a_ == 0.0) {
    return -z + offset_;
  }
  if (z == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (asymptotic_) {
    return a_ * specfun::log1pmx((z - a_) / a_) + offset_;
  }
  return a_ * std::log(z) - z + offset_;
}

double
GammaKernel::operator()(double u) const
{
  return std::exp(log_value(u));
}

TruncationWeights
truncation_weights(double x, double b, double c)
{
  validate(KernelParams{ x, b, c }, true);
  const specfun::IncompleteGamma g = specfun::reg_gamma(x / b + 1.0, c / b);
  return { g.p, g.q, g.log_p, g.log_q };
}

TruncatedGammaKernel::TruncatedGammaKernel(const KernelParams& params)
  : base_(params.x, params.b)
  , c_(params.c)
  , weights_(truncation_weights(params.x, params.b, params.c))
{}

double
TruncatedGammaKernel::minus(double u) const
{
  require_point(u);
  if (weights_.lower == 0.0 || std::isinf(weights_.log_lower)) {
    throw DegenerateError(Degeneracy::truncation,
                          "degenerate truncation: gamma kernel mass lies entirely right of the cutoff");
  }
  if (u >= c_) {
    return 0.0;
  }
  return std::exp(base_.log_value(u) - weights_.log_lower);
}

double
TruncatedGammaKernel::plus(double u) const
{
  require_point(u);
  if (weights_.upper == 0.0 || std::isinf(weights_.log_upper)) {
    throw DegenerateError(Degeneracy::truncation,
                          "degenerate truncation: gamma kernel mass lies entirely left of the cutoff");
  }
  if (u < c_) {
    return 0.0;
  }
  return std::exp(base_.log_value(u) - weights_.log_upper);
}

double
gamma_kernel(double x, double b, double u)
{
  return GammaKernel(x, b)(u);
}

double
trunc_kernel_minus(const KernelParams& params, double u)
{
  return TruncatedGammaKernel(params).minus(u);
}

double
trunc_kernel_plus(const KernelParams& params, double u)
{
  return TruncatedGammaKernel(params).plus(u);
}

} // namespace jumpdens
