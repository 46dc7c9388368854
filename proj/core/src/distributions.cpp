#include "jumpdens/distributions.hpp"

#include "jumpdens/errors.hpp"
#include "jumpdens/specfun.hpp"

#include <cmath>
#include <string>

namespace jumpdens {

std::string_view
to_string(Family family)
{
  return family == Family::gamma ? "gamma" : "weibull";
}

Family
parse_family(std::string_view text)
{
  if (text == "gamma") {
    return Family::gamma;
  }
  if (text == "weibull") {
    return Family::weibull;
  }
  throw ConfigError("unknown distribution '" + std::string(text) + "' (expected gamma or weibull)");
}

void
TargetDist::validate() const
{
  if (!(shape > 0.0) || !std::isfinite(shape) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("distribution shape and scale must be positive and finite");
  }
}

double
TargetDist::pdf(double x) const
{
  validate();
  if (x < 0.0) {
    return 0.0;
  }
  const double t = x / scale;
  if (family == Family::gamma) {
    if (t == 0.0) {
      return shape < 1.0 ? INFINITY : (shape == 1.0 ? 1.0 / scale : 0.0);
    }
    // z^{a-1} e^{-z} / Gamma(a) = (a / z) * z^a e^{-z} / Gamma(a + 1)
    return std::exp(specfun::log_gamma_density_prefix(shape, t)) * shape / t / scale;
  }
  if (t == 0.0) {
    return shape < 1.0 ? INFINITY : (shape == 1.0 ? 1.0 / scale : 0.0);
  }
  return shape / scale * std::pow(t, shape - 1.0) * std::exp(-std::pow(t, shape));
}

double
TargetDist::cdf(double x) const
{
  validate();
  if (x <= 0.0) {
    return 0.0;
  }
  if (family == Family::gamma) {
    return specfun::reg_lower_gamma(shape, x / scale);
  }
  return -std::expm1(-std::pow(x / scale, shape));
}

double
TargetDist::sf(double x) const
{
  validate();
  if (x <= 0.0) {
    return 1.0;
  }
  if (family == Family::gamma) {
    return specfun::reg_upper_gamma(shape, x / scale);
  }
  return std::exp(-std::pow(x / scale, shape));
}

double
TargetDist::quantile(double p) const
{
  validate();
  if (!(p >= 0.0 && p < 1.0)) {
    throw DomainError("quantile level must lie in [0, 1)");
  }
  if (family == Family::gamma) {
    return scale * specfun::inv_reg_lower_gamma(shape, p);
  }
  return scale * std::pow(-std::log1p(-p), 1.0 / shape);
}

double
TargetDist::upper_quantile(double q) const
{
  validate();
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("upper-tail level must lie in (0, 1]");
  }
  if (family == Family::gamma) {
    return scale * specfun::inv_reg_upper_gamma(shape, q);
  }
  return scale * std::pow(-std::log(q), 1.0 / shape);
}

double
dist_quantile(const TargetDist& dist, double p)
{
  return dist.quantile(p);
}

} // namespace jumpdens
