#include "jumpdens/specfun.hpp"

#include "jumpdens/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace jumpdens::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Above this shape the series / continued fraction need O(sqrt(a)) terms near
// z = a; the uniform expansion takes over there.
constexpr double kUniformShape = 1e5;
// The uniform path is used only while exp(-a eta^2 / 2) stays representable.
constexpr double kUniformExponent = 600.0;

void
require_shape(double a, const char* who)
{
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(who) + ": shape must be positive and finite, got " +
                      std::to_string(a));
  }
}

void
require_argument(double z, const char* who)
{
  if (!(z >= 0.0)) {
    throw DomainError(std::string(who) + ": argument must be nonnegative, got " +
                      std::to_string(z));
  }
}

// ln Gamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)] for x >= 10.
double
stirling_correction(double x)
{
  static constexpr double kCoef[] = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  double power = inv;
  for (double c : kCoef) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

double
checked_accept(double rel_change, const SpecAccuracy& acc, const char* who)
{
  if (!(rel_change <= acc.rel_tol)) {
    throw NumericError(std::string(who) + ": no convergence within " +
                       std::to_string(acc.max_iter) + " iterations");
  }
  return rel_change;
}

// ln of sum_{k>=0} z^k / ((a+1)...(a+k)); P(a,z) = prefix(a,z) * sum.
double
log_lower_series(double a, double z, const SpecAccuracy& acc)
{
  double sum = 1.0;
  double term = 1.0;
  double ap = a;
  for (int i = 0; i < acc.max_iter; ++i) {
    ap += 1.0;
    term *= z / ap;
    sum += term;
    if (term <= sum * kEps) {
      return std::log(sum);
    }
  }
  checked_accept(term / sum, acc, "reg_lower_gamma series");
  return std::log(sum);
}

// ln of the Legendre continued fraction; Q(a,z) = a * prefix(a,z) * cf.
double
log_upper_fraction(double a, double z, const SpecAccuracy& acc)
{
  constexpr double kTiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  double change = 1.0;
  for (int i = 1; i <= acc.max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) {
      d = kTiny;
    }
    c = b + an / c;
    if (std::fabs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    change = std::fabs(del - 1.0);
    if (change <= kEps) {
      return std::log(h);
    }
  }
  checked_accept(change, acc, "reg_upper_gamma continued fraction");
  return std::log(h);
}

IncompleteGamma
from_lower(double log_p)
{
  const double p = std::exp(log_p);
  return { p, 1.0 - p, log_p, std::log1p(-p) };
}

IncompleteGamma
from_upper(double log_q)
{
  const double q = std::exp(log_q);
  return { 1.0 - q, q, std::log1p(-q), log_q };
}

// Temme's uniform expansion, two correction terms; error O(a^{-5/2}).
IncompleteGamma
uniform_expansion(double a, double z)
{
  const double mu = (z - a) / a;
  const double eta = std::copysign(std::sqrt(-2.0 * log1pmx(mu)), mu);
  double c0;
  double c1;
  if (std::fabs(eta) < 0.01) {
    const double e = eta;
    c0 = -1.0 / 3.0 + e * (1.0 / 12.0 + e * (-2.0 / 135.0 + e * (1.0 / 864.0 + e / 2835.0)));
    c1 = -1.0 / 540.0 + e * (-1.0 / 288.0 + e / 378.0);
  } else {
    c0 = 1.0 / mu - 1.0 / eta;
    c1 = 1.0 / (eta * eta * eta) - 1.0 / (mu * mu * mu) - 1.0 / (mu * mu) - 1.0 / (12.0 * mu);
  }
  const double remainder = std::exp(-0.5 * a * eta * eta) /
                           std::sqrt(2.0 * std::numbers::pi * a) * (c0 + c1 / a);
  const double arg = eta * std::sqrt(0.5 * a);
  if (eta < 0.0) {
    const double p = 0.5 * std::erfc(-arg) - remainder;
    return { p, 1.0 - p, std::log(p), std::log1p(-p) };
  }
  const double q = 0.5 * std::erfc(arg) + remainder;
  return { 1.0 - q, q, std::log1p(-q), std::log(q) };
}

} // namespace

void
SpecAccuracy::validate() const
{
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw ConfigError("SpecAccuracy: rel_tol must lie in (0, 1e-6)");
  }
  if (max_iter < 100) {
    throw ConfigError("SpecAccuracy: max_iter must be at least 100");
  }
}

double
log_gamma(double a)
{
  require_shape(a, "log_gamma");
  if (a == 1.0 || a == 2.0) {
    return 0.0;
  }
  double x = a;
  double shift = 1.0;
  while (x < 10.0) {
    shift *= x;
    x += 1.0;
  }
  const double stirling = (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x);
  return shift == 1.0 ? stirling : stirling - std::log(shift);
}

double
log1pmx(double t)
{
  if (t <= -1.0) {
    return t == -1.0 ? -kInf : std::numeric_limits<double>::quiet_NaN();
  }
  if (std::fabs(t) < 0.1) {
    // -t^2/2 + t^3/3 - t^4/4 + ...
    double power = t * t;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      const double term = power / k;
      sum += (k % 2 == 0) ? -term : term;
      if (std::fabs(term) <= kEps * std::fabs(sum)) {
        break;
      }
      power *= t;
    }
    return sum;
  }
  return std::log1p(t) - t;
}

double
log_gamma_density_prefix(double a, double z)
{
  if (a == 0.0) {
    return -z;
  }
  if (z == 0.0) {
    return -kInf;
  }
  if (a < 10.0) {
    return a * std::log(z) - z - log_gamma(a + 1.0);
  }
  return a * log1pmx((z - a) / a) - 0.5 * std::log(a) - kHalfLog2Pi - stirling_correction(a);
}

IncompleteGamma
reg_gamma(double a, double z, const SpecAccuracy& acc)
{
  require_shape(a, "reg_gamma");
  require_argument(z, "reg_gamma");
  if (z == 0.0) {
    return { 0.0, 1.0, -kInf, 0.0 };
  }
  if (std::isinf(z)) {
    return { 1.0, 0.0, 0.0, -kInf };
  }
  if (a > kUniformShape) {
    const double mu = (z - a) / a;
    if (-a * log1pmx(mu) < kUniformExponent) {
      return uniform_expansion(a, z);
    }
  }
  const double log_prefix = log_gamma_density_prefix(a, z);
  if (z < a + 1.0) {
    return from_lower(log_prefix + log_lower_series(a, z, acc));
  }
  return from_upper(log_prefix + std::log(a) + log_upper_fraction(a, z, acc));
}

double
reg_lower_gamma(double a, double z, const SpecAccuracy& acc)
{
  return reg_gamma(a, z, acc).p;
}

double
reg_upper_gamma(double a, double z, const SpecAccuracy& acc)
{
  return reg_gamma(a, z, acc).q;
}

double
log_reg_lower_gamma(double a, double z, const SpecAccuracy& acc)
{
  return reg_gamma(a, z, acc).log_p;
}

double
log_reg_upper_gamma(double a, double z, const SpecAccuracy& acc)
{
  return reg_gamma(a, z, acc).log_q;
}

namespace {

// Solves P(a,z) = target (upper == false) or Q(a,z) = target (upper == true)
// by Newton's method on a maintained bracket, bisecting whenever a step
// leaves the bracket.
double
invert_incomplete(double a, double target, bool upper, const SpecAccuracy& acc)
{
  // Signed residual, increasing in z in both cases.
  auto residual = [&](double z) {
    const IncompleteGamma g = reg_gamma(a, z, acc);
    return upper ? target - g.q : g.p - target;
  };

  // Wilson-Hilferty start, falling back to the small-z power law.
  const double t = upper ? -normal_quantile(target) : normal_quantile(target);
  const double s = 1.0 / (9.0 * a);
  const double base = 1.0 - s + t * std::sqrt(s);
  double z = a * base * base * base;
  if (!(base > 0.0) || !(z > 0.0)) {
    const double log_p = upper ? std::log1p(-target) : std::log(target);
    z = std::exp((log_p + log_gamma(a + 1.0)) / a);
  }
  if (!(z > 0.0) || !std::isfinite(z)) {
    z = a;
  }

  double lo = 0.0;
  double hi = kInf;
  for (int iter = 0; iter < 400; ++iter) {
    const double r = residual(z);
    if (r == 0.0) {
      return z;
    }
    if (r < 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    const double log_density = log_gamma_density_prefix(a, z) + std::log(a) - std::log(z);
    const double density = std::exp(log_density);
    double next = density > 0.0 ? z - r / density : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      next = std::isinf(hi) ? 2.0 * z : 0.5 * (lo + hi);
    }
    if (std::fabs(next - z) <= 4.0 * kEps * next || (std::isfinite(hi) && hi - lo <= 4.0 * kEps * hi)) {
      z = next;
      break;
    }
    z = next;
    if (z > std::numeric_limits<double>::max()) {
      throw NumericError("inv_reg_gamma: bracket expansion overflowed");
    }
  }
  if (!(std::fabs(residual(z)) <= 1e-10)) {
    throw NumericError("inv_reg_gamma: did not reach the target probability");
  }
  return z;
}

} // namespace

double
inv_reg_lower_gamma(double a, double p, const SpecAccuracy& acc)
{
  require_shape(a, "inv_reg_lower_gamma");
  if (!(p >= 0.0 && p < 1.0)) {
    throw DomainError("inv_reg_lower_gamma: probability must lie in [0, 1), got " +
                      std::to_string(p));
  }
  if (p == 0.0) {
    return 0.0;
  }
  if (p > 0.5) {
    return invert_incomplete(a, 1.0 - p, true, acc);
  }
  return invert_incomplete(a, p, false, acc);
}

double
inv_reg_upper_gamma(double a, double q, const SpecAccuracy& acc)
{
  require_shape(a, "inv_reg_upper_gamma");
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("inv_reg_upper_gamma: probability must lie in (0, 1], got " +
                      std::to_string(q));
  }
  if (q == 1.0) {
    return 0.0;
  }
  if (q > 0.5) {
    return invert_incomplete(a, 1.0 - q, false, acc);
  }
  return invert_incomplete(a, q, true, acc);
}

double
normal_cdf(double x)
{
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double
normal_sf(double x)
{
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double
normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) {
      return -kInf;
    }
    if (p == 1.0) {
      return kInf;
    }
    throw DomainError("normal_quantile: probability must lie in [0, 1]");
  }
  // Acklam's rational approximation, then one Halley step.
  static constexpr double a[] = { -3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00 };
  static constexpr double b[] = { -5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01 };
  static constexpr double c[] = { -7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00 };
  static constexpr double d[] = { 7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00 };
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low || p > 1.0 - p_low) {
    const double tail = p < p_low ? p : 1.0 - p;
    const double r = std::sqrt(-2.0 * std::log(tail));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    if (p > 0.5) {
      x = -x;
    }
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double err = (p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x));
  const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

} // namespace jumpdens::specfun
