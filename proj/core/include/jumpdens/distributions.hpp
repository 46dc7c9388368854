#pragma once

#include <string_view>

namespace jumpdens {

enum class Family
{
  gamma,
  weibull
};

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

//! Gamma density x^{a-1} e^{-x/s} / (s^a Gamma(a)) or Weibull density
//! (a/s)(x/s)^{a-1} exp(-(x/s)^a), with shape a and scale s.
struct TargetDist
{
  Family family = Family::gamma;
  double shape = 2.75;
  double scale = 1.0;

  void validate() const;

  double pdf(double x) const;
  double cdf(double x) const;
  double sf(double x) const;
  //! x with F(x) = p, 0 <= p < 1.
  double quantile(double p) const;
  //! x with 1 - F(x) = q, 0 < q <= 1; keeps precision deep in the tail.
  double upper_quantile(double q) const;
};

double dist_quantile(const TargetDist& dist, double p);

} // namespace jumpdens
