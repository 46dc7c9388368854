#pragma once

// Gamma function, regularized incomplete gamma functions and their inverse.
//
// P(a,z) = gamma(a,z)/Gamma(a) and Q(a,z) = Gamma(a,z)/Gamma(a). Every routine
// is a pure function; log-form variants exist because the kernel normalizers
// underflow in linear form long before their logarithms do.

namespace jumpdens::specfun {

struct SpecAccuracy
{
  double rel_tol = 1e-12; // accepted relative accuracy when the budget runs out
  int max_iter = 20000;   // series / continued fraction term budget

  void validate() const;
};

//! ln Gamma(a), a > 0.
double log_gamma(double a);

//! ln(1 + t) - t, accurate near t = 0.
double log1pmx(double t);

//! ln( z^a e^{-z} / Gamma(a+1) ), the Gamma(a+1, 1) density at z, evaluated
//! without forming z^a. a >= 0, z >= 0; returns -inf for z = 0 < a.
double log_gamma_density_prefix(double a, double z);

//! Both regularized functions at once, in linear and log form.
struct IncompleteGamma
{
  double p;
  double q;
  double log_p;
  double log_q;
};

IncompleteGamma reg_gamma(double a, double z, const SpecAccuracy& acc = {});

double reg_lower_gamma(double a, double z, const SpecAccuracy& acc = {});
double reg_upper_gamma(double a, double z, const SpecAccuracy& acc = {});
double log_reg_lower_gamma(double a, double z, const SpecAccuracy& acc = {});
double log_reg_upper_gamma(double a, double z, const SpecAccuracy& acc = {});

//! z >= 0 with P(a, z) = p, for 0 <= p < 1.
double inv_reg_lower_gamma(double a, double p, const SpecAccuracy& acc = {});

//! z >= 0 with Q(a, z) = q, for 0 < q <= 1. Accurate for tiny q.
double inv_reg_upper_gamma(double a, double q, const SpecAccuracy& acc = {});

//! Standard normal distribution helpers.
double normal_cdf(double x);
double normal_sf(double x);
double normal_quantile(double p);

} // namespace jumpdens::specfun
