#pragma once

#include "jumpdens/specfun.hpp"

namespace jumpdens {

//! Design point x >= 0, smoothing parameter b > 0 and, for the truncated
//! kernels, the cutoff c > 0.
struct KernelParams
{
  double x = 0.0;
  double b = 1.0;
  double c = 0.0;
};

//! Chen's gamma kernel K_{G(x,b)}(u), the Gamma(x/b + 1, b) density at u.
//!
//! Constants depending only on (x, b) are hoisted so that summing over a
//! sample costs one log1p/exp pair per observation.
class GammaKernel
{
public:
  GammaKernel(double x, double b);

  double log_value(double u) const;
  double operator()(double u) const;

  double x() const { return x_; }
  double b() const { return b_; }
  //! x/b + 1, the shape of the underlying gamma law.
  double shape() const { return a_ + 1.0; }

private:
  double x_;
  double b_;
  double a_;      // x / b
  double inv_b_;
  double offset_; // log-normalizer terms independent of u
  bool asymptotic_;
};

//! Mass of K_G on either side of c: P(x/b+1, c/b) and Q(x/b+1, c/b).
struct TruncationWeights
{
  double lower;
  double upper;
  double log_lower;
  double log_upper;
};

TruncationWeights truncation_weights(double x, double b, double c);

//! The gamma kernel split at c and re-normalized on each side:
//! K^- on [0, c) and K^+ on [c, inf). Observations equal to c belong to K^+.
class TruncatedGammaKernel
{
public:
  explicit TruncatedGammaKernel(const KernelParams& params);

  //! Throws DegenerateError when P(x/b+1, c/b) underflows to zero.
  double minus(double u) const;
  //! Throws DegenerateError when Q(x/b+1, c/b) underflows to zero.
  double plus(double u) const;

  const TruncationWeights& weights() const { return weights_; }
  const GammaKernel& base() const { return base_; }
  double cutoff() const { return c_; }

private:
  GammaKernel base_;
  double c_;
  TruncationWeights weights_;
};

double gamma_kernel(double x, double b, double u);
double trunc_kernel_minus(const KernelParams& params, double u);
double trunc_kernel_plus(const KernelParams& params, double u);

void validate(const KernelParams& params, bool needs_cutoff);

} // namespace jumpdens
