#pragma once

// Independent numerical oracles for tests: Boost.Math incomplete gamma and
// adaptive Gauss-Kronrod quadrature. Nothing here calls into jumpdens
// numerics except where a test explicitly integrates a jumpdens kernel.

#include "jumpdens/distributions.hpp"
#include "jumpdens/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double
gamma_p(double a, double z)
{
  return boost::math::gamma_p(a, z);
}

inline double
gamma_q(double a, double z)
{
  return boost::math::gamma_q(a, z);
}

//! Adaptive Gauss-Kronrod over [lo, hi], split at the given interior points.
inline double
integrate(const std::function<double(double)>& f, double lo, double hi, std::vector<double> breaks = {})
{
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = std::max(breaks[i], lo);
    const double b = std::min(breaks[i + 1], hi);
    if (b > a) {
      total += GK::integrate(f, a, b, 15, 1e-12);
    }
  }
  return total;
}

//! Breakpoints that resolve a gamma kernel centred at x with spread ~sqrt(x b).
inline std::vector<double>
kernel_breaks(double x, double b, double lo, double hi)
{
  const double spread = std::sqrt(std::max(x, b) * b) + b;
  std::vector<double> out;
  for (double k : { -40.0, -20.0, -10.0, -6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0, 10.0, 20.0, 40.0, 80.0 }) {
    const double p = x + k * spread;
    if (p > lo && p < hi) {
      out.push_back(p);
    }
  }
  return out;
}

//! Upper integration limit beyond which the kernel at (x, b) is negligible.
inline double
kernel_upper_limit(double x, double b)
{
  return x + 120.0 * (std::sqrt(std::max(x, b) * b) + b) + 60.0 * b;
}

//! E[K^-(X)] and E[K^+(X)] for X ~ dist, design point c, by quadrature.
struct Moments
{
  double mean;
  double second;
};

inline Moments
left_moments(const jumpdens::TargetDist& dist, double c, double b)
{
  const jumpdens::TruncatedGammaKernel k(jumpdens::KernelParams{ c, b, c });
  const auto br = kernel_breaks(c, b, 0.0, c);
  const double m1 = integrate([&](double u) { return k.minus(u) * dist.pdf(u); }, 0.0, c, br);
  const double m2 = integrate([&](double u) { return k.minus(u) * k.minus(u) * dist.pdf(u); }, 0.0, c, br);
  return { m1, m2 };
}

inline Moments
right_moments(const jumpdens::TargetDist& dist, double c, double b)
{
  const jumpdens::TruncatedGammaKernel k(jumpdens::KernelParams{ c, b, c });
  const double hi = kernel_upper_limit(c, b);
  const auto br = kernel_breaks(c, b, c, hi);
  const double m1 = integrate([&](double u) { return k.plus(u) * dist.pdf(u); }, c, hi, br);
  const double m2 = integrate([&](double u) { return k.plus(u) * k.plus(u) * dist.pdf(u); }, c, hi, br);
  return { m1, m2 };
}

//! Least-squares slope of log|y| on log x.
inline double
loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::fabs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
