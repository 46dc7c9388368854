#pragma once

#include "jumpdens/estim.hpp"
#include "jumpdens/sample.hpp"

#include <cstddef>
#include <vector>

namespace jumpdens {

//! Settings of the power-optimality search. Defaults mirror the Monte Carlo
//! design: (p, q) = (1/2, 4/9), grid [0.05, 0.50] and critical value 1.96.
struct BandwidthConfig
{
  double p = 0.5;          // M = floor(min(n_-^p, n_+^p))
  double q = 4.0 / 9.0;    // b_n = B n^{-q}
  double h_lo = 0.05;
  double h_hi = 0.50;
  double grid_step = 0.01;
  double alpha_crit = 1.96;
  double delta = 0.81;
  VarianceVariant variant = VarianceVariant::v2;
  //! Count |T_m| > z instead of T_m > z.
  bool two_sided = false;
  //! Worker threads for the power curve; 0 means all cores, 1 serial.
  unsigned threads = 1;

  void validate() const;

  //! h_lo, h_lo + step, ... up to h_hi inclusive.
  std::vector<double> grid() const;
};

//! M = floor(min(n_-^p, n_+^p)), at least 1.
std::size_t subsample_count(std::size_t n_minus, std::size_t n_plus, double p);

struct SubSample
{
  std::vector<double> left;
  std::vector<double> right;

  SideView view() const { return { left, right }; }
};

//! Interleaved split: sub-sample m takes the ordered left observations at
//! positions m, m + M, ... (k_- of them) and likewise on the right.
struct SubSampleSplit
{
  std::size_t M = 0;
  std::size_t k_minus = 0;
  std::size_t k_plus = 0;
  std::vector<SubSample> parts;

  std::size_t k() const { return k_minus + k_plus; }
};

SubSampleSplit split_subsamples(const Sample& sample, double c, std::size_t M);

struct PowerPoint
{
  double b_k = 0.0;
  double power = 0.0;           // fraction of sub-samples rejecting
  std::size_t degenerate = 0;   // sub-samples counted as non-rejections
};

std::vector<PowerPoint> power_curve(const SubSampleSplit& split, double c, const BandwidthConfig& cfg);
std::vector<PowerPoint> power_curve(const Sample& sample, double c, const BandwidthConfig& cfg);

struct BandwidthSelection
{
  double b_hat_n = 0.0;
  double b_hat_k = 0.0;
  double B_hat = 0.0;
  std::size_t M = 0;
  std::size_t k_minus = 0;
  std::size_t k_plus = 0;
  std::size_t n = 0;
  std::vector<PowerPoint> power_curve;
  bool flat = false; // power constant across the grid
};

//! Smallest maximizer of a power curve, rescaled from sub-sample size k to
//! full size n: b_n = b_k k^q n^{-q}.
BandwidthSelection select_from_curve(std::vector<PowerPoint> curve,
                                     std::size_t k,
                                     std::size_t n,
                                     double q);

BandwidthSelection select_bandwidth(const Sample& sample, double c, const BandwidthConfig& cfg);

} // namespace jumpdens
