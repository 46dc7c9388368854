#pragma once

#include "jumpdens/kernels.hpp"
#include "jumpdens/sample.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jumpdens {

enum class Side
{
  left,
  right
};

//! Which plug-in estimate of the asymptotic variance feeds the statistic:
//! v1 uses the two MBC limits, v2 uses the plain gamma-kernel estimate at c.
enum class VarianceVariant
{
  v1,
  v2
};

std::string_view to_string(VarianceVariant variant);
VarianceVariant parse_variance_variant(std::string_view text);

// One-sided and whole-density estimators at design point x.

double fhat_minus(const Sample& sample, double c, double b, double x);
double fhat_plus(const Sample& sample, double c, double b, double x);
double fhat_gamma(const Sample& sample, double b, double x);

// Multiplicative bias correction.

//! Largest admissible mixing exponent; lambda(delta) loses digits beyond it.
inline constexpr double kMaxDelta = 0.99;

void validate_delta(double delta);

//! Exponents on the b and b/delta pilots: 1/(1-sqrt d) and -sqrt d/(1-sqrt d).
struct MbcExponents
{
  double narrow;
  double wide;
};

MbcExponents mbc_exponents(double delta);

struct MbcEstimate
{
  double value = 0.0;
  double pilot_narrow = 0.0; // smoothing b
  double pilot_wide = 0.0;   // smoothing b / delta
  bool degenerate = false;   // both pilots vanished
};

//! Combines two pilots. Returns 0 flagged degenerate when both vanish and
//! throws DegenerateError when only the wide pilot does.
MbcEstimate mbc_combine(double pilot_narrow, double pilot_wide, double delta);

//! MBC estimate of the one-sided limit f_-(c) or f_+(c).
MbcEstimate mbc_estimate(const Sample& sample, double c, double b, double delta, Side side);

// Jump size and the continuity test.

struct JumpEstimate
{
  double f_minus = 0.0;
  double f_plus = 0.0;
  double jump = 0.0;
};

JumpEstimate jump_estimate(const Sample& sample, double c, double b, double delta);

//! f^+(c) - f^-(c) without bias correction; one-sided data are allowed.
JumpEstimate jump_estimate_raw(const Sample& sample, double c, double b);

//! Variance inflation of the MBC estimator relative to the plain one.
double lambda(double delta);

double variance_estimate(const Sample& sample,
                         double c,
                         double b,
                         double delta,
                         VarianceVariant variant);

struct JumpTestResult
{
  double f_minus = 0.0;
  double f_plus = 0.0;
  double jump = 0.0;
  double f_gamma = 0.0; // plain gamma-kernel estimate at c
  double variance = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  double b = 0.0;
  double delta = 0.0;
  VarianceVariant variant = VarianceVariant::v2;
  std::size_t n = 0;
  std::size_t n_minus = 0;
  std::size_t n_plus = 0;
  bool mbc_degenerate = false;
};

//! Evaluates the jump test at a fixed (c, b, delta) on any split sample.
//!
//! Kernel constants and truncation weights for both pilot bandwidths are
//! computed once, so repeated calls on sub-samples only pay for the kernel
//! sums.
class JumpTester
{
public:
  JumpTester(double c, double b, double delta);

  JumpTestResult operator()(const SideView& view, VarianceVariant variant, double alpha) const;

  double c() const { return c_; }
  double b() const { return b_; }
  double delta() const { return delta_; }

private:
  struct Pilots
  {
    double f_minus;
    double f_plus;
    double f_gamma;
  };

  struct Smoother
  {
    GammaKernel kernel;
    TruncationWeights weights;

    Pilots apply(const SideView& view) const;
  };

  double c_;
  double b_;
  double delta_;
  Smoother narrow_;
  Smoother wide_;
};

JumpTestResult jump_test(const Sample& sample,
                         double c,
                         double b,
                         double delta,
                         VarianceVariant variant,
                         double alpha);

// Whole-density estimation.

enum class CurveSide
{
  left,
  right,
  none
};

std::string_view to_string(CurveSide side);

struct CurvePoint
{
  double x;
  double estimate;
  CurveSide side;
};

struct DensityCurve
{
  std::vector<CurvePoint> points;
};

//! f^-(x) left of the cutoff, f^+(x) right of it and both limits at x = c;
//! the plain gamma-kernel estimate when no cutoff is given.
DensityCurve density_curve(const Sample& sample,
                           double b,
                           std::span<const double> grid,
                           std::optional<double> c);

} // namespace jumpdens
