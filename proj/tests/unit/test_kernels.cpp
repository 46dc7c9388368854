#include "jumpdens/errors.hpp"
#include "jumpdens/kernels.hpp"
#include "oracle.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>

using namespace jumpdens;

namespace {

// Gamma(x/b + 1, b) density at u, from Boost.
double
kernel_oracle(double x, double b, double u)
{
  return boost::math::gamma_p_derivative(x / b + 1.0, u / b) / b;
}

double
rel_err(double got, double want)
{
  return std::fabs(got - want) / std::fabs(want);
}

} // namespace

TEST_CASE("gamma kernel closed forms")
{
  CHECK(gamma_kernel(0.0, 1.0, 0.0) == 1.0);
  CHECK(gamma_kernel(2.0, 1.0, 1.0) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-14));
  CHECK(gamma_kernel(2.0, 1.0, 0.0) == 0.0);
  CHECK(gamma_kernel(0.0, 0.5, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("gamma kernel against Boost density")
{
  for (double x : { 0.0, 0.01, 0.5, 1.7057, 40.0 }) {
    for (double b : { 1e-3, 0.02, 0.3, 2.0 }) {
      for (double mult : { 0.2, 0.9, 1.0, 1.1, 3.0 }) {
        const double u = std::max(x, b) * mult;
        const double want = kernel_oracle(x, b, u);
        if (want > 1e-280) {
          CHECK_MESSAGE(rel_err(gamma_kernel(x, b, u), want) < 1e-11, "x=" << x << " b=" << b << " u=" << u);
        }
      }
    }
  }
}

TEST_CASE("gamma kernel stays finite for large x/b")
{
  const GammaKernel k(1.0, 1e-6);
  CHECK(k.shape() == doctest::Approx(1e6 + 1.0));
  const double peak = k(1.0);
  CHECK(std::isfinite(peak));
  CHECK(rel_err(peak, kernel_oracle(1.0, 1e-6, 1.0)) < 1e-9);
}

TEST_CASE("gamma kernel mode sits at the design point")
{
  for (auto [x, b] : { std::pair{ 3.0, 0.1 }, std::pair{ 1.0, 1e-4 }, std::pair{ 0.5, 0.05 } }) {
    const GammaKernel k(x, b);
    // Golden-section search on the log kernel.
    double lo = 0.0;
    double hi = 3.0 * x;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
      const double m1 = hi - phi * (hi - lo);
      const double m2 = lo + phi * (hi - lo);
      (k.log_value(m1) < k.log_value(m2) ? lo : hi) = k.log_value(m1) < k.log_value(m2) ? m1 : m2;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(x).epsilon(1e-6));
  }
}

TEST_CASE("truncated kernel closed forms")
{
  const KernelParams p{ 2.0, 1.0, 2.0 };
  const double lower = 2.0 - 10.0 * std::exp(-2.0); // gamma(3, 2)
  const double upper = 10.0 * std::exp(-2.0);       // Gamma(3, 2)
  CHECK(trunc_kernel_minus(p, 2.5) == 0.0);
  CHECK(trunc_kernel_minus(p, 2.0) == 0.0);
  CHECK(rel_err(trunc_kernel_minus(p, 1.0), std::exp(-1.0) / lower) < 1e-13);
  CHECK(rel_err(trunc_kernel_minus(p, 1.0), 0.568902887980687767) < 1e-13);
  CHECK(trunc_kernel_plus(p, 1.0) == 0.0);
  CHECK(trunc_kernel_plus(p, 2.0) > 0.0);
  CHECK(rel_err(trunc_kernel_plus(p, 3.0), 9.0 * std::exp(-3.0) / upper) < 1e-13);
  CHECK(rel_err(trunc_kernel_plus(p, 3.0), 0.331091497054298089) < 1e-13);
}

TEST_CASE("truncation weights match the oracle")
{
  for (auto [x, b, c] : { std::tuple{ 2.0, 1.0, 2.0 }, std::tuple{ 1.7057, 0.02, 1.7057 }, std::tuple{ 40.0, 0.001, 40.0 } }) {
    const TruncationWeights w = truncation_weights(x, b, c);
    CHECK(rel_err(w.lower, oracle::gamma_p(x / b + 1.0, c / b)) < 1e-12);
    CHECK(rel_err(w.upper, oracle::gamma_q(x / b + 1.0, c / b)) < 1e-12);
    CHECK(w.log_lower == doctest::Approx(std::log(w.lower)).epsilon(1e-13));
  }
}

TEST_CASE("decomposition P K^- + Q K^+ = K_G")
{
  for (auto [x, b, c] : { std::tuple{ 2.0, 1.0, 2.0 }, std::tuple{ 1.0, 0.05, 2.0 }, std::tuple{ 5.0, 0.1, 2.0 },
                          std::tuple{ 1.7057, 0.0121, 1.7057 }, std::tuple{ 0.0, 0.3, 0.7 } }) {
    const TruncatedGammaKernel k(KernelParams{ x, b, c });
    const TruncationWeights& w = k.weights();
    for (double u = 0.0; u < 4.0 * (x + c) + 1.0; u += 0.0137) {
      const double whole = k.base()(u);
      const double parts = w.lower * k.minus(u) + w.upper * k.plus(u);
      if (whole < 1e-290) {
        // Subnormal tail: only absolute agreement is meaningful.
        CHECK(std::fabs(parts - whole) < 1e-300);
      } else {
        CHECK_MESSAGE(rel_err(parts, whole) < 1e-12, "x=" << x << " b=" << b << " u=" << u);
      }
      CHECK(k.minus(u) >= 0.0);
      CHECK(k.plus(u) >= 0.0);
    }
    CHECK(k.plus(c) > 0.0);
    CHECK(k.minus(c) == 0.0);
  }
}

TEST_CASE("kernels integrate to one")
{
  struct Case
  {
    double x, b, c;
  };
  for (const Case& cs : { Case{ 1.0, 0.05, 2.0 }, Case{ 5.0, 0.1, 2.0 }, Case{ 1.0, 1e-4, 1.0 }, Case{ 2.0, 1.0, 2.0 },
                          Case{ 0.0, 0.2, 0.5 } }) {
    const TruncatedGammaKernel k(KernelParams{ cs.x, cs.b, cs.c });
    const double hi = oracle::kernel_upper_limit(std::max(cs.x, cs.c), cs.b);
    const auto all = oracle::kernel_breaks(cs.x, cs.b, 0.0, hi);
    CHECK(oracle::integrate([&](double u) { return k.base()(u); }, 0.0, hi, all) == doctest::Approx(1.0).epsilon(1e-8));
    auto left = oracle::kernel_breaks(cs.x, cs.b, 0.0, cs.c);
    CHECK(oracle::integrate([&](double u) { return k.minus(u); }, 0.0, cs.c, left) == doctest::Approx(1.0).epsilon(1e-8));
    auto right = oracle::kernel_breaks(cs.x, cs.b, cs.c, hi);
    CHECK(oracle::integrate([&](double u) { return k.plus(u); }, cs.c, hi, right) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("degenerate truncation is reported")
{
  // Q(1, 1000) underflows: the kernel at x = 0 has no mass right of c = 1.
  const TruncatedGammaKernel right_empty(KernelParams{ 0.0, 1e-3, 1.0 });
  CHECK(right_empty.weights().upper == 0.0);
  CHECK_THROWS_AS(right_empty.plus(2.0), DegenerateError);
  CHECK(right_empty.minus(0.5) > 0.0);
  const TruncatedGammaKernel left_empty(KernelParams{ 10.0, 0.01, 1.0 });
  CHECK(left_empty.weights().lower == 0.0);
  try {
    left_empty.minus(0.5);
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    CHECK(e.kind() == Degeneracy::truncation);
  }
}

TEST_CASE("parameter validation")
{
  CHECK_THROWS_AS(gamma_kernel(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_kernel(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_kernel(1.0, 1.0, -0.5), DomainError);
  CHECK_THROWS_AS(trunc_kernel_minus(KernelParams{ 1.0, 1.0, 0.0 }, 0.5), DomainError);
  CHECK_THROWS_AS(GammaKernel(1.0, NAN), DomainError);
}
