#include "jumpdens/distributions.hpp"
#include "jumpdens/errors.hpp"
#include "jumpdens/rng.hpp"
#include "jumpdens/simulate.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace jumpdens;

namespace {

SimulationSpec
small_spec()
{
  SimulationSpec spec;
  spec.n = 400;
  spec.reps = 6;
  spec.d = { 0.0, 0.1 };
  spec.deltas = { 0.64, 0.81 };
  spec.bandwidth.grid_step = 0.05;
  spec.seed = 99;
  return spec;
}

} // namespace

TEST_CASE("target quantiles")
{
  const TargetDist gamma;
  CHECK(gamma.quantile(0.3) == doctest::Approx(1.7056991888125403083).epsilon(1e-13));
  CHECK(gamma.quantile(0.5) == doctest::Approx(2.4248117033544249401).epsilon(1e-13));
  const TargetDist weibull{ Family::weibull, 1.75, 3.5 };
  CHECK(weibull.quantile(0.5) == doctest::Approx(2.8386455343314957).epsilon(1e-13));
  CHECK(weibull.quantile(0.3) == doctest::Approx(1.9418863846019221).epsilon(1e-13));
  for (const TargetDist& dist : { gamma, weibull }) {
    for (double p : { 1e-6, 0.1, 0.5, 0.9, 0.999999 }) {
      CHECK(dist.cdf(dist.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
      CHECK(dist.sf(dist.upper_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
  }
  CHECK(CutoffRule::at_quantile(0.3).resolve(gamma) == gamma.quantile(0.3));
  CHECK(CutoffRule::at(2.0).resolve(gamma) == 2.0);
}

TEST_CASE("target densities")
{
  const TargetDist gamma;
  const double x = 1.3;
  CHECK(gamma.pdf(x) == doctest::Approx(std::pow(x, 1.75) * std::exp(-x) / std::tgamma(2.75)).epsilon(1e-13));
  const TargetDist weibull{ Family::weibull, 1.75, 3.5 };
  const double z = x / 3.5;
  CHECK(weibull.pdf(x) == doctest::Approx(1.75 / 3.5 * std::pow(z, 0.75) * std::exp(-std::pow(z, 1.75))).epsilon(1e-13));
  CHECK(parse_family("weibull") == Family::weibull);
  CHECK_THROWS(parse_family("lognormal"));
}

TEST_CASE("rng streams")
{
  Rng a(1, 0);
  Rng b(1, 0);
  Rng c(1, 1);
  const auto first = a.next();
  CHECK(first == b.next());
  CHECK(first != c.next());
  Rng u(7, 3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("mixture weight and jump")
{
  const TargetDist dist;
  const double c = dist.quantile(0.3);
  CHECK(mixture_weight(dist, c, 0.0) == doctest::Approx(0.3));
  CHECK(mixture_weight(dist, c, 0.1) == doctest::Approx(0.2));
  CHECK_THROWS_AS(mixture_weight(dist, c, 0.5), ConfigError);
  CHECK(std::fabs(true_jump(dist, c, 0.0)) < 1e-14);
  // Mixture density: (F(c) - d) f / F(c) on the left, (1 - F(c) + d) f / S(c) on the right.
  const double f = dist.pdf(c);
  CHECK(true_jump(dist, c, 0.1) == doctest::Approx(f * (0.8 / 0.7 - 0.2 / 0.3)).epsilon(1e-12));
}

TEST_CASE("continuous draws follow the target")
{
  const TargetDist dist;
  const double c = dist.quantile(0.3);
  Rng rng(2024, 0);
  const std::size_t n = 100000;
  const Sample s = sample_discontinuous(dist, c, 0.0, n, rng);
  double ks = 0.0;
  const auto v = s.values();
  for (std::size_t i = 0; i < n; ++i) {
    const double F = dist.cdf(v[i]);
    ks = std::max({ ks, std::fabs(F - double(i) / n), std::fabs(F - double(i + 1) / n) });
  }
  CHECK(ks < 1.63 / std::sqrt(double(n)));
  double mean = 0.0;
  for (double x : v) mean += x;
  CHECK(mean / n == doctest::Approx(2.75).epsilon(0.01));
}

TEST_CASE("discontinuous draws move mass across the cutoff")
{
  const TargetDist dist;
  const double c = dist.quantile(0.5);
  Rng rng(5, 0);
  const std::size_t n = 100000;
  const Sample s = sample_discontinuous(dist, c, 0.1, n, rng);
  const double below = double(s.side_counts(c).n_minus) / n;
  CHECK(below == doctest::Approx(0.40).epsilon(0.0125));

  const TargetDist weibull{ Family::weibull, 1.75, 3.5 };
  const double cw = weibull.quantile(0.3);
  Rng rng2(6, 0);
  const Sample w = sample_discontinuous(weibull, cw, 0.3, 1000, rng2);
  CHECK(w.side_counts(cw).n_minus == 0);
}

TEST_CASE("simulation spec parsing")
{
  const SimulationSpec spec = parse_simulation_spec("# comment\n"
                                                    "dist = weibull\n"
                                                    "shape = 1.75\n"
                                                    "scale = 3.5\n"
                                                    "\n"
                                                    "c_quantile = 0.5\n"
                                                    "d = 0.02, 0.04\n"
                                                    "n = 500\n"
                                                    "reps = 10\n"
                                                    "delta = 0.49\n"
                                                    "variant = v1\n"
                                                    "levels = 0.01\n"
                                                    "grid_step = 0.05\n"
                                                    "two_sided = true\n");
  CHECK(spec.dist.family == Family::weibull);
  CHECK(spec.cutoff.kind == CutoffRule::Kind::quantile);
  CHECK(spec.cutoff.value == 0.5);
  CHECK(spec.d == std::vector<double>{ 0.02, 0.04 });
  CHECK(spec.n == 500);
  CHECK(spec.reps == 10);
  CHECK(spec.deltas == std::vector<double>{ 0.49 });
  CHECK(spec.variant == VarianceVariant::v1);
  CHECK(spec.levels == std::vector<double>{ 0.01 });
  CHECK(spec.bandwidth.grid_step == 0.05);
  CHECK(spec.bandwidth.two_sided);
  CHECK_NOTHROW(spec.validate());

  try {
    parse_simulation_spec("n = 10\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_simulation_spec("n = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_simulation_spec("reps\n"), ConfigError);
  SimulationSpec bad;
  bad.reps = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("study bookkeeping")
{
  const SimulationSpec spec = small_spec();
  const auto cells = run_study(spec);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].delta == 0.64);
  CHECK(cells[0].d == 0.0);
  CHECK(cells[1].d == 0.1);
  CHECK(cells[2].delta == 0.81);
  for (const CellResult& cell : cells) {
    CHECK(cell.used + cell.excluded == spec.reps);
    CHECK(cell.rmse * cell.rmse == doctest::Approx(cell.bias * cell.bias + cell.std_dev * cell.std_dev).epsilon(1e-10));
    CHECK(cell.rejection_rates.size() == 2);
    CHECK(cell.rejection_rates.at(0.05) <= cell.rejection_rates.at(0.10));
    CHECK(cell.mean_b > 0.0);
  }
  CHECK(run_estimation_study(spec).size() == 2);
  CHECK(run_size_power_study(spec).size() == 4);
}

TEST_CASE("a single replication has zero spread")
{
  SimulationSpec spec = small_spec();
  spec.reps = 1;
  spec.d = { 0.0 };
  spec.deltas = { 0.81 };
  const auto cells = run_study(spec);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].std_dev == 0.0);
  CHECK(cells[0].rmse == doctest::Approx(std::fabs(cells[0].bias)));
}

TEST_CASE("results do not depend on the thread count")
{
  SimulationSpec spec = small_spec();
  const auto serial = run_study(spec);
  spec.threads = 3;
  const auto threaded = run_study(spec);
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].bias == threaded[i].bias);
    CHECK(serial[i].std_dev == threaded[i].std_dev);
    CHECK(serial[i].mean_b == threaded[i].mean_b);
    CHECK(serial[i].rejection_rates == threaded[i].rejection_rates);
  }
  spec.seed = 100;
  CHECK(run_study(spec)[0].bias != serial[0].bias);
}
