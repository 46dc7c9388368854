#pragma once

#include "jumpdens/bandwidth.hpp"
#include "jumpdens/distributions.hpp"
#include "jumpdens/rng.hpp"
#include "jumpdens/sample.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace jumpdens {

struct CutoffRule
{
  enum class Kind
  {
    quantile,
    explicit_value
  };

  Kind kind = Kind::quantile;
  double value = 0.3;

  static CutoffRule at_quantile(double p) { return { Kind::quantile, p }; }
  static CutoffRule at(double c) { return { Kind::explicit_value, c }; }

  double resolve(const TargetDist& dist) const;
};

struct SimulationSpec
{
  TargetDist dist;
  CutoffRule cutoff;
  std::vector<double> d{ 0.0 };
  std::size_t n = 2000;
  std::size_t reps = 1000;
  std::vector<double> deltas{ 0.81 };
  VarianceVariant variant = VarianceVariant::v2;
  BandwidthConfig bandwidth;
  std::uint64_t seed = 1;
  std::vector<double> levels{ 0.05, 0.10 };
  //! Replications run concurrently; 0 means all cores.
  unsigned threads = 1;

  void validate() const;
};

//! Sets one field from a `key = value` pair, as found in spec files.
//! Keys: dist, shape, scale, c, c_quantile, d, n, reps, delta, variant, seed,
//! levels, p, q, h_lo, h_hi, grid_step, crit, two_sided. Lists are
//! comma-separated.
void apply_spec_setting(SimulationSpec& spec, std::string_view key, std::string_view value);

//! Reads `key = value` lines; blank lines and lines starting with '#' are
//! skipped.
SimulationSpec parse_simulation_spec(std::string_view text, SimulationSpec base = {});

//! Weight of the left branch, F(c) - d. Throws ConfigError outside [0, 1].
double mixture_weight(const TargetDist& dist, double c, double d);

//! f_+(c) - f_-(c) of the mixture with weight F(c) - d.
double true_jump(const TargetDist& dist, double c, double d);

//! Left-branch draws F^{-1}(U F(c)) with probability F(c) - d, otherwise
//! upper-tail draws above c.
Sample sample_discontinuous(const TargetDist& dist, double c, double d, std::size_t n, Rng& rng);

struct CellResult
{
  double delta = 0.0;
  double d = 0.0;
  double c = 0.0;
  double jump = 0.0; // population value the estimates are compared with
  double bias = 0.0;
  double std_dev = 0.0; // divides by the number of used replications
  double rmse = 0.0;
  double mean_b = 0.0;
  std::map<double, double> rejection_rates;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

//! Every (delta, d) cell of the spec, delta-major. Within a replication all
//! cells share the same uniforms.
std::vector<CellResult> run_study(const SimulationSpec& spec);

//! Continuous samples (d = 0) only, one cell per delta.
std::vector<CellResult> run_estimation_study(const SimulationSpec& spec);

//! One cell per (delta, d) pair.
std::vector<CellResult> run_size_power_study(const SimulationSpec& spec);

//! Largest tolerated share of degenerate replications in a cell.
inline constexpr double kMaxExcludedShare = 0.01;

} // namespace jumpdens
