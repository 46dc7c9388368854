#include "jumpdens/simulate.hpp"

#include "jumpdens/errors.hpp"
#include "jumpdens/parallel.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <string>

namespace jumpdens {

namespace {

std::string_view
trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double
parse_double(std::string_view key, std::string_view text)
{
  text = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("setting '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::uint64_t
parse_unsigned(std::string_view key, std::string_view text)
{
  text = trim(text);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("setting '" + std::string(key) + "': '" + std::string(text) +
                      "' is not a nonnegative integer");
  }
  return v;
}

std::vector<double>
parse_list(std::string_view key, std::string_view text)
{
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool
parse_bool(std::string_view key, std::string_view text)
{
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no") {
    return false;
  }
  throw ConfigError("setting '" + std::string(key) + "': expected true or false");
}

// One replication's outcome for one cell.
struct Outcome
{
  double jump = 0.0;
  double b = 0.0;
  double p_value = 1.0;
  std::optional<Degeneracy> failure;
};

struct Cell
{
  double delta;
  double d;
  double gamma; // left-branch weight
};

// Maps the shared uniforms to a mixture sample. u_branch picks the side and
// u_value the position inside the truncated law.
std::vector<double>
mixture_draws(const TargetDist& dist,
              double c,
              double F_c,
              double gamma,
              const std::vector<double>& u_branch,
              const std::vector<double>& u_value)
{
  const double S_c = 1.0 - F_c;
  const double below = std::nextafter(c, 0.0);
  const double above = std::nextafter(c, INFINITY);
  std::vector<double> draws(u_branch.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (u_branch[i] < gamma) {
      draws[i] = std::min(dist.quantile(u_value[i] * F_c), below);
    } else {
      draws[i] = std::max(dist.upper_quantile(u_value[i] * S_c), above);
    }
  }
  return draws;
}

} // namespace

double
CutoffRule::resolve(const TargetDist& dist) const
{
  if (kind == Kind::quantile) {
    if (!(value > 0.0 && value < 1.0)) {
      throw ConfigError("cutoff quantile level must lie in (0, 1)");
    }
    return dist.quantile(value);
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError("cutoff must be positive and finite");
  }
  return value;
}

void
SimulationSpec::validate() const
{
  try {
    dist.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const double c = cutoff.resolve(dist);
  if (n < 10) {
    throw ConfigError("simulation sample size n must be at least 10");
  }
  if (reps < 1) {
    throw ConfigError("simulation needs at least one replication");
  }
  if (d.empty() || deltas.empty() || levels.empty()) {
    throw ConfigError("d, delta and level lists must be non-empty");
  }
  for (double dd : d) {
    mixture_weight(dist, c, dd);
  }
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta <= kMaxDelta)) {
      throw ConfigError("mixing exponent delta must lie in (0, 0.99]");
    }
  }
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw ConfigError("nominal levels must lie in (0, 1)");
    }
  }
  bandwidth.validate();
}

void
apply_spec_setting(SimulationSpec& spec, std::string_view key, std::string_view value)
{
  key = trim(key);
  value = trim(value);
  if (key == "dist") {
    spec.dist.family = parse_family(value);
  } else if (key == "shape") {
    spec.dist.shape = parse_double(key, value);
  } else if (key == "scale") {
    spec.dist.scale = parse_double(key, value);
  } else if (key == "c") {
    spec.cutoff = CutoffRule::at(parse_double(key, value));
  } else if (key == "c_quantile") {
    spec.cutoff = CutoffRule::at_quantile(parse_double(key, value));
  } else if (key == "d") {
    spec.d = parse_list(key, value);
  } else if (key == "n") {
    spec.n = parse_unsigned(key, value);
  } else if (key == "reps") {
    spec.reps = parse_unsigned(key, value);
  } else if (key == "delta") {
    spec.deltas = parse_list(key, value);
  } else if (key == "variant") {
    spec.variant = parse_variance_variant(value);
  } else if (key == "seed") {
    spec.seed = parse_unsigned(key, value);
  } else if (key == "levels") {
    spec.levels = parse_list(key, value);
  } else if (key == "p") {
    spec.bandwidth.p = parse_double(key, value);
  } else if (key == "q") {
    spec.bandwidth.q = parse_double(key, value);
  } else if (key == "h_lo") {
    spec.bandwidth.h_lo = parse_double(key, value);
  } else if (key == "h_hi") {
    spec.bandwidth.h_hi = parse_double(key, value);
  } else if (key == "grid_step") {
    spec.bandwidth.grid_step = parse_double(key, value);
  } else if (key == "crit") {
    spec.bandwidth.alpha_crit = parse_double(key, value);
  } else if (key == "two_sided") {
    spec.bandwidth.two_sided = parse_bool(key, value);
  } else {
    throw ConfigError("unknown simulation setting '" + std::string(key) + "'");
  }
}

SimulationSpec
parse_simulation_spec(std::string_view text, SimulationSpec base)
{
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("spec line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_spec_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("spec line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

double
mixture_weight(const TargetDist& dist, double c, double d)
{
  const double gamma = dist.cdf(c) - d;
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("mixture weight F(c) - d = " + std::to_string(gamma) + " lies outside [0, 1]");
  }
  return gamma;
}

double
true_jump(const TargetDist& dist, double c, double d)
{
  const double gamma = mixture_weight(dist, c, d);
  const double F_c = dist.cdf(c);
  return dist.pdf(c) * ((1.0 - gamma) / (1.0 - F_c) - gamma / F_c);
}

Sample
sample_discontinuous(const TargetDist& dist, double c, double d, std::size_t n, Rng& rng)
{
  const double gamma = mixture_weight(dist, c, d);
  std::vector<double> u_branch(n);
  std::vector<double> u_value(n);
  for (std::size_t i = 0; i < n; ++i) {
    u_branch[i] = rng.uniform();
    u_value[i] = rng.uniform();
  }
  return Sample(mixture_draws(dist, c, dist.cdf(c), gamma, u_branch, u_value));
}

std::vector<CellResult>
run_study(const SimulationSpec& spec)
{
  spec.validate();
  const double c = spec.cutoff.resolve(spec.dist);
  const double F_c = spec.dist.cdf(c);

  std::vector<Cell> cells;
  for (double delta : spec.deltas) {
    for (double d : spec.d) {
      cells.push_back({ delta, d, mixture_weight(spec.dist, c, d) });
    }
  }

  std::vector<std::vector<Outcome>> outcomes(spec.reps);
  parallel_for(spec.reps, spec.threads, [&](std::size_t rep) {
    Rng rng(spec.seed, rep);
    std::vector<double> u_branch(spec.n);
    std::vector<double> u_value(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      u_branch[i] = rng.uniform();
      u_value[i] = rng.uniform();
    }

    std::vector<Outcome>& out = outcomes[rep];
    out.resize(cells.size());
    std::optional<Sample> sample;
    double sample_gamma = -1.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const Cell& cell = cells[k];
      if (!sample || sample_gamma != cell.gamma) {
        sample.emplace(mixture_draws(spec.dist, c, F_c, cell.gamma, u_branch, u_value));
        sample_gamma = cell.gamma;
      }
      BandwidthConfig bw = spec.bandwidth;
      bw.delta = cell.delta;
      bw.variant = spec.variant;
      bw.threads = 1;
      try {
        const BandwidthSelection sel = select_bandwidth(*sample, c, bw);
        const JumpTestResult r = jump_test(*sample, c, sel.b_hat_n, cell.delta, spec.variant, 0.05);
        out[k].jump = r.jump;
        out[k].b = sel.b_hat_n;
        out[k].p_value = r.p_value;
      } catch (const DegenerateError& e) {
        out[k].failure = e.kind();
      }
    }
  });

  std::vector<CellResult> results;
  results.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    CellResult res;
    res.delta = cells[k].delta;
    res.d = cells[k].d;
    res.c = c;
    res.jump = true_jump(spec.dist, c, cells[k].d);

    std::optional<Degeneracy> first_failure;
    double sum = 0.0;
    double sum_b = 0.0;
    std::map<double, std::size_t> rejections;
    for (double level : spec.levels) {
      rejections[level] = 0;
    }
    for (const auto& rep : outcomes) {
      const Outcome& o = rep[k];
      if (o.failure) {
        ++res.excluded;
        if (!first_failure) {
          first_failure = o.failure;
        }
        continue;
      }
      ++res.used;
      sum += o.jump;
      sum_b += o.b;
      for (auto& [level, count] : rejections) {
        count += o.p_value < level ? 1 : 0;
      }
    }
    if (static_cast<double>(res.excluded) > kMaxExcludedShare * static_cast<double>(spec.reps) ||
        res.used == 0) {
      throw DegenerateError(*first_failure,
                            std::to_string(res.excluded) + " of " + std::to_string(spec.reps) +
                              " replications degenerate (" + to_string(*first_failure) +
                              ") in cell delta = " + std::to_string(res.delta) +
                              ", d = " + std::to_string(res.d));
    }

    const double used = static_cast<double>(res.used);
    const double mean = sum / used;
    double centered = 0.0;
    double squared_error = 0.0;
    for (const auto& rep : outcomes) {
      if (!rep[k].failure) {
        centered += (rep[k].jump - mean) * (rep[k].jump - mean);
        squared_error += (rep[k].jump - res.jump) * (rep[k].jump - res.jump);
      }
    }
    res.bias = mean - res.jump;
    res.std_dev = std::sqrt(centered / used);
    res.rmse = std::sqrt(squared_error / used);
    res.mean_b = sum_b / used;
    for (const auto& [level, count] : rejections) {
      res.rejection_rates[level] = static_cast<double>(count) / used;
    }
    results.push_back(std::move(res));
  }
  return results;
}

std::vector<CellResult>
run_estimation_study(const SimulationSpec& spec)
{
  SimulationSpec continuous = spec;
  continuous.d = { 0.0 };
  return run_study(continuous);
}

std::vector<CellResult>
run_size_power_study(const SimulationSpec& spec)
{
  return run_study(spec);
}

} // namespace jumpdens
