#include "jumpdens/cli/app.hpp"

#include "jumpdens/cli/commands.hpp"
#include "jumpdens/cli/csv.hpp"
#include "jumpdens/cli/errors.hpp"
#include "jumpdens/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>

namespace jumpdens::cli {

namespace {

unsigned
default_threads()
{
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') {
      return static_cast<unsigned>(v);
    }
  }
  return 0;
}

void
add_selection_flags(CLI::App* cmd, BandwidthConfig& cfg)
{
  cmd->add_option("--p", cfg.p, "Sub-sample exponent: M = floor(min(n-^p, n+^p))")->capture_default_str();
  cmd->add_option("--q", cfg.q, "Rate exponent: b_n = B n^-q")->capture_default_str();
  cmd->add_option("--h-lo", cfg.h_lo, "Lower end of the sub-sample bandwidth grid")->capture_default_str();
  cmd->add_option("--h-hi", cfg.h_hi, "Upper end of the sub-sample bandwidth grid")->capture_default_str();
  cmd->add_option("--grid-step", cfg.grid_step, "Grid resolution")->capture_default_str();
  cmd->add_option("--crit", cfg.alpha_crit, "Critical value for sub-sample statistics")->capture_default_str();
  cmd->add_flag("--two-sided-criterion", cfg.two_sided, "Count |T_m| > crit instead of T_m > crit");
}

VarianceVariant
variant_from(const std::string& text)
{
  return parse_variance_variant(text);
}

void
emit(const Document& doc, const std::string& path, std::ostream& out)
{
  if (path.empty() || path == "-") {
    out << doc.body;
    out.flush();
  } else {
    write_atomic(path, doc.body);
  }
}

void
apply_table_defaults(int table, SimulationSpec& spec)
{
  switch (table) {
    case 1:
    case 2:
      spec.d = { 0.0 };
      spec.deltas = { 0.49, 0.64, 0.81 };
      break;
    case 3:
      spec.d = { 0.02, 0.04, 0.06, 0.08, 0.10 };
      spec.deltas = { 0.81 };
      break;
    default:
      throw ConfigError("--table must be 1, 2 or 3");
  }
}

} // namespace

int
run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Density discontinuity tests with truncated gamma kernels" };
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  unsigned threads = default_threads();
  std::string out_path;
  std::uint64_t seed = 0;
  std::string variant_text = "v2";

  // test
  TestOptions test;
  double test_bandwidth = 0.0;
  bool auto_bandwidth = false;
  auto* test_cmd = app.add_subcommand("test", "Estimate the jump at a cutoff and test continuity");
  test_cmd->add_option("data", test.data, "CSV file, first column used")->required();
  test_cmd->add_option("--cutoff", test.cutoff, "Cutoff c > 0")->required();
  auto* test_b = test_cmd->add_option("--bandwidth", test_bandwidth, "Fixed smoothing parameter b");
  auto* test_auto = test_cmd->add_flag("--auto-bandwidth", auto_bandwidth, "Power-optimal b (default)");
  test_b->excludes(test_auto);
  test_cmd->add_option("--delta", test.delta, "Mixing exponent in (0, 0.99]")->capture_default_str();
  test_cmd->add_option("--variant", variant_text, "Variance estimate: v1 or v2")->capture_default_str();
  test_cmd->add_option("--alpha", test.alpha, "Significance level")->capture_default_str();
  add_selection_flags(test_cmd, test.selection);

  // density
  DensityOptions density;
  double density_cutoff = 0.0;
  double hist_width = 0.0;
  std::string grid_text;
  std::string hist_out;
  auto* density_cmd = app.add_subcommand("density", "Estimate the density on a grid");
  density_cmd->add_option("data", density.data, "CSV file, first column used")->required();
  density_cmd->add_option("--bandwidth", density.bandwidth, "Smoothing parameter b")->required();
  auto* density_c = density_cmd->add_option("--cutoff", density_cutoff, "Known discontinuity point");
  density_cmd->add_option("--grid", grid_text, "lo:hi:count or a comma-separated list")->required();
  auto* density_hw = density_cmd->add_option("--hist-width", hist_width, "Histogram companion bin width");
  density_cmd->add_option("--hist-out", hist_out, "Histogram companion file")->needs(density_hw);
  density_hw->needs(density_cmd->get_option("--hist-out"));

  // bandwidth
  BandwidthOptions bandwidth;
  auto* bw_cmd = app.add_subcommand("bandwidth", "Power-optimal smoothing parameter selection");
  bw_cmd->add_option("data", bandwidth.data, "CSV file, first column used")->required();
  bw_cmd->add_option("--cutoff", bandwidth.cutoff, "Cutoff c > 0")->required();
  bw_cmd->add_option("--delta", bandwidth.selection.delta, "Mixing exponent in (0, 0.99]")->capture_default_str();
  bw_cmd->add_option("--variant", variant_text, "Variance estimate: v1 or v2")->capture_default_str();
  add_selection_flags(bw_cmd, bandwidth.selection);

  // simulate
  SimulateOptions sim;
  std::string sim_dist;
  double sim_shape = 0.0;
  double sim_scale = 0.0;
  double sim_cq = 0.0;
  double sim_c = 0.0;
  std::size_t sim_n = 0;
  std::size_t sim_reps = 0;
  std::vector<double> sim_d;
  std::vector<double> sim_delta;
  std::vector<double> sim_levels;
  std::string spec_file;
  std::string json_path;
  bool quiet = false;
  BandwidthConfig sim_selection;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the estimator and test");
  sim_cmd->add_option("--table", sim.table, "Study layout: 1 estimation, 2 size, 3 power")->capture_default_str();
  auto* o_dist = sim_cmd->add_option("--dist", sim_dist, "gamma or weibull");
  auto* o_shape = sim_cmd->add_option("--shape", sim_shape, "Shape parameter");
  auto* o_scale = sim_cmd->add_option("--scale", sim_scale, "Scale parameter");
  auto* o_cq = sim_cmd->add_option("--c-quantile", sim_cq, "Cutoff as a quantile level of the target");
  auto* o_c = sim_cmd->add_option("--c", sim_c, "Explicit cutoff");
  o_cq->excludes(o_c);
  auto* o_n = sim_cmd->add_option("--n", sim_n, "Sample size");
  auto* o_reps = sim_cmd->add_option("--reps", sim_reps, "Replications");
  auto* o_d = sim_cmd->add_option("--d", sim_d, "Discontinuity measures")->delimiter(',');
  auto* o_delta = sim_cmd->add_option("--delta", sim_delta, "Mixing exponents")->delimiter(',');
  auto* o_levels = sim_cmd->add_option("--levels", sim_levels, "Nominal levels")->delimiter(',');
  auto* o_variant = sim_cmd->add_option("--variant", variant_text, "Variance estimate: v1 or v2");
  auto* o_seed = sim_cmd->add_option("--seed", seed, "Base seed");
  sim_cmd->add_option("--spec", spec_file, "key = value settings file");
  sim_cmd->add_option("--json", json_path, "Also write the JSON summary here");
  sim_cmd->add_flag("--quiet", quiet, "No human-readable table on stderr");
  add_selection_flags(sim_cmd, sim_selection);

  // replay
  std::string replay_file;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the manifest embedded in an output file");
  replay_cmd->add_option("document", replay_file, "JSON or CSV output of an earlier run")->required();

  for (auto* cmd : { test_cmd, density_cmd, bw_cmd, sim_cmd, replay_cmd }) {
    cmd->add_option("--out", out_path, "Output file (default: stdout)");
    cmd->add_option("--threads", threads, "Worker threads, 0 = all cores (default: $THREADS or 0)");
    if (cmd != sim_cmd) {
      cmd->add_option("--seed", seed, "Recorded in the manifest");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  const RunOptions opts{ threads };
  try {
    if (test_cmd->parsed()) {
      test.variant = variant_from(variant_text);
      if (test_b->count() > 0) {
        test.bandwidth = test_bandwidth;
      }
      test.seed = seed;
      emit(execute(make_manifest(test), opts).front(), out_path, out);
    } else if (density_cmd->parsed()) {
      if (density_c->count() > 0) {
        density.cutoff = density_cutoff;
      }
      if (density_hw->count() > 0) {
        density.hist_width = hist_width;
      }
      density.grid = parse_grid(grid_text);
      density.seed = seed;
      const auto docs = execute(make_manifest(density), opts);
      emit(docs.front(), out_path, out);
      if (docs.size() > 1) {
        emit(docs[1], hist_out, out);
      }
    } else if (bw_cmd->parsed()) {
      bandwidth.selection.variant = variant_from(variant_text);
      bandwidth.seed = seed;
      emit(execute(make_manifest(bandwidth), opts).front(), out_path, out);
    } else if (sim_cmd->parsed()) {
      SimulationSpec& spec = sim.spec;
      apply_table_defaults(sim.table, spec);
      spec.bandwidth = sim_selection;
      if (!spec_file.empty()) {
        spec = parse_simulation_spec(read_file(spec_file), spec);
        sim.spec_file = spec_file;
      }
      if (o_dist->count() > 0) {
        spec.dist.family = parse_family(sim_dist);
        spec.dist.shape = spec.dist.family == Family::gamma ? 2.75 : 1.75;
        spec.dist.scale = spec.dist.family == Family::gamma ? 1.0 : 3.5;
      }
      if (o_shape->count() > 0) {
        spec.dist.shape = sim_shape;
      }
      if (o_scale->count() > 0) {
        spec.dist.scale = sim_scale;
      }
      if (o_cq->count() > 0) {
        spec.cutoff = CutoffRule::at_quantile(sim_cq);
      }
      if (o_c->count() > 0) {
        spec.cutoff = CutoffRule::at(sim_c);
      }
      if (o_n->count() > 0) {
        spec.n = sim_n;
      }
      if (o_reps->count() > 0) {
        spec.reps = sim_reps;
      }
      if (o_d->count() > 0) {
        spec.d = sim_d;
      }
      if (o_delta->count() > 0) {
        spec.deltas = sim_delta;
      }
      if (o_levels->count() > 0) {
        spec.levels = sim_levels;
      }
      if (o_variant->count() > 0) {
        spec.variant = variant_from(variant_text);
      }
      if (o_seed->count() > 0) {
        spec.seed = seed;
      }
      if (sim.table == 1) {
        spec.d = { 0.0 };
      }
      spec.validate();

      const RunManifest manifest = make_manifest(sim);
      const auto cells = run_simulation(manifest, opts);
      const auto docs = simulation_documents(manifest, cells);
      if (!quiet) {
        err << format_cells_table(cells);
      }
      emit(docs[0], out_path, out);
      if (!json_path.empty()) {
        emit(docs[1], json_path, out);
      }
    } else if (replay_cmd->parsed()) {
      std::string kind;
      const RunManifest manifest = extract_manifest(read_file(replay_file), kind);
      emit(execute_kind(manifest, kind, opts), out_path, out);
    }
  } catch (const IngestionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_ingestion;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_ok;
}

} // namespace jumpdens::cli
