#include "jumpdens/cli/commands.hpp"

#include "jumpdens/cli/csv.hpp"
#include "jumpdens/errors.hpp"
#include "jumpdens/estim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace jumpdens::cli {

namespace {

std::string
csv_header(const RunManifest& m, const std::string& kind)
{
  return "# jumpdens " + kind + "\n# manifest: " + m.to_json().dump() + "\n";
}

std::string
json_body(Json doc)
{
  return doc.dump(2) + "\n";
}

Sample
load_sample(const RunManifest& m)
{
  if (m.inputs.size() != 1) {
    throw ConfigError("command '" + m.command + "' expects exactly one data file");
  }
  return Sample(read_column(m.inputs.front()));
}

template<class T>
T
param(const Json& p, const char* key)
{
  try {
    return p.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("manifest parameter '") + key + "' missing or malformed");
  }
}

std::optional<double>
optional_param(const Json& p, const char* key)
{
  if (!p.contains(key) || p.at(key).is_null()) {
    return std::nullopt;
  }
  return param<double>(p, key);
}

Json
optional_json(const std::optional<double>& v)
{
  return v ? Json(*v) : Json(nullptr);
}

Json
selection_json(const BandwidthSelection& sel)
{
  Json j;
  j["b_hat_n"] = sel.b_hat_n;
  j["b_hat_k"] = sel.b_hat_k;
  j["B_hat"] = sel.B_hat;
  j["M"] = sel.M;
  j["k_minus"] = sel.k_minus;
  j["k_plus"] = sel.k_plus;
  j["k"] = sel.k_minus + sel.k_plus;
  j["n"] = sel.n;
  j["flat"] = sel.flat;
  Json curve = Json::array();
  for (const PowerPoint& pt : sel.power_curve) {
    curve.push_back({ { "b_k", pt.b_k }, { "power", pt.power }, { "degenerate", pt.degenerate } });
  }
  j["power_curve"] = std::move(curve);
  return j;
}

Document
run_test(const RunManifest& m, const RunOptions& opts)
{
  const Json& p = m.parameters;
  const Sample sample = load_sample(m);
  const double c = param<double>(p, "cutoff");
  const double delta = param<double>(p, "delta");
  const VarianceVariant variant = parse_variance_variant(param<std::string>(p, "variant"));
  const double alpha = param<double>(p, "alpha");

  std::optional<BandwidthSelection> sel;
  double b = 0.0;
  if (const auto fixed = optional_param(p, "bandwidth")) {
    b = *fixed;
  } else {
    BandwidthConfig cfg = bandwidth_from_json(p.at("selection"));
    cfg.delta = delta;
    cfg.variant = variant;
    cfg.threads = opts.threads;
    sel = select_bandwidth(sample, c, cfg);
    b = sel->b_hat_n;
  }
  const JumpTestResult r = jump_test(sample, c, b, delta, variant, alpha);

  Json doc;
  doc["document"] = "result";
  doc["manifest"] = m.to_json();
  doc["c"] = c;
  doc["b"] = b;
  doc["b_source"] = sel ? "power_optimal" : "explicit";
  doc["delta"] = delta;
  doc["variant"] = std::string(to_string(variant));
  doc["alpha"] = alpha;
  doc["f_minus"] = r.f_minus;
  doc["f_plus"] = r.f_plus;
  doc["jump"] = r.jump;
  doc["f_gamma"] = r.f_gamma;
  doc["variance"] = r.variance;
  doc["t_stat"] = r.t_stat;
  doc["p_value"] = r.p_value;
  doc["reject"] = r.reject;
  doc["n"] = r.n;
  doc["n_minus"] = r.n_minus;
  doc["n_plus"] = r.n_plus;
  doc["mbc_degenerate"] = r.mbc_degenerate;
  if (sel) {
    doc["selection"] = selection_json(*sel);
  }
  return { "result", json_body(std::move(doc)) };
}

Document
run_bandwidth(const RunManifest& m, const RunOptions& opts)
{
  const Json& p = m.parameters;
  const Sample sample = load_sample(m);
  const double c = param<double>(p, "cutoff");
  BandwidthConfig cfg = bandwidth_from_json(p.at("selection"));
  cfg.threads = opts.threads;
  const BandwidthSelection sel = select_bandwidth(sample, c, cfg);

  Json doc;
  doc["document"] = "selection";
  doc["manifest"] = m.to_json();
  doc["c"] = c;
  doc["config"] = bandwidth_to_json(cfg);
  const Json selection = selection_json(sel);
  for (const auto& [key, value] : selection.items()) {
    doc[key] = value;
  }
  return { "selection", json_body(std::move(doc)) };
}

std::string
histogram_csv(const RunManifest& m, const Sample& sample, double width, std::optional<double> c)
{
  // Bin edges are anchored so that the cutoff, when given, is an edge.
  const double offset = c ? std::fmod(*c, width) : 0.0;
  const double top = sample.values().back();
  std::vector<double> edges{ 0.0 };
  for (double e = offset > 0.0 ? offset : width; edges.back() <= top; e += width) {
    edges.push_back(e);
  }
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (double v : sample.values()) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1;
  }
  std::string out = csv_header(m, "histogram") + "lo,hi,count,density\n";
  const double n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    out += format_double(lo) + "," + format_double(hi) + "," + std::to_string(counts[i]) + "," +
           format_double(static_cast<double>(counts[i]) / (n * (hi - lo))) + "\n";
  }
  return out;
}

std::vector<Document>
run_density(const RunManifest& m)
{
  const Json& p = m.parameters;
  const Sample sample = load_sample(m);
  const double b = param<double>(p, "bandwidth");
  const std::optional<double> c = optional_param(p, "cutoff");
  const auto grid = param<std::vector<double>>(p, "grid");
  if (grid.empty()) {
    throw ConfigError("density grid is empty");
  }
  const DensityCurve curve = density_curve(sample, b, grid, c);

  std::string out = csv_header(m, "curve") + "x,estimate,side\n";
  for (const CurvePoint& pt : curve.points) {
    out += format_double(pt.x) + "," + format_double(pt.estimate) + "," + std::string(to_string(pt.side)) + "\n";
  }
  std::vector<Document> docs{ { "curve", std::move(out) } };
  if (const auto width = optional_param(p, "hist_width")) {
    if (!(*width > 0.0)) {
      throw ConfigError("histogram bin width must be positive");
    }
    docs.push_back({ "histogram", histogram_csv(m, sample, *width, c) });
  }
  return docs;
}

std::string
level_key(double level)
{
  return format_double(level);
}

} // namespace

Json
bandwidth_to_json(const BandwidthConfig& cfg)
{
  Json j;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["h_lo"] = cfg.h_lo;
  j["h_hi"] = cfg.h_hi;
  j["grid_step"] = cfg.grid_step;
  j["crit"] = cfg.alpha_crit;
  j["two_sided"] = cfg.two_sided;
  j["delta"] = cfg.delta;
  j["variant"] = std::string(to_string(cfg.variant));
  return j;
}

BandwidthConfig
bandwidth_from_json(const Json& j)
{
  BandwidthConfig cfg;
  cfg.p = param<double>(j, "p");
  cfg.q = param<double>(j, "q");
  cfg.h_lo = param<double>(j, "h_lo");
  cfg.h_hi = param<double>(j, "h_hi");
  cfg.grid_step = param<double>(j, "grid_step");
  cfg.alpha_crit = param<double>(j, "crit");
  cfg.two_sided = param<bool>(j, "two_sided");
  cfg.delta = param<double>(j, "delta");
  cfg.variant = parse_variance_variant(param<std::string>(j, "variant"));
  cfg.validate();
  return cfg;
}

Json
spec_to_json(const SimulationSpec& spec, int table)
{
  Json j;
  j["table"] = table;
  j["dist"] = std::string(to_string(spec.dist.family));
  j["shape"] = spec.dist.shape;
  j["scale"] = spec.dist.scale;
  j["cutoff_rule"] = spec.cutoff.kind == CutoffRule::Kind::quantile ? "quantile" : "explicit";
  j["cutoff_value"] = spec.cutoff.value;
  j["d"] = spec.d;
  j["n"] = spec.n;
  j["reps"] = spec.reps;
  j["delta"] = spec.deltas;
  j["variant"] = std::string(to_string(spec.variant));
  j["levels"] = spec.levels;
  j["selection"] = bandwidth_to_json(spec.bandwidth);
  return j;
}

SimulationSpec
spec_from_json(const Json& j, std::uint64_t seed)
{
  SimulationSpec spec;
  spec.dist.family = parse_family(param<std::string>(j, "dist"));
  spec.dist.shape = param<double>(j, "shape");
  spec.dist.scale = param<double>(j, "scale");
  const auto rule = param<std::string>(j, "cutoff_rule");
  const double value = param<double>(j, "cutoff_value");
  if (rule == "quantile") {
    spec.cutoff = CutoffRule::at_quantile(value);
  } else if (rule == "explicit") {
    spec.cutoff = CutoffRule::at(value);
  } else {
    throw ConfigError("unknown cutoff rule '" + rule + "'");
  }
  spec.d = param<std::vector<double>>(j, "d");
  spec.n = param<std::size_t>(j, "n");
  spec.reps = param<std::size_t>(j, "reps");
  spec.deltas = param<std::vector<double>>(j, "delta");
  spec.variant = parse_variance_variant(param<std::string>(j, "variant"));
  spec.levels = param<std::vector<double>>(j, "levels");
  spec.bandwidth = bandwidth_from_json(j.at("selection"));
  spec.seed = seed;
  return spec;
}

RunManifest
make_manifest(const TestOptions& o)
{
  RunManifest m;
  m.command = "test";
  m.inputs = { absolute_path(o.data) };
  m.seed = o.seed;
  Json& p = m.parameters;
  p["cutoff"] = o.cutoff;
  p["bandwidth"] = optional_json(o.bandwidth);
  p["delta"] = o.delta;
  p["variant"] = std::string(to_string(o.variant));
  p["alpha"] = o.alpha;
  BandwidthConfig cfg = o.selection;
  cfg.delta = o.delta;
  cfg.variant = o.variant;
  p["selection"] = bandwidth_to_json(cfg);
  return m;
}

RunManifest
make_manifest(const DensityOptions& o)
{
  RunManifest m;
  m.command = "density";
  m.inputs = { absolute_path(o.data) };
  m.seed = o.seed;
  Json& p = m.parameters;
  p["bandwidth"] = o.bandwidth;
  p["cutoff"] = optional_json(o.cutoff);
  p["grid"] = o.grid;
  p["hist_width"] = optional_json(o.hist_width);
  return m;
}

RunManifest
make_manifest(const BandwidthOptions& o)
{
  RunManifest m;
  m.command = "bandwidth";
  m.inputs = { absolute_path(o.data) };
  m.seed = o.seed;
  m.parameters["cutoff"] = o.cutoff;
  m.parameters["selection"] = bandwidth_to_json(o.selection);
  return m;
}

RunManifest
make_manifest(const SimulateOptions& o)
{
  RunManifest m;
  m.command = "simulate";
  if (o.spec_file) {
    m.inputs = { absolute_path(*o.spec_file) };
  }
  m.seed = o.spec.seed;
  m.parameters = spec_to_json(o.spec, o.table);
  return m;
}

std::vector<double>
parse_grid(const std::string& text)
{
  auto number = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
      s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
      s.remove_suffix(1);
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
      throw ConfigError("grid: '" + std::string(s) + "' is not a number");
    }
    return v;
  };

  std::vector<double> grid;
  const std::string_view all(text);
  if (all.find(':') != std::string_view::npos) {
    const auto first = all.find(':');
    const auto second = all.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw ConfigError("grid: expected lo:hi:count");
    }
    const double lo = number(all.substr(0, first));
    const double hi = number(all.substr(first + 1, second - first - 1));
    const double count = number(all.substr(second + 1));
    if (!(count >= 2.0) || count != std::floor(count) || !(hi > lo)) {
      throw ConfigError("grid: need hi > lo and an integer count >= 2");
    }
    const auto k = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < k; ++i) {
      grid.push_back(i + 1 == k ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
    }
    return grid;
  }
  std::string_view rest = all;
  while (true) {
    const auto comma = rest.find(',');
    grid.push_back(number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(comma + 1);
  }
  return grid;
}

std::vector<CellResult>
run_simulation(const RunManifest& m, const RunOptions& opts)
{
  SimulationSpec spec = spec_from_json(m.parameters, m.seed);
  spec.threads = opts.threads;
  return param<int>(m.parameters, "table") == 1 ? run_estimation_study(spec) : run_size_power_study(spec);
}

std::vector<Document>
simulation_documents(const RunManifest& m, const std::vector<CellResult>& cells)
{
  const Json& p = m.parameters;
  const std::string prefix = std::to_string(param<int>(p, "table")) + "," + param<std::string>(p, "dist") + "," +
                             format_double(param<double>(p, "shape")) + "," +
                             format_double(param<double>(p, "scale")) + ",";
  const std::string sizes = std::to_string(param<std::size_t>(p, "n")) + "," +
                            std::to_string(param<std::size_t>(p, "reps")) + "," + std::to_string(m.seed) + "," +
                            param<std::string>(p, "variant") + ",";

  std::string csv = csv_header(m, "table") +
                    "table,dist,shape,scale,c,n,reps,seed,variant,delta,d,jump,bias,std_dev,rmse,mean_b,used,"
                    "excluded,level,rejection_rate\n";
  Json cells_json = Json::array();
  for (const CellResult& cell : cells) {
    const std::string stats = format_double(cell.delta) + "," + format_double(cell.d) + "," +
                              format_double(cell.jump) + "," + format_double(cell.bias) + "," +
                              format_double(cell.std_dev) + "," + format_double(cell.rmse) + "," +
                              format_double(cell.mean_b) + "," + std::to_string(cell.used) + "," +
                              std::to_string(cell.excluded) + ",";
    Json rates = Json::object();
    for (const auto& [level, rate] : cell.rejection_rates) {
      csv += prefix + format_double(cell.c) + "," + sizes + stats + format_double(level) + "," +
             format_double(rate) + "\n";
      rates[level_key(level)] = rate;
    }
    Json cj;
    cj["delta"] = cell.delta;
    cj["d"] = cell.d;
    cj["c"] = cell.c;
    cj["jump"] = cell.jump;
    cj["bias"] = cell.bias;
    cj["std_dev"] = cell.std_dev;
    cj["rmse"] = cell.rmse;
    cj["mean_b"] = cell.mean_b;
    cj["used"] = cell.used;
    cj["excluded"] = cell.excluded;
    cj["rejection_rates"] = std::move(rates);
    cells_json.push_back(std::move(cj));
  }

  Json summary;
  summary["document"] = "summary";
  summary["manifest"] = m.to_json();
  summary["cells"] = std::move(cells_json);
  return { { "table", std::move(csv) }, { "summary", json_body(std::move(summary)) } };
}

std::vector<Document>
execute(const RunManifest& m, const RunOptions& opts)
{
  if (m.tool_version != tool_version()) {
    throw ConfigError("manifest was written by version " + m.tool_version + ", this is " +
                      std::string(tool_version()));
  }
  if (m.command == "test") {
    return { run_test(m, opts) };
  }
  if (m.command == "bandwidth") {
    return { run_bandwidth(m, opts) };
  }
  if (m.command == "density") {
    return run_density(m);
  }
  if (m.command == "simulate") {
    return simulation_documents(m, run_simulation(m, opts));
  }
  throw ConfigError("unknown command '" + m.command + "' in manifest");
}

Document
execute_kind(const RunManifest& m, const std::string& kind, const RunOptions& opts)
{
  for (Document& doc : execute(m, opts)) {
    if (doc.kind == kind) {
      return std::move(doc);
    }
  }
  throw ConfigError("command '" + m.command + "' produces no '" + kind + "' document");
}

std::string
format_cells_table(const std::vector<CellResult>& cells)
{
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%8s %8s %10s %10s %10s %10s %10s %8s %8s %6s\n", "delta", "d", "jump", "bias",
                "std_dev", "rmse", "mean_b", "rej5%", "rej10%", "excl");
  out << line;
  for (const CellResult& c : cells) {
    auto rate = [&](double level) {
      const auto it = c.rejection_rates.find(level);
      return it == c.rejection_rates.end() ? NAN : 100.0 * it->second;
    };
    std::snprintf(line, sizeof line, "%8.6g %8.6g %10.6g %10.6g %10.6g %10.6g %10.6g %8.6g %8.6g %6zu\n", c.delta,
                  c.d, c.jump, c.bias, c.std_dev, c.rmse, c.mean_b, rate(0.05), rate(0.10), c.excluded);
    out << line;
  }
  return out.str();
}

} // namespace jumpdens::cli
