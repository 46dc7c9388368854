#pragma once

#include "jumpdens/bandwidth.hpp"
#include "jumpdens/cli/manifest.hpp"
#include "jumpdens/simulate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jumpdens::cli {

Json bandwidth_to_json(const BandwidthConfig& cfg);
BandwidthConfig bandwidth_from_json(const Json& j);

Json spec_to_json(const SimulationSpec& spec, int table);
SimulationSpec spec_from_json(const Json& j, std::uint64_t seed);

struct TestOptions
{
  std::string data;
  double cutoff = 0.0;
  std::optional<double> bandwidth; // empty: power-optimal selection
  double delta = 0.81;
  VarianceVariant variant = VarianceVariant::v2;
  double alpha = 0.05;
  BandwidthConfig selection;
  std::uint64_t seed = 0;
};

struct DensityOptions
{
  std::string data;
  double bandwidth = 0.0;
  std::optional<double> cutoff;
  std::vector<double> grid;
  std::optional<double> hist_width;
  std::uint64_t seed = 0;
};

struct BandwidthOptions
{
  std::string data;
  double cutoff = 0.0;
  BandwidthConfig selection;
  std::uint64_t seed = 0;
};

struct SimulateOptions
{
  int table = 2;
  SimulationSpec spec;
  std::optional<std::string> spec_file;
};

RunManifest make_manifest(const TestOptions& o);
RunManifest make_manifest(const DensityOptions& o);
RunManifest make_manifest(const BandwidthOptions& o);
RunManifest make_manifest(const SimulateOptions& o);

//! "lo:hi:count" (count >= 2, inclusive ends) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

struct RunOptions
{
  unsigned threads = 1;
};

//! Runs the manifest and returns every document it defines, primary first:
//! test -> result; bandwidth -> selection; density -> curve [, histogram];
//! simulate -> table, summary.
std::vector<Document> execute(const RunManifest& manifest, const RunOptions& opts);

//! The single document of the given kind.
Document execute_kind(const RunManifest& manifest, const std::string& kind, const RunOptions& opts);

std::vector<CellResult> run_simulation(const RunManifest& manifest, const RunOptions& opts);

//! The table CSV and the JSON summary of finished cells.
std::vector<Document> simulation_documents(const RunManifest& manifest, const std::vector<CellResult>& cells);

//! Fixed-width table of simulation cells with 6 significant digits.
std::string format_cells_table(const std::vector<CellResult>& cells);

} // namespace jumpdens::cli
