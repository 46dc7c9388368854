#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jumpdens::cli {

using Json = nlohmann::ordered_json;

std::string_view tool_version();

//! Everything needed to regenerate an output: the command, absolute input
//! paths, the fully resolved parameters, the tool version and the seed.
//! Thread counts and output paths are deliberately absent.
struct RunManifest
{
  std::string command;
  std::vector<std::string> inputs;
  Json parameters = Json::object();
  std::string tool_version{ cli::tool_version() };
  std::uint64_t seed = 0;

  Json to_json() const;
  static RunManifest from_json(const Json& j);
};

//! One emitted file. `kind` names the document so that replay can rebuild
//! exactly that one: result, selection, curve, histogram, table or summary.
struct Document
{
  std::string kind;
  std::string body;
};

//! Recovers the manifest embedded in a JSON document (`manifest` field) or a
//! CSV document (`# manifest: ` comment line). Sets `kind`.
RunManifest extract_manifest(std::string_view text, std::string& kind);

//! Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& body);

std::string absolute_path(const std::string& path);

} // namespace jumpdens::cli
