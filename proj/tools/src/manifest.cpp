#include "jumpdens/cli/manifest.hpp"

#include "jumpdens/cli/errors.hpp"
#include "jumpdens/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#ifndef JUMPDENS_VERSION
#define JUMPDENS_VERSION "0.0.0"
#endif

namespace jumpdens::cli {

std::string_view
tool_version()
{
  return JUMPDENS_VERSION;
}

Json
RunManifest::to_json() const
{
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["parameters"] = parameters;
  j["tool_version"] = tool_version;
  j["seed"] = seed;
  return j;
}

RunManifest
RunManifest::from_json(const Json& j)
{
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.parameters = j.at("parameters");
    m.tool_version = j.at("tool_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

RunManifest
extract_manifest(std::string_view text, std::string& kind)
{
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("document is not valid JSON: ") + e.what());
    }
    if (!doc.contains("manifest") || !doc.contains("document")) {
      throw ConfigError("JSON document carries no manifest");
    }
    kind = doc["document"].get<std::string>();
    return RunManifest::from_json(doc["manifest"]);
  }

  constexpr std::string_view kind_tag = "# jumpdens ";
  constexpr std::string_view manifest_tag = "# manifest: ";
  kind.clear();
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (line.rfind(kind_tag, 0) == 0) {
      kind = std::string(line.substr(kind_tag.size()));
    } else if (line.rfind(manifest_tag, 0) == 0) {
      if (kind.empty()) {
        throw ConfigError("CSV document names no kind before its manifest");
      }
      try {
        return RunManifest::from_json(Json::parse(line.substr(manifest_tag.size())));
      } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed manifest line: ") + e.what());
      }
    } else if (line.empty() || line.front() != '#') {
      break;
    }
  }
  throw ConfigError("document carries no manifest");
}

void
write_atomic(const std::string& path, const std::string& body)
{
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  const fs::path tmp = target.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write '" + path + "'");
    }
    out << body;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("error while writing '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

std::string
absolute_path(const std::string& path)
{
  std::error_code ec;
  const auto p = std::filesystem::absolute(path, ec);
  return ec ? path : p.lexically_normal().string();
}

} // namespace jumpdens::cli
