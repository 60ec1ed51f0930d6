#include "netanon/registry.hpp"

#include <fstream>

#include <json.hpp>

#include "netanon/error.hpp"

namespace netanon {

Registry Registry::load(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error("cannot open registry manifest: " + manifest.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad registry manifest " + manifest.string() + ": " + e.what());
  }
  Registry registry;
  registry.base_dir = manifest.has_parent_path() ? manifest.parent_path()
                                                 : std::filesystem::path(".");
  for (const auto& item : doc.at("datasets")) {
    DatasetEntry entry;
    entry.name = item.at("name").get<std::string>();
    entry.path = item.at("path").get<std::string>();
    if (item.contains("url") && item["url"].is_string())
      entry.url = item["url"].get<std::string>();
    if (item.contains("expected"))
      for (const auto& [key, value] : item["expected"].items())
        if (value.is_number()) entry.expected[key] = value.get<double>();
    registry.datasets.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < registry.datasets.size(); ++i)
    for (std::size_t j = i + 1; j < registry.datasets.size(); ++j)
      if (registry.datasets[i].name == registry.datasets[j].name)
        throw Error("duplicate dataset name in registry: " + registry.datasets[i].name);
  return registry;
}

const DatasetEntry* Registry::find(const std::string& name) const {
  for (const auto& entry : datasets)
    if (entry.name == name) return &entry;
  return nullptr;
}

std::filesystem::path Registry::resolve(const DatasetEntry& entry) const {
  std::filesystem::path p(entry.path);
  return p.is_absolute() ? p : base_dir / p;
}

}  // namespace netanon
