#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace netanon {

// One dataset in the local manifest. `expected` holds published statistics
// (when known) used by integration checks; `url` is only consulted by the
// explicit fetch subcommand — nothing downloads implicitly.
struct DatasetEntry {
  std::string name;
  std::string path;
  std::string url;  // empty when unknown
  std::map<std::string, double> expected;
};

struct Registry {
  std::vector<DatasetEntry> datasets;
  std::filesystem::path base_dir;  // relative dataset paths resolve against this

  static Registry load(const std::filesystem::path& manifest);

  const DatasetEntry* find(const std::string& name) const;
  std::filesystem::path resolve(const DatasetEntry& entry) const;
};

}  // namespace netanon
