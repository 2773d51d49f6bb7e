#include "tcw/config.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"

namespace tcw {

void validate(const Config& config) {
  if (config.table_arity_cap < 1 || config.table_arity_cap > 9)
    throw std::invalid_argument("config: table_arity_cap must lie in 1..9");
  if (config.witness_table_cap < 1 || config.witness_table_cap > 16)
    throw std::invalid_argument("config: witness_table_cap must lie in 1..16");
  if (config.bfs_node_budget < 1)
    throw std::invalid_argument("config: bfs_node_budget must be >= 1");
  if (config.bfs_depth_cap < 1)
    throw std::invalid_argument("config: bfs_depth_cap must be >= 1");
  if (config.report_format != "text" && config.report_format != "json")
    throw std::invalid_argument(
        "config: report_format must be \"text\" or \"json\"");
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON: " +
                                e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: '" + path +
                                "' must contain a JSON object");

  Config config;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "table_arity_cap") {
        config.table_arity_cap = value.get<int>();
      } else if (key == "witness_table_cap") {
        config.witness_table_cap = value.get<int>();
      } else if (key == "bfs_node_budget") {
        config.bfs_node_budget = value.get<std::uint64_t>();
      } else if (key == "bfs_depth_cap") {
        config.bfs_depth_cap = value.get<int>();
      } else if (key == "report_format") {
        config.report_format = value.get<std::string>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "' in '" +
                                    path + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config: bad value for '" + key + "' in '" +
                                  path + "': " + e.what());
    }
  }
  validate(config);
  return config;
}

Config load_config_from_env() {
  const char* path = std::getenv("TCW_CONFIG");
  if (path && *path) return load_config_file(path);
  return Config{};
}

}  // namespace tcw
