// Copyright 2026 SPMT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spmt/config.hpp"

#include <fstream>

#include "json.hpp"

namespace spmt {

ServiceConfig ServiceConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
    ServiceConfig cfg;
    auto get = [&j](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("tee_listen", cfg.tee_listen);
    get("db_listen", cfg.db_listen);
    get("monitor_listen", cfg.monitor_listen);
    get("tee_address", cfg.tee_address);
    get("db_address", cfg.db_address);
    get("monitor_address", cfg.monitor_address);
    get("registry", cfg.registry_path);
    get("authority_key", cfg.authority_key_path);
    get("monitor_key", cfg.monitor_key_path);
    get("source_key", cfg.source_key_path);
    get("source_key_id", cfg.source_key_id);
    get("monitor_key_id", cfg.monitor_key_id);
    get("batch_capacity", cfg.batch_capacity);
    get("history_capacity", cfg.history_capacity);
    get("freq_tee", cfg.freq_tee);
    get("freq_monitor", cfg.freq_monitor);
    get("flush_timeout_ms", cfg.flush_timeout_ms);
    get("blocking", cfg.blocking);
    get("pull_period_ms", cfg.pull_period_ms);
    get("adversary", cfg.adversary);
    get("db_log_file", cfg.db_log_file);
    if (j.contains("bench")) {
      const auto& b = j["bench"];
      if (b.contains("concurrency_levels"))
        cfg.bench.concurrency_levels = b["concurrency_levels"].get<std::vector<size_t>>();
      if (b.contains("iterations")) cfg.bench.iterations = b["iterations"].get<size_t>();
      if (b.contains("payload_bytes")) cfg.bench.payload_bytes = b["payload_bytes"].get<size_t>();
      if (b.contains("duration_s"))
        cfg.bench.duration = std::chrono::seconds(b["duration_s"].get<int>());
      if (b.contains("iqr_multiplier"))
        cfg.bench.iqr_multiplier = b["iqr_multiplier"].get<double>();
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config json: " + std::string(e.what()));
  }
}

}  // namespace spmt
