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

#include "spmt/registry.hpp"

#include <fstream>

#include "json.hpp"
#include "spmt/error.hpp"

namespace spmt {

const PublicKey* KeyRegistry::find_data_source(const std::string& key_id) const {
  auto it = data_source_keys.find(key_id);
  return it == data_source_keys.end() ? nullptr : &it->second;
}

const PublicKey* KeyRegistry::find_monitor(const std::string& key_id) const {
  auto it = monitor_keys.find(key_id);
  return it == monitor_keys.end() ? nullptr : &it->second;
}

void KeyRegistry::save_json(const std::string& path) const {
  nlohmann::json j;
  j["apk"] = to_hex(view(apk.der()));
  j["expected_measurement"] = to_hex(view(expected_measurement));
  for (const auto& [id, key] : data_source_keys) j["data_sources"][id] = to_hex(view(key.der()));
  for (const auto& [id, key] : monitor_keys) j["monitors"][id] = to_hex(view(key.der()));
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write registry: " + path);
  out << j.dump(2) << "\n";
}

KeyRegistry KeyRegistry::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open registry: " + path);
  nlohmann::json j;
  try {
    in >> j;
    KeyRegistry reg;
    reg.apk = PublicKey::from_der(view(from_hex(j.at("apk").get<std::string>())));
    reg.expected_measurement =
        hash32_from_hex(j.at("expected_measurement").get<std::string>());
    if (j.contains("data_sources"))
      for (auto& [id, hex] : j["data_sources"].items())
        reg.data_source_keys[id] = PublicKey::from_der(view(from_hex(hex.get<std::string>())));
    if (j.contains("monitors"))
      for (auto& [id, hex] : j["monitors"].items())
        reg.monitor_keys[id] = PublicKey::from_der(view(from_hex(hex.get<std::string>())));
    return reg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad registry json: " + std::string(e.what()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad registry hex: " + std::string(e.what()));
  }
}

}  // namespace spmt
