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

#pragma once

#include <map>
#include <string>

#include "spmt/crypto.hpp"

namespace spmt {

// Trust anchors every role is provisioned with at startup: the attestation
// authority key, the expected code measurement, and the registered data
// source and monitor verification keys. Lookups for unregistered ids fail
// explicitly; there is no implicit trust path.
struct KeyRegistry {
  PublicKey apk;
  Hash32 expected_measurement{};
  std::map<std::string, PublicKey> data_source_keys;
  std::map<std::string, PublicKey> monitor_keys;

  const PublicKey* find_data_source(const std::string& key_id) const;
  const PublicKey* find_monitor(const std::string& key_id) const;

  void save_json(const std::string& path) const;
  static KeyRegistry load_json(const std::string& path);
};

}  // namespace spmt
