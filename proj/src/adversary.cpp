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

#include "spmt/adversary.hpp"

#include <sstream>
#include <vector>

namespace spmt {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError("bad " + what + " in adversary mode: " + text);
  }
}

}  // namespace

AdversaryMode AdversaryMode::parse(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.empty()) throw ConfigError("empty adversary mode");
  AdversaryMode mode;
  const std::string& name = parts[0];
  if (name == "honest") {
    if (parts.size() != 1) throw ConfigError("honest takes no arguments");
    return mode;
  }
  if (name == "drop_batch") {
    if (parts.size() != 2) throw ConfigError("expected drop_batch:K");
    mode.kind = Kind::drop_batch;
    mode.batch = parse_u64(parts[1], "batch");
    return mode;
  }
  if (name == "drop_item") {
    if (parts.size() != 3) throw ConfigError("expected drop_item:K:J");
    mode.kind = Kind::drop_item;
    mode.batch = parse_u64(parts[1], "batch");
    mode.position = static_cast<uint32_t>(parse_u64(parts[2], "position"));
    return mode;
  }
  if (name == "forge_ack_flood") {
    if (parts.size() > 2) throw ConfigError("expected forge_ack_flood[:N]");
    mode.kind = Kind::forge_ack_flood;
    if (parts.size() == 2)
      mode.spurious_acks_per_store = static_cast<uint32_t>(parse_u64(parts[1], "ack count"));
    return mode;
  }
  if (name == "fork") {
    if (parts.size() < 2) throw ConfigError("expected fork:K[:requester=B,...]");
    mode.kind = Kind::fork;
    mode.batch = parse_u64(parts[1], "batch");
    if (parts.size() >= 3) {
      for (const auto& pair : split(parts[2], ',')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos) throw ConfigError("bad view assignment: " + pair);
        char v = pair.substr(eq + 1).empty() ? 'A' : pair[eq + 1];
        if (v != 'A' && v != 'B') throw ConfigError("view must be A or B: " + pair);
        mode.view_assignment[pair.substr(0, eq)] = v;
      }
    }
    return mode;
  }
  if (name == "drop_after_monitor") {
    if (parts.size() != 2) throw ConfigError("expected drop_after_monitor:K");
    mode.kind = Kind::drop_after_monitor;
    mode.batch = parse_u64(parts[1], "batch");
    return mode;
  }
  throw ConfigError("unknown adversary mode: " + name);
}

std::string AdversaryMode::to_string() const {
  switch (kind) {
    case Kind::honest:
      return "honest";
    case Kind::drop_batch:
      return "drop_batch:" + std::to_string(batch);
    case Kind::drop_item:
      return "drop_item:" + std::to_string(batch) + ":" + std::to_string(position);
    case Kind::forge_ack_flood:
      return "forge_ack_flood:" + std::to_string(spurious_acks_per_store);
    case Kind::fork: {
      std::string out = "fork:" + std::to_string(batch);
      if (!view_assignment.empty()) {
        out += ":";
        bool first = true;
        for (const auto& [id, v] : view_assignment) {
          if (!first) out += ",";
          out += id + "=" + v;
          first = false;
        }
      }
      return out;
    }
    case Kind::drop_after_monitor:
      return "drop_after_monitor:" + std::to_string(batch);
  }
  return "honest";
}

}  // namespace spmt
