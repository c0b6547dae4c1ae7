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

#include <atomic>
#include <map>
#include <optional>

#include "spmt/frame.hpp"
#include "spmt/server.hpp"

namespace spmt {

enum class LinkDir : uint8_t {
  to_server,  // frames flowing from the connecting side to the upstream
  to_client,  // responses flowing back
};

// One message-rewrite rule on an interposed link. Rules are evaluated in
// order against each whole frame; the first match decides the action.
// `nth` counts frames matching this rule's direction/type filter; with
// `repeat` the rule stays active for every later match too.
struct InterposeRule {
  enum class Action : uint8_t {
    tamper,          // XOR one body byte (offset < 0 counts from the end)
    drop,            // swallow the frame
    delay,           // forward after sleeping
    duplicate,       // forward twice
    swap_with_next,  // hold this frame, emit it after the next one
    capture,         // record the frame into `slot`, forward unchanged
    replay,          // substitute the frame captured in `slot`
  };

  LinkDir dir = LinkDir::to_server;
  std::optional<uint8_t> type;  // match any type when unset
  size_t nth = 0;
  bool repeat = false;
  Action action = Action::capture;

  ptrdiff_t offset = 0;
  uint8_t xor_mask = 0x01;
  std::chrono::milliseconds delay{0};
  std::string slot;
};

// A TCP proxy for one link of the deployment. Each accepted connection gets
// its own upstream connection; both directions are pumped frame by frame
// through the rule list. Rule match counters and capture slots are shared
// across connections, so a frame captured on one connection can be replayed
// into another.
class Interposer {
 public:
  Interposer(std::string upstream_address, std::vector<InterposeRule> rules);
  ~Interposer();

  void start();
  void stop();
  std::string address() const { return server_.address(); }

  std::optional<Frame> captured(const std::string& slot) const;
  size_t frames_forwarded(LinkDir dir) const;

 private:
  void handle_connection(TcpConn& client);
  void pump(TcpConn& src, TcpConn& dst, LinkDir dir);
  // nullopt = dropped
  std::optional<Frame> apply_rules(LinkDir dir, Frame frame, std::optional<Frame>& held);

  std::string upstream_address_;
  std::vector<InterposeRule> rules_;
  mutable std::mutex mu_;
  std::vector<size_t> match_counts_;  // per rule
  std::map<std::string, Frame> slots_;
  std::atomic<size_t> forwarded_to_server_{0};
  std::atomic<size_t> forwarded_to_client_{0};
  ConnServer server_;
};

}  // namespace spmt
