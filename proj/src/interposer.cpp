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

#include "spmt/interposer.hpp"

#include <thread>

#include "spmt/error.hpp"

namespace spmt {

Interposer::Interposer(std::string upstream_address, std::vector<InterposeRule> rules)
    : upstream_address_(std::move(upstream_address)),
      rules_(std::move(rules)),
      match_counts_(rules_.size(), 0) {}

Interposer::~Interposer() { stop(); }

void Interposer::start() {
  server_.start(TcpListener::bind_loopback(),
                [this](TcpConn& conn) { handle_connection(conn); });
}

void Interposer::stop() { server_.stop(); }

std::optional<Frame> Interposer::captured(const std::string& slot) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = slots_.find(slot);
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

size_t Interposer::frames_forwarded(LinkDir dir) const {
  return dir == LinkDir::to_server ? forwarded_to_server_ : forwarded_to_client_;
}

void Interposer::handle_connection(TcpConn& client) {
  TcpConn upstream;
  try {
    upstream = TcpConn::connect(upstream_address_);
  } catch (const Error&) {
    return;
  }
  // The handler thread pumps client->server; a helper pumps the way back.
  std::thread back([this, &client, &upstream] {
    pump(upstream, client, LinkDir::to_client);
    client.shutdown_both();
  });
  pump(client, upstream, LinkDir::to_server);
  upstream.shutdown_both();
  back.join();
}

void Interposer::pump(TcpConn& src, TcpConn& dst, LinkDir dir) {
  std::optional<Frame> held;
  try {
    while (true) {
      auto frame = read_frame(src);
      if (!frame) break;
      auto out = apply_rules(dir, std::move(*frame), held);
      if (!out) continue;
      write_frame(dst, out->type, view(out->body));
      if (dir == LinkDir::to_server)
        ++forwarded_to_server_;
      else
        ++forwarded_to_client_;
      if (held) {
        write_frame(dst, held->type, view(held->body));
        held.reset();
      }
    }
    if (held) write_frame(dst, held->type, view(held->body));
  } catch (const Error&) {
    // link torn down mid-frame; both sides get closed by the caller
  }
}

std::optional<Frame> Interposer::apply_rules(LinkDir dir, Frame frame,
                                             std::optional<Frame>& held) {
  const InterposeRule* chosen = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (size_t i = 0; i < rules_.size(); ++i) {
      InterposeRule& rule = rules_[i];
      if (rule.dir != dir) continue;
      if (rule.type && *rule.type != frame.type) continue;
      size_t seen = match_counts_[i]++;
      if (chosen != nullptr) continue;  // later rules still count frames
      if (seen == rule.nth || (rule.repeat && seen >= rule.nth)) chosen = &rule;
    }
    if (chosen != nullptr && chosen->action == InterposeRule::Action::capture)
      slots_[chosen->slot] = frame;
  }
  if (chosen == nullptr) return frame;

  switch (chosen->action) {
    case InterposeRule::Action::capture:
      return frame;
    case InterposeRule::Action::drop:
      return std::nullopt;
    case InterposeRule::Action::delay:
      std::this_thread::sleep_for(chosen->delay);
      return frame;
    case InterposeRule::Action::duplicate:
      held = frame;  // emitted right after the original
      return frame;
    case InterposeRule::Action::swap_with_next:
      if (!held) {
        held = std::move(frame);  // hold; the next frame passes first
        return std::nullopt;
      }
      return frame;
    case InterposeRule::Action::tamper: {
      if (frame.body.empty()) return frame;
      ptrdiff_t off = chosen->offset;
      if (off < 0) off += static_cast<ptrdiff_t>(frame.body.size());
      if (off >= 0 && static_cast<size_t>(off) < frame.body.size())
        frame.body[static_cast<size_t>(off)] ^= chosen->xor_mask;
      return frame;
    }
    case InterposeRule::Action::replay: {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = slots_.find(chosen->slot);
      if (it != slots_.end()) return it->second;
      return frame;  // nothing captured yet: pass through
    }
  }
  return frame;
}

}  // namespace spmt
