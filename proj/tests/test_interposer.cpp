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

#include "doctest.h"
#include "spmt/error.hpp"
#include "spmt/interposer.hpp"

using namespace spmt;

namespace {

// Upstream echo server replying with type+1 and the same body.
struct Echo {
  ConnServer server;
  Echo() {
    server.start(TcpListener::bind_loopback(), [](TcpConn& conn) {
      while (auto frame = read_frame(conn)) write_frame(conn, frame->type + 1, view(frame->body));
    });
  }
  ~Echo() { server.stop(); }
};

std::optional<Frame> round_trip(const std::string& address, uint8_t type, const Bytes& body) {
  TcpConn conn = TcpConn::connect(address);
  conn.set_recv_timeout(std::chrono::milliseconds(500));
  write_frame(conn, type, view(body));
  try {
    return read_frame(conn);
  } catch (const TransportError&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("passthrough forwards frames unchanged in both directions") {
  Echo echo;
  Interposer proxy(echo.server.address(), {});
  proxy.start();
  auto reply = round_trip(proxy.address(), 0x10, to_bytes("body"));
  REQUIRE(reply.has_value());
  CHECK(reply->type == 0x11);
  CHECK(reply->body == to_bytes("body"));
  CHECK(proxy.frames_forwarded(LinkDir::to_server) == 1);
  CHECK(proxy.frames_forwarded(LinkDir::to_client) == 1);
}

TEST_CASE("tamper flips exactly the configured byte, negative offsets count from the end") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_client;
  rule.type = 0x11;
  rule.action = InterposeRule::Action::tamper;
  rule.offset = -1;
  rule.xor_mask = 0xff;
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();
  auto reply = round_trip(proxy.address(), 0x10, to_bytes("abc"));
  REQUIRE(reply.has_value());
  CHECK(reply->body == Bytes{'a', 'b', uint8_t('c' ^ 0xff)});
}

TEST_CASE("drop swallows only the matching frame") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_client;
  rule.type = 0x21;  // only replies to 0x20 requests vanish
  rule.action = InterposeRule::Action::drop;
  rule.repeat = true;
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();

  auto dropped = round_trip(proxy.address(), 0x20, to_bytes("gone"));
  CHECK_FALSE(dropped.has_value());
  auto kept = round_trip(proxy.address(), 0x10, to_bytes("kept"));
  REQUIRE(kept.has_value());
  CHECK(kept->body == to_bytes("kept"));
}

TEST_CASE("nth matching: only the selected occurrence is affected") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_client;
  rule.type = 0x11;
  rule.nth = 1;  // second reply only
  rule.action = InterposeRule::Action::tamper;
  rule.offset = 0;
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();

  TcpConn conn = TcpConn::connect(proxy.address());
  write_frame(conn, 0x10, view(to_bytes("x")));
  auto first = read_frame(conn);
  write_frame(conn, 0x10, view(to_bytes("x")));
  auto second = read_frame(conn);
  write_frame(conn, 0x10, view(to_bytes("x")));
  auto third = read_frame(conn);
  REQUIRE((first && second && third));
  CHECK(first->body == to_bytes("x"));
  CHECK(second->body != to_bytes("x"));
  CHECK(third->body == to_bytes("x"));
}

TEST_CASE("capture then replay substitutes the recorded frame") {
  Echo echo;
  InterposeRule capture;
  capture.dir = LinkDir::to_client;
  capture.type = 0x11;
  capture.action = InterposeRule::Action::capture;
  capture.slot = "first";
  InterposeRule replay;
  replay.dir = LinkDir::to_client;
  replay.type = 0x11;
  replay.nth = 1;
  replay.repeat = true;
  replay.action = InterposeRule::Action::replay;
  replay.slot = "first";
  Interposer proxy(echo.server.address(), {capture, replay});
  proxy.start();

  TcpConn conn = TcpConn::connect(proxy.address());
  write_frame(conn, 0x10, view(to_bytes("original")));
  auto first = read_frame(conn);
  write_frame(conn, 0x10, view(to_bytes("newer")));
  auto second = read_frame(conn);
  REQUIRE((first && second));
  CHECK(first->body == to_bytes("original"));
  CHECK(second->body == to_bytes("original"));  // replayed verbatim
  auto captured = proxy.captured("first");
  REQUIRE(captured.has_value());
  CHECK(captured->body == to_bytes("original"));
}

TEST_CASE("duplicate emits the frame twice") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_server;
  rule.type = 0x10;
  rule.action = InterposeRule::Action::duplicate;
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();

  TcpConn conn = TcpConn::connect(proxy.address());
  write_frame(conn, 0x10, view(to_bytes("dup")));
  auto first = read_frame(conn);
  auto second = read_frame(conn);  // echo of the duplicate
  REQUIRE((first && second));
  CHECK(first->body == to_bytes("dup"));
  CHECK(second->body == to_bytes("dup"));
}

TEST_CASE("swap holds a frame until the next one passes") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_server;
  rule.type = 0x10;
  rule.action = InterposeRule::Action::swap_with_next;
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();

  TcpConn conn = TcpConn::connect(proxy.address());
  write_frame(conn, 0x10, view(to_bytes("first")));
  write_frame(conn, 0x20, view(to_bytes("second")));
  auto a = read_frame(conn);
  auto b = read_frame(conn);
  REQUIRE((a && b));
  CHECK(a->body == to_bytes("second"));  // overtook the held frame
  CHECK(b->body == to_bytes("first"));
}

TEST_CASE("delay postpones but preserves the frame") {
  Echo echo;
  InterposeRule rule;
  rule.dir = LinkDir::to_client;
  rule.type = 0x11;
  rule.action = InterposeRule::Action::delay;
  rule.delay = std::chrono::milliseconds(80);
  Interposer proxy(echo.server.address(), {rule});
  proxy.start();

  auto t0 = std::chrono::steady_clock::now();
  auto reply = round_trip(proxy.address(), 0x10, to_bytes("late"));
  auto elapsed = std::chrono::steady_clock::now() - t0;
  REQUIRE(reply.has_value());
  CHECK(reply->body == to_bytes("late"));
  CHECK(elapsed >= std::chrono::milliseconds(75));
}
