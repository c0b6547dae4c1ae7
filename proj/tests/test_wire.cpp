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

#include <random>
#include <thread>

#include "doctest.h"
#include "spmt/messages.hpp"
#include "spmt/server.hpp"

using namespace spmt;

TEST_CASE("frame layout is u32be length, type byte, body") {
  Bytes framed = frame_bytes(0x10, view(to_bytes("abc")));
  CHECK(framed == Bytes{0x00, 0x00, 0x00, 0x04, 0x10, 0x61, 0x62, 0x63});
}

TEST_CASE("frames round-trip over a real socket") {
  TcpListener listener = TcpListener::bind_loopback();
  std::thread server([&] {
    auto conn = listener.accept();
    REQUIRE(conn.has_value());
    auto frame = read_frame(*conn);
    REQUIRE(frame.has_value());
    write_frame(*conn, frame->type + 1, view(frame->body));
  });
  TcpConn client = TcpConn::connect(listener.address());
  write_frame(client, 0x42, view(to_bytes("ping")));
  auto reply = read_frame(client);
  server.join();
  REQUIRE(reply.has_value());
  CHECK(reply->type == 0x43);
  CHECK(reply->body == to_bytes("ping"));
  CHECK_FALSE(read_frame(client).has_value());  // EOF after the server exits
}

TEST_CASE("oversized frame lengths are rejected") {
  TcpListener listener = TcpListener::bind_loopback();
  std::thread server([&] {
    auto conn = listener.accept();
    REQUIRE(conn.has_value());
    Bytes bogus = {0xff, 0xff, 0xff, 0xff, 0x01};
    conn->send_all(view(bogus));
  });
  TcpConn client = TcpConn::connect(listener.address());
  CHECK_THROWS_AS(read_frame(client), EncodingError);
  server.join();
}

TEST_CASE("db store and range bodies round-trip") {
  std::mt19937_64 rng(1);
  DbStore store;
  store.batch_index = 7;
  for (int i = 0; i < 5; ++i) {
    DataItem item;
    item.payload = random_payload(rng, 20);
    item.source_sig = random_payload(rng, 70);
    item.source_key_id = "ds-1";
    store.items.push_back(std::move(item));
  }
  DbStore decoded = decode_db_store(view(encode_db_store(store)));
  CHECK(decoded.batch_index == store.batch_index);
  CHECK(decoded.items == store.items);

  RangeResult range;
  range.end_position = 99;
  range.items = store.items;
  RangeResult range2 = decode_range_result(view(encode_range_result(range)));
  CHECK(range2.end_position == 99);
  CHECK(range2.items == range.items);

  ReadRange req{"monitor:m", 12, 34};
  ReadRange req2 = decode_read_range(view(encode_read_range(req)));
  CHECK(req2.requester_id == req.requester_id);
  CHECK(req2.from_position == req.from_position);
  CHECK(req2.max_items == req.max_items);

  CHECK(decode_db_ack(view(encode_db_ack(41))) == 41);
  CHECK(decode_error(view(encode_error(ErrorCode::unknown_source))) == ErrorCode::unknown_source);
  CHECK(decode_holds(view(encode_holds(true))));
  CHECK_FALSE(decode_holds(view(encode_holds(false))));
}

TEST_CASE("truncated bodies fail to decode") {
  Bytes ack = encode_db_ack(1);
  ack.pop_back();
  CHECK_THROWS_AS(decode_db_ack(view(ack)), EncodingError);

  DbStore store;
  store.batch_index = 0;
  DataItem item;
  item.payload = to_bytes("x");
  store.items.push_back(item);
  Bytes enc = encode_db_store(store);
  enc.resize(enc.size() - 3);
  CHECK_THROWS_AS(decode_db_store(view(enc)), EncodingError);
}

TEST_CASE("connection server accepts many concurrent echo clients") {
  ConnServer server;
  server.start(TcpListener::bind_loopback(), [](TcpConn& conn) {
    while (auto frame = read_frame(conn)) write_frame(conn, frame->type, view(frame->body));
  });
  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i) {
    clients.emplace_back([&, i] {
      TcpConn conn = TcpConn::connect(server.address());
      for (int k = 0; k < 20; ++k) {
        Bytes body = to_bytes("c" + std::to_string(i) + "-" + std::to_string(k));
        write_frame(conn, 0x01, view(body));
        auto reply = read_frame(conn);
        if (reply && reply->body == body) ++ok;
      }
    });
  }
  for (auto& t : clients) t.join();
  server.stop();
  CHECK(ok == 8 * 20);
}
