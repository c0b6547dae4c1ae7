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

#include "spmt/tee_service.hpp"

#include <poll.h>

#include "spmt/frame.hpp"

namespace spmt {

namespace {

class TcpDbLink : public DbLink {
 public:
  explicit TcpDbLink(std::string address) : address_(std::move(address)) {}

  void send_store(uint64_t batch_index, const std::vector<DataItem>& items) override {
    ensure_connected();
    DbStore store;
    store.batch_index = batch_index;
    store.items = items;
    write_frame(conn_, msg::kDbStore, view(encode_db_store(store)));
  }

  std::optional<uint64_t> recv_ack(std::chrono::milliseconds timeout) override {
    ensure_connected();
    pollfd pfd{conn_.fd(), POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (rc == 0) return std::nullopt;
    if (rc < 0) throw TransportError("poll on database link failed");
    auto frame = read_frame(conn_);
    if (!frame) throw TransportError("database closed the connection");
    if (frame->type != msg::kDbAck) return std::nullopt;  // not an ACK: ignore
    return decode_db_ack(view(frame->body));
  }

  void drain() override {
    if (conn_.valid()) conn_.drain_pending();
  }

  void reset() override { conn_.close(); }

 private:
  void ensure_connected() {
    if (!conn_.valid()) conn_ = TcpConn::connect(address_);
  }

  std::string address_;
  TcpConn conn_;
};

}  // namespace

std::unique_ptr<DbLink> make_tcp_db_link(std::string db_address) {
  return std::make_unique<TcpDbLink>(std::move(db_address));
}

TeeService::TeeService(std::unique_ptr<TeeState> state, std::unique_ptr<DbLink> db_link)
    : TeeService(std::move(state), std::move(db_link), Options()) {}

TeeService::TeeService(std::unique_ptr<TeeState> state, std::unique_ptr<DbLink> db_link,
                       Options opts)
    : state_(std::move(state)), db_link_(std::move(db_link)), opts_(std::move(opts)) {}

TeeService::~TeeService() { stop(); }

void TeeService::start() {
  running_ = true;
  worker_ = std::thread([this] { export_worker(); });
  server_.start(TcpListener::bind(opts_.listen_address),
                [this](const Frame& frame) { return handle_frame(frame); });
}

void TeeService::stop() {
  if (!running_.exchange(false)) return;
  state_->notify_stop();
  if (worker_.joinable()) worker_.join();
  server_.stop();
}

void TeeService::export_worker() {
  while (running_) {
    if (paused_) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      continue;
    }
    auto batch = state_->next_batch(std::chrono::milliseconds(50));
    if (!batch) continue;

    // The chain update runs while the database stores the batch; the result
    // is only committed once the matching ACK arrives.
    Hash32 new_hc = hash_chain_fold(state_->hc_t(), batch->items);

    bool committed = false;
    while (running_ && !committed) {
      try {
        db_link_->drain();  // anything sent outside a storage round is discarded
        db_link_->send_store(batch->batch_index, batch->items);
        auto deadline = std::chrono::steady_clock::now() + opts_.ack_timeout;
        while (running_) {
          auto now = std::chrono::steady_clock::now();
          if (now >= deadline) break;  // no valid ACK yet: resend
          auto remaining =
              std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
          auto ack = db_link_->recv_ack(remaining);
          if (!ack) break;
          if (*ack != batch->batch_index) continue;  // unexpected index: discard
          state_->commit_batch(*batch, new_hc);
          committed = true;
          break;
        }
      } catch (const TransportError&) {
        db_link_->reset();
        std::this_thread::sleep_for(opts_.retry_backoff);
      }
    }
  }
}

std::optional<std::vector<Frame>> TeeService::handle_frame(const Frame& frame) {
  std::vector<Frame> out;
  switch (frame.type) {
    case msg::kSubmit: {
      DataItem item;
      try {
        item = decode_data_item_body(view(frame.body));
      } catch (const EncodingError&) {
        out.push_back(Frame{msg::kSubmitErr, encode_error(ErrorCode::malformed)});
        return out;
      }
      auto result = state_->handle_submission(item);
      if (auto* por = std::get_if<ProofOfReception>(&result))
        out.push_back(Frame{msg::kSubmitOk, encode_por(*por)});
      else
        out.push_back(Frame{msg::kSubmitErr, encode_error(std::get<ErrorCode>(result))});
      return out;
    }
    case msg::kPopReq: {
      MonitorCheckpoint cp;
      try {
        cp = decode_checkpoint_body(view(frame.body));
      } catch (const EncodingError&) {
        out.push_back(Frame{msg::kPopErr, encode_error(ErrorCode::malformed)});
        return out;
      }
      auto result = state_->handle_pop_request(cp);
      if (auto* pop = std::get_if<ProofOfProcessing>(&result))
        out.push_back(Frame{msg::kPopOk, encode_pop(*pop)});
      else
        out.push_back(Frame{msg::kPopErr, encode_error(std::get<ErrorCode>(result))});
      return out;
    }
    default:
      return std::nullopt;  // unknown message: drop the connection
  }
}

void TeeService::preload(size_t count, size_t payload_bytes, std::mt19937_64& rng,
                         const std::string& source_key_id) {
  for (size_t i = 0; i < count; ++i) {
    DataItem item;
    item.payload = random_payload(rng, payload_bytes);
    item.source_key_id = source_key_id;
    state_->append_preload(std::move(item));
  }
  state_->wait_drained();
}

}  // namespace spmt
