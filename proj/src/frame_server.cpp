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

#include "spmt/frame_server.hpp"

#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/epoll.h>
#include <sys/eventfd.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

#include "spmt/encoding.hpp"
#include "spmt/error.hpp"

namespace spmt {

namespace {

void set_nonblocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

void arm(int epoll_fd, int fd, bool want_write) {
  epoll_event ev{};
  ev.events = EPOLLIN | (want_write ? EPOLLOUT : 0u);
  ev.data.fd = fd;
  epoll_ctl(epoll_fd, EPOLL_CTL_MOD, fd, &ev);
}

}  // namespace

FrameServer::~FrameServer() { stop(); }

void FrameServer::start(TcpListener listener, Handler handler, size_t workers) {
  listener_ = std::move(listener);
  handler_ = std::move(handler);
  running_ = true;
  if (workers == 0) workers = 1;
  for (size_t i = 0; i < workers; ++i) {
    auto worker = std::make_unique<Worker>();
    worker->epoll_fd = epoll_create1(0);
    worker->wake_fd = eventfd(0, EFD_NONBLOCK);
    if (worker->epoll_fd < 0 || worker->wake_fd < 0)
      throw TransportError("epoll/eventfd setup failed");
    epoll_event ev{};
    ev.events = EPOLLIN;
    ev.data.fd = worker->wake_fd;
    epoll_ctl(worker->epoll_fd, EPOLL_CTL_ADD, worker->wake_fd, &ev);
    workers_.push_back(std::move(worker));
  }
  for (auto& worker : workers_)
    worker->thread = std::thread([this, w = worker.get()] { worker_loop(*w); });
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void FrameServer::stop() {
  if (!running_.exchange(false)) return;
  listener_.shutdown_accepts();
  if (accept_thread_.joinable()) accept_thread_.join();
  listener_.close();
  for (auto& worker : workers_) {
    uint64_t one = 1;
    ssize_t n = ::write(worker->wake_fd, &one, sizeof(one));
    (void)n;
  }
  for (auto& worker : workers_) {
    if (worker->thread.joinable()) worker->thread.join();
    for (auto& [fd, conn] : worker->conns) ::close(fd);
    ::close(worker->epoll_fd);
    ::close(worker->wake_fd);
  }
  workers_.clear();
}

void FrameServer::accept_loop() {
  while (running_) {
    auto conn = listener_.accept();
    if (!conn) break;
    int fd = conn->release();
    set_nonblocking(fd);
    Worker& worker = *workers_[next_worker_++ % workers_.size()];
    {
      std::lock_guard<std::mutex> lock(worker.mu);
      worker.pending_adds.push_back(fd);
    }
    uint64_t one = 1;
    ssize_t n = ::write(worker.wake_fd, &one, sizeof(one));
    (void)n;
  }
}

void FrameServer::close_conn(Worker& worker, Conn& conn) {
  int fd = conn.fd;
  epoll_ctl(worker.epoll_fd, EPOLL_CTL_DEL, fd, nullptr);
  ::close(fd);
  worker.conns.erase(fd);
}

bool FrameServer::flush_writes(Worker& worker, Conn& conn) {
  while (conn.out_head < conn.out.size()) {
    ssize_t n = ::send(conn.fd, conn.out.data() + conn.out_head,
                       conn.out.size() - conn.out_head, MSG_NOSIGNAL);
    if (n > 0) {
      conn.out_head += static_cast<size_t>(n);
      continue;
    }
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      arm(worker.epoll_fd, conn.fd, true);
      return true;
    }
    return false;  // peer gone
  }
  conn.out.clear();
  conn.out_head = 0;
  arm(worker.epoll_fd, conn.fd, false);
  return true;
}

bool FrameServer::service_readable(Worker& worker, Conn& conn) {
  uint8_t buf[64 * 1024];
  while (true) {
    ssize_t n = ::recv(conn.fd, buf, sizeof(buf), 0);
    if (n > 0) {
      conn.in.insert(conn.in.end(), buf, buf + n);
      if (static_cast<size_t>(n) < sizeof(buf)) break;
      continue;
    }
    if (n == 0) return false;  // EOF
    if (errno == EAGAIN || errno == EWOULDBLOCK) break;
    if (errno == EINTR) continue;
    return false;
  }

  // parse complete frames
  while (true) {
    size_t avail = conn.in.size() - conn.in_head;
    if (avail < 4) break;
    const uint8_t* p = conn.in.data() + conn.in_head;
    uint32_t len = uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 | p[3];
    if (len == 0 || len > kMaxFrameBody + 1) return false;
    if (avail < 4 + len) break;
    Frame frame;
    frame.type = p[4];
    frame.body.assign(p + 5, p + 4 + len);
    conn.in_head += 4 + len;

    std::optional<std::vector<Frame>> responses;
    try {
      responses = handler_(frame);
    } catch (const std::exception&) {
      return false;
    }
    if (!responses) return false;
    for (const auto& r : *responses) {
      Bytes framed = frame_bytes(r.type, view(r.body));
      conn.out.insert(conn.out.end(), framed.begin(), framed.end());
    }
  }
  if (conn.in_head == conn.in.size()) {
    conn.in.clear();
    conn.in_head = 0;
  } else if (conn.in_head > 1 << 20) {
    conn.in.erase(conn.in.begin(), conn.in.begin() + static_cast<ptrdiff_t>(conn.in_head));
    conn.in_head = 0;
  }
  return flush_writes(worker, conn);
}

void FrameServer::worker_loop(Worker& worker) {
  epoll_event events[128];
  while (running_) {
    int n = epoll_wait(worker.epoll_fd, events, 128, 200);
    if (!running_) break;
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    // adopt newly accepted connections
    {
      std::lock_guard<std::mutex> lock(worker.mu);
      for (int fd : worker.pending_adds) {
        Conn conn;
        conn.fd = fd;
        worker.conns.emplace(fd, std::move(conn));
        epoll_event ev{};
        ev.events = EPOLLIN;
        ev.data.fd = fd;
        epoll_ctl(worker.epoll_fd, EPOLL_CTL_ADD, fd, &ev);
      }
      worker.pending_adds.clear();
    }
    for (int i = 0; i < n; ++i) {
      int fd = events[i].data.fd;
      if (fd == worker.wake_fd) {
        uint64_t junk;
        ssize_t r = ::read(worker.wake_fd, &junk, sizeof(junk));
        (void)r;
        continue;
      }
      auto it = worker.conns.find(fd);
      if (it == worker.conns.end()) continue;
      Conn& conn = it->second;
      bool alive = true;
      if (events[i].events & (EPOLLHUP | EPOLLERR)) alive = false;
      if (alive && (events[i].events & EPOLLOUT)) alive = flush_writes(worker, conn);
      if (alive && (events[i].events & EPOLLIN)) alive = service_readable(worker, conn);
      if (!alive) close_conn(worker, conn);
    }
  }
}

}  // namespace spmt
