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

#include <variant>

#include "spmt/crypto.hpp"
#include "spmt/handover.hpp"
#include "spmt/messages.hpp"

namespace spmt {

// The data-source role: sign payloads and submit them to the server,
// producing handover packages. Transport failures throw TransportError;
// server-side rejections come back as the error code.
class DataSource {
 public:
  DataSource(PrivateKey key, std::string key_id);

  DataItem make_item(Bytes payload) const;

  std::variant<HandoverPackage, ErrorCode> submit(const std::string& tee_address,
                                                  Bytes payload) const;
  // Same round trip over an already-open connection (bench path).
  std::variant<HandoverPackage, ErrorCode> submit_on(TcpConn& conn, Bytes payload) const;

  const std::string& key_id() const { return key_id_; }
  PublicKey public_key() const { return key_.public_key(); }

 private:
  PrivateKey key_;
  std::string key_id_;
};

}  // namespace spmt
