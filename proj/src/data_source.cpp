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

#include "spmt/data_source.hpp"

namespace spmt {

DataSource::DataSource(PrivateKey key, std::string key_id)
    : key_(std::move(key)), key_id_(std::move(key_id)) {}

DataItem DataSource::make_item(Bytes payload) const {
  DataItem item;
  item.source_sig = sign(key_, view(item_preimage(view(payload))));
  item.payload = std::move(payload);
  item.source_key_id = key_id_;
  return item;
}

std::variant<HandoverPackage, ErrorCode> DataSource::submit(const std::string& tee_address,
                                                            Bytes payload) const {
  TcpConn conn = TcpConn::connect(tee_address);
  return submit_on(conn, std::move(payload));
}

std::variant<HandoverPackage, ErrorCode> DataSource::submit_on(TcpConn& conn,
                                                               Bytes payload) const {
  DataItem item = make_item(std::move(payload));
  write_frame(conn, msg::kSubmit, view(encode_data_item(item)));
  auto frame = read_frame(conn);
  if (!frame) throw TransportError("server closed during submission");
  if (frame->type == msg::kSubmitErr) return decode_error(view(frame->body));
  if (frame->type != msg::kSubmitOk) throw TransportError("unexpected submission reply");
  HandoverPackage pkg;
  pkg.por = decode_por_body(view(frame->body));
  pkg.item = std::move(item);
  return pkg;
}

}  // namespace spmt
