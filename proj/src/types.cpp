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

#include "spmt/types.hpp"

namespace spmt {

Bytes encode_data_item(const DataItem& item) {
  Bytes out;
  put_len_prefixed(out, view(item.payload));
  put_len_prefixed(out, view(item.source_sig));
  put_len_prefixed(out, ByteView(reinterpret_cast<const uint8_t*>(item.source_key_id.data()),
                                 item.source_key_id.size()));
  return out;
}

DataItem decode_data_item(ByteReader& in) {
  DataItem item;
  item.payload = in.get_len_prefixed();
  item.source_sig = in.get_len_prefixed();
  item.source_key_id = in.get_len_prefixed_string();
  return item;
}

Bytes report_bytes(const AttestationReport& report) {
  Bytes out = report_preimage(report.measurement, view(report.tee_public_key_der));
  put_len_prefixed(out, view(report.authority_sig));
  return out;
}

AttestationReport decode_report(ByteReader& in) {
  uint8_t tag = in.get_u8();
  if (tag != static_cast<uint8_t>(Tag::report_preimage))
    throw EncodingError("bad report tag");
  AttestationReport report;
  report.measurement = in.get_fixed32();
  report.tee_public_key_der = in.get_len_prefixed();
  report.authority_sig = in.get_len_prefixed();
  return report;
}

AttestationReport decode_report_bytes(ByteView raw) {
  ByteReader in(raw);
  AttestationReport report = decode_report(in);
  in.require_end();
  return report;
}

Bytes encode_por(const ProofOfReception& por) {
  Bytes out;
  put_len_prefixed(out, view(por.tee_sig));
  put_u64be(out, por.cnt_por);
  put_len_prefixed(out, view(report_bytes(por.report)));
  return out;
}

ProofOfReception decode_por(ByteReader& in) {
  ProofOfReception por;
  por.tee_sig = in.get_len_prefixed();
  por.cnt_por = in.get_u64be();
  Bytes raw_report = in.get_len_prefixed();
  por.report = decode_report_bytes(view(raw_report));
  return por;
}

Bytes encode_pop(const ProofOfProcessing& pop) {
  Bytes out;
  put_len_prefixed(out, view(pop.tee_sig));
  put_u64be(out, pop.cnt_pop);
  return out;
}

ProofOfProcessing decode_pop(ByteReader& in) {
  ProofOfProcessing pop;
  pop.tee_sig = in.get_len_prefixed();
  pop.cnt_pop = in.get_u64be();
  return pop;
}

Bytes encode_checkpoint(const MonitorCheckpoint& cp) {
  Bytes out;
  put_fixed32(out, cp.hc_m);
  put_len_prefixed(out, view(cp.monitor_sig));
  put_len_prefixed(out, ByteView(reinterpret_cast<const uint8_t*>(cp.monitor_key_id.data()),
                                 cp.monitor_key_id.size()));
  return out;
}

MonitorCheckpoint decode_checkpoint(ByteReader& in) {
  MonitorCheckpoint cp;
  cp.hc_m = in.get_fixed32();
  cp.monitor_sig = in.get_len_prefixed();
  cp.monitor_key_id = in.get_len_prefixed_string();
  return cp;
}

}  // namespace spmt
