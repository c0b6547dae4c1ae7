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

#include "spmt/handover.hpp"

#include <fstream>

#include "spmt/error.hpp"

namespace spmt {

namespace {

constexpr char kPackageMagic[4] = {'G', 'Y', 'K', '1'};
constexpr char kEvidenceMagic[4] = {'G', 'Y', 'K', 'E'};

void check_magic(ByteReader& in, const char (&magic)[4], const char* what) {
  for (char c : magic)
    if (in.get_u8() != static_cast<uint8_t>(c)) throw EncodingError(std::string("bad magic: ") + what);
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path);
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write: " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace

Bytes encode_package(const HandoverPackage& pkg) {
  Bytes out;
  out.insert(out.end(), std::begin(kPackageMagic), std::end(kPackageMagic));
  put_len_prefixed(out, view(encode_data_item(pkg.item)));
  put_len_prefixed(out, view(encode_por(pkg.por)));
  return out;
}

HandoverPackage decode_package(ByteView raw) {
  ByteReader in(raw);
  check_magic(in, kPackageMagic, "handover package");
  Bytes item_raw = in.get_len_prefixed();
  Bytes por_raw = in.get_len_prefixed();
  in.require_end();
  ByteReader item_in(view(item_raw));
  ByteReader por_in(view(por_raw));
  HandoverPackage pkg;
  pkg.item = decode_data_item(item_in);
  item_in.require_end();
  pkg.por = decode_por(por_in);
  por_in.require_end();
  return pkg;
}

void save_package(const std::string& path, const HandoverPackage& pkg) {
  write_file(path, view(encode_package(pkg)));
}

HandoverPackage load_package(const std::string& path) {
  Bytes raw = read_file(path);
  return decode_package(view(raw));
}

Bytes encode_evidence(const EvidenceBundle& bundle) {
  Bytes out;
  out.insert(out.end(), std::begin(kEvidenceMagic), std::end(kEvidenceMagic));
  put_len_prefixed(out, view(encode_data_item(bundle.pkg.item)));
  put_len_prefixed(out, view(encode_por(bundle.pkg.por)));
  put_len_prefixed(out, view(encode_checkpoint(bundle.checkpoint)));
  return out;
}

EvidenceBundle decode_evidence(ByteView raw) {
  ByteReader in(raw);
  check_magic(in, kEvidenceMagic, "evidence bundle");
  Bytes item_raw = in.get_len_prefixed();
  Bytes por_raw = in.get_len_prefixed();
  Bytes cp_raw = in.get_len_prefixed();
  in.require_end();
  ByteReader item_in(view(item_raw));
  ByteReader por_in(view(por_raw));
  ByteReader cp_in(view(cp_raw));
  EvidenceBundle bundle;
  bundle.pkg.item = decode_data_item(item_in);
  item_in.require_end();
  bundle.pkg.por = decode_por(por_in);
  por_in.require_end();
  bundle.checkpoint = decode_checkpoint(cp_in);
  cp_in.require_end();
  return bundle;
}

void save_evidence(const std::string& path, const EvidenceBundle& bundle) {
  write_file(path, view(encode_evidence(bundle)));
}

EvidenceBundle load_evidence(const std::string& path) {
  Bytes raw = read_file(path);
  return decode_evidence(view(raw));
}

}  // namespace spmt
