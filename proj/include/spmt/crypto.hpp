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

#include <memory>
#include <optional>

#include "spmt/bytes.hpp"

typedef struct evp_pkey_st EVP_PKEY;

namespace spmt {

// ECDSA over P-256 with SHA-256. The protocol only assumes a standard
// signature scheme and a 256-bit collision-resistant hash; these are the
// configured concrete primitives, not part of the protocol contract.

Hash32 sha256(ByteView data);

class PublicKey {
 public:
  PublicKey() = default;

  // DER SubjectPublicKeyInfo. Throws CryptoError on malformed input.
  static PublicKey from_der(ByteView der);
  // Non-throwing variant for untrusted wire input.
  static std::optional<PublicKey> try_from_der(ByteView der);

  const Bytes& der() const { return der_; }
  bool valid() const { return pkey_ != nullptr; }

  EVP_PKEY* handle() const { return pkey_.get(); }

 private:
  friend class PrivateKey;
  std::shared_ptr<EVP_PKEY> pkey_;
  Bytes der_;
};

class PrivateKey {
 public:
  PrivateKey() = default;

  static PrivateKey generate();
  static PrivateKey from_pem_file(const std::string& path);
  void to_pem_file(const std::string& path) const;

  PublicKey public_key() const;
  bool valid() const { return pkey_ != nullptr; }

  EVP_PKEY* handle() const { return pkey_.get(); }

 private:
  std::shared_ptr<EVP_PKEY> pkey_;
};

// Signature over SHA-256(message); DER-encoded ECDSA signature.
Bytes sign(const PrivateKey& key, ByteView message);

// Deterministic; returns false (never throws) on malformed keys/signatures.
bool verify(const PublicKey& key, ByteView message, ByteView signature) noexcept;

}  // namespace spmt
