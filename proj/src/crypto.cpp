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

#include "spmt/crypto.hpp"

#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/pem.h>
#include <openssl/sha.h>
#include <openssl/x509.h>

#include <cstdio>

#include "spmt/error.hpp"

namespace spmt {

namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};

std::shared_ptr<EVP_PKEY> wrap(EVP_PKEY* p) {
  return std::shared_ptr<EVP_PKEY>(p, PkeyDeleter{});
}

[[noreturn]] void throw_openssl(const char* what) {
  char buf[256] = {0};
  ERR_error_string_n(ERR_get_error(), buf, sizeof(buf));
  throw CryptoError(std::string(what) + ": " + buf);
}

Bytes encode_spki(EVP_PKEY* pkey) {
  int len = i2d_PUBKEY(pkey, nullptr);
  if (len <= 0) throw_openssl("i2d_PUBKEY");
  Bytes out(static_cast<size_t>(len));
  uint8_t* p = out.data();
  if (i2d_PUBKEY(pkey, &p) != len) throw_openssl("i2d_PUBKEY");
  return out;
}

}  // namespace

namespace {

// Explicitly fetched digest: EVP_sha256() triggers an implicit provider
// fetch (and its global property-cache lock) on every init under OpenSSL 3.0,
// which serializes signing across threads.
const EVP_MD* fetched_sha256() {
  static EVP_MD* md = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  return md;
}

}  // namespace

Hash32 sha256(ByteView data) {
  Hash32 out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

PublicKey PublicKey::from_der(ByteView der) {
  auto key = try_from_der(der);
  if (!key) throw CryptoError("malformed public key DER");
  return *key;
}

std::optional<PublicKey> PublicKey::try_from_der(ByteView der) {
  const uint8_t* p = der.data();
  EVP_PKEY* pkey = d2i_PUBKEY(nullptr, &p, static_cast<long>(der.size()));
  if (pkey == nullptr) {
    ERR_clear_error();
    return std::nullopt;
  }
  PublicKey out;
  out.pkey_ = wrap(pkey);
  out.der_.assign(der.begin(), der.end());
  return out;
}

PrivateKey PrivateKey::generate() {
  EVP_PKEY* pkey = EVP_PKEY_Q_keygen(nullptr, nullptr, "EC", "P-256");
  if (pkey == nullptr) throw_openssl("EC keygen");
  PrivateKey out;
  out.pkey_ = wrap(pkey);
  return out;
}

PrivateKey PrivateKey::from_pem_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (f == nullptr) throw CryptoError("cannot open key file: " + path);
  EVP_PKEY* pkey = PEM_read_PrivateKey(f, nullptr, nullptr, nullptr);
  std::fclose(f);
  if (pkey == nullptr) throw_openssl(("bad PEM key: " + path).c_str());
  PrivateKey out;
  out.pkey_ = wrap(pkey);
  return out;
}

void PrivateKey::to_pem_file(const std::string& path) const {
  if (!valid()) throw CryptoError("writing empty private key");
  FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw CryptoError("cannot write key file: " + path);
  int ok = PEM_write_PrivateKey(f, pkey_.get(), nullptr, nullptr, 0, nullptr, nullptr);
  std::fclose(f);
  if (ok != 1) throw_openssl("PEM_write_PrivateKey");
}

PublicKey PrivateKey::public_key() const {
  if (!valid()) throw CryptoError("empty private key");
  Bytes der = encode_spki(pkey_.get());
  return PublicKey::from_der(view(der));
}

Bytes sign(const PrivateKey& key, ByteView message) {
  if (!key.valid()) throw CryptoError("signing with empty key");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw_openssl("EVP_MD_CTX_new");
  Bytes sig;
  size_t sig_len = 0;
  bool ok = EVP_DigestSignInit(ctx, nullptr, fetched_sha256(), nullptr, key.handle()) == 1 &&
            EVP_DigestSign(ctx, nullptr, &sig_len, message.data(), message.size()) == 1;
  if (ok) {
    sig.resize(sig_len);
    ok = EVP_DigestSign(ctx, sig.data(), &sig_len, message.data(), message.size()) == 1;
    sig.resize(sig_len);
  }
  EVP_MD_CTX_free(ctx);
  if (!ok) throw_openssl("EVP_DigestSign");
  return sig;
}

bool verify(const PublicKey& key, ByteView message, ByteView signature) noexcept {
  if (!key.valid() || signature.empty()) return false;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) return false;
  bool ok = EVP_DigestVerifyInit(ctx, nullptr, fetched_sha256(), nullptr, key.handle()) == 1 &&
            EVP_DigestVerify(ctx, signature.data(), signature.size(), message.data(),
                             message.size()) == 1;
  EVP_MD_CTX_free(ctx);
  ERR_clear_error();
  return ok;
}

std::string to_hex(ByteView data) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {
int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

Hash32 hash32_from_hex(std::string_view hex) {
  Bytes raw = from_hex(hex);
  if (raw.size() != 32) throw std::invalid_argument("expected 32-byte hex");
  Hash32 out;
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

}  // namespace spmt
