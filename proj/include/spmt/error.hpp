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

#include <stdexcept>
#include <string>

namespace spmt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed canonical encoding or wire body.
struct EncodingError : Error {
  using Error::Error;
};

// Key parsing / OpenSSL failures that are not plain verification results.
struct CryptoError : Error {
  using Error::Error;
};

// Bad user-supplied configuration (ports, frequencies, bench levels).
struct ConfigError : Error {
  using Error::Error;
};

// Socket-level failures: connect/read/write errors and peer hangups.
struct TransportError : Error {
  using Error::Error;
};

// Internal state machine violation; indicates a bug, not bad input.
struct ProtocolError : Error {
  using Error::Error;
};

}  // namespace spmt
