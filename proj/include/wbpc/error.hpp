// Copyright 2026 The wbpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WBPC_ERROR_HPP_
#define WBPC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wbpc {

enum class ErrorKind {
  kUnsupportedLayout,
  kShape,
  kDomain,
  kLevelRange,
  kDepthOverflow,
  kIndex,
  kEmptyAlphabet,
  kMalformedTree,
  kCodeTooLong,
  kInternal,
  kTruncated,
  kMalformedPayload,
  kParse,
  kCorruption,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

// All codec failures are reported as wbpc::Error; kind() distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnsupportedLayout: return "unsupported layout";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kLevelRange: return "level out of range";
    case ErrorKind::kDepthOverflow: return "depth overflow";
    case ErrorKind::kIndex: return "index out of range";
    case ErrorKind::kEmptyAlphabet: return "empty alphabet";
    case ErrorKind::kMalformedTree: return "malformed tree";
    case ErrorKind::kCodeTooLong: return "codeword too long";
    case ErrorKind::kInternal: return "internal error";
    case ErrorKind::kTruncated: return "truncated stream";
    case ErrorKind::kMalformedPayload: return "malformed payload";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kCorruption: return "corrupt data";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace wbpc

#endif  // WBPC_ERROR_HPP_
