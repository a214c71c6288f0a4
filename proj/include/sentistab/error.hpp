// Copyright 2026 The sentistab Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentistab {

enum class ErrorCode {
  // core
  NonFiniteInput,
  NegativeInput,
  EmptyRewrites,
  EmptyRoundTrips,
  InvalidArgument,
  // sentiment
  MalformedReply,
  LexiconFormat,
  // rewrite
  UnknownPrompt,
  UnknownPair,
  EmptyResult,
  // gateway
  MissingCacheEntry,
  AuthError,
  RateLimited,
  Timeout,
  MalformedResponse,
  HttpError,
  NetworkError,
  // detector
  EmptyText,
  SingleClassInput,
  // corpus
  ParseError,
  DuplicateId,
  MixedLabels,
  Io,
  // robustness / eval
  EmptyOriginal,
  EmptyInput,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  /// Same error with extra context prepended to the message.
  Error with_context(const std::string& context) const {
    return Error(code_, context + ": " + detail_);
  }

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  /// True for failures raised by the LLM gateway (network, cache, auth).
  bool is_backend_error() const noexcept;

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace sentistab
