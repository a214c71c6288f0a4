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

#include "sentistab/error.hpp"

namespace sentistab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::EmptyRewrites: return "EmptyRewrites";
    case ErrorCode::EmptyRoundTrips: return "EmptyRoundTrips";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedReply: return "MalformedReply";
    case ErrorCode::LexiconFormat: return "LexiconFormat";
    case ErrorCode::UnknownPrompt: return "UnknownPrompt";
    case ErrorCode::UnknownPair: return "UnknownPair";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::MissingCacheEntry: return "MissingCacheEntry";
    case ErrorCode::AuthError: return "AuthError";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::HttpError: return "HttpError";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::SingleClassInput: return "SingleClassInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MixedLabels: return "MixedLabels";
    case ErrorCode::Io: return "Io";
    case ErrorCode::EmptyOriginal: return "EmptyOriginal";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool Error::is_backend_error() const noexcept {
  switch (code_) {
    case ErrorCode::MissingCacheEntry:
    case ErrorCode::AuthError:
    case ErrorCode::RateLimited:
    case ErrorCode::Timeout:
    case ErrorCode::MalformedResponse:
    case ErrorCode::HttpError:
    case ErrorCode::NetworkError:
    case ErrorCode::MalformedReply:
    case ErrorCode::EmptyResult:
      return true;
    default:
      return false;
  }
}

}  // namespace sentistab
