// Copyright 2026 The fockwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fockwit {

enum class ErrorKind {
  InvalidIndex,
  ZeroState,
  NotHermitian,
  NotPositive,
  TruncationUnsafe,
  WrongArity,
  InvalidParameter,
  NotHermitianAtRuntime,
  InvalidModeSet,
  DimensionTooLarge,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TruncationUnsafe: return "TruncationUnsafe";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotHermitianAtRuntime: return "NotHermitianAtRuntime";
    case ErrorKind::InvalidModeSet: return "InvalidModeSet";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a stable exit code.
/// Short "%g" rendering for error messages.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fockwit
