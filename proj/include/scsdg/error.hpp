// Copyright 2026 The scsdg Authors
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

#ifndef SCSDG_ERROR_HPP_
#define SCSDG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace scsdg {

enum class ErrorKind {
  kDimensionMismatch,
  kInvalidParameter,
  kParse,
  kUnsupported,
  kIo,
};

const char* ToString(ErrorKind kind);

// Every error raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures report the 1-based line at which they were detected
// (0 when the problem is not tied to a single line, e.g. a count mismatch).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::kParse, line > 0 ? "line " + std::to_string(line) +
                                                ": " + message
                                          : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

[[noreturn]] inline void ThrowDimensionMismatch(const std::string& what,
                                                std::size_t expected,
                                                std::size_t actual) {
  throw Error(ErrorKind::kDimensionMismatch,
              what + ": expected dimension " + std::to_string(expected) +
                  ", got " + std::to_string(actual));
}

[[noreturn]] inline void ThrowInvalidParameter(const std::string& message) {
  throw Error(ErrorKind::kInvalidParameter, message);
}

}  // namespace scsdg

#endif  // SCSDG_ERROR_HPP_
