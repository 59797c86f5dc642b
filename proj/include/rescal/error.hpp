// Copyright 2026 The rescal Authors
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

#ifndef RESCAL_ERROR_HPP_
#define RESCAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rescal {

/// Broad failure category. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  invalid_argument = 2,
  data_format = 3,
  no_convergence = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Bad parameters or degenerate inputs.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

/// Malformed or corrupt file content.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(ErrorKind::data_format, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorKind::no_convergence, what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace detail

}  // namespace rescal

#endif  // RESCAL_ERROR_HPP_
