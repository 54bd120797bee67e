/*
 * Copyright 2026 The trivector Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace trivector {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

/// Two operands belong to different fields (or different dimensions).
class SpecMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "spec-mismatch"; }
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  const char* kind() const noexcept override { return "division-by-zero"; }
};

/// Wrong degree, rank, size, or an out-of-range argument.
class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-input"; }
};

class UnsupportedCharacteristic : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override {
    return "unsupported-characteristic";
  }
};

/// Every sub-Pfaffian of the skew family vanishes identically.
class DegenerateTrivector : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate-trivector"; }
};

/// Exact division left a nonzero remainder; `remainder()` is its printed form.
class DivisibilityError : public Error {
 public:
  DivisibilityError(const std::string& what, std::string remainder)
      : Error(what), remainder_(std::move(remainder)) {}
  const char* kind() const noexcept override { return "not-divisible"; }
  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  const char* kind() const noexcept override { return "parse-error"; }
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An identity that must hold by construction was found to fail.
class InvariantViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invariant-violation"; }
};

}  // namespace trivector
