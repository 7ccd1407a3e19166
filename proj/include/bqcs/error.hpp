// Copyright 2026 The bqcs Authors
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

namespace bqcs {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: wrong shapes, malformed documents, out-of-domain values.
/// The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A request the solvers refuse to run (problem too large, capacity exceeded).
/// The CLI maps these to exit code 3.
class SolverError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SparsityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ScheduleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateColumnError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmbeddingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed document. `field()` names the offending key.
class ParseError : public ValidationError {
 public:
  ParseError(std::string field, const std::string& what)
      : ValidationError("parse error in \"" + field + "\": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class SizeError : public SolverError {
 public:
  using SolverError::SolverError;
};

class CapError : public SolverError {
 public:
  using SolverError::SolverError;
};

class CapacityError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace bqcs
