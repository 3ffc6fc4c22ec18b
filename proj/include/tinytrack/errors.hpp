// Copyright 2026 The tinytrack Authors.
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

#ifndef TINYTRACK_ERRORS_HPP_
#define TINYTRACK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tinytrack {

// Base of every library error. `category()` is a stable machine-parsable
// token; the CLI prints it as "error:<category>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}
  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error("argument", message) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error("dimension", message) {}
};

class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& message)
      : Error("degenerate-data", message) {}
};

class InsufficientContextError : public Error {
 public:
  explicit InsufficientContextError(const std::string& message)
      : Error("insufficient-context", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error("numerical", message) {}
};

}  // namespace tinytrack

#endif  // TINYTRACK_ERRORS_HPP_
