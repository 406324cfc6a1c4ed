// Copyright 2026 The starkprobe Authors
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

namespace stark {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Structured config could not be parsed or validated. Carries the key path.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Base for every hard numerical failure; the CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define STARK_NUMERICAL_ERROR(Name)         \
  class Name : public NumericalError {      \
   public:                                  \
    using NumericalError::NumericalError;   \
  }

STARK_NUMERICAL_ERROR(InvariantViolation);
STARK_NUMERICAL_ERROR(ExceptionalPointProximity);
STARK_NUMERICAL_ERROR(ExponentOverflow);
STARK_NUMERICAL_ERROR(PositivityLoss);
STARK_NUMERICAL_ERROR(NormCollapse);
STARK_NUMERICAL_ERROR(TraceCollapse);
STARK_NUMERICAL_ERROR(StepCollapse);
STARK_NUMERICAL_ERROR(NegativeFisher);
STARK_NUMERICAL_ERROR(PeakAtBoundary);
STARK_NUMERICAL_ERROR(InsufficientPoints);
STARK_NUMERICAL_ERROR(NonPositiveData);
STARK_NUMERICAL_ERROR(WindowOutOfRange);
STARK_NUMERICAL_ERROR(NoTransition);

#undef STARK_NUMERICAL_ERROR

}  // namespace stark
