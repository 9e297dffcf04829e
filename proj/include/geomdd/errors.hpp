// Copyright 2026 The geomdd Authors
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

namespace geomdd {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or subsystem layouts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Inputs that violate a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Integration or linear-algebra failures (non-finite values, drift).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace geomdd
