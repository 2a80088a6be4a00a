// Copyright 2026 The Authors.
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

namespace hypersc {

// Base class for all recoverable engine errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed campaign instance (unresolvable ids, invariant violations).
struct InstanceError : Error {
  explicit InstanceError(const std::string& what) : Error(what) {}
};

// Invalid model parameters (nonpositive radius, bad probabilities, ...).
struct ModelError : Error {
  explicit ModelError(const std::string& what) : Error(what) {}
};

// Inconsistent harness or strategy configuration.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// File parsing / writing problems; carries a line number when known.
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

// An exhaustive solver refused an instance above its enumeration cap.
struct TooLargeError : Error {
  explicit TooLargeError(const std::string& what) : Error(what) {}
};

}  // namespace hypersc
