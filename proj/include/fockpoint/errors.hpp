// Copyright 2026 The fockpoint Authors
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

#include <stdexcept>
#include <string>

namespace fockpoint {

/// Argument outside the mathematical domain of an operation (odd sizes,
/// mismatched ground sets, wrong dimensions).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input data violating a documented invariant (spectral bounds, symmetry,
/// hafnian constraints, non-PSD covariance).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A size guard or a Fock-space truncation cap was exceeded.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// A quantity that must be real (or 0/1, etc.) came out otherwise.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace fockpoint
