// Copyright 2026 The bptest Authors
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

#ifndef BPTEST_COMMON_HPP
#define BPTEST_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bptest {

/// Largest state-vector dimension any routine will allocate.
inline constexpr std::uint64_t kMaxStateDim = std::uint64_t{1} << 20;
/// Largest dense operator dimension (dim x dim complex entries).
inline constexpr std::uint64_t kMaxOperatorDim = std::uint64_t{1} << 12;
/// Largest k for which S_k is enumerated.
inline constexpr int kMaxGroupDegree = 8;

/// Algebraic identities on exactly representable constructions.
inline constexpr double kExactTol = 1e-9;
/// Identities that go through an eigensolver or SVD.
inline constexpr double kSpectralTol = 1e-8;

/// A request exceeds one of the configured size caps.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Operands have incompatible shapes.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// base^exp, throwing CapacityError once the result passes `cap`.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap = kMaxStateDim);

}  // namespace bptest

#endif
