// Copyright 2026 The relay-dmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace relaydmt {

// Matrix is singular (or too ill-conditioned) for a determinant/Schur step.
struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand shapes are inconsistent with the requested operation.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Subset size m outside [1, min_n M_n].
struct InvalidSubsetSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive path enumeration would exceed the configured cap.
struct TooManyPaths : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The compression-noise solver hit its inflation cap without satisfying
// every subset constraint. Monte Carlo callers count this as an outage.
struct NoFeasibleNoise : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transmit-side antenna selection needs at least as many transmit as
// receive antennas.
struct RequiresMtGeMr : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad scenario file or command-line usage; maps to process exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace relaydmt
