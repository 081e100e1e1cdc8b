// Copyright 2026 The liouvep authors
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

namespace liouvep {

/// Root of the library error hierarchy. Every exception thrown on a
/// documented failure path derives from this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions are incompatible (operator vs operator, operator vs
/// superoperator, site index out of range, ...).
class DimMismatch : public Error {
 public:
  using Error::Error;
};

/// A vector claimed to be a stacked operator has non-square length.
class NonSquareLength : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be Hermitian is not, beyond tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// An adjacency matrix violates its structural contract (asymmetry,
/// nonzero diagonal, negative weight, non-square shape).
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// A graph is too small for the requested construction.
class TooSmall : public Error {
 public:
  using Error::Error;
};

/// A correlation strength leaves the interval where every collective rate
/// stays non-negative.
class PositivityViolated : public Error {
 public:
  using Error::Error;
};

/// A jump family does not match the channel the caller asked for.
class WrongChannel : public Error {
 public:
  using Error::Error;
};

/// The dense eigensolver failed to converge.
class EigFailure : public Error {
 public:
  using Error::Error;
};

/// An initial state fails the density-matrix checks (trace one, Hermitian,
/// positive semidefinite).
class InvalidDensity : public Error {
 public:
  using Error::Error;
};

/// Vectors handed in as a Jordan chain do not satisfy the chain relations.
class NotAChain : public Error {
 public:
  using Error::Error;
};

/// A reduced generator fails to close on its subspace beyond tolerance.
class ClosureViolation : public Error {
 public:
  using Error::Error;
};

/// A spectral projection is too ill-conditioned to be meaningful.
class IllConditionedProjection : public Error {
 public:
  using Error::Error;
};

/// A fit window contains too few samples.
class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

/// Every grid point of a scan was excluded; there is nothing to report.
class AllPointsExcluded : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing configuration (CLI arguments, config file, input
/// files, parameter ranges).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical stage failed in a way that is not a configuration problem.
class ComputeError : public Error {
 public:
  using Error::Error;
};

}  // namespace liouvep
