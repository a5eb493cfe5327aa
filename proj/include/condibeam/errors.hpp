// Copyright 2026 The condibeam Authors
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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace condibeam {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad range, bad shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects built at different Fock cutoffs were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A requested photon number or operator power does not fit the cutoff.
class CutoffExceeded : public Error {
 public:
  using Error::Error;
};

/// The probability mass a state puts on the top Fock levels is above the
/// policy tolerance.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : Error(what + " (tail mass " + format_mass(tail_mass) + ")"),
        tail_mass_(tail_mass) {}

  double tail_mass() const { return tail_mass_; }

 private:
  static std::string format_mass(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", m);
    return buf;
  }

  double tail_mass_;
};

/// Transmittance or reflectance vanishes where a closed form divides by it.
class DegenerateBeamSplitter : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a measurement result that cannot occur.
class ZeroProbabilityOutcome : public Error {
 public:
  using Error::Error;
};

/// Numeric quadrature window does not cover the integrand.
class IntegrationRangeError : public Error {
 public:
  using Error::Error;
};

/// Two construction routes of the same object disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace condibeam
