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

#include <cmath>
#include <complex>
#include <numbers>

#include "condibeam/errors.hpp"

namespace condibeam {

/// Lossless beam splitter, T = e^{i phi_T} cos(theta), R = e^{i phi_R} sin(theta).
///
/// Coherent amplitudes map as (gamma, alpha) -> (T gamma + R alpha,
/// -R^* gamma + T^* alpha) for (signal, reference).
struct BeamSplitterParams {
  double theta = std::numbers::pi / 4;
  double phi_t = 0.0;
  double phi_r = 0.0;

  std::complex<double> transmittance() const { return std::polar(std::cos(theta), phi_t); }
  std::complex<double> reflectance() const { return std::polar(std::sin(theta), phi_r); }

  /// Ordering parameter s = 2 / |R|^2 - 1 of the conditional operator.
  double ordering_parameter() const {
    const double r2 = std::norm(reflectance());
    if (r2 == 0.0) throw DegenerateBeamSplitter("ordering parameter undefined for R = 0");
    return 2.0 / r2 - 1.0;
  }

  bool is_balanced(double tol = 1e-12) const {
    return std::abs(std::norm(transmittance()) - 0.5) <= tol;
  }

  /// Rejects T = 0 or R = 0, where the closed forms divide by T or R^*.
  void require_nondegenerate() const {
    if (std::abs(std::cos(theta)) < 1e-15) throw DegenerateBeamSplitter("T = 0");
    if (std::abs(std::sin(theta)) < 1e-15) throw DegenerateBeamSplitter("R = 0");
  }

  /// Parameters of the splitter with (T, R) replaced by (i R, i T).
  BeamSplitterParams swapped() const {
    constexpr double half_pi = std::numbers::pi / 2;
    return {half_pi - theta, phi_r + half_pi, phi_t + half_pi};
  }

  /// Builds the angles from complex (T, R) with |T|^2 + |R|^2 = 1.
  static BeamSplitterParams from_tr(std::complex<double> t, std::complex<double> r) {
    if (std::abs(std::norm(t) + std::norm(r) - 1.0) > 1e-12) {
      throw InvalidArgument("BeamSplitterParams: |T|^2 + |R|^2 != 1");
    }
    return {std::atan2(std::abs(r), std::abs(t)), t == 0.0 ? 0.0 : std::arg(t),
            r == 0.0 ? 0.0 : std::arg(r)};
  }
};

}  // namespace condibeam
