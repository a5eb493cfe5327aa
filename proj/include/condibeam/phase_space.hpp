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

// Husimi, Wigner and quadrature distributions on rectangular grids.
//
// Quadratures are dimensionless with vacuum variance 1/2:
//   <x, phi|psi> = sum_k e^{-i k phi} h_k(x) psi_k,
// h_k the normalized Hermite functions. Husimi grids are over (Re alpha,
// Im alpha), Wigner grids over (x, p), quadrature grids over (x, phi).

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "condibeam/cat_states.hpp"
#include "condibeam/fock.hpp"
#include "condibeam/polynomials.hpp"

namespace condibeam {

/// Uniformly spaced axis. A single point is a fixed slice and needs min == max.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  void validate() const {
    if (!std::isfinite(min) || !std::isfinite(max)) throw InvalidArgument("Axis " + name + ": range must be finite");
    if (points < 1) throw InvalidArgument("Axis " + name + ": points must be >= 1");
    if (points == 1 && min != max) throw InvalidArgument("Axis " + name + ": a single point needs min == max");
    if (points > 1 && !(max > min)) throw InvalidArgument("Axis " + name + ": max must exceed min");
  }

  double step() const { return points > 1 ? (max - min) / (points - 1) : 0.0; }
  double value(int i) const { return points > 1 ? min + i * step() : min; }
};

struct PhaseGrid {
  Axis axis1;
  Axis axis2;

  void validate() const {
    axis1.validate();
    axis2.validate();
  }
  int size() const { return axis1.points * axis2.points; }
};

enum class GridKind { kHusimi, kWigner, kQuadrature };

inline const char* kind_name(GridKind kind) {
  switch (kind) {
    case GridKind::kHusimi:
      return "husimi";
    case GridKind::kWigner:
      return "wigner";
    case GridKind::kQuadrature:
      return "quadrature";
  }
  return "unknown";
}

/// Values in row-major order: row i1 runs over axis2.
struct GridFunction {
  PhaseGrid grid;
  GridKind kind;
  std::vector<double> values;

  double at(int i1, int i2) const { return values[static_cast<size_t>(i1) * grid.axis2.points + i2]; }
  double& at(int i1, int i2) { return values[static_cast<size_t>(i1) * grid.axis2.points + i2]; }
};

namespace detail {

inline GridFunction make_grid_function(const PhaseGrid& grid, GridKind kind) {
  grid.validate();
  return {grid, kind, std::vector<double>(grid.size(), 0.0)};
}

/// Trapezoid weights for an axis; a fixed slice has weight 1.
inline std::vector<double> trapezoid_weights(const Axis& axis) {
  std::vector<double> w(axis.points, axis.step());
  if (axis.points == 1) {
    w[0] = 1.0;
  } else {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

/// <u, 0|psi> = sum_k h_k(u) psi_k.
inline Complex position_amplitude(const FockVector& psi, double u) {
  const auto h = hermite_functions(u, psi.cutoff());
  Complex sum(0.0);
  for (int k = 0; k < psi.dim(); ++k) sum += h[k] * psi[k];
  return sum;
}

}  // namespace detail

// --- Husimi ---------------------------------------------------------------------

/// Q(alpha) = |<alpha|psi>|^2 / pi with exact (unrenormalized) coherent
/// amplitudes. The state itself must respect the truncation tolerance.
inline GridFunction husimi(const FockVector& psi, const PhaseGrid& grid,
                           const TruncationPolicy& policy) {
  if (psi.dim() != policy.dim()) throw DimensionMismatch("husimi: cutoff mismatch");
  require_tail(psi, policy, "husimi: state leaks past the cutoff");
  GridFunction out = detail::make_grid_function(grid, GridKind::kHusimi);
  for (int i = 0; i < grid.axis1.points; ++i) {
    for (int j = 0; j < grid.axis2.points; ++j) {
      const Complex alpha(grid.axis1.value(i), grid.axis2.value(j));
      const Complex overlap = detail::coherent_amplitudes(alpha, psi.cutoff()).dot(psi.amps());
      out.at(i, j) = std::norm(overlap) / std::numbers::pi;
    }
  }
  return out;
}

/// Q of chi(n, beta): |L_n[beta (alpha^* + beta^*)]|^2 e^{-|alpha|^2} / (pi N).
inline GridFunction husimi_chi_closed(const CatSpec& spec, const PhaseGrid& grid) {
  const double n_norm = cat_norm_and_prob(spec).norm;
  GridFunction out = detail::make_grid_function(grid, GridKind::kHusimi);
  for (int i = 0; i < grid.axis1.points; ++i) {
    for (int j = 0; j < grid.axis2.points; ++j) {
      const Complex alpha(grid.axis1.value(i), grid.axis2.value(j));
      const Complex arg = spec.beta * (std::conj(alpha) + std::conj(spec.beta));
      const Complex lag = laguerre(spec.n, arg);
      out.at(i, j) = std::norm(lag) * std::exp(-std::norm(alpha)) / (std::numbers::pi * n_norm);
    }
  }
  return out;
}

/// Q of the multi-cat state: |alpha^k - beta^k|^{2n} e^{-|alpha|^2} / (pi N_k).
inline GridFunction husimi_multi_cat_closed(const CatSpec& spec, const PhaseGrid& grid) {
  const double nk = multi_cat_norm(spec);
  GridFunction out = detail::make_grid_function(grid, GridKind::kHusimi);
  for (int i = 0; i < grid.axis1.points; ++i) {
    for (int j = 0; j < grid.axis2.points; ++j) {
      const Complex alpha(grid.axis1.value(i), grid.axis2.value(j));
      const double base = std::norm(std::pow(alpha, spec.k) - std::pow(spec.beta, spec.k));
      out.at(i, j) = std::pow(base, spec.n) * std::exp(-std::norm(alpha)) / (std::numbers::pi * nk);
    }
  }
  return out;
}

// --- Wigner ---------------------------------------------------------------------

/// Range and step of the y-integral. A zero half_width selects
/// 4 + 2 sqrt(<n>) from the state's mean photon number.
struct WignerIntegration {
  double half_width = 0.0;
  double max_step = 0.02;
  double endpoint_tol = 1e-6;
};

/// W(x, p) = (1/pi) int dy e^{2ipy} <x-y,0|psi> <psi|x+y,0>, trapezoid rule.
/// Throws IntegrationRangeError when the integrand has not decayed at the ends.
inline GridFunction wigner_numeric(const FockVector& psi, const PhaseGrid& grid,
                                   const WignerIntegration& spec = {}) {
  if (!(spec.max_step > 0.0)) throw InvalidArgument("wigner_numeric: max_step must be positive");
  const FockVector state = normalize(psi);
  const double half = spec.half_width > 0.0 ? spec.half_width
                                            : 4.0 + 2.0 * std::sqrt(mean_photon_number(state));
  const int intervals = static_cast<int>(std::ceil(2.0 * half / spec.max_step));
  const double h = 2.0 * half / intervals;
  GridFunction out = detail::make_grid_function(grid, GridKind::kWigner);
  std::vector<Complex> f(intervals + 1);
  for (int i = 0; i < grid.axis1.points; ++i) {
    const double x = grid.axis1.value(i);
    for (int l = 0; l <= intervals; ++l) {
      const double y = -half + l * h;
      f[l] = detail::position_amplitude(state, x - y) *
             std::conj(detail::position_amplitude(state, x + y));
    }
    if (std::max(std::abs(f.front()), std::abs(f.back())) > spec.endpoint_tol) {
      throw IntegrationRangeError("wigner_numeric: integrand has not decayed at the integration limits");
    }
    for (int j = 0; j < grid.axis2.points; ++j) {
      const double p = grid.axis2.value(j);
      Complex sum(0.0);
      for (int l = 0; l <= intervals; ++l) {
        const double w = (l == 0 || l == intervals) ? 0.5 : 1.0;
        sum += w * std::polar(1.0, 2.0 * p * (-half + l * h)) * f[l];
      }
      out.at(i, j) = (sum * h).real() / std::numbers::pi;
    }
  }
  return out;
}

/// Double-sum closed form of the chi(n, beta) Wigner function at one point,
/// z = sqrt(2)(x + ip). Returned complex so that callers can check Im = 0.
inline Complex wigner_cat_closed_point(const CatSpec& spec, double x, double p) {
  spec.validate();
  const double b2 = std::norm(spec.beta);
  const double n_norm = cat_norm_and_prob(spec).norm;
  const Complex z = std::sqrt(2.0) * Complex(x, p);
  const double z2 = std::norm(z);
  const int n = spec.n;
  std::vector<double> lag_beta(n + 1);
  for (int k = 0; k <= n; ++k) lag_beta[k] = assoc_laguerre(n - k, static_cast<double>(k), b2);
  Complex sum(0.0);
  for (int m = 0; m <= n; ++m) {
    const Complex bm = std::pow(-std::conj(spec.beta), m);
    for (int k = 0; k <= m; ++k) {
      sum += lag_beta[k] * lag_beta[m] * assoc_laguerre(k, static_cast<double>(m - k), z2) *
             std::pow(spec.beta, k) * bm * std::pow(z, m - k) / factorial(m);
    }
    for (int k = m + 1; k <= n; ++k) {
      sum += lag_beta[k] * lag_beta[m] * assoc_laguerre(m, static_cast<double>(k - m), z2) *
             std::pow(spec.beta, k) * bm * std::pow(-std::conj(z), k - m) / factorial(k);
    }
  }
  return sum * std::exp(-(x * x + p * p)) / (std::numbers::pi * n_norm);
}

inline GridFunction wigner_cat_closed(const CatSpec& spec, const PhaseGrid& grid) {
  GridFunction out = detail::make_grid_function(grid, GridKind::kWigner);
  for (int i = 0; i < grid.axis1.points; ++i) {
    for (int j = 0; j < grid.axis2.points; ++j) {
      out.at(i, j) = wigner_cat_closed_point(spec, grid.axis1.value(i), grid.axis2.value(j)).real();
    }
  }
  return out;
}

// --- quadratures ----------------------------------------------------------------

/// p(x, phi) = |<x, phi|psi>|^2 over a grid of (x, phi).
inline GridFunction quadrature_dist(const FockVector& psi, const PhaseGrid& grid) {
  const FockVector state = normalize(psi);
  GridFunction out = detail::make_grid_function(grid, GridKind::kQuadrature);
  for (int i = 0; i < grid.axis1.points; ++i) {
    const auto h = hermite_functions(grid.axis1.value(i), state.cutoff());
    for (int j = 0; j < grid.axis2.points; ++j) {
      const double phi = grid.axis2.value(j);
      Complex sum(0.0);
      for (int k = 0; k < state.dim(); ++k) sum += std::polar(h[k], -k * phi) * state[k];
      out.at(i, j) = std::norm(sum);
    }
  }
  return out;
}

/// Hermite-sum form for chi(n, beta):
///   |sum_k L_{n-k}^k(|beta|^2) (-beta^* e^{i phi} / sqrt 2)^k / k! H_k(x)|^2 e^{-x^2} / (sqrt(pi) N).
inline GridFunction quadrature_chi_closed(const CatSpec& spec, const PhaseGrid& grid) {
  const double b2 = std::norm(spec.beta);
  const double n_norm = cat_norm_and_prob(spec).norm;
  GridFunction out = detail::make_grid_function(grid, GridKind::kQuadrature);
  for (int i = 0; i < grid.axis1.points; ++i) {
    const double x = grid.axis1.value(i);
    for (int j = 0; j < grid.axis2.points; ++j) {
      const Complex c = -std::conj(spec.beta) * std::polar(1.0, grid.axis2.value(j)) / std::sqrt(2.0);
      Complex sum(0.0);
      Complex power(1.0);  // c^k / k!
      for (int k = 0; k <= spec.n; ++k) {
        sum += assoc_laguerre(spec.n - k, static_cast<double>(k), b2) * power * hermite(k, x);
        power *= c / static_cast<double>(k + 1);
      }
      out.at(i, j) = std::norm(sum) * std::exp(-x * x) / (std::sqrt(std::numbers::pi) * n_norm);
    }
  }
  return out;
}

// --- integration ----------------------------------------------------------------

/// Trapezoid integral over both axes (a fixed-slice axis contributes weight 1).
inline double integrate(const GridFunction& f) {
  const auto w1 = detail::trapezoid_weights(f.grid.axis1);
  const auto w2 = detail::trapezoid_weights(f.grid.axis2);
  double sum = 0.0;
  for (int i = 0; i < f.grid.axis1.points; ++i) {
    for (int j = 0; j < f.grid.axis2.points; ++j) sum += w1[i] * w2[j] * f.at(i, j);
  }
  return sum;
}

/// Trapezoid integral over axis2, one value per axis1 point.
inline std::vector<double> integrate_axis2(const GridFunction& f) {
  const auto w2 = detail::trapezoid_weights(f.grid.axis2);
  std::vector<double> out(f.grid.axis1.points, 0.0);
  for (int i = 0; i < f.grid.axis1.points; ++i) {
    for (int j = 0; j < f.grid.axis2.points; ++j) out[i] += w2[j] * f.at(i, j);
  }
  return out;
}

/// Largest |a - b| over two functions on the same grid.
inline double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  if (a.values.size() != b.values.size()) throw DimensionMismatch("max_abs_difference: grid mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

/// Grid indices of strict local maxima over the 8-neighbourhood, interior only.
inline std::vector<std::pair<int, int>> local_maxima(const GridFunction& f, double min_value = 0.0) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i + 1 < f.grid.axis1.points; ++i) {
    for (int j = 1; j + 1 < f.grid.axis2.points; ++j) {
      const double v = f.at(i, j);
      if (v <= min_value) continue;
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && f.at(i + di, j + dj) >= v) {
            peak = false;
            break;
          }
        }
      }
      if (peak) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace condibeam
