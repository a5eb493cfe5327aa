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

// Hermite, Laguerre and Jacobi polynomials.
//
// Every family has two evaluation routes: a three-term recurrence and the
// explicit finite sum. Parameters of the Laguerre and Jacobi families may be
// arbitrary reals, including negative integers; in that case the value is
// defined by the finite sum with generalized binomial coefficients
//   C(r, k) = r (r-1) ... (r-k+1) / k!,
// which is a polynomial in the parameters and therefore never hits the poles
// of a gamma-function ratio.

#pragma once

#include <cmath>
#include <complex>

#include "condibeam/errors.hpp"

namespace condibeam {

inline double log_factorial(int k) {
  if (k < 0) throw InvalidArgument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(k) + 1.0);
}

/// k! as a running product; exact up to 18!.
inline double factorial(int k) {
  if (k < 0) throw InvalidArgument("factorial: negative argument");
  double v = 1.0;
  for (int i = 2; i <= k; ++i) v *= i;
  return v;
}

/// Generalized binomial coefficient C(r, k) for real r and k >= 0.
///
/// Exact for integer r while the intermediate products stay below 2^53.
/// For k > 20 and a strictly positive falling factorial the value is taken
/// from log-gamma differences instead of the running product.
inline double gen_binomial(double r, int k) {
  if (k < 0) throw InvalidArgument("gen_binomial: k must be nonnegative");
  if (k == 0) return 1.0;
  if (k > 20 && r - k + 1.0 > 0.0) {
    return std::exp(std::lgamma(r + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(r - k + 1.0));
  }
  double v = 1.0;
  for (int i = 0; i < k; ++i) {
    v *= (r - i);
    v /= (i + 1);
  }
  return v;
}

// --- Hermite (physicists') -------------------------------------------------

inline double hermite(int k, double x) {
  if (k < 0) throw InvalidArgument("hermite: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// H_k(x) = sum_m (-1)^m k! / (m! (k-2m)!) (2x)^(k-2m).
inline double hermite_explicit(int k, double x) {
  if (k < 0) throw InvalidArgument("hermite_explicit: negative degree");
  double sum = 0.0;
  for (int m = 0; 2 * m <= k; ++m) {
    const double log_coeff =
        log_factorial(k) - log_factorial(m) - log_factorial(k - 2 * m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::exp(log_coeff) * std::pow(2.0 * x, k - 2 * m);
  }
  return sum;
}

// --- Laguerre ---------------------------------------------------------------

/// Associated Laguerre polynomial L_n^a(z) by upward recurrence in n.
template <typename Scalar>
Scalar assoc_laguerre(int n, double a, Scalar z) {
  if (n < 0) throw InvalidArgument("assoc_laguerre: negative degree");
  Scalar prev(1.0);
  if (n == 0) return prev;
  Scalar cur = Scalar(1.0 + a) - z;
  for (int k = 1; k < n; ++k) {
    const Scalar next =
        ((Scalar(2.0 * k + 1.0 + a) - z) * cur - Scalar(k + a) * prev) /
        Scalar(k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// L_n^a(z) = sum_j C(n+a, n-j) (-z)^j / j!.
template <typename Scalar>
Scalar assoc_laguerre_sum(int n, double a, Scalar z) {
  if (n < 0) throw InvalidArgument("assoc_laguerre_sum: negative degree");
  Scalar sum(0.0);
  Scalar power(1.0);  // (-z)^j / j!
  for (int j = 0; j <= n; ++j) {
    sum += gen_binomial(n + a, n - j) * power;
    power *= -z / Scalar(j + 1.0);
  }
  return sum;
}

template <typename Scalar>
Scalar laguerre(int n, Scalar z) {
  return assoc_laguerre(n, 0.0, z);
}

// --- Jacobi -----------------------------------------------------------------

/// P_m^(b,c)(z) = 2^-m sum_j C(m+b, j) C(m+c, m-j) (z-1)^(m-j) (z+1)^j.
inline double jacobi(int m, double b, double c, double z) {
  if (m < 0) throw InvalidArgument("jacobi: negative degree");
  double sum = 0.0;
  for (int j = 0; j <= m; ++j) {
    sum += gen_binomial(m + b, j) * gen_binomial(m + c, m - j) *
           std::pow(z - 1.0, m - j) * std::pow(z + 1.0, j);
  }
  return std::ldexp(sum, -m);
}

/// Jacobi polynomial by the standard three-term recurrence.
///
/// The recurrence divides by 2k (k+b+c) (2k+b+c-2); parameter combinations
/// that make a divisor vanish are rejected. Use jacobi() for those.
inline double jacobi_recurrence(int m, double b, double c, double z) {
  if (m < 0) throw InvalidArgument("jacobi_recurrence: negative degree");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = (b + 1.0) + (b + c + 2.0) * (z - 1.0) / 2.0;
  for (int k = 2; k <= m; ++k) {
    const double s = 2.0 * k + b + c;
    const double denom = 2.0 * k * (k + b + c) * (s - 2.0);
    if (std::abs(denom) < 1e-300) {
      throw InvalidArgument("jacobi_recurrence: singular parameters");
    }
    const double next = ((s - 1.0) * (s * (s - 2.0) * z + b * b - c * c) * cur -
                         2.0 * (k + b - 1.0) * (k + c - 1.0) * s * prev) /
                        denom;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace condibeam
