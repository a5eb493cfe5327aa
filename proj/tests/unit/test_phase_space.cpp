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

#include <gtest/gtest.h>

#include <numbers>

#include "condibeam/phase_space.hpp"

namespace condibeam {
namespace {

constexpr double kPi = std::numbers::pi;

PhaseGrid square(double half, int points) {
  return {{"x", -half, half, points}, {"p", -half, half, points}};
}

TEST(Axis, Validation) {
  EXPECT_NO_THROW((Axis{"x", 1.0, 1.0, 1}.validate()));
  EXPECT_THROW((Axis{"x", 0.0, 1.0, 1}.validate()), InvalidArgument);
  EXPECT_THROW((Axis{"x", 0.0, 1.0, 0}.validate()), InvalidArgument);
  EXPECT_THROW((Axis{"x", 1.0, 0.0, 5}.validate()), InvalidArgument);
  EXPECT_THROW((Axis{"x", 0.0, std::nan(""), 5}.validate()), InvalidArgument);
  const Axis a{"x", -1.0, 1.0, 5};
  EXPECT_DOUBLE_EQ(a.step(), 0.5);
  EXPECT_DOUBLE_EQ(a.value(3), 0.5);
}

TEST(Husimi, VacuumAndCoherent) {
  const TruncationPolicy p(32);
  const PhaseGrid g = square(2.0, 9);
  const Complex alpha(0.7, -0.4);
  const GridFunction q0 = husimi(fock_state(0, p), g, p);
  const GridFunction qa = husimi(coherent_state(alpha, p), g, p);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const Complex z(g.axis1.value(i), g.axis2.value(j));
      EXPECT_NEAR(q0.at(i, j), std::exp(-std::norm(z)) / kPi, 1e-15);
      EXPECT_NEAR(qa.at(i, j), std::exp(-std::norm(z - alpha)) / kPi, 1e-12);
    }
  }
}

TEST(Husimi, ClosedFormsMatchOverlaps) {
  const TruncationPolicy p(128);
  const PhaseGrid g = square(5.0, 21);
  const CatSpec chi{10, std::sqrt(5.0)};
  EXPECT_LT(max_abs_difference(husimi(chi_state(chi, p), g, p), husimi_chi_closed(chi, g)), 1e-12);
  const CatSpec multi{10, 4.2, 5};
  EXPECT_LT(max_abs_difference(husimi(multi_cat_state(multi, p), g, p), husimi_multi_cat_closed(multi, g)), 1e-12);
}

TEST(Husimi, NormalizedAndRejectsLeakyStates) {
  const TruncationPolicy p(64);
  const GridFunction q = husimi(chi_state({4, {1.0, 0.5}}, p), square(7.0, 141), p);
  EXPECT_NEAR(integrate(q), 1.0, 1e-8);
  EXPECT_THROW(husimi(fock_state(p.cutoff(), p), square(1.0, 3), p), TruncationError);
}

TEST(Husimi, LocalMaximaOfCoherentState) {
  const TruncationPolicy p(32);
  const GridFunction q = husimi(coherent_state({1.0, -0.6}, p), square(2.0, 21), p);
  const auto peaks = local_maxima(q, 1e-3);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_DOUBLE_EQ(q.grid.axis1.value(peaks[0].first), 1.0);
  EXPECT_NEAR(q.grid.axis2.value(peaks[0].second), -0.6, 1e-12);
}

TEST(Husimi, MultiCatPeaksBetweenZeros) {
  // zeros at beta e^{2 pi i j / k}; the k maxima sit at the angles (2j + 1) pi / k
  const CatSpec spec{10, 4.2, 5};
  const PhaseGrid g = square(9.0, 91);
  const GridFunction q = husimi_multi_cat_closed(spec, g);
  EXPECT_NEAR(integrate(q), 1.0, 1e-4);
  // a shallow local maximum also sits at the origin
  auto peaks = local_maxima(q, 1e-2);
  ASSERT_EQ(peaks.size(), 5u);
  for (const auto& [i, j] : peaks) {
    const double angle = std::arg(Complex(g.axis1.value(i), g.axis2.value(j)));
    double best = 10.0;
    for (int l = 0; l < 5; ++l) {
      best = std::min(best, std::abs(std::remainder(angle - (2 * l + 1) * kPi / 5, 2 * kPi)));
    }
    EXPECT_LT(best, 0.2 / std::abs(Complex(g.axis1.value(i), g.axis2.value(j))) + 0.05);
  }
  const PhaseGrid zero{{"x", 4.2, 4.2, 1}, {"p", 0.0, 0.0, 1}};
  EXPECT_EQ(husimi_multi_cat_closed(spec, zero).at(0, 0), 0.0);
}

TEST(Wigner, VacuumAndCoherentGaussians) {
  const TruncationPolicy p(32);
  const PhaseGrid g = square(2.5, 11);
  const Complex alpha(0.5, 0.3);
  const GridFunction w0 = wigner_numeric(fock_state(0, p), g);
  const GridFunction wa = wigner_numeric(coherent_state(alpha, p), g);
  const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      const double x = g.axis1.value(i), y = g.axis2.value(j);
      EXPECT_NEAR(w0.at(i, j), std::exp(-x * x - y * y) / kPi, 1e-8);
      EXPECT_NEAR(wa.at(i, j), std::exp(-(x - x0) * (x - x0) - (y - p0) * (y - p0)) / kPi, 1e-8);
    }
  }
}

TEST(Wigner, SinglePhotonOriginIsNegative) {
  const TruncationPolicy p(16);
  const PhaseGrid origin{{"x", 0.0, 0.0, 1}, {"p", 0.0, 0.0, 1}};
  EXPECT_NEAR(wigner_numeric(fock_state(1, p), origin).at(0, 0), -1.0 / kPi, 1e-12);
}

TEST(Wigner, ClosedFormMatchesNumeric) {
  const TruncationPolicy p(48);
  const PhaseGrid g = square(4.0, 17);
  for (const CatSpec spec : {CatSpec{3, std::sqrt(1.5)}, CatSpec{5, {1.2, -0.8}}}) {
    EXPECT_LT(max_abs_difference(wigner_numeric(chi_state(spec, p), g), wigner_cat_closed(spec, g)), 1e-10);
    double worst_imag = 0.0;
    for (int i = 0; i < 17; ++i) {
      for (int j = 0; j < 17; ++j) {
        worst_imag = std::max(worst_imag, std::abs(wigner_cat_closed_point(spec, g.axis1.value(i), g.axis2.value(j)).imag()));
      }
    }
    EXPECT_LT(worst_imag, 1e-12);
  }
}

TEST(Wigner, NormalizationAndMarginal) {
  const TruncationPolicy p(48);
  const FockVector chi = chi_state({3, std::sqrt(1.5)}, p);
  EXPECT_NEAR(integrate(wigner_numeric(chi, square(6.0, 121))), 1.0, 1e-8);
  // integrating W over p recovers the position distribution
  const PhaseGrid wide{{"x", -3.0, 3.0, 13}, {"p", -8.0, 8.0, 321}};
  const std::vector<double> marginal = integrate_axis2(wigner_numeric(chi, wide));
  const GridFunction px = quadrature_dist(chi, {{"x", -3.0, 3.0, 13}, {"phi", 0.0, 0.0, 1}});
  for (int i = 0; i < 13; ++i) EXPECT_NEAR(marginal[i], px.at(i, 0), 1e-8) << i;
}

TEST(Wigner, RejectsShortIntegrationRange) {
  const TruncationPolicy p(32);
  WignerIntegration spec;
  spec.half_width = 1.0;
  EXPECT_THROW(wigner_numeric(fock_state(4, p), square(1.0, 3), spec), IntegrationRangeError);
  spec.max_step = 0.0;
  EXPECT_THROW(wigner_numeric(fock_state(4, p), square(1.0, 3), spec), InvalidArgument);
}

TEST(Quadrature, FockStatesAreRotationInvariant) {
  const TruncationPolicy p(24);
  const PhaseGrid g{{"x", -3.0, 3.0, 25}, {"phi", 0.0, kPi, 7}};
  for (int n : {0, 1, 3}) {
    const GridFunction f = quadrature_dist(fock_state(n, p), g);
    for (int i = 0; i < 25; ++i) {
      const double expected = std::pow(hermite_functions(g.axis1.value(i), n)[n], 2);
      for (int j = 0; j < 7; ++j) EXPECT_NEAR(f.at(i, j), expected, 1e-14);
    }
  }
  EXPECT_NEAR(quadrature_dist(fock_state(0, p), g).at(12, 0), 1.0 / std::sqrt(kPi), 1e-15);
}

TEST(Quadrature, CoherentStateRotates) {
  const TruncationPolicy p(32);
  const Complex alpha(1.0, 0.6);
  const PhaseGrid g{{"x", -4.0, 4.0, 33}, {"phi", 0.0, 2.0 * kPi, 9}};
  const GridFunction f = quadrature_dist(coherent_state(alpha, p), g);
  for (int j = 0; j < 9; ++j) {
    const double centre = std::sqrt(2.0) * (alpha * std::polar(1.0, -g.axis2.value(j))).real();
    for (int i = 0; i < 33; ++i) {
      const double x = g.axis1.value(i);
      EXPECT_NEAR(f.at(i, j), std::exp(-(x - centre) * (x - centre)) / std::sqrt(kPi), 1e-10);
    }
  }
}

TEST(Quadrature, ClosedFormMatchesOverlap) {
  const TruncationPolicy p(64);
  const CatSpec spec{10, std::sqrt(5.0)};
  const PhaseGrid g{{"x", -6.0, 6.0, 49}, {"phi", 0.0, kPi, 13}};
  EXPECT_LT(max_abs_difference(quadrature_dist(chi_state(spec, p), g), quadrature_chi_closed(spec, g)), 1e-12);
}

}  // namespace
}  // namespace condibeam
