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

// Reduced-size property suite behind `condibeam selftest`. With a fault
// injected, the closed-form conditional operator is built with the wrong sign
// on its -R^*/T coefficient; the oracle comparison must then fail.

#pragma once

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "condibeam/condibeam.hpp"

namespace condibeam::cli {

struct SelftestOptions {
  bool inject_fault = false;
};

struct PropertyResult {
  std::string name;
  bool pass;
  double metric;
  double limit;
};

namespace selftest_detail {

struct YConfig {
  int m, n;
  Complex alpha, beta;
  BeamSplitterParams bs;
};

inline const std::vector<YConfig>& y_configs() {
  static const std::vector<YConfig> configs = {
      {0, 1, 0.0, 0.0, {std::numbers::pi / 4, 0.0, 0.0}},
      {2, 1, {0.3, 0.0}, {0.0, -0.2}, {std::numbers::pi / 4, 0.0, 0.0}},
      {1, 2, {-0.4, 0.5}, {0.6, 0.1}, {std::numbers::pi / 3, 0.7, -1.1}},
      {3, 3, {0.2, -0.6}, {-0.3, 0.4}, {1.0, 2.3, 0.4}},
  };
  return configs;
}

inline FockOperator closed_y(const YConfig& c, const TruncationPolicy& policy, bool fault) {
  if (!fault) return y_displaced_fock(c.m, c.n, c.alpha, c.beta, c.bs, policy);
  return detail::displaced_sandwich(OperatorPolynomial::fock(c.m), OperatorPolynomial::fock(c.n), c.alpha,
                                    c.beta, c.bs, policy, +1.0);
}

inline PropertyResult oracle_equivalence(bool fault) {
  const TruncationPolicy policy(24);
  double worst = 0.0;
  for (const auto& c : y_configs()) {
    const FockOperator y = closed_y(c, policy, fault);
    const FockOperator o = oracle_y(ReferencePrep::displaced_fock(c.m, c.alpha),
                                    ReferencePrep::displaced_fock(c.n, c.beta), c.bs, policy);
    worst = std::max(worst, detail::relative_block_distance(y, o, policy.safe_levels()));
  }
  return {"oracle-equivalence", worst <= 1e-8, worst, 1e-8};
}

inline PropertyResult probability_consistency(bool fault) {
  const TruncationPolicy policy(24);
  Eigen::VectorXcd sig = Eigen::VectorXcd::Zero(policy.dim());
  sig(0) = {0.5, 0.1};
  sig(1) = {-0.3, 0.4};
  sig(2) = {0.2, -0.5};
  sig(3) = {0.1, 0.3};
  const FockVector psi = normalize(FockVector(sig));
  double worst = 0.0;
  for (const auto& c : y_configs()) {
    const double p_closed = apply_conditional(closed_y(c, policy, fault), psi).probability;
    const FockVector in = ReferencePrep::displaced_fock(c.m, c.alpha).to_state(policy);
    const FockVector out = ReferencePrep::displaced_fock(c.n, c.beta).to_state(policy);
    const FockOperator proj(out.amps() * out.amps().adjoint());
    const double p_born =
        conditional_reduce(TwoModeState::product(psi, normalize(in)), proj, c.bs, policy).probability;
    worst = std::max(worst, std::abs(p_closed - p_born));
  }
  return {"probability-consistency", worst <= 1e-8, worst, 1e-8};
}

inline PropertyResult chi_normalization() {
  const TruncationPolicy policy(32);
  double worst = std::abs(cat_norm_and_prob({1, std::sqrt(0.5)}).norm - 0.75);
  for (int n : {1, 2, 4}) {
    const CatSpec spec{n, std::polar(std::sqrt(n / 2.0), 0.3)};
    const FockVector a = chi_state(spec, policy);
    worst = std::max(worst, std::abs(norm(a) - 1.0));
    worst = std::max(worst, (a.amps() - chi_state_operator_route(spec, policy).amps()).norm());
    worst = std::max(worst, (a.amps() - chi_state_displaced_route(spec, policy).amps()).norm());
  }
  return {"chi-normalization", worst <= 1e-10, worst, 1e-10};
}

inline PropertyResult povm_completeness() {
  const TruncationPolicy policy(16);
  const PhotonCountingPovm povm = photon_counting_povm(0.7, policy);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (const auto& e : povm.elements) sum += e.mat();
  const double dev = (sum - Eigen::MatrixXcd::Identity(policy.dim(), policy.dim())).cwiseAbs().maxCoeff();
  return {"povm-completeness", dev <= 1e-14, dev, 1e-14};
}

inline PropertyResult ordering_equivalence() {
  const TruncationPolicy policy(16);
  double worst = 0.0;
  for (double s : {1.5, 3.0}) {
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; m + n <= 4; ++n) {
        const Eigen::MatrixXcd a = s_ordered_monomial({m, n, s}, policy).mat();
        const Eigen::MatrixXcd b = s_to_t_convert(m, n, s, 1.0, policy).mat();
        worst = std::max(worst, (a - b).norm() / std::max(1.0, b.norm()));
      }
    }
  }
  return {"ordering-equivalence", worst <= 1e-9, worst, 1e-9};
}

inline PropertyResult unitarity() {
  const TruncationPolicy policy(16);
  const TwoModeOperator u = bs_unitary_generator({0.9, 0.4, -0.2}, policy);
  const TwoModeOperator prod = u.adjoint() * u;
  const double dev = prod.max_deviation(TwoModeOperator(policy.cutoff()), policy.safe_levels());
  return {"unitarity", dev <= 1e-8, dev, 1e-8};
}

}  // namespace selftest_detail

/// Runs every property, writes one line each to `out`, returns true iff all pass.
inline bool run_selftest(const SelftestOptions& opts, std::FILE* out) {
  using namespace selftest_detail;
  const std::vector<std::function<PropertyResult()>> suite = {
      [&] { return oracle_equivalence(opts.inject_fault); },
      [&] { return probability_consistency(opts.inject_fault); },
      chi_normalization,
      povm_completeness,
      ordering_equivalence,
      unitarity,
  };
  std::fprintf(out, "condibeam selftest%s\n", opts.inject_fault ? " (fault injected)" : "");
  std::string first_failure;
  for (const auto& prop : suite) {
    PropertyResult r;
    try {
      r = prop();
    } catch (const std::exception& e) {
      r = {"exception", false, 0.0, 0.0};
      std::fprintf(out, "FAIL exception: %s\n", e.what());
    }
    std::fprintf(out, "%s %-24s metric=%.1e limit=%.0e\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.metric,
                 r.limit);
    if (!r.pass && first_failure.empty()) first_failure = r.name;
  }
  if (first_failure.empty()) {
    std::fprintf(out, "selftest: all %zu properties passed\n", suite.size());
    return true;
  }
  std::fprintf(out, "selftest: FAILED (first failing property: %s)\n", first_failure.c_str());
  return false;
}

}  // namespace condibeam::cli
