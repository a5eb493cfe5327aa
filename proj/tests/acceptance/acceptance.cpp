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

// End-to-end acceptance run. One PASS/FAIL line per criterion, plus INFO
// lines with supporting measurements. Exit status is nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "condibeam/condibeam.hpp"

namespace {

using namespace condibeam;

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void info(const std::string& text) { std::printf("INFO %s\n", text.c_str()); }

// --- random conditional configurations -----------------------------------------

struct Config {
  int m, n;
  Complex alpha, beta;
  BeamSplitterParams bs;
  OperatorPolynomial f, g;
  FockVector signal{Eigen::VectorXcd::Ones(1)};
};

Complex in_disk(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

OperatorPolynomial random_poly(std::mt19937& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(degree + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return OperatorPolynomial(c);
}

const std::vector<Config>& configs() {
  static const std::vector<Config> all = [] {
    const TruncationPolicy policy(48);
    std::mt19937 rng(48611);
    std::uniform_int_distribution<int> photons(0, 4);
    std::uniform_int_distribution<int> angle(0, 2);
    std::uniform_int_distribution<int> signal_top(0, 6);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::normal_distribution<double> g;
    const double thetas[] = {kPi / 4, kPi / 3, 1.0};
    std::vector<Config> out;
    for (int i = 0; i < 50; ++i) {
      Config c;
      c.m = photons(rng);
      c.n = photons(rng);
      c.alpha = in_disk(rng, 1.0);
      c.beta = in_disk(rng, 1.0);
      const double theta = thetas[angle(rng)];
      const double phi_t = phase(rng);
      c.bs = {theta, phi_t, phase(rng)};
      c.f = random_poly(rng, c.m);
      c.g = random_poly(rng, c.n);
      Eigen::VectorXcd s = Eigen::VectorXcd::Zero(policy.dim());
      const int top = signal_top(rng);
      for (int k = 0; k <= top; ++k) s(k) = {g(rng), g(rng)};
      c.signal = normalize(FockVector(s));
      out.push_back(std::move(c));
    }
    return out;
  }();
  return all;
}

// Generator-form unitaries for the 50 configurations, shared by the first two criteria.
const TwoModeOperator& unitary_for(size_t i) {
  static std::vector<TwoModeOperator> cache;
  if (cache.empty()) {
    const TruncationPolicy policy(48);
    for (const Config& c : configs()) cache.push_back(bs_unitary_generator(c.bs, policy));
  }
  return cache.at(i);
}

Verdict criterion_oracle_equivalence() {
  const TruncationPolicy policy(48);
  const int block = 24;
  double worst_fock = 0.0, worst_general = 0.0;
  for (size_t i = 0; i < configs().size(); ++i) {
    const Config& c = configs()[i];
    const ReferencePrep in = ReferencePrep::displaced_fock(c.m, c.alpha);
    const ReferencePrep out = ReferencePrep::displaced_fock(c.n, c.beta);
    const FockOperator oracle = oracle_y(in, out, unitary_for(i), policy);
    worst_fock = std::max(worst_fock, detail::relative_block_distance(
                                          y_displaced_fock(c.m, c.n, c.alpha, c.beta, c.bs, policy), oracle, block));
    worst_fock = std::max(worst_fock,
                          detail::relative_block_distance(y_displaced_general(in, out, c.bs, policy), oracle, block));
    const ReferencePrep gin{c.f, c.alpha}, gout{c.g, c.beta};
    worst_general = std::max(worst_general, detail::relative_block_distance(y_displaced_general(gin, gout, c.bs, policy),
                                                                            oracle_y(gin, gout, unitary_for(i), policy), block));
  }
  const double worst = std::max(worst_fock, worst_general);
  return {worst <= 1e-8, fmt("50 configs, displaced Fock max rel dist %.2e, random polynomials %.2e (limit 1e-8)",
                             worst_fock, worst_general)};
}

Verdict criterion_probability_consistency() {
  const TruncationPolicy policy(48);
  double worst = 0.0;
  for (size_t i = 0; i < configs().size(); ++i) {
    const Config& c = configs()[i];
    const double p_closed =
        apply_conditional(y_displaced_fock(c.m, c.n, c.alpha, c.beta, c.bs, policy), c.signal).probability;
    const FockVector ref = normalize(ReferencePrep::displaced_fock(c.m, c.alpha).to_state(policy));
    const FockVector meas = normalize(ReferencePrep::displaced_fock(c.n, c.beta).to_state(policy));
    const FockOperator proj(meas.amps() * meas.amps().adjoint());
    const double p_born = conditional_reduce(TwoModeState::product(c.signal, ref), proj, unitary_for(i), policy).probability;
    worst = std::max(worst, std::abs(p_closed - p_born));
  }
  return {worst <= 1e-8, fmt("50 configs, max |p_closed - p_born| %.2e (limit 1e-8)", worst)};
}

Verdict criterion_scheme_a() {
  const TruncationPolicy policy(64);
  const BeamSplitterParams bs{kPi / 4, 0.0, 0.0};
  double worst_infid = 0.0, worst_p = 0.0, p1 = 0.0;
  for (int n : {1, 2, 4, 6}) {
    const CatSpec spec{n, std::sqrt(n / 2.0)};
    const FockVector meas =
        normalize(ReferencePrep::displaced_fock(n, measured_from_beta(spec.beta, bs)).to_state(policy));
    const ReducedState red =
        conditional_reduce(TwoModeState::product(fock_state(n, policy), fock_state(0, policy)),
                           FockOperator(meas.amps() * meas.amps().adjoint()), bs, policy);
    const FockVector chi = chi_state(spec, policy);
    const double fid = (chi.amps().adjoint() * red.rho.mat() * chi.amps())(0).real();
    const double p_closed = cat_norm_and_prob(spec).probability;
    worst_infid = std::max(worst_infid, 1.0 - fid);
    worst_p = std::max(worst_p, std::abs(red.probability - p_closed));
    info(fmt("scheme (a) n=%.0f p_oracle=%.10f p_closed=%.10f fidelity=%.12f", n, red.probability, p_closed, fid));
    if (n == 1) p1 = red.probability;
  }
  const bool spot = std::abs(p1 - 0.2274) < 5e-5;
  return {worst_infid <= 1e-8 && worst_p <= 1e-10 && spot,
          fmt("max infidelity %.2e (limit 1e-8), max |dp| %.2e (limit 1e-10), p(n=1)=%.6f (spot 0.2274)", worst_infid,
              worst_p, p1)};
}

Verdict criterion_scheme_b() {
  const TruncationPolicy policy(64);
  const BeamSplitterParams bs{kPi / 4, 0.0, 0.0};
  double worst_infid = 0.0, worst_dp = 0.0;
  for (int n : {2, 4}) {
    const CatSpec spec{n, std::sqrt(n / 2.0)};
    const ConditionalResult b = scheme_b_state(spec, bs, policy);
    const ConditionalResult a = scheme_a_state(spec, bs, policy);
    const FockVector target = apply(displacement_op(spec.beta, policy), chi_state(spec, policy));
    worst_infid = std::max(worst_infid, 1.0 - fidelity(b.state, target));
    worst_dp = std::max(worst_dp, std::abs(a.probability - b.probability));
    info(fmt("scheme (b) n=%.0f p_b=%.10f p_a=%.10f |<b|D chi>|=%.12f", n, b.probability, a.probability,
             fidelity(b.state, target)));
  }
  return {worst_infid <= 1e-6 && worst_dp <= 1e-8,
          fmt("max 1-|<b|D chi>| %.2e (limit 1e-6), max |p_a - p_b| %.2e (limit 1e-8)", worst_infid, worst_dp)};
}

Verdict criterion_wigner() {
  const auto start = std::chrono::steady_clock::now();
  const TruncationPolicy policy(48);
  const CatSpec spec{3, std::sqrt(1.5)};
  const FockVector chi = chi_state(spec, policy);
  const PhaseGrid grid{{"x", -4.0, 4.0, 81}, {"p", -4.0, 4.0, 81}};
  const GridFunction numeric = wigner_numeric(chi, grid);
  const double diff = max_abs_difference(numeric, wigner_cat_closed(spec, grid));
  const double total = integrate(numeric);
  // marginal over p taken on a wider p range so that the integral is complete
  const PhaseGrid wide{{"x", -4.0, 4.0, 81}, {"p", -8.0, 8.0, 321}};
  const std::vector<double> marginal = integrate_axis2(wigner_numeric(chi, wide));
  const GridFunction px = quadrature_dist(chi, {{"x", -4.0, 4.0, 81}, {"phi", 0.0, 0.0, 1}});
  double worst_marginal = 0.0;
  for (int i = 0; i < 81; ++i) worst_marginal = std::max(worst_marginal, std::abs(marginal[i] - px.at(i, 0)));
  const std::vector<double> narrow = integrate_axis2(numeric);
  double worst_narrow = 0.0;
  for (int i = 0; i < 81; ++i) worst_narrow = std::max(worst_narrow, std::abs(narrow[i] - px.at(i, 0)));
  info(fmt("wigner marginal over p in [-4,4] only: max deviation %.2e", worst_narrow));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {diff <= 1e-6 && std::abs(total - 1.0) <= 1e-4 && worst_marginal <= 1e-5 && seconds < 60.0,
          fmt("max |W_closed - W_numeric| %.2e (limit 1e-6), integral %.6f, marginal dev %.2e (limit 1e-5), %.1f s",
              diff, total, worst_marginal, seconds)};
}

Verdict criterion_husimi() {
  const TruncationPolicy policy(128);
  const CatSpec chi{10, std::sqrt(5.0)};
  const PhaseGrid chi_grid{{"Re alpha", -5.0, 5.0, 51}, {"Im alpha", -5.0, 5.0, 51}};
  const GridFunction q_chi = husimi(chi_state(chi, policy), chi_grid, policy);
  const double d_chi = max_abs_difference(q_chi, husimi_chi_closed(chi, chi_grid));
  const CatSpec multi{10, 4.2, 5};
  const PhaseGrid multi_grid{{"Re alpha", -9.0, 9.0, 91}, {"Im alpha", -9.0, 9.0, 91}};
  const double d_multi = max_abs_difference(husimi(multi_cat_state(multi, policy), multi_grid, policy),
                                            husimi_multi_cat_closed(multi, multi_grid));
  // the two global maxima should sit at +i beta and -i beta
  auto peaks = local_maxima(q_chi);
  std::sort(peaks.begin(), peaks.end(),
            [&](const auto& a, const auto& b) { return q_chi.at(a.first, a.second) > q_chi.at(b.first, b.second); });
  const double h = chi_grid.axis1.step();
  bool located = peaks.size() >= 2;
  for (size_t k = 0; located && k < 2; ++k) {
    const double re = chi_grid.axis1.value(peaks[k].first), im = chi_grid.axis2.value(peaks[k].second);
    const double target = im > 0 ? chi.beta.real() : -chi.beta.real();
    located = std::max(std::abs(re), std::abs(im - target)) <= h + 1e-12;
    info(fmt("chi(10, sqrt5) Q maximum at (%.2f, %.2f), value %.4e, grid cell %.2f", re, im,
             q_chi.at(peaks[k].first, peaks[k].second), h));
  }
  return {d_chi <= 1e-8 && d_multi <= 1e-8 && located,
          fmt("chi max diff %.2e, multi-cat max diff %.2e (limit 1e-8), maxima at +-i beta: ", d_chi, d_multi) +
              (located ? "yes" : "no")};
}

Verdict criterion_ordering() {
  const TruncationPolicy policy(32);
  double worst_conv = 0.0;
  for (double s : {1.5, 3.0, 9.0}) {
    for (int m = 0; m <= 6; ++m) {
      for (int n = 0; m + n <= 6; ++n) {
        const Eigen::MatrixXcd a = s_ordered_monomial({m, n, s}, policy).mat();
        const Eigen::MatrixXcd b = s_to_t_convert(m, n, s, 1.0, policy).mat();
        worst_conv = std::max(worst_conv, (a - b).norm() / std::max(1.0, b.norm()));
      }
    }
  }
  const int safe = policy.safe_levels();
  double worst_ident = 0.0;
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; m + n <= 6; ++n) {
      const Eigen::MatrixXcd a = normal_reorder(m, n, policy).mat().topLeftCorner(safe, safe);
      const Eigen::MatrixXcd b = antinormal_product(m, n, policy).mat().topLeftCorner(safe, safe);
      worst_ident = std::max(worst_ident, (a - b).norm() / std::max(1.0, b.norm()));
    }
  }
  return {worst_conv <= 1e-9 && worst_ident <= 1e-10,
          fmt("closed form vs recursive conversion %.2e (limit 1e-9), reordering identity %.2e (limit 1e-10)",
              worst_conv, worst_ident)};
}

Verdict criterion_povm() {
  const TruncationPolicy policy(24);
  double worst_complete = 0.0;
  for (double eta : {0.25, 0.6, 0.9, 1.0}) {
    const PhotonCountingPovm povm = photon_counting_povm(eta, policy);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
    for (const auto& e : povm.elements) sum += e.mat();
    worst_complete =
        std::max(worst_complete, (sum - Eigen::MatrixXcd::Identity(policy.dim(), policy.dim())).cwiseAbs().maxCoeff());
  }
  const PhotonCountingPovm ideal = photon_counting_povm(1.0, policy);
  double worst_proj = 0.0;
  for (int n = 0; n < policy.dim(); ++n) {
    const FockVector f = fock_state(n, policy);
    worst_proj = std::max(worst_proj, (ideal[n].mat() - f.amps() * f.amps().adjoint()).cwiseAbs().maxCoeff());
  }
  const BeamSplitterParams bs{1.0, 0.4, -0.3};
  const FockVector psi = coherent_state({0.6, -0.3}, policy);
  double worst_mixed = 0.0;
  for (int l = 0; l <= 2; ++l) {
    const ReferencePrep in = ReferencePrep::displaced_fock(1, {0.2, 0.1});
    const ReferencePrep out = ReferencePrep::displaced_fock(l, {-0.1, 0.3});
    const FockVector meas = normalize(out.to_state(policy));
    const ReducedState pure = conditional_reduce(TwoModeState::product(psi, normalize(in.to_state(policy))),
                                                 FockOperator(meas.amps() * meas.amps().adjoint()), bs, policy);
    const ReducedState mixed =
        conditional_reduce_mixed(DensityOperator::pure(psi), {{1.0, in}}, {{1.0, out}}, bs, policy);
    worst_mixed = std::max({worst_mixed, std::abs(mixed.probability - pure.probability),
                            (mixed.rho.mat() - pure.rho.mat()).cwiseAbs().maxCoeff()});
  }
  return {worst_complete <= 1e-14 && worst_proj == 0.0 && worst_mixed <= 1e-10,
          fmt("completeness dev %.2e, eta=1 projector dev %.2e, mixed vs pure %.2e (limit 1e-10)", worst_complete,
              worst_proj, worst_mixed)};
}

// Reference prep whose state is proportional to v (no displacement).
ReferencePrep prep_of(const Eigen::VectorXcd& v) {
  int d = static_cast<int>(v.size());
  while (d > 1 && v(d - 1) == Complex(0.0)) --d;
  std::vector<Complex> c(d);
  for (int k = 0; k < d; ++k) c[k] = v(k) / std::sqrt(factorial(k));
  return {OperatorPolynomial(c), 0.0};
}

Eigen::VectorXcd phase_rotate(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = v;
  for (int k = 0; k < v.size(); ++k) out(k) *= std::pow(Complex(0.0, 1.0), k);
  return out;
}

Verdict criterion_swap_and_limits() {
  const TruncationPolicy policy(32);
  const BeamSplitterParams bs{0.8, 0.3, -0.5};
  const BeamSplitterParams sw = bs.swapped();
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(policy.dim()), r = Eigen::VectorXcd::Zero(policy.dim());
  s(0) = {0.6, 0.1};
  s(1) = {0.2, -0.5};
  s(2) = {0.3, 0.2};
  s.normalize();
  r(0) = {0.4, 0.0};
  r(1) = {0.1, 0.6};
  r(3) = {-0.3, 0.2};
  r.normalize();
  std::vector<Eigen::VectorXcd> measured(3, Eigen::VectorXcd::Zero(policy.dim()));
  measured[0](1) = 1.0;
  measured[1](0) = {0.5, 0.2};
  measured[1](2) = {0.1, -0.7};
  measured[2](0) = 1.0;
  measured[2](1) = {0.0, 1.0};
  double worst_swap = 0.0, worst_rotated = 0.0;
  for (auto& mv : measured) {
    mv.normalize();
    const ConditionalResult a = apply_conditional(oracle_y(prep_of(r), prep_of(mv), bs, policy), FockVector(s));
    const ConditionalResult b = apply_conditional(oracle_y(prep_of(s), prep_of(mv), sw, policy), FockVector(r));
    worst_swap = std::max(worst_swap, 1.0 - fidelity(a.state, b.state));
    const ConditionalResult c =
        apply_conditional(oracle_y(prep_of(s), prep_of(phase_rotate(mv)), sw, policy), FockVector(r));
    worst_rotated = std::max({worst_rotated, 1.0 - fidelity(FockVector(phase_rotate(a.state.amps())), c.state),
                              std::abs(a.probability - c.probability)});
    info(fmt("swap: |<out_a|out_swapped>| = %.6f, p_a = %.6f, p_swapped = %.6f", fidelity(a.state, b.state),
             a.probability, b.probability));
  }
  info(fmt("swap with measured state i^n chi: 1 - |<i^n out_a|out_swapped>| and |dp| at most %.2e", worst_rotated));

  const TwoModeOperator u0 = bs_unitary_generator({0.0, 0.0, 0.0}, policy);
  const double dev_identity = u0.max_deviation(TwoModeOperator(policy.cutoff()), policy.safe_levels());
  const ReducedState vac = conditional_reduce(TwoModeState::product(FockVector(s), fock_state(0, policy)),
                                              photon_counting_povm(1.0, policy)[0], {0.0, 0.0, 0.0}, policy);
  const double dev_channel = std::max(std::abs(vac.probability - 1.0),
                                      (vac.rho.mat() - s * s.adjoint()).cwiseAbs().maxCoeff());
  return {worst_swap <= 1e-8 && dev_identity <= 1e-8 && dev_channel <= 1e-10,
          fmt("swap max infidelity %.2e (limit 1e-8), theta=0 |U - I| %.2e, vacuum channel dev %.2e", worst_swap,
              dev_identity, dev_channel)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed-form conditional operator matches two-mode oracle", criterion_oracle_equivalence},
      {"conditional probability matches two-mode Born rule", criterion_probability_consistency},
      {"photon-subtraction scheme yields chi states", criterion_scheme_a},
      {"coherent-input scheme yields displaced chi states", criterion_scheme_b},
      {"Wigner closed form matches numeric transform", criterion_wigner},
      {"Husimi closed forms and chi maxima", criterion_husimi},
      {"s-ordering closed form and reordering identity", criterion_ordering},
      {"photon-counting POVM and mixed conditioning", criterion_povm},
      {"port-swap symmetry and trivial limits", criterion_swap_and_limits},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
