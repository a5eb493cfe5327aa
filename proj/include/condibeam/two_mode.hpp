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

// Brute-force two-mode simulation of the beam splitter and of conditional
// measurement on the reference output. This is the ground truth every closed
// form in conditional.hpp is compared against, so it never calls into it.
//
// The beam splitter conserves n1 + n2. Operators are stored as one dense block
// per total photon number N, over the basis |k, N - k>, max(0, N - N_c) <= k
// <= min(N, N_c). Blocks with N > N_c are built on their full subspace and
// then cut, so the stored elements are exact matrix elements of U.

#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <utility>
#include <vector>

#include "condibeam/beam_splitter.hpp"
#include "condibeam/fock.hpp"
#include "condibeam/reference.hpp"

namespace condibeam {

/// Amplitudes psi(k1, k2), rows indexed by the signal photon number.
class TwoModeState {
 public:
  explicit TwoModeState(Eigen::MatrixXcd amps) : amps_(std::move(amps)) {
    if (amps_.rows() != amps_.cols() || amps_.rows() < 1) {
      throw InvalidArgument("TwoModeState: amplitude table must be square");
    }
  }

  static TwoModeState product(const FockVector& signal, const FockVector& reference) {
    if (signal.dim() != reference.dim()) throw DimensionMismatch("TwoModeState: cutoff mismatch");
    return TwoModeState(signal.amps() * reference.amps().transpose());
  }

  int cutoff() const { return static_cast<int>(amps_.rows()) - 1; }
  int dim() const { return static_cast<int>(amps_.rows()); }
  const Eigen::MatrixXcd& amps() const { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  Eigen::MatrixXcd amps_;
};

/// Number-conserving two-mode operator, block-diagonal in N = n1 + n2.
class TwoModeOperator {
 public:
  explicit TwoModeOperator(int cutoff) : cutoff_(cutoff) {
    blocks_.reserve(2 * cutoff + 1);
    for (int n = 0; n <= 2 * cutoff; ++n) {
      const int size = block_hi(n) - block_lo(n) + 1;
      blocks_.push_back(Eigen::MatrixXcd::Identity(size, size));
    }
  }

  int cutoff() const { return cutoff_; }
  int dim() const { return cutoff_ + 1; }

  /// Smallest and largest signal photon number present in block n.
  int block_lo(int n) const { return std::max(0, n - cutoff_); }
  int block_hi(int n) const { return std::min(n, cutoff_); }

  const Eigen::MatrixXcd& block(int n) const { return blocks_[n]; }
  Eigen::MatrixXcd& block(int n) { return blocks_[n]; }

  /// <j1, j2| op |k1, k2>.
  Complex element(int j1, int j2, int k1, int k2) const {
    const int n = k1 + k2;
    if (j1 + j2 != n) return Complex(0.0);
    return blocks_[n](j1 - block_lo(n), k1 - block_lo(n));
  }

  TwoModeState apply(const TwoModeState& psi) const {
    if (psi.dim() != dim()) throw DimensionMismatch("TwoModeOperator::apply: cutoff mismatch");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int n = 0; n <= 2 * cutoff_; ++n) {
      const int lo = block_lo(n);
      const int size = block_hi(n) - lo + 1;
      Eigen::VectorXcd in(size);
      for (int i = 0; i < size; ++i) in(i) = psi.amps()(lo + i, n - lo - i);
      const Eigen::VectorXcd res = blocks_[n] * in;
      for (int i = 0; i < size; ++i) out(lo + i, n - lo - i) = res(i);
    }
    return TwoModeState(std::move(out));
  }

  TwoModeOperator adjoint() const {
    TwoModeOperator out(cutoff_);
    for (int n = 0; n <= 2 * cutoff_; ++n) out.blocks_[n] = blocks_[n].adjoint();
    return out;
  }

  friend TwoModeOperator operator*(const TwoModeOperator& a, const TwoModeOperator& b) {
    if (a.cutoff_ != b.cutoff_) throw DimensionMismatch("TwoModeOperator product: cutoff mismatch");
    TwoModeOperator out(a.cutoff_);
    for (int n = 0; n <= 2 * a.cutoff_; ++n) out.blocks_[n] = a.blocks_[n] * b.blocks_[n];
    return out;
  }

  /// Dense (N_c+1)^2 matrix with row/column index k1 * (N_c + 1) + k2.
  Eigen::MatrixXcd to_dense() const {
    const int d = dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int n = 0; n <= 2 * cutoff_; ++n) {
      const int lo = block_lo(n);
      const int size = block_hi(n) - lo + 1;
      for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
          out((lo + r) * d + (n - lo - r), (lo + c) * d + (n - lo - c)) = blocks_[n](r, c);
        }
      }
    }
    return out;
  }

  /// Largest |element| deviation from `other` over blocks whose signal and
  /// reference indices all stay within the first `levels` levels.
  double max_deviation(const TwoModeOperator& other, int levels) const {
    double worst = 0.0;
    for (int n = 0; n <= 2 * (levels - 1); ++n) {
      const int lo = block_lo(n);
      for (int j = std::max(lo, n - levels + 1); j <= std::min(n, levels - 1); ++j) {
        for (int k = std::max(lo, n - levels + 1); k <= std::min(n, levels - 1); ++k) {
          worst = std::max(worst, std::abs(blocks_[n](j - lo, k - lo) - other.blocks_[n](j - lo, k - lo)));
        }
      }
    }
    return worst;
  }

 private:
  int cutoff_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Single-mode density matrix. Construction does not validate; validate()
/// checks Hermiticity, unit trace and positivity.
class DensityOperator {
 public:
  explicit DensityOperator(Eigen::MatrixXcd mat) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
      throw InvalidArgument("DensityOperator: matrix must be square");
    }
  }

  static DensityOperator pure(const FockVector& psi) {
    const Eigen::VectorXcd v = psi.amps() / psi.amps().norm();
    return DensityOperator(v * v.adjoint());
  }

  int cutoff() const { return static_cast<int>(mat_.rows()) - 1; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& mat() const { return mat_; }

  double trace() const { return mat_.trace().real(); }
  double purity() const { return (mat_ * mat_).trace().real(); }
  Complex expectation(const FockOperator& op) const { return (mat_ * op.mat()).trace(); }

  void validate() const {
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ConsistencyError("DensityOperator: not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-10) throw ConsistencyError("DensityOperator: trace != 1");
    const Eigen::MatrixXcd herm = 0.5 * (mat_ + mat_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
      throw ConsistencyError("DensityOperator: negative eigenvalue");
    }
  }

 private:
  Eigen::MatrixXcd mat_;
};

/// Photon counting with quantum efficiency eta:
///   Pi(n) = sum_{k >= n} C(k, n) eta^n (1 - eta)^(k - n) |k><k|,  k <= N_c.
/// Each row k of binomial weights sums to one, so sum_n Pi(n) = I exactly.
struct PhotonCountingPovm {
  double efficiency = 1.0;
  std::vector<FockOperator> elements;

  const FockOperator& operator[](int n) const { return elements.at(n); }
  int outcomes() const { return static_cast<int>(elements.size()); }
};

inline PhotonCountingPovm photon_counting_povm(double eta, const TruncationPolicy& policy) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("photon_counting_povm: eta must lie in (0, 1]");
  PhotonCountingPovm povm{eta, {}};
  const int d = policy.dim();
  for (int n = 0; n < d; ++n) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = n; k < d; ++k) {
      double w;
      if (eta == 1.0) {
        w = (k == n) ? 1.0 : 0.0;
      } else {
        w = std::exp(std::log(gen_binomial(k, n)) + n * std::log(eta) +
                     (k - n) * std::log1p(-eta));
      }
      m(k, k) = w;
    }
    povm.elements.emplace_back(std::move(m));
  }
  return povm;
}

/// Splits a diagonal POVM element into (weight, Fock state) pairs, the form
/// used by conditional_reduce_mixed.
/// Levels above `max_level` are dropped; pass the largest photon number the
/// measured mode can carry so that no component reaches the tail region.
inline std::vector<std::pair<double, ReferencePrep>> fock_ensemble(const FockOperator& diagonal,
                                                                  int max_level = -1) {
  std::vector<std::pair<double, ReferencePrep>> out;
  const int top = max_level < 0 ? diagonal.dim() - 1 : std::min(max_level, diagonal.dim() - 1);
  for (int k = 0; k <= top; ++k) {
    const double w = diagonal(k, k).real();
    if (w > 0.0) out.emplace_back(w, ReferencePrep::fock(k));
  }
  return out;
}

// --- beam splitter unitary -----------------------------------------------------

namespace detail {

/// exp(theta (a1^dagger a2 - a2^dagger a1)) on the full n-photon subspace,
/// basis |k, n-k>, k = 0..n, restricted to rows and columns lo..hi.
inline Eigen::MatrixXcd mixing_block(double theta, int n, int lo, int hi) {
  // The generator is S (-i K) S^dagger with S = diag(i^k) and K the real
  // symmetric tridiagonal matrix of a1^dagger a2 + a2^dagger a1 amplitudes.
  if (n == 0) return Eigen::MatrixXcd::Ones(1, 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd sub(n);
  for (int k = 0; k < n; ++k) {
    // a1^dagger a2 |k, n-k> = sqrt((k+1)(n-k)) |k+1, n-k-1>
    sub(k) = theta * std::sqrt(static_cast<double>(k + 1) * (n - k));
  }
  const int size = hi - lo + 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd v = eig.eigenvectors().middleRows(lo, size);
  const Eigen::VectorXcd phases =
      eig.eigenvalues().unaryExpr([](double lambda) { return std::polar(1.0, -lambda); });
  Eigen::MatrixXcd block = v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
  static constexpr Complex kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) block(r, c) *= kIPow[((r - c) % 4 + 4) % 4];
  }
  return block;
}

/// T^{n1} e^{-R^* a2^dagger a1} e^{R a1^dagger a2} T^{-n2} on the full
/// n-photon subspace. Multiplying out the four factors gives
///   <j|U|k> = T^{j+k-n} e^{i phi_R (j-k)} sqrt((n-j)! (n-k)! / (j! k!))
///             sum_l (-1)^(l-j) |R|^(2l-j-k) l! / ((n-l)! (l-j)! (l-k)!),
/// an alternating sum whose terms exceed the result by up to |T|^-n. It is
/// accumulated in 60-digit arithmetic and rounded once at the end.
inline Eigen::MatrixXcd factored_block(Complex t, Complex r, int n, int lo, int hi) {
  using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;
  const Wide abs_r = std::abs(r);
  const Wide abs_t = std::abs(t);
  std::vector<Wide> root_fact(n + 1), r_pow(2 * n + 1), t_pow(n + 1), inv_t_pow(n + 1);
  Wide fact = 1;
  r_pow[0] = 1;
  t_pow[0] = 1;
  inv_t_pow[0] = 1;
  root_fact[0] = 1;
  for (int i = 1; i <= n; ++i) {
    fact *= i;
    root_fact[i] = boost::multiprecision::sqrt(fact);
    t_pow[i] = t_pow[i - 1] * abs_t;
    inv_t_pow[i] = inv_t_pow[i - 1] / abs_t;
  }
  for (int i = 1; i <= 2 * n; ++i) r_pow[i] = r_pow[i - 1] * abs_r;
  const double phi_t = std::arg(t);
  const double phi_r = std::abs(r) == 0.0 ? 0.0 : std::arg(r);
  const int size = hi - lo + 1;
  Eigen::MatrixXcd out(size, size);
  for (int j = lo; j <= hi; ++j) {
    for (int k = lo; k <= hi; ++k) {
      const int l0 = std::max(j, k);
      // l0! / ((n-l0)! (l0-j)! (l0-k)!) with one of the last two equal to 0!
      Wide term = root_fact[l0] * root_fact[l0];
      term /= root_fact[n - l0] * root_fact[n - l0];
      term /= root_fact[l0 - std::min(j, k)] * root_fact[l0 - std::min(j, k)];
      term *= r_pow[2 * l0 - j - k];
      if ((l0 - j) % 2 != 0) term = -term;
      Wide sum = term;
      const Wide r2 = r_pow[2];
      for (int l = l0; l < n; ++l) {
        // ratio -|R|^2 (l+1)(n-l) / ((l+1-j)(l+1-k))
        term *= r2;
        term *= (l + 1) * (n - l);
        term /= (l + 1 - j) * (l + 1 - k);
        term = -term;
        sum += term;
      }
      sum *= root_fact[n - j] * root_fact[n - k] / (root_fact[j] * root_fact[k]);
      sum *= (j + k >= n) ? t_pow[j + k - n] : inv_t_pow[n - j - k];
      out(j - lo, k - lo) =
          std::polar(static_cast<double>(sum), phi_t * (j + k - n) + phi_r * (j - k));
    }
  }
  return out;
}

}  // namespace detail

/// U = e^{i(phi_T+phi_R) L3} e^{2 i theta L2} e^{i(phi_T-phi_R) L3}, with
/// L2 = (a1^dagger a2 - a2^dagger a1) / (2i) and L3 = (n1 - n2) / 2. Each
/// photon-number block is exponentiated on its full subspace and then cut to
/// the retained levels, so every stored element is exact.
inline TwoModeOperator bs_unitary_generator(const BeamSplitterParams& bs,
                                            const TruncationPolicy& policy) {
  TwoModeOperator u(policy.cutoff());
  const double outer = bs.phi_t + bs.phi_r;
  const double inner_phase = bs.phi_t - bs.phi_r;
  for (int n = 0; n <= 2 * policy.cutoff(); ++n) {
    const int lo = u.block_lo(n);
    const int size = u.block_hi(n) - lo + 1;
    Eigen::MatrixXcd block = detail::mixing_block(bs.theta, n, lo, lo + size - 1);
    // L3 |k, n-k> = (2k - n)/2 |k, n-k>
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        block(r, c) *= std::polar(1.0, 0.5 * (2 * (r + lo) - n) * outer +
                                           0.5 * (2 * (c + lo) - n) * inner_phase);
      }
    }
    u.block(n) = std::move(block);
  }
  return u;
}

/// U = T^{n1} e^{-R^* a2^dagger a1} e^{R a1^dagger a2} T^{-n2}. Falls back to the
/// generator form when T = 0.
inline TwoModeOperator bs_unitary(const BeamSplitterParams& bs, const TruncationPolicy& policy) {
  const Complex t = bs.transmittance();
  const Complex r = bs.reflectance();
  if (std::abs(t) < 1e-15) return bs_unitary_generator(bs, policy);
  TwoModeOperator u(policy.cutoff());
  for (int n = 0; n <= 2 * policy.cutoff(); ++n) {
    const int lo = u.block_lo(n);
    const int size = u.block_hi(n) - lo + 1;
    u.block(n) = detail::factored_block(t, r, n, lo, lo + size - 1);
  }
  return u;
}

// --- conditional reduction -------------------------------------------------------

/// Y = <Psi_out2| U |Psi_in2> by direct contraction over the reference mode:
///   Y[j, i] = sum_k psi_in[k] conj(psi_out[i + k - j]) <j, i+k-j| U |i, k>.
inline FockOperator oracle_y(const ReferencePrep& ref_in, const ReferencePrep& ref_out,
                             const TwoModeOperator& u, const TruncationPolicy& policy) {
  if (u.cutoff() != policy.cutoff()) throw DimensionMismatch("oracle_y: unitary cutoff mismatch");
  const FockVector in = ref_in.to_state(policy);
  const FockVector out = ref_out.to_state(policy);
  const int d = policy.dim();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      if (in[k] == Complex(0.0)) continue;
      const int n = i + k;
      const int lo = u.block_lo(n);
      for (int j = std::max(0, n - policy.cutoff()); j <= std::min(n, policy.cutoff()); ++j) {
        y(j, i) += in[k] * std::conj(out[n - j]) * u.block(n)(j - lo, i - lo);
      }
    }
  }
  return FockOperator(std::move(y));
}

/// As above, with the generator form of U.
inline FockOperator oracle_y(const ReferencePrep& ref_in, const ReferencePrep& ref_out,
                             const BeamSplitterParams& bs, const TruncationPolicy& policy) {
  return oracle_y(ref_in, ref_out, bs_unitary_generator(bs, policy), policy);
}

struct ReducedState {
  DensityOperator rho;
  double probability;
};

/// rho_out1 = Tr2[U rho_in U^dagger (I x Pi)] / p, p = Tr[U rho_in U^dagger (I x Pi)].
inline ReducedState conditional_reduce(const TwoModeState& state_in, const FockOperator& povm_element,
                                       const TwoModeOperator& u, const TruncationPolicy& policy) {
  if (state_in.dim() != policy.dim() || povm_element.dim() != policy.dim() || u.cutoff() != policy.cutoff()) {
    throw DimensionMismatch("conditional_reduce: cutoff mismatch");
  }
  if (std::abs(state_in.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("conditional_reduce: input state is not normalized");
  }
  const Eigen::MatrixXcd phi = u.apply(state_in).amps();
  // <j|rho|j'> = sum_{l,l'} phi(j,l) Pi(l',l) conj(phi(j',l'))
  const Eigen::MatrixXcd rho = phi * povm_element.mat().transpose() * phi.adjoint();
  const double p = rho.trace().real();
  if (!(p >= 1e-14)) throw ZeroProbabilityOutcome("conditional_reduce: outcome has zero probability");
  return {DensityOperator(rho / p), p};
}

inline ReducedState conditional_reduce(const TwoModeState& state_in, const FockOperator& povm_element,
                                       const BeamSplitterParams& bs, const TruncationPolicy& policy) {
  return conditional_reduce(state_in, povm_element, bs_unitary_generator(bs, policy), policy);
}

/// Mixed input reference and imperfect measurement:
///   rho_out1 = p^-1 sum_in w_in sum_out p(l|out) Y rho_in1 Y^dagger,
/// with each Y from oracle_y.
inline ReducedState conditional_reduce_mixed(
    const DensityOperator& rho_in1, const std::vector<std::pair<double, ReferencePrep>>& ref_ensemble,
    const std::vector<std::pair<double, ReferencePrep>>& meas_ensemble, const BeamSplitterParams& bs,
    const TruncationPolicy& policy) {
  if (rho_in1.dim() != policy.dim()) throw DimensionMismatch("conditional_reduce_mixed: cutoff mismatch");
  double total_in = 0.0;
  for (const auto& [w, prep] : ref_ensemble) {
    if (w < 0.0) throw InvalidArgument("conditional_reduce_mixed: negative input weight");
    total_in += w;
  }
  if (std::abs(total_in - 1.0) > 1e-12) {
    throw InvalidArgument("conditional_reduce_mixed: input weights do not sum to 1");
  }
  for (const auto& [w, prep] : meas_ensemble) {
    if (w < 0.0) throw InvalidArgument("conditional_reduce_mixed: negative measurement weight");
  }
  const TwoModeOperator u = bs_unitary_generator(bs, policy);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (const auto& [w_in, prep_in] : ref_ensemble) {
    if (w_in == 0.0) continue;
    for (const auto& [w_out, prep_out] : meas_ensemble) {
      if (w_out == 0.0) continue;
      const Eigen::MatrixXcd y = oracle_y(prep_in, prep_out, u, policy).mat();
      acc += (w_in * w_out) * (y * rho_in1.mat() * y.adjoint());
    }
  }
  const double p = acc.trace().real();
  if (!(p >= 1e-14)) throw ZeroProbabilityOutcome("conditional_reduce_mixed: outcome has zero probability");
  return {DensityOperator(acc / p), p};
}

}  // namespace condibeam
