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

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "condibeam/condibeam.hpp"
#include "config.hpp"
#include "json.hpp"

namespace condibeam::cli {

using nlohmann::ordered_json;

struct Outcome {
  ordered_json results = ordered_json::object();
  std::optional<GridFunction> grid;
  std::optional<std::string> table_csv;  ///< non-grid CSV payload
};

// --- parameter parsing ------------------------------------------------------------

inline const std::set<std::string> kTruncKeys = {"cutoff", "tail_tol"};
inline const std::set<std::string> kSplitterKeys = {"theta", "phi_t", "phi_r"};
inline const std::set<std::string> kGridKeys = {"axis1_min", "axis1_max", "axis1_points",
                                                "axis2_min", "axis2_max", "axis2_points"};

inline std::set<std::string> keys(std::initializer_list<std::set<std::string>> groups,
                                  std::initializer_list<std::string> extra) {
  std::set<std::string> out(extra);
  for (const auto& g : groups) out.insert(g.begin(), g.end());
  return out;
}

inline TruncationPolicy read_policy(const Config& cfg, int default_cutoff) {
  const int cutoff = cfg.get_int("cutoff", default_cutoff);
  const double tol = cfg.get_real("tail_tol", TruncationPolicy::kDefaultTailTol);
  if (cutoff < 8 || cutoff > 400) throw ConfigError("cutoff: must lie in [8, 400]");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tail_tol: must lie in (0, 1)");
  return TruncationPolicy(cutoff, tol);
}

inline BeamSplitterParams read_splitter(const Config& cfg) {
  return {cfg.get_real("theta", std::numbers::pi / 4), cfg.get_real("phi_t", 0.0),
          cfg.get_real("phi_r", 0.0)};
}

inline int read_nonneg(const Config& cfg, const std::string& key, int fallback, int max = 200) {
  const int v = cfg.get_int(key, fallback);
  if (v < 0 || v > max) throw ConfigError(key + ": must lie in [0, " + std::to_string(max) + "]");
  return v;
}

inline Axis read_axis(const Config& cfg, const std::string& prefix, const std::string& name,
                      double min, double max, int points) {
  Axis a{name, cfg.get_real(prefix + "_min", min), cfg.get_real(prefix + "_max", max),
         cfg.get_int(prefix + "_points", points)};
  if (a.points < 1 || a.points > 2001) throw ConfigError(prefix + "_points: must lie in [1, 2001]");
  try {
    a.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return a;
}

inline std::string read_choice(const Config& cfg, const std::string& key, const std::string& fallback,
                               const std::set<std::string>& allowed) {
  const std::string v = cfg.get_string(key, fallback);
  if (!allowed.count(v)) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(key + ": '" + v + "' is not one of " + list);
  }
  return v;
}

inline ordered_json cjson(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

inline ordered_json amplitudes_json(const FockVector& v, int upto) {
  ordered_json out = ordered_json::array();
  for (int k = 0; k <= std::min(upto, v.cutoff()); ++k) out.push_back(cjson(v[k]));
  return out;
}

inline ordered_json maxima_json(const GridFunction& f, int limit) {
  auto peaks = local_maxima(f);
  std::sort(peaks.begin(), peaks.end(), [&](const auto& a, const auto& b) {
    const double va = f.at(a.first, a.second), vb = f.at(b.first, b.second);
    return va != vb ? va > vb : a < b;
  });
  ordered_json out = ordered_json::array();
  for (int i = 0; i < std::min<int>(limit, peaks.size()); ++i) {
    const auto [i1, i2] = peaks[i];
    out.push_back({{"axis1", f.grid.axis1.value(i1)}, {"axis2", f.grid.axis2.value(i2)},
                   {"value", f.at(i1, i2)}});
  }
  return out;
}

// --- experiments ------------------------------------------------------------------

inline Outcome run_y_matrix(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kSplitterKeys}, {"m", "n", "alpha", "beta", "rows"}), "y-matrix");
  const TruncationPolicy policy = read_policy(cfg, 48);
  const BeamSplitterParams bs = read_splitter(cfg);
  const int m = read_nonneg(cfg, "m", 0, policy.cutoff() / 4);
  const int n = read_nonneg(cfg, "n", 0, policy.cutoff() / 4);
  const Complex alpha = cfg.get_complex("alpha", 0.0);
  const Complex beta = cfg.get_complex("beta", 0.0);
  const int rows = read_nonneg(cfg, "rows", 6, policy.safe_levels());

  const FockOperator y = y_displaced_fock(m, n, alpha, beta, bs, policy);
  const FockOperator oracle =
      oracle_y(ReferencePrep::displaced_fock(m, alpha), ReferencePrep::displaced_fock(n, beta), bs, policy);
  const int safe = policy.safe_levels();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(y.mat().topLeftCorner(safe, safe));

  Outcome out;
  out.results["transmittance"] = cjson(bs.transmittance());
  out.results["reflectance"] = cjson(bs.reflectance());
  out.results["ordering_parameter"] = bs.ordering_parameter();
  out.results["oracle_relative_distance"] = detail::relative_block_distance(y, oracle, safe);
  out.results["largest_singular_value"] = svd.singularValues()(0);
  ordered_json mat = ordered_json::array();
  for (int r = 0; r < rows; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < rows; ++c) row.push_back(cjson(y(r, c)));
    mat.push_back(row);
  }
  out.results["y"] = mat;
  return out;
}

inline Outcome run_scheme_a(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kSplitterKeys}, {"n", "beta_prime"}), "scheme-a");
  const TruncationPolicy policy = read_policy(cfg, 64);
  const BeamSplitterParams bs = read_splitter(cfg);
  const int n = read_nonneg(cfg, "n", 1, policy.cutoff() / 4);
  const Complex beta_prime = cfg.get_complex("beta_prime", std::sqrt(0.5));
  const CatSpec spec{n, beta_from_measured(beta_prime, bs)};

  const ConditionalResult res = scheme_a_state(spec, bs, policy);
  const CatNorm closed = cat_norm_and_prob(spec);
  Outcome out;
  out.results["beta"] = cjson(spec.beta);
  out.results["probability"] = res.probability;
  out.results["probability_closed_form"] = closed.probability;
  out.results["norm_N"] = closed.norm;
  out.results["fidelity_with_chi"] = fidelity(res.state, chi_state(spec, policy));
  out.results["amplitudes"] = amplitudes_json(res.state, n);
  return out;
}

inline Outcome run_scheme_b(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kSplitterKeys}, {"n", "beta"}), "scheme-b");
  const TruncationPolicy policy = read_policy(cfg, 64);
  const BeamSplitterParams bs = read_splitter(cfg);
  if (!bs.is_balanced(1e-12)) throw ConfigError("theta: scheme-b needs a balanced splitter (|T|^2 = 1/2)");
  const int n = read_nonneg(cfg, "n", 2, policy.cutoff() / 4);
  const CatSpec spec{n, cfg.get_complex("beta", std::sqrt(n / 2.0))};

  const ConditionalResult b = scheme_b_state(spec, bs, policy);
  const ConditionalResult a = scheme_a_state(spec, bs, policy);
  const FockVector target = apply(displacement_op(spec.beta, policy), chi_state(spec, policy));
  Outcome out;
  out.results["probability"] = b.probability;
  out.results["probability_scheme_a"] = a.probability;
  out.results["probability_closed_form"] = cat_norm_and_prob(spec).probability;
  out.results["fidelity_with_displaced_chi"] = fidelity(b.state, target);
  out.results["mean_photon_number"] = mean_photon_number(b.state);
  return out;
}

inline Outcome run_multi_cat(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys}, {"n", "k", "beta"}), "multi-cat");
  const TruncationPolicy policy = read_policy(cfg, 128);
  const CatSpec spec{read_nonneg(cfg, "n", 2), cfg.get_complex("beta", 1.0), cfg.get_int("k", 2)};
  if (spec.k < 1 || spec.k > 50) throw ConfigError("k: must lie in [1, 50]");
  const FockVector v = multi_cat_state(spec, policy);
  Outcome out;
  out.results["norm_N_k"] = multi_cat_norm(spec);
  out.results["vector_norm"] = norm(v);
  ordered_json support = ordered_json::array();
  for (int q = 0; q < v.dim(); ++q) {
    if (std::abs(v[q]) > 0.0) support.push_back(q);
  }
  out.results["support"] = support;
  out.results["amplitudes"] = amplitudes_json(v, spec.k * spec.n);
  return out;
}

inline Outcome run_q_grid(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kGridKeys}, {"state", "route", "n", "k", "beta", "maxima"}), "q-grid");
  const TruncationPolicy policy = read_policy(cfg, 64);
  const std::string state = read_choice(cfg, "state", "chi", {"chi", "multi-cat"});
  const std::string route = read_choice(cfg, "route", "overlap", {"overlap", "closed"});
  const CatSpec spec{read_nonneg(cfg, "n", 2), cfg.get_complex("beta", 1.0), cfg.get_int("k", 1)};
  if (spec.k < 1 || spec.k > 50) throw ConfigError("k: must lie in [1, 50]");
  const PhaseGrid grid{read_axis(cfg, "axis1", "re_alpha", -5, 5, 51),
                       read_axis(cfg, "axis2", "im_alpha", -5, 5, 51)};
  const int maxima = read_nonneg(cfg, "maxima", 8);

  GridFunction q = [&] {
    if (route == "closed") {
      return state == "chi" ? husimi_chi_closed(spec, grid) : husimi_multi_cat_closed(spec, grid);
    }
    const FockVector v = state == "chi" ? chi_state(spec, policy) : multi_cat_state(spec, policy);
    return husimi(v, grid, policy);
  }();
  Outcome out;
  out.results["integral"] = integrate(q);
  out.results["maxima"] = maxima_json(q, maxima);
  out.grid = std::move(q);
  return out;
}

inline Outcome run_wigner_grid(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kGridKeys},
                         {"state", "route", "n", "beta", "wigner_half_width", "wigner_step"}),
                    "wigner-grid");
  const TruncationPolicy policy = read_policy(cfg, 48);
  const std::string state = read_choice(cfg, "state", "chi", {"chi", "fock"});
  const std::string route = read_choice(cfg, "route", "numeric", {"numeric", "closed"});
  const CatSpec spec{read_nonneg(cfg, "n", 3), cfg.get_complex("beta", std::sqrt(1.5))};
  if (route == "closed" && state != "chi") throw ConfigError("route: the closed form exists only for state = chi");
  const PhaseGrid grid{read_axis(cfg, "axis1", "x", -4, 4, 81), read_axis(cfg, "axis2", "p", -4, 4, 81)};
  WignerIntegration integ;
  integ.half_width = cfg.get_real("wigner_half_width", 0.0);
  integ.max_step = cfg.get_real("wigner_step", 0.02);
  if (integ.half_width < 0.0) throw ConfigError("wigner_half_width: must be >= 0 (0 selects automatically)");
  if (!(integ.max_step > 0.0 && integ.max_step <= 0.5)) throw ConfigError("wigner_step: must lie in (0, 0.5]");

  GridFunction w = [&] {
    if (route == "closed") return wigner_cat_closed(spec, grid);
    const FockVector v = state == "chi" ? chi_state(spec, policy) : fock_state(spec.n, policy);
    return wigner_numeric(v, grid, integ);
  }();
  Outcome out;
  out.results["integral"] = integrate(w);
  out.results["min_value"] = *std::min_element(w.values.begin(), w.values.end());
  out.results["max_value"] = *std::max_element(w.values.begin(), w.values.end());
  out.grid = std::move(w);
  return out;
}

inline Outcome run_quadrature_grid(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kGridKeys}, {"state", "route", "n", "k", "beta"}), "quadrature-grid");
  const TruncationPolicy policy = read_policy(cfg, 64);
  const std::string state = read_choice(cfg, "state", "chi", {"chi", "fock", "multi-cat"});
  const std::string route = read_choice(cfg, "route", "overlap", {"overlap", "closed"});
  const CatSpec spec{read_nonneg(cfg, "n", 2), cfg.get_complex("beta", 1.0), cfg.get_int("k", 1)};
  if (spec.k < 1 || spec.k > 50) throw ConfigError("k: must lie in [1, 50]");
  if (route == "closed" && state != "chi") throw ConfigError("route: the closed form exists only for state = chi");
  const PhaseGrid grid{read_axis(cfg, "axis1", "x", -6, 6, 121),
                       read_axis(cfg, "axis2", "phi", 0, 3, 7)};

  GridFunction p = [&] {
    if (route == "closed") return quadrature_chi_closed(spec, grid);
    const FockVector v = state == "chi"    ? chi_state(spec, policy)
                         : state == "fock" ? fock_state(spec.n, policy)
                                           : multi_cat_state(spec, policy);
    return quadrature_dist(v, grid);
  }();
  Outcome out;
  // integral over x for every phase: one trapezoid sum per column
  const auto w = detail::trapezoid_weights(grid.axis1);
  ordered_json norms = ordered_json::array();
  for (int j = 0; j < grid.axis2.points; ++j) {
    double s = 0.0;
    for (int i = 0; i < grid.axis1.points; ++i) s += w[i] * p.at(i, j);
    norms.push_back({{"phi", grid.axis2.value(j)}, {"integral", s}});
  }
  out.results["normalization"] = norms;
  out.grid = std::move(p);
  return out;
}

inline Outcome run_prob_scan(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kSplitterKeys}, {"n_min", "n_max", "beta2_per_n"}), "prob-scan");
  const TruncationPolicy policy = read_policy(cfg, 64);
  const BeamSplitterParams bs = read_splitter(cfg);
  if (!bs.is_balanced(1e-12)) throw ConfigError("theta: prob-scan needs a balanced splitter (|T|^2 = 1/2)");
  const int n_min = read_nonneg(cfg, "n_min", 0);
  const int n_max = read_nonneg(cfg, "n_max", 12, policy.cutoff() / 4);
  if (n_max < n_min) throw ConfigError("n_max: must be >= n_min");
  const double per_n = cfg.get_real("beta2_per_n", 0.5);
  if (per_n < 0.0) throw ConfigError("beta2_per_n: must be >= 0");

  Outcome out;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "# columns n beta2 norm_N probability probability_conditional\n";
  for (int n = n_min; n <= n_max; ++n) {
    const double b2 = per_n * n;
    const CatSpec spec{n, beta_from_measured(std::sqrt(b2), bs)};
    const CatNorm c = cat_norm_and_prob(spec);
    const double p_cond = scheme_a_state(spec, bs, policy).probability;
    rows.push_back({{"n", n}, {"beta2", b2}, {"norm_N", c.norm}, {"probability", c.probability},
                    {"probability_conditional", p_cond}});
    csv << n << ',' << b2 << ',' << c.norm << ',' << c.probability << ',' << p_cond << '\n';
  }
  out.results["scan"] = rows;
  out.table_csv = csv.str();
  return out;
}

inline Outcome run_povm_demo(const Config& cfg) {
  cfg.require_known(keys({kTruncKeys, kSplitterKeys}, {"n", "eta"}), "povm-demo");
  const TruncationPolicy policy = read_policy(cfg, 24);
  const BeamSplitterParams bs = read_splitter(cfg);
  const int n = read_nonneg(cfg, "n", 2, policy.cutoff() / 2);
  const double eta = cfg.get_real("eta", 0.8);
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta: must lie in (0, 1]");

  const PhotonCountingPovm povm = photon_counting_povm(eta, policy);
  const TwoModeState in = TwoModeState::product(fock_state(n, policy), fock_state(0, policy));
  const DensityOperator rho_in = DensityOperator::pure(fock_state(n, policy));
  const std::vector<std::pair<double, ReferencePrep>> vacuum_ref = {{1.0, ReferencePrep::vacuum()}};
  Outcome out;
  ordered_json rows = ordered_json::array();
  double total = 0.0;
  double worst_mixed = 0.0;
  for (int l = 0; l <= n; ++l) {
    const ReducedState red = conditional_reduce(in, povm[l], bs, policy);
    red.rho.validate();
    const ReducedState mixed =
        conditional_reduce_mixed(rho_in, vacuum_ref, fock_ensemble(povm[l], n), bs, policy);
    worst_mixed = std::max({worst_mixed, std::abs(mixed.probability - red.probability),
                            (mixed.rho.mat() - red.rho.mat()).cwiseAbs().maxCoeff()});
    total += red.probability;
    rows.push_back({{"outcome", l},
                    {"probability", red.probability},
                    {"mean_photon_number", red.rho.expectation(number_op(policy)).real()},
                    {"purity", red.rho.purity()}});
  }
  out.results["outcomes"] = rows;
  out.results["total_probability"] = total;
  out.results["mixed_path_max_deviation"] = worst_mixed;
  return out;
}

using Runner = std::function<Outcome(const Config&)>;

inline const std::map<std::string, Runner>& experiments() {
  static const std::map<std::string, Runner> table = {
      {"y-matrix", run_y_matrix},       {"scheme-a", run_scheme_a},
      {"scheme-b", run_scheme_b},       {"multi-cat", run_multi_cat},
      {"q-grid", run_q_grid},           {"wigner-grid", run_wigner_grid},
      {"quadrature-grid", run_quadrature_grid}, {"prob-scan", run_prob_scan},
      {"povm-demo", run_povm_demo},
  };
  return table;
}

// --- output ---------------------------------------------------------------------

inline std::string grid_csv(const GridFunction& f) {
  std::ostringstream os;
  os.precision(17);
  for (const Axis* a : {&f.grid.axis1, &f.grid.axis2}) {
    os << "# " << (a == &f.grid.axis1 ? "axis1 " : "axis2 ") << a->name << ' ' << a->min << ' ' << a->max
       << ' ' << a->points << '\n';
  }
  os << "# kind " << kind_name(f.kind) << '\n';
  for (int i = 0; i < f.grid.axis1.points; ++i) {
    for (int j = 0; j < f.grid.axis2.points; ++j) os << (j ? "," : "") << f.at(i, j);
    os << '\n';
  }
  return os.str();
}

inline ordered_json grid_json(const GridFunction& f) {
  ordered_json values = ordered_json::array();
  for (int i = 0; i < f.grid.axis1.points; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < f.grid.axis2.points; ++j) row.push_back(f.at(i, j));
    values.push_back(row);
  }
  auto axis = [](const Axis& a) {
    return ordered_json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"points", a.points}};
  };
  return {{"kind", kind_name(f.kind)}, {"axis1", axis(f.grid.axis1)}, {"axis2", axis(f.grid.axis2)},
          {"values", values}};
}

}  // namespace condibeam::cli
