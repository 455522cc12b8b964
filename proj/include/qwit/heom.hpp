// Copyright 2026 The qwit authors
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

#include <cstdint>
#include <limits>
#include <vector>

#include "qwit/linalg.hpp"
#include "qwit/quantum.hpp"

namespace qwit {

/// Drude bath in internal units (hbar = 1): reorganization energy lambda in
/// rad/fs, decay constant gamma in 1/fs, inverse temperature beta in fs.
struct DrudeBathSpec {
  double lambda = 0.0;
  double gamma = 0.0;
  double beta = 0.0;

  static DrudeBathSpec from_lab_units(double lambda_cm1, double gamma_inv_fs,
                                      double temperature_K);
  void validate() const;
};

/// Exponential expansion C(t) = sum_m c_m exp(-mu_m t) of the bath
/// correlation function, truncated at Matsubara index K. `tail` is the
/// residual sum_{m>K} c_m / mu_m absorbed by the Ishizaki-Tanimura closure.
struct BathCoefficients {
  std::vector<Complex> c;
  std::vector<double> mu;
  double tail = 0.0;
};

BathCoefficients bath_coefficients(const DrudeBathSpec& spec, int K);

/// Enumeration of hierarchy labels n = {n_1..n_modes} with sum(n) <= tier_cap,
/// ordered by tier then lexicographically, with precomputed raise/lower
/// neighbor links. Index 0 is the physical density matrix.
class HierarchyGraph {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  static HierarchyGraph build(int n_modes, int tier_cap);
  static std::size_t expected_count(int n_modes, int tier_cap);  // binomial(modes+cap, cap)

  std::size_t count() const { return count_; }
  int modes() const { return n_modes_; }
  int tier_cap() const { return tier_cap_; }

  int label(std::size_t node, int mode) const { return labels_[node * n_modes_ + mode]; }
  int tier(std::size_t node) const { return tiers_[node]; }
  std::size_t raise(std::size_t node, int mode) const { return up_[node * n_modes_ + mode]; }
  std::size_t lower(std::size_t node, int mode) const { return down_[node * n_modes_ + mode]; }

 private:
  int n_modes_ = 0;
  int tier_cap_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> labels_;
  std::vector<int> tiers_;
  std::vector<std::size_t> up_;
  std::vector<std::size_t> down_;
};

struct HeomConfig {
  ComplexMatrix hamiltonian;          // d x d, rad/fs; site j couples via |j><j|
  std::vector<DrudeBathSpec> baths;   // one per site
  int matsubara_cutoff = 0;           // K
  int tier_cap = 8;                   // N_c
  double dt = 0.5;                    // fs, fixed-step RK4
  std::size_t memory_limit_bytes = std::size_t{6} << 30;

  int sites() const { return static_cast<int>(baths.size()); }
  void validate() const;
};

/// Physical density matrix plus auxiliary matrices in one flat column-major
/// buffer; block i is the d x d matrix of hierarchy node i.
class HierarchyState {
 public:
  HierarchyState(int dim, std::size_t node_count);

  double time = 0.0;
  int dim() const { return dim_; }
  std::size_t nodes() const { return nodes_; }

  Eigen::Map<ComplexMatrix> matrix(std::size_t node);
  Eigen::Map<const ComplexMatrix> matrix(std::size_t node) const;
  ComplexMatrix physical() const;

  ComplexVector data;

 private:
  int dim_ = 0;
  std::size_t nodes_ = 0;
};

class HeomDivergence : public std::runtime_error {
 public:
  HeomDivergence(const std::string& what, double time, int tier)
      : std::runtime_error(what), time(time), tier(tier) {}
  double time;
  int tier;
};

class HeomSolver {
 public:
  explicit HeomSolver(HeomConfig config);

  const HeomConfig& config() const { return config_; }
  const HierarchyGraph& graph() const { return graph_; }
  const BathCoefficients& coefficients(int site) const { return coeffs_[site]; }

  /// System starts in a product state with the thermal bath: all auxiliary
  /// matrices are zero.
  HierarchyState initial_state(const DensityMatrix& rho) const;

  void derivative(const HierarchyState& state, HierarchyState& out) const;

  /// Fixed-step RK4 integration by config().dt.
  HierarchyState evolve(HierarchyState state, double duration) const;

  RealVector physical_populations(const HierarchyState& state) const;

  /// Non-selective site-basis measurement: every matrix in the hierarchy is
  /// stripped of its off-diagonal elements, so the measured ensemble keeps
  /// the bath correlations attached to each outcome.
  void dephase(HierarchyState& state) const;

  /// Selective measurement with outcome n: Q_n . Q_n applied to the physical
  /// and every auxiliary matrix, all divided by p_n. Throws when
  /// p_n <= probability_floor.
  HierarchyState conditional(const HierarchyState& state, int outcome,
                             double probability_floor = 1e-10) const;

  /// Omega_mn(t0 + tau, t0) from the conditional state at t0; carries the
  /// system-bath correlations present at t0.
  double propagator(const HierarchyState& state_at_t0, int n, int m, double tau) const;

  std::size_t state_bytes() const;

 private:
  void derivative_dispatch(const Complex* in, Complex* out) const;
  template <int Dim>
  void derivative_kernel(const Complex* in, Complex* out) const;
  void check_finite(const HierarchyState& state) const;

  HeomConfig config_;
  HierarchyGraph graph_;
  std::vector<BathCoefficients> coeffs_;

  int dim_ = 0;
  int n_modes_ = 0;
  std::vector<double> node_decay_;      // sum_{j,m} n_jm mu_jm per node
  std::vector<int> mode_site_;          // mode -> site j
  std::vector<Complex> down_left_;      // node*modes: -i n_jm c_jm
  std::vector<Complex> down_right_;     // node*modes: +i n_jm c_jm^*
  ComplexMatrix pair_damping_;          // (r,c) -> theta_r + theta_c off-diagonal
};

}  // namespace qwit
