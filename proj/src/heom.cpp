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

#include "qwit/heom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qwit/constants.hpp"

namespace qwit {

DrudeBathSpec DrudeBathSpec::from_lab_units(double lambda_cm1, double gamma_inv_fs,
                                            double temperature_K) {
  if (lambda_cm1 <= 0 || gamma_inv_fs <= 0 || temperature_K <= 0) {
    throw std::invalid_argument("DrudeBathSpec: lambda, gamma^-1 and T must be positive");
  }
  DrudeBathSpec spec;
  spec.lambda = lambda_cm1 * constants::rad_fs_per_cm1;
  spec.gamma = 1.0 / gamma_inv_fs;
  spec.beta = 1.0 / (constants::boltzmann_cm1_K * temperature_K * constants::rad_fs_per_cm1);
  return spec;
}

void DrudeBathSpec::validate() const {
  if (lambda <= 0 || gamma <= 0 || beta <= 0) {
    throw std::invalid_argument("DrudeBathSpec: lambda, gamma and beta must be positive");
  }
}

BathCoefficients bath_coefficients(const DrudeBathSpec& spec, int K) {
  spec.validate();
  if (K < 0) throw std::invalid_argument("bath_coefficients: K must be >= 0");

  const double x = spec.beta * spec.gamma / 2.0;  // beta*hbar*gamma/2 with hbar = 1
  if (std::abs(std::remainder(x, constants::pi)) < 1e-9) {
    throw std::invalid_argument(
        "bath_coefficients: beta*gamma/2 = " + std::to_string(x) +
        " sits at a pole of cot; the Drude expansion is undefined here");
  }
  const double cot_x = std::cos(x) / std::sin(x);

  BathCoefficients out;
  out.c.reserve(K + 1);
  out.mu.reserve(K + 1);
  out.c.push_back(spec.gamma * spec.lambda * Complex(cot_x, -1.0));
  out.mu.push_back(spec.gamma);

  double included = 0.0;  // sum_{m=1..K} c_m / mu_m, real
  for (int m = 1; m <= K; ++m) {
    const double mu_m = constants::two_pi * m / spec.beta;
    if (std::abs(mu_m - spec.gamma) < 1e-12 * std::max(mu_m, spec.gamma)) {
      throw std::invalid_argument(
          "bath_coefficients: Matsubara frequency collides with gamma, expansion singular");
    }
    const double c_m =
        4.0 * spec.lambda * spec.gamma / spec.beta * mu_m / (mu_m * mu_m - spec.gamma * spec.gamma);
    out.c.push_back(Complex(c_m, 0.0));
    out.mu.push_back(mu_m);
    included += c_m / mu_m;
  }

  // Closed form of sum_{m>=1} c_m/mu_m for the Drude expansion; the tail
  // beyond K feeds the Ishizaki-Tanimura correction.
  const double full_series = 2.0 * spec.lambda / (spec.beta * spec.gamma) * (1.0 - x * cot_x);
  out.tail = full_series - included;
  if (!std::isfinite(out.tail)) {
    throw std::invalid_argument("bath_coefficients: non-finite truncation tail");
  }
  return out;
}

std::size_t HierarchyGraph::expected_count(int n_modes, int tier_cap) {
  if (n_modes < 1 || tier_cap < 0) {
    throw std::invalid_argument("HierarchyGraph: need n_modes >= 1 and tier_cap >= 0");
  }
  long double acc = 1.0L;
  for (int i = 1; i <= tier_cap; ++i) {
    acc *= static_cast<long double>(n_modes + i);
    acc /= static_cast<long double>(i);
  }
  if (acc > 9.0e15L) throw std::invalid_argument("HierarchyGraph: index set too large");
  return static_cast<std::size_t>(std::llroundl(acc));
}

HierarchyGraph HierarchyGraph::build(int n_modes, int tier_cap) {
  const std::size_t expected = expected_count(n_modes, tier_cap);

  std::vector<std::vector<std::uint8_t>> labels;
  labels.reserve(expected);
  std::vector<std::uint8_t> current(n_modes, 0);
  // Depth-first enumeration; sorted afterwards by (tier, lexicographic).
  auto enumerate = [&](auto&& self, int mode, int budget) -> void {
    if (mode == n_modes) {
      labels.push_back(current);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      current[mode] = static_cast<std::uint8_t>(v);
      self(self, mode + 1, budget - v);
    }
    current[mode] = 0;
  };
  enumerate(enumerate, 0, tier_cap);
  if (labels.size() != expected) {
    throw std::logic_error("HierarchyGraph: enumeration does not match binomial count");
  }
  auto tier_of = [](const std::vector<std::uint8_t>& v) {
    int s = 0;
    for (const auto x : v) s += x;
    return s;
  };
  std::sort(labels.begin(), labels.end(),
            [&tier_of](const auto& a, const auto& b) {
              const int ta = tier_of(a), tb = tier_of(b);
              if (ta != tb) return ta < tb;
              return a < b;
            });

  std::map<std::vector<std::uint8_t>, std::size_t> index_of;
  for (std::size_t i = 0; i < labels.size(); ++i) index_of.emplace(labels[i], i);

  HierarchyGraph graph;
  graph.n_modes_ = n_modes;
  graph.tier_cap_ = tier_cap;
  graph.count_ = labels.size();
  graph.labels_.resize(labels.size() * n_modes);
  graph.tiers_.resize(labels.size());
  graph.up_.assign(labels.size() * n_modes, npos);
  graph.down_.assign(labels.size() * n_modes, npos);

  std::vector<std::uint8_t> probe;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& label = labels[i];
    graph.tiers_[i] = tier_of(label);
    for (int m = 0; m < n_modes; ++m) {
      graph.labels_[i * n_modes + m] = label[m];
      if (graph.tiers_[i] < tier_cap) {
        probe = label;
        ++probe[m];
        graph.up_[i * n_modes + m] = index_of.at(probe);
      }
      if (label[m] > 0) {
        probe = label;
        --probe[m];
        graph.down_[i * n_modes + m] = index_of.at(probe);
      }
    }
  }
  return graph;
}

void HeomConfig::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2) {
    throw std::invalid_argument("HeomConfig: Hamiltonian must be square with d >= 2");
  }
  if (hermiticity_defect(hamiltonian) > 1e-12) {
    throw std::invalid_argument("HeomConfig: Hamiltonian must be Hermitian");
  }
  if (baths.empty() || static_cast<int>(baths.size()) > hamiltonian.rows()) {
    throw std::invalid_argument("HeomConfig: need one bath per site, sites <= dimension");
  }
  for (const auto& bath : baths) bath.validate();
  if (matsubara_cutoff < 0) throw std::invalid_argument("HeomConfig: K must be >= 0");
  if (tier_cap < 1) throw std::invalid_argument("HeomConfig: N_c must be >= 1");
  if (dt <= 0) throw std::invalid_argument("HeomConfig: dt must be positive");
}

HierarchyState::HierarchyState(int dim, std::size_t node_count)
    : data(ComplexVector::Zero(static_cast<Eigen::Index>(node_count) * dim * dim)),
      dim_(dim),
      nodes_(node_count) {}

Eigen::Map<ComplexMatrix> HierarchyState::matrix(std::size_t node) {
  return {data.data() + node * dim_ * dim_, dim_, dim_};
}

Eigen::Map<const ComplexMatrix> HierarchyState::matrix(std::size_t node) const {
  return {data.data() + node * dim_ * dim_, dim_, dim_};
}

ComplexMatrix HierarchyState::physical() const { return matrix(0); }

namespace {
HierarchyGraph build_graph_checked(const HeomConfig& config) {
  config.validate();
  return HierarchyGraph::build(config.sites() * (config.matsubara_cutoff + 1), config.tier_cap);
}
}  // namespace

HeomSolver::HeomSolver(HeomConfig config)
    : config_(std::move(config)), graph_(build_graph_checked(config_)) {
  dim_ = static_cast<int>(config_.hamiltonian.rows());
  const int sites = config_.sites();
  const int k_terms = config_.matsubara_cutoff + 1;
  n_modes_ = sites * k_terms;

  // RK4 keeps six hierarchy-sized buffers alive at once.
  const std::size_t needed = 6 * state_bytes();
  if (needed > config_.memory_limit_bytes) {
    throw std::invalid_argument("HeomSolver: hierarchy needs about " + std::to_string(needed) +
                                " bytes (limit " + std::to_string(config_.memory_limit_bytes) +
                                "); raise the limit or lower N_c/K");
  }

  coeffs_.reserve(sites);
  for (const auto& bath : config_.baths) {
    coeffs_.push_back(bath_coefficients(bath, config_.matsubara_cutoff));
  }

  mode_site_.resize(n_modes_);
  for (int mode = 0; mode < n_modes_; ++mode) mode_site_[mode] = mode / k_terms;

  const std::size_t count = graph_.count();
  node_decay_.assign(count, 0.0);
  down_left_.assign(count * n_modes_, Complex(0.0, 0.0));
  down_right_.assign(count * n_modes_, Complex(0.0, 0.0));
  const Complex minus_i(0.0, -1.0);
  const Complex plus_i(0.0, 1.0);
  for (std::size_t node = 0; node < count; ++node) {
    double decay = 0.0;
    for (int mode = 0; mode < n_modes_; ++mode) {
      const int site = mode_site_[mode];
      const int matsubara = mode % k_terms;
      const int n_jm = graph_.label(node, mode);
      decay += n_jm * coeffs_[site].mu[matsubara];
      if (graph_.lower(node, mode) != HierarchyGraph::npos) {
        const Complex c = coeffs_[site].c[matsubara];
        down_left_[node * n_modes_ + mode] = minus_i * static_cast<double>(n_jm) * c;
        down_right_[node * n_modes_ + mode] = plus_i * static_cast<double>(n_jm) * std::conj(c);
      }
    }
    node_decay_[node] = decay;
  }

  // Ishizaki-Tanimura closure: -sum_j tail_j [Q_j,[Q_j, .]] damps element
  // (r,c) by tail_r + tail_c and leaves the diagonal alone.
  pair_damping_ = ComplexMatrix::Zero(dim_, dim_);
  std::vector<double> theta(dim_, 0.0);
  for (int j = 0; j < sites; ++j) theta[j] = coeffs_[j].tail;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if (r != c) pair_damping_(r, c) = theta[r] + theta[c];
    }
  }
}

std::size_t HeomSolver::state_bytes() const {
  return graph_.count() * static_cast<std::size_t>(dim_) * dim_ * sizeof(Complex);
}

HierarchyState HeomSolver::initial_state(const DensityMatrix& rho) const {
  if (rho.dim() != dim_) throw std::invalid_argument("HeomSolver: state dimension mismatch");
  HierarchyState state(dim_, graph_.count());
  state.matrix(0) = rho.matrix();
  return state;
}

// Hand-rolled columns-major kernel: at d <= 7 the per-node work is a few
// hundred complex multiplies, small enough that the loop structure (not the
// flop count) dominates. Dim is a compile-time unroll hint.
template <int Dim>
void HeomSolver::derivative_kernel(const Complex* in, Complex* out) const {
  const int d = (Dim == Eigen::Dynamic) ? dim_ : Dim;
  const std::size_t block = static_cast<std::size_t>(d) * d;
  const std::size_t count = graph_.count();
  const int modes = n_modes_;
  const Complex minus_i(0.0, -1.0);
  const Complex plus_i(0.0, 1.0);
  const Complex* hamiltonian = config_.hamiltonian.data();
  const Complex* damping = pair_damping_.data();

  const auto node_body = [&](std::size_t node) {
    const Complex* b = in + node * block;
    Complex* db = out + node * block;
    const double decay = node_decay_[node];
    // db = -i (H b - b H) - (decay + damping) .* b
    for (int c = 0; c < d; ++c) {
      for (int r = 0; r < d; ++r) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < d; ++k) {
          acc += hamiltonian[k * d + r] * b[c * d + k] - b[k * d + r] * hamiltonian[c * d + k];
        }
        const std::size_t idx = static_cast<std::size_t>(c) * d + r;
        db[idx] = minus_i * acc - (decay + damping[idx].real()) * b[idx];
      }
    }
    for (int mode = 0; mode < modes; ++mode) {
      const int j = mode_site_[mode];
      const std::size_t u = graph_.raise(node, mode);
      if (u != HierarchyGraph::npos) {
        const Complex* bu = in + u * block;
        for (int c = 0; c < d; ++c) db[c * d + j] += minus_i * bu[c * d + j];  // row j
        for (int r = 0; r < d; ++r) db[j * d + r] += plus_i * bu[j * d + r];   // column j
      }
      const std::size_t l = graph_.lower(node, mode);
      if (l != HierarchyGraph::npos) {
        const Complex* bl = in + l * block;
        const Complex left = down_left_[node * modes + mode];
        const Complex right = down_right_[node * modes + mode];
        for (int c = 0; c < d; ++c) db[c * d + j] += left * bl[c * d + j];
        for (int r = 0; r < d; ++r) db[j * d + r] += right * bl[j * d + r];
      }
    }
  };

#ifdef QWIT_HAS_OPENMP
#pragma omp parallel for schedule(static)
  for (long long node = 0; node < static_cast<long long>(count); ++node) {
    node_body(static_cast<std::size_t>(node));
  }
#else
  for (std::size_t node = 0; node < count; ++node) node_body(node);
#endif
}

void HeomSolver::derivative_dispatch(const Complex* in, Complex* out) const {
  switch (dim_) {
    case 2:
      derivative_kernel<2>(in, out);
      break;
    case 3:
      derivative_kernel<3>(in, out);
      break;
    case 7:
      derivative_kernel<7>(in, out);
      break;
    default:
      derivative_kernel<Eigen::Dynamic>(in, out);
  }
}

void HeomSolver::derivative(const HierarchyState& state, HierarchyState& out) const {
  if (state.dim() != dim_ || state.nodes() != graph_.count()) {
    throw std::invalid_argument("HeomSolver: state does not match hierarchy");
  }
  if (out.dim() != dim_ || out.nodes() != graph_.count()) {
    out = HierarchyState(dim_, graph_.count());
  }
  derivative_dispatch(state.data.data(), out.data.data());
  out.time = state.time;
}

void HeomSolver::check_finite(const HierarchyState& state) const {
  constexpr double kDivergenceNorm = 1e6;
  for (std::size_t node = 0; node < state.nodes(); ++node) {
    const double norm = state.matrix(node).cwiseAbs().maxCoeff();
    if (!(norm <= kDivergenceNorm)) {
      throw HeomDivergence("HeomSolver: matrix norm " + std::to_string(norm) +
                               " beyond divergence bound at node tier " +
                               std::to_string(graph_.tier(node)) + ", t = " +
                               std::to_string(state.time) + " fs",
                           state.time, graph_.tier(node));
    }
  }
}

HierarchyState HeomSolver::evolve(HierarchyState state, double duration) const {
  if (duration < 0) throw std::invalid_argument("HeomSolver: negative duration");
  if (duration == 0) return state;
  const auto n_steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(duration / config_.dt - 1e-9)));
  const double h = duration / static_cast<double>(n_steps);

  const Eigen::Index total = state.data.size();
  ComplexVector k1(total), k2(total), k3(total), k4(total), tmp(total);
  for (std::size_t step = 0; step < n_steps; ++step) {
    derivative_dispatch(state.data.data(), k1.data());
    tmp = state.data + (0.5 * h) * k1;
    derivative_dispatch(tmp.data(), k2.data());
    tmp = state.data + (0.5 * h) * k2;
    derivative_dispatch(tmp.data(), k3.data());
    tmp = state.data + h * k3;
    derivative_dispatch(tmp.data(), k4.data());
    state.data += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    state.time += h;
    if (step % 25 == 24) check_finite(state);
  }
  check_finite(state);
  return state;
}

RealVector HeomSolver::physical_populations(const HierarchyState& state) const {
  RealVector p(dim_);
  for (int n = 0; n < dim_; ++n) {
    p[n] = std::clamp(state.matrix(0)(n, n).real(), 0.0, 1.0);
  }
  return p;
}

void HeomSolver::dephase(HierarchyState& state) const {
  for (std::size_t node = 0; node < state.nodes(); ++node) {
    auto block = state.matrix(node);
    const ComplexVector diag = block.diagonal();
    block.setZero();
    block.diagonal() = diag;
  }
}

HierarchyState HeomSolver::conditional(const HierarchyState& state, int outcome,
                                       double probability_floor) const {
  if (outcome < 0 || outcome >= dim_) {
    throw std::invalid_argument("HeomSolver: outcome index out of range");
  }
  const double p_n = state.matrix(0)(outcome, outcome).real();
  if (p_n <= probability_floor) {
    throw std::runtime_error("HeomSolver: conditional state undefined, p_n(t0) = " +
                             std::to_string(p_n) + " <= floor");
  }
  HierarchyState conditioned(dim_, state.nodes());
  conditioned.time = state.time;
  for (std::size_t node = 0; node < state.nodes(); ++node) {
    conditioned.matrix(node)(outcome, outcome) = state.matrix(node)(outcome, outcome) / p_n;
  }
  return conditioned;
}

double HeomSolver::propagator(const HierarchyState& state_at_t0, int n, int m, double tau) const {
  if (m < 0 || m >= dim_) throw std::invalid_argument("HeomSolver: index out of range");
  if (tau < 0) throw std::invalid_argument("HeomSolver: negative tau");
  const HierarchyState conditioned = conditional(state_at_t0, n);
  if (tau == 0) return m == n ? 1.0 : 0.0;
  const HierarchyState evolved = evolve(conditioned, tau);
  return physical_populations(evolved)[m];
}

template void HeomSolver::derivative_kernel<2>(const Complex*, Complex*) const;
template void HeomSolver::derivative_kernel<3>(const Complex*, Complex*) const;
template void HeomSolver::derivative_kernel<7>(const Complex*, Complex*) const;
template void HeomSolver::derivative_kernel<Eigen::Dynamic>(const Complex*, Complex*) const;

}  // namespace qwit
