// Copyright 2026 The fhqetu Authors
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

#include "fhqetu/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fhqetu {

StateVector StateVector::zero(std::size_t n) {
  StateVector s{n, Vector::Zero(Eigen::Index{1} << n)};
  s.amplitudes(0) = 1.0;
  return s;
}

StateVector StateVector::from(Vector amplitudes) {
  const auto dim = static_cast<std::uint64_t>(amplitudes.size());
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("state length must be a power of two");
  return {static_cast<std::size_t>(__builtin_ctzll(dim)), std::move(amplitudes)};
}

DensityMatrix DensityMatrix::zero(std::size_t n) {
  if (n > kMaxDensityQubits) throw std::length_error("too many qubits for a density matrix");
  const auto dim = Eigen::Index{1} << n;
  DensityMatrix rho{n, Matrix::Zero(dim, dim)};
  rho.entries(0, 0) = 1.0;
  return rho;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  if (psi.num_qubits > kMaxDensityQubits)
    throw std::length_error("too many qubits for a density matrix");
  return {psi.num_qubits, psi.amplitudes * psi.amplitudes.adjoint()};
}

NoiseModel NoiseModel::from_p2q(double p2q) {
  NoiseModel m{p2q / 10.0, p2q, 10.0 * p2q};
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  for (double p : {p1q, p2q, pmeas})
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("noise probabilities must lie in [0, 1]");
}

double NoiseModel::gate_error(const Gate& g) const {
  if (g.kind == GateKind::kRz) return 0.0;
  switch (g.arity()) {
    case 1: return p1q;
    case 2: return p2q;
    default: return 0.0;
  }
}

std::uint64_t Counts::total() const {
  std::uint64_t t = 0;
  for (auto c : histogram) t += c;
  return t;
}

Counts& Counts::operator+=(const Counts& other) {
  if (other.num_qubits != num_qubits) throw std::invalid_argument("counts widths differ");
  for (std::size_t i = 0; i < histogram.size(); ++i) histogram[i] += other.histogram[i];
  return *this;
}

std::string bitstring(std::uint64_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q)
    if (index & (std::uint64_t{1} << (n - 1 - q))) s[q] = '1';
  return s;
}

void write_counts_csv(std::ostream& out, const Counts& counts) {
  out << "bitstring,count\n";
  for (std::uint64_t i = 0; i < counts.histogram.size(); ++i)
    if (counts.histogram[i]) out << bitstring(i, counts.num_qubits) << ',' << counts.histogram[i] << '\n';
}

namespace {

void require_simulable(const Gate& g) {
  if (!is_native(g.kind) && g.kind != GateKind::kUnitary)
    throw std::invalid_argument("cannot simulate abstract gate " +
                                std::string(gate_name(g.kind)) + "; lower the circuit first");
}

}  // namespace

StateVector apply_circuit(StateVector state, const Circuit& c) {
  if (state.num_qubits != c.num_qubits())
    throw std::invalid_argument("state and circuit widths differ");
  for (const Gate& g : c.ops()) {
    require_simulable(g);
    apply_local(state.amplitudes.data(), state.num_qubits, 1, gate_matrix(g), g.qubits);
  }
  return state;
}

void depolarize(DensityMatrix& rho, const std::vector<int>& qubits, double p) {
  if (p == 0.0) return;
  const std::size_t n = rho.num_qubits;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::size_t k = qubits.size();
  const std::uint64_t local_dim = std::uint64_t{1} << k;
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> offset(local_dim, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - qubits[i]);
    mask |= bit;
    for (std::uint64_t a = 0; a < local_dim; ++a)
      if (a & (std::uint64_t{1} << (k - 1 - i))) offset[a] |= bit;
  }
  std::vector<std::uint64_t> bases;
  for (std::uint64_t b = 0; b < dim; ++b)
    if (!(b & mask)) bases.push_back(b);

  Matrix& m = rho.entries;
  const double keep = 1.0 - p;
  const double mixed = p / static_cast<double>(local_dim);
  const auto at = [&](std::uint64_t r, std::uint64_t c) -> cplx& {
    return m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  };
  for (std::uint64_t cb : bases) {
    for (std::uint64_t rb : bases) {
      cplx trace = 0.0;
      for (std::uint64_t a = 0; a < local_dim; ++a) trace += at(rb | offset[a], cb | offset[a]);
      for (std::uint64_t b = 0; b < local_dim; ++b)
        for (std::uint64_t a = 0; a < local_dim; ++a) {
          cplx& e = at(rb | offset[a], cb | offset[b]);
          e = keep * e + (a == b ? mixed * trace : cplx(0.0));
        }
    }
  }
}

void apply_circuit(DensityMatrix& rho, const Circuit& c, const NoiseModel& noise) {
  if (rho.num_qubits != c.num_qubits())
    throw std::invalid_argument("density matrix and circuit widths differ");
  noise.validate();
  // column-major storage read as a 2n-qubit vector: column qubit q sits at
  // position q, row qubit q at position n + q
  const auto n = static_cast<int>(rho.num_qubits);
  for (const Gate& g : c.ops()) {
    require_simulable(g);
    const Matrix u = gate_matrix(g);
    std::vector<int> rows = g.qubits;
    for (int& q : rows) q += n;
    apply_local(rho.entries.data(), 2 * rho.num_qubits, 1, u, rows);
    apply_local(rho.entries.data(), 2 * rho.num_qubits, 1, u.conjugate(), g.qubits);
    depolarize(rho, g.qubits, noise.gate_error(g));
  }
}

DensityMatrix run_density(const Circuit& c, const NoiseModel& noise) {
  DensityMatrix rho = DensityMatrix::zero(c.num_qubits());
  apply_circuit(rho, c, noise);
  return rho;
}

RealVector probabilities(const StateVector& psi) { return psi.amplitudes.cwiseAbs2(); }

RealVector probabilities(const DensityMatrix& rho) {
  return rho.entries.diagonal().real().cwiseMax(0.0);
}

RealVector apply_readout_error(RealVector probs, std::size_t n, double p) {
  if (p == 0.0) return probs;
  for (std::size_t q = 0; q < n; ++q) {
    const auto bit = Eigen::Index{1} << (n - 1 - q);
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      if (i & bit) continue;
      const double p0 = probs(i);
      const double p1 = probs(i | bit);
      probs(i) = (1.0 - p) * p0 + p * p1;
      probs(i | bit) = p * p0 + (1.0 - p) * p1;
    }
  }
  return probs;
}

Counts sample_distribution(const RealVector& probs, std::size_t n, std::uint64_t shots,
                           SplitMix64& rng) {
  if (probs.size() != (Eigen::Index{1} << n))
    throw std::invalid_argument("distribution length does not match width");
  Counts counts(n);
  double remaining_mass = probs.sum();
  if (!(remaining_mass > 0.0)) throw std::invalid_argument("distribution has no mass");
  std::uint64_t remaining = shots;
  for (Eigen::Index i = 0; i < probs.size() && remaining > 0; ++i) {
    const double p = probs(i);
    if (p <= 0.0) continue;
    const double q = remaining_mass > p ? p / remaining_mass : 1.0;
    std::uint64_t drawn = remaining;
    if (q < 1.0) {
      std::binomial_distribution<std::uint64_t> binom(remaining, q);
      drawn = binom(rng);
    }
    counts.histogram[static_cast<std::size_t>(i)] = drawn;
    remaining -= drawn;
    remaining_mass -= p;
  }
  if (remaining > 0) {
    // rounding left shots over; give them to the most likely outcome
    Eigen::Index arg = 0;
    probs.maxCoeff(&arg);
    counts.histogram[static_cast<std::size_t>(arg)] += remaining;
  }
  return counts;
}

namespace {

using ErrorPattern = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

// Pauli code per qubit: 2 bits each, qubits[0] in the highest pair.
Matrix pauli_error(std::uint8_t code, std::size_t k) {
  std::string letters;
  for (std::size_t i = 0; i < k; ++i) letters += "IXYZ"[(code >> (2 * (k - 1 - i))) & 3];
  return to_matrix(PauliString::parse(letters));
}

Counts sample_trajectories(const Circuit& c, std::uint64_t shots, const NoiseModel& noise,
                           std::uint64_t seed) {
  std::vector<double> error(c.size());
  for (std::size_t g = 0; g < c.size(); ++g) {
    require_simulable(c.ops()[g]);
    error[g] = noise.gate_error(c.ops()[g]);
  }
  std::map<ErrorPattern, std::uint64_t> patterns;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    SplitMix64 rng = SplitMix64::substream(seed, shot);
    ErrorPattern pattern;
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (error[g] == 0.0 || rng.uniform() >= error[g]) continue;
      const auto k = c.ops()[g].arity();
      const auto code = static_cast<std::uint8_t>(rng.below(std::uint64_t{1} << (2 * k)));
      if (code != 0) pattern.emplace_back(static_cast<std::uint32_t>(g), code);
    }
    ++patterns[pattern];
  }

  Counts counts(c.num_qubits());
  std::uint64_t ordinal = 0;
  for (const auto& [pattern, count] : patterns) {
    StateVector psi = StateVector::zero(c.num_qubits());
    auto next = pattern.begin();
    for (std::size_t g = 0; g < c.size(); ++g) {
      const Gate& gate = c.ops()[g];
      apply_local(psi.amplitudes.data(), psi.num_qubits, 1, gate_matrix(gate), gate.qubits);
      if (next != pattern.end() && next->first == g) {
        apply_local(psi.amplitudes.data(), psi.num_qubits, 1,
                    pauli_error(next->second, gate.arity()), gate.qubits);
        ++next;
      }
    }
    SplitMix64 rng = SplitMix64::substream(seed ^ 0x5bd1e995ULL, ordinal++);
    counts += sample_distribution(
        apply_readout_error(probabilities(psi), c.num_qubits(), noise.pmeas),
        c.num_qubits(), count, rng);
  }
  return counts;
}

}  // namespace

Counts sample(const Circuit& c, std::uint64_t shots, const NoiseModel& noise,
              std::uint64_t seed, NoiseBackend backend) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  noise.validate();
  const bool depolarizing = noise.p1q > 0.0 || noise.p2q > 0.0;
  if (depolarizing && backend == NoiseBackend::kTrajectory)
    return sample_trajectories(c, shots, noise, seed);
  SplitMix64 rng = SplitMix64::substream(seed, 0);
  return sample_distribution(outcome_distribution(c, noise), c.num_qubits(), shots, rng);
}

RealVector outcome_distribution(const Circuit& c, const NoiseModel& noise) {
  noise.validate();
  RealVector probs = noise.p1q > 0.0 || noise.p2q > 0.0
                         ? probabilities(run_density(c, noise))
                         : probabilities(apply_circuit(StateVector::zero(c.num_qubits()), c));
  return apply_readout_error(std::move(probs), c.num_qubits(), noise.pmeas);
}

double expectation(const StateVector& psi, const PauliSum& obs) {
  if (obs.num_qubits() != psi.num_qubits)
    throw std::invalid_argument("observable and state widths differ");
  if (!obs.is_hermitian()) throw std::invalid_argument("observable is not Hermitian");
  static constexpr cplx kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx total = 0.0;
  const auto dim = static_cast<std::uint64_t>(psi.amplitudes.size());
  for (const auto& term : obs.terms()) {
    const std::uint64_t xm = term.string.x_mask();
    const std::uint64_t zm = term.string.z_mask();
    std::size_t num_y = 0;
    for (std::size_t q = 0; q < term.string.num_qubits(); ++q)
      num_y += term.string.at(q) == Pauli::Y;
    const cplx base = term.coefficient * term.string.phase() * kUnits[num_y % 4];
    cplx acc = 0.0;
    for (std::uint64_t col = 0; col < dim; ++col) {
      const cplx v = std::conj(psi.amplitudes(static_cast<Eigen::Index>(col ^ xm))) *
                     psi.amplitudes(static_cast<Eigen::Index>(col));
      acc += (__builtin_popcountll(col & zm) & 1) ? -v : v;
    }
    total += base * acc;
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real())))
    throw std::logic_error("expectation has an imaginary residue");
  return total.real();
}

}  // namespace fhqetu
