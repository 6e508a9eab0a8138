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

#include "fhqetu/measurement.hpp"

#include <cmath>
#include <ostream>

#include "fhqetu/oracle.hpp"

namespace fhqetu {

std::string to_string(MeasurementVariant v) {
  switch (v) {
    case MeasurementVariant::kOnsite: return "onsite";
    case MeasurementVariant::kHoppingH2: return "hopping_h2";
    case MeasurementVariant::kHoppingH3: return "hopping_h3";
  }
  throw std::invalid_argument("unknown measurement variant");
}

ModeMapping measurement_mapping(MeasurementVariant v) {
  return mapping_at_config(v == MeasurementVariant::kHoppingH3 ? 4 : 1);
}

std::array<std::pair<int, int>, 4> measurement_pairs(MeasurementVariant v) {
  return v == MeasurementVariant::kOnsite ? onsite_cell_pairs() : hopping_cell_pairs();
}

std::array<MeasurementPlan, 3> build_measurement_circuits(const Circuit& base) {
  std::array<MeasurementPlan, 3> plans;
  for (std::size_t k = 0; k < plans.size(); ++k) {
    MeasurementPlan& plan = plans[k];
    plan.variant = kMeasurementVariants[k];
    plan.pairs = measurement_pairs(plan.variant);
    Circuit change(base.num_qubits());
    if (plan.variant == MeasurementVariant::kHoppingH3)
      for (auto [a, b] : onsite_cell_pairs()) change.add(gates::fswap(a, b));
    if (plan.variant != MeasurementVariant::kOnsite)
      for (auto [a, b] : plan.pairs) change.add(gates::basis_u(a, b));
    plan.circuit = base;
    plan.circuit.append(lower(change));
  }
  return plans;
}

std::pair<int, int> ground_state_sector(const ModelParams& p) {
  const Vector psi = exact_spectrum(to_matrix(build_network_hamiltonian(p))).ground_state();
  const auto count = [&](Spin spin) {
    const Matrix n = to_matrix(number_operator(spin));
    const double mean = psi.dot(n * psi).real();
    const double var = psi.dot(n * (n * psi)).real() - mean * mean;
    if (std::abs(var) > 1e-8 || std::abs(mean - std::round(mean)) > 1e-8)
      throw std::logic_error("ground state has no definite particle number");
    return static_cast<int>(std::lround(mean));
  };
  return {count(Spin::kUp), count(Spin::kDown)};
}

namespace {

constexpr int kRegister = GridLayout::kNumCells;

int bit(std::uint64_t index, int cell) {
  return static_cast<int>((index >> (kRegister - 1 - cell)) & 1);
}

void require_register(const Counts& c) {
  if (c.num_qubits != static_cast<std::size_t>(kRegister))
    throw std::invalid_argument("counts must cover the 9-qubit register");
}

}  // namespace

PostSelected post_select(const Counts& counts, const PostSelectionFilter& filter,
                         MeasurementVariant variant) {
  require_register(counts);
  const ModeMapping m = measurement_mapping(variant);
  PostSelected out{Counts(counts.num_qubits), 0.0};
  for (std::uint64_t i = 0; i < counts.histogram.size(); ++i) {
    if (counts.histogram[i] == 0 || bit(i, m.ancilla_cell()) != filter.ancilla_bit) continue;
    int up = 0;
    int down = 0;
    for (int cell = 0; cell < kRegister; ++cell) {
      const auto& o = m.cell[static_cast<std::size_t>(cell)];
      if (!o) continue;
      (o->spin == Spin::kUp ? up : down) += bit(i, cell);
    }
    if ((filter.n_up && up != *filter.n_up) || (filter.n_down && down != *filter.n_down)) continue;
    out.counts.histogram[i] = counts.histogram[i];
  }
  const std::uint64_t kept = out.counts.total();
  if (kept == 0) throw EmptySampleError("post-selection discarded every shot");
  out.retention = static_cast<double>(kept) / static_cast<double>(counts.total());
  return out;
}

EnergyTerms estimate_energy_terms(const std::array<Counts, 3>& counts, const ModelParams& p) {
  EnergyTerms e;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const Counts& c = counts[k];
    require_register(c);
    const std::uint64_t total = c.total();
    if (total == 0)
      throw EmptySampleError("no shots for variant " + to_string(kMeasurementVariants[k]));
    const auto pairs = measurement_pairs(kMeasurementVariants[k]);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < c.histogram.size(); ++i) {
      if (c.histogram[i] == 0) continue;
      int value = 0;
      for (auto [a, b] : pairs) {
        const int ba = bit(i, a);
        const int bb = bit(i, b);
        if (kMeasurementVariants[k] == MeasurementVariant::kOnsite)
          value += ba == bb ? 1 : -1;
        else
          value += bb - ba;
      }
      sum += value * static_cast<double>(c.histogram[i]);
    }
    const double mean = sum / static_cast<double>(total);
    switch (kMeasurementVariants[k]) {
      case MeasurementVariant::kOnsite: e.onsite = p.u / 4.0 * mean; break;
      case MeasurementVariant::kHoppingH2: e.near_hopping = -p.t * mean; break;
      case MeasurementVariant::kHoppingH3: e.far_hopping = -p.t * mean; break;
    }
  }
  return e;
}

double estimate_energy(const std::array<Counts, 3>& counts, const ModelParams& p) {
  return estimate_energy_terms(counts, p).total();
}

std::array<RealVector, 3> measurement_distributions(const std::array<MeasurementPlan, 3>& plans,
                                                    const NoiseModel& noise) {
  std::array<RealVector, 3> out;
  for (std::size_t k = 0; k < plans.size(); ++k) out[k] = outcome_distribution(plans[k].circuit, noise);
  return out;
}

std::array<Counts, 3> sample_measurements(const std::array<RealVector, 3>& distributions,
                                          std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  std::array<Counts, 3> out;
  for (std::size_t k = 0; k < distributions.size(); ++k) {
    SplitMix64 rng = SplitMix64::substream(seed, k);
    out[k] = sample_distribution(distributions[k], kRegister, shots, rng);
  }
  return out;
}

std::array<Counts, 3> sample_measurements(const std::array<MeasurementPlan, 3>& plans,
                                          std::uint64_t shots, const NoiseModel& noise,
                                          std::uint64_t seed, NoiseBackend backend) {
  if (backend == NoiseBackend::kDensity || noise.is_noiseless())
    return sample_measurements(measurement_distributions(plans, noise), shots, seed);
  std::array<Counts, 3> out;
  for (std::size_t k = 0; k < plans.size(); ++k)
    out[k] = sample(plans[k].circuit, shots, noise, SplitMix64::substream(seed, k)(), backend);
  return out;
}

void write_measurement_counts_csv(std::ostream& out, const std::array<Counts, 3>& counts) {
  out << "variant,bitstring,count\n";
  for (std::size_t k = 0; k < counts.size(); ++k)
    for (std::uint64_t i = 0; i < counts[k].histogram.size(); ++i)
      if (counts[k].histogram[i] != 0)
        out << to_string(kMeasurementVariants[k]) << ',' << bitstring(i, counts[k].num_qubits)
            << ',' << counts[k].histogram[i] << '\n';
}

}  // namespace fhqetu
