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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fhqetu/circuit.hpp"
#include "fhqetu/fermi_hubbard.hpp"
#include "fhqetu/simulator.hpp"
#include "fhqetu/swap_network.hpp"

namespace fhqetu {

enum class MeasurementVariant { kOnsite, kHoppingH2, kHoppingH3 };

inline constexpr std::array<MeasurementVariant, 3> kMeasurementVariants = {
    MeasurementVariant::kOnsite, MeasurementVariant::kHoppingH2,
    MeasurementVariant::kHoppingH3};

/// "onsite", "hopping_h2", "hopping_h3".
std::string to_string(MeasurementVariant v);

/// Occupants of the grid at measurement time.
ModeMapping measurement_mapping(MeasurementVariant v);

/// Jointly measured cell pairs. Onsite pairs read Z Z; hopping pairs read
/// P(01) - P(10) after BasisU, which equals <(XX + YY)/2> of the pair.
std::array<std::pair<int, int>, 4> measurement_pairs(MeasurementVariant v);

struct MeasurementPlan {
  MeasurementVariant variant;
  std::array<std::pair<int, int>, 4> pairs;
  /// base followed by the lowered basis change; all qubits are measured.
  Circuit circuit{GridLayout::kNumCells};
};

/// onsite: no basis change. hopping_h2: BasisU on the hopping pairs.
/// hopping_h3: fSWAP on the onsite pairs, then BasisU on the hopping pairs.
std::array<MeasurementPlan, 3> build_measurement_circuits(const Circuit& base);

/// Thrown when post-selection or an empty histogram leaves no shots.
class EmptySampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PostSelectionFilter {
  int ancilla_bit = 0;
  /// Spin counts are only enforced when set.
  std::optional<int> n_up;
  std::optional<int> n_down;
};

/// (N_up, N_down) of the exact ground state of the network Hamiltonian.
/// Throws std::logic_error if the ground state has no definite sector.
std::pair<int, int> ground_state_sector(const ModelParams& p);

struct PostSelected {
  Counts counts;
  double retention = 0.0;
};

/// Keeps shots whose ancilla bit and per-spin Hamming weights match the
/// filter. Throws EmptySampleError when nothing survives.
PostSelected post_select(const Counts& counts, const PostSelectionFilter& filter,
                         MeasurementVariant variant);

/// Per-term estimates from the three histograms (ordered as
/// kMeasurementVariants).
struct EnergyTerms {
  double onsite = 0.0;
  double near_hopping = 0.0;
  double far_hopping = 0.0;
  double total() const { return onsite + near_hopping + far_hopping; }
};

/// (u/4) sum <Z Z> over onsite pairs, and -t sum [P(01) - P(10)] over the
/// hopping pairs of each hopping variant. Throws EmptySampleError for an
/// empty histogram.
EnergyTerms estimate_energy_terms(const std::array<Counts, 3>& counts, const ModelParams& p);
double estimate_energy(const std::array<Counts, 3>& counts, const ModelParams& p);

/// Exact outcome distributions of the three plans under `noise`.
std::array<RealVector, 3> measurement_distributions(const std::array<MeasurementPlan, 3>& plans,
                                                    const NoiseModel& noise);

/// `shots` draws per plan, plan k from substream k of `seed`.
std::array<Counts, 3> sample_measurements(const std::array<RealVector, 3>& distributions,
                                          std::uint64_t shots, std::uint64_t seed);
std::array<Counts, 3> sample_measurements(const std::array<MeasurementPlan, 3>& plans,
                                          std::uint64_t shots, const NoiseModel& noise,
                                          std::uint64_t seed,
                                          NoiseBackend backend = NoiseBackend::kDensity);

/// Rows `variant,bitstring,count` for the non-zero entries of each variant.
void write_measurement_counts_csv(std::ostream& out, const std::array<Counts, 3>& counts);

}  // namespace fhqetu
