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
#include <string>
#include <utility>

#include "fhqetu/pauli.hpp"

namespace fhqetu {

/// Onsite repulsion u and hopping energy t of the 2x2 Hubbard plaquette.
struct ModelParams {
  double u = 1.0;
  double t = 1.0;
};

enum class Spin { kUp, kDown };

struct SpinOrbital {
  int site;  // 1..4; sites 1,2 form the top row, 3,4 the bottom row
  Spin spin;
  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
};

std::string to_string(const SpinOrbital& o);

inline constexpr std::size_t kNumModes = 8;

/// Canonical ordering: the loop 1u,1d,2d,2u,4u,4d,3d,3u. The position of an
/// orbital in this loop is its Jordan-Wigner qubit index.
inline constexpr std::array<SpinOrbital, kNumModes> kCanonicalOrder = {{
    {1, Spin::kUp}, {1, Spin::kDown}, {2, Spin::kDown}, {2, Spin::kUp},
    {4, Spin::kUp}, {4, Spin::kDown}, {3, Spin::kDown}, {3, Spin::kUp},
}};

int mode_index(const SpinOrbital& o);
inline int mode_index(int site, Spin spin) { return mode_index({site, spin}); }

/// Nearest-neighbour bonds of the open 2x2 lattice.
inline constexpr std::array<std::pair<int, int>, 4> kBonds = {
    {{1, 2}, {1, 3}, {2, 4}, {3, 4}}};

/// Jordan-Wigner image of the Hubbard Hamiltonian with the symmetrized onsite
/// term u (n_up - 1/2)(n_down - 1/2) -> (u/4) Z Z. Hopping terms carry the
/// full interior Z-string of the linear canonical ordering, so this operator
/// equals the Fock-space Hamiltonian exactly.
PauliSum build_jw_hamiltonian(const ModelParams& p);

/// Three commuting-group split realized by the swap-network circuit:
///   onsite       (u/4) sum_j Z_{j,up} Z_{j,down}
///   near_hopping vertical spin-up and horizontal spin-down bonds, two-qubit
///   far_hopping  horizontal spin-up and vertical spin-down bonds, carrying
///                the Z pairs that the onsite fSWAP layer produces.
///
/// Both hopping groups treat the canonical loop as closed: the 1-3 bond of
/// each spin is applied without the Jordan-Wigner string that wraps the
/// loop. In sectors with an odd fermion count this is identical to
/// build_jw_hamiltonian; with an even count the 1-3 bond changes sign.
struct HamiltonianSplit {
  PauliSum onsite{kNumModes};
  PauliSum near_hopping{kNumModes};
  PauliSum far_hopping{kNumModes};

  PauliSum total() const { return onsite + near_hopping + far_hopping; }
};

HamiltonianSplit split_hamiltonian(const ModelParams& p);

/// onsite + near_hopping + far_hopping: the generator of the compiled
/// time-evolution circuit and the Hamiltonian every experiment targets.
PauliSum build_network_hamiltonian(const ModelParams& p);

/// K1 = X on 2u,3u,1d,4d; anticommutes with every onsite term.
PauliString onsite_control_string();
/// K2 = Z on 2u,3u,1d,4d; anticommutes with every hopping term.
PauliString hopping_control_string();

/// Number operator sum_j (I - Z_j)/2 restricted to one spin species.
PauliSum number_operator(Spin spin);

/// Affine map lambda -> c1*lambda + c2 placing a spectrum in [eta, pi-eta].
struct ShiftCoefficients {
  double c1 = 1.0;
  double c2 = 0.0;
  double eta = 0.1;

  double apply(double lambda) const { return c1 * lambda + c2; }
};

inline constexpr double kDefaultEta = 0.1;

ShiftCoefficients shift_coefficients(double lambda_min, double lambda_max,
                                     double eta = kDefaultEta);

}  // namespace fhqetu
