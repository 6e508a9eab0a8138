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

#include "fhqetu/fermi_hubbard.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhqetu {

std::string to_string(const SpinOrbital& o) {
  return std::to_string(o.site) + (o.spin == Spin::kUp ? "u" : "d");
}

int mode_index(const SpinOrbital& o) {
  for (std::size_t k = 0; k < kCanonicalOrder.size(); ++k)
    if (kCanonicalOrder[k] == o) return static_cast<int>(k);
  throw std::out_of_range("no spin orbital " + to_string(o));
}

namespace {

constexpr Spin kSpins[2] = {Spin::kUp, Spin::kDown};

PauliString zz_string(int a, int b) {
  PauliString s(kNumModes);
  s.set(static_cast<std::size_t>(a), Pauli::Z);
  s.set(static_cast<std::size_t>(b), Pauli::Z);
  return s;
}

// letter on both endpoints plus Z on every listed mode
PauliString hop_string(int a, int b, Pauli letter, std::initializer_list<int> zs) {
  PauliString s(kNumModes);
  s.set(static_cast<std::size_t>(a), letter);
  s.set(static_cast<std::size_t>(b), letter);
  for (int z : zs) s.set(static_cast<std::size_t>(z), Pauli::Z);
  return s;
}

void add_hop(PauliSum& h, double coefficient, int a, int b,
             std::initializer_list<int> zs) {
  h.add(coefficient, hop_string(a, b, Pauli::X, zs));
  h.add(coefficient, hop_string(a, b, Pauli::Y, zs));
}

PauliSum onsite_terms(const ModelParams& p) {
  PauliSum h(kNumModes);
  for (int site = 1; site <= 4; ++site)
    h.add(p.u / 4.0, zz_string(mode_index(site, Spin::kUp),
                               mode_index(site, Spin::kDown)));
  return h;
}

}  // namespace

PauliSum build_jw_hamiltonian(const ModelParams& p) {
  PauliSum h = onsite_terms(p);
  for (auto [i, j] : kBonds) {
    for (Spin spin : kSpins) {
      int a = mode_index(i, spin);
      int b = mode_index(j, spin);
      if (a > b) std::swap(a, b);
      for (Pauli letter : {Pauli::X, Pauli::Y}) {
        PauliString s(kNumModes);
        s.set(static_cast<std::size_t>(a), letter);
        s.set(static_cast<std::size_t>(b), letter);
        for (int k = a + 1; k < b; ++k) s.set(static_cast<std::size_t>(k), Pauli::Z);
        h.add(-p.t / 2.0, s);
      }
    }
  }
  return h;
}

HamiltonianSplit split_hamiltonian(const ModelParams& p) {
  const auto m = [](int site, Spin spin) { return mode_index(site, spin); };
  constexpr Spin U = Spin::kUp;
  constexpr Spin D = Spin::kDown;
  const double w = -p.t / 2.0;

  HamiltonianSplit split;
  split.onsite = onsite_terms(p);

  add_hop(split.near_hopping, w, m(1, U), m(3, U), {});
  add_hop(split.near_hopping, w, m(2, U), m(4, U), {});
  add_hop(split.near_hopping, w, m(1, D), m(2, D), {});
  add_hop(split.near_hopping, w, m(3, D), m(4, D), {});

  add_hop(split.far_hopping, w, m(1, U), m(2, U), {m(1, D), m(2, D)});
  add_hop(split.far_hopping, w, m(3, U), m(4, U), {m(3, D), m(4, D)});
  add_hop(split.far_hopping, w, m(1, D), m(3, D), {m(1, U), m(3, U)});
  add_hop(split.far_hopping, w, m(2, D), m(4, D), {m(2, U), m(4, U)});
  return split;
}

PauliSum build_network_hamiltonian(const ModelParams& p) {
  return split_hamiltonian(p).total();
}

namespace {

PauliString control_string(Pauli letter) {
  PauliString k(kNumModes);
  for (auto [site, spin] : {std::pair{2, Spin::kUp}, std::pair{3, Spin::kUp},
                            std::pair{1, Spin::kDown}, std::pair{4, Spin::kDown}})
    k.set(static_cast<std::size_t>(mode_index(site, spin)), letter);
  return k;
}

}  // namespace

PauliString onsite_control_string() { return control_string(Pauli::X); }
PauliString hopping_control_string() { return control_string(Pauli::Z); }

PauliSum number_operator(Spin spin) {
  PauliSum n(kNumModes);
  for (int site = 1; site <= 4; ++site) {
    n.add(0.5, PauliString(kNumModes));
    n.add(-0.5, PauliString::single(kNumModes,
                                    static_cast<std::size_t>(mode_index(site, spin)),
                                    Pauli::Z));
  }
  return n;
}

ShiftCoefficients shift_coefficients(double lambda_min, double lambda_max,
                                     double eta) {
  if (!(eta > 0.0 && eta < std::numbers::pi / 2))
    throw std::domain_error("eta must lie in (0, pi/2)");
  if (!(lambda_max > lambda_min))
    throw std::domain_error("degenerate spectrum: lambda_max <= lambda_min");
  ShiftCoefficients s;
  s.eta = eta;
  s.c1 = (std::numbers::pi - 2.0 * eta) / (lambda_max - lambda_min);
  s.c2 = eta - s.c1 * lambda_min;
  return s;
}

}  // namespace fhqetu
