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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "fhqetu/measurement.hpp"
#include "fhqetu/oracle.hpp"
#include "fhqetu/qetu.hpp"

using namespace fhqetu;

namespace {

const ModelParams kParams{1.0, 1.0};

// Dense gate whose first column is psi, so it prepares psi from |0...0>.
Circuit preparing(const Vector& psi) {
  Matrix m = Matrix::Identity(psi.size(), psi.size());
  m.col(0) = psi;
  const Matrix q = Eigen::HouseholderQR<Matrix>(m).householderQ();
  std::vector<int> all(GridLayout::kNumCells);
  std::iota(all.begin(), all.end(), 0);
  Circuit c(GridLayout::kNumCells);
  c.add(gates::unitary(all, q));
  return c;
}

struct Ground {
  Spectrum spectrum = exact_spectrum(to_matrix(build_network_hamiltonian(kParams)));
  Circuit base = preparing(embed_system_state(spectrum.ground_state(), 0));
};

const Ground& ground() {
  static const Ground g;
  return g;
}

int bit(std::uint64_t index, int cell) { return static_cast<int>((index >> (8 - cell)) & 1); }

double pair_imbalance(const RealVector& p, const std::array<std::pair<int, int>, 4>& pairs) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (auto [a, b] : pairs)
      s += (bit(static_cast<std::uint64_t>(i), b) - bit(static_cast<std::uint64_t>(i), a)) * p(i);
  return s;
}

double hopping_expectation(const Vector& psi, const PauliSum& part) {
  return psi.dot(to_matrix(part) * psi).real();
}

}  // namespace

TEST_CASE("measurement circuits") {
  const Ground& g = ground();
  const auto plans = build_measurement_circuits(g.base);
  CHECK(to_string(plans[0].variant) == "onsite");
  CHECK(to_string(plans[1].variant) == "hopping_h2");
  CHECK(to_string(plans[2].variant) == "hopping_h3");
  CHECK(plans[0].circuit.ops().size() == g.base.ops().size());
  for (const auto& plan : plans) {
    CHECK(plan.circuit.num_qubits() == 9);
    for (std::size_t i = g.base.ops().size(); i < plan.circuit.ops().size(); ++i)
      CHECK(is_native(plan.circuit.ops()[i].kind));
  }
  CHECK(plans[2].circuit.ops().size() > plans[1].circuit.ops().size());
}

TEST_CASE("basis changes read the hopping terms exactly") {
  const Vector psi = Vector::Random(256).normalized();
  const auto plans = build_measurement_circuits(preparing(embed_system_state(psi, 0)));
  const auto dist = measurement_distributions(plans, NoiseModel{});
  const HamiltonianSplit split = split_hamiltonian({1.0, 1.0});
  CHECK(-pair_imbalance(dist[1], plans[1].pairs) ==
        doctest::Approx(hopping_expectation(psi, split.near_hopping)).epsilon(1e-10));
  CHECK(-pair_imbalance(dist[2], plans[2].pairs) ==
        doctest::Approx(hopping_expectation(psi, split.far_hopping)).epsilon(1e-10));
}

TEST_CASE("hopping pairs on the ground state within shot noise") {
  const Ground& g = ground();
  const auto plans = build_measurement_circuits(g.base);
  const auto counts = sample_measurements(plans, 1000000, NoiseModel{}, 7);
  const HamiltonianSplit split = split_hamiltonian(kParams);
  const EnergyTerms e = estimate_energy_terms(counts, kParams);
  const Vector psi = g.spectrum.ground_state();
  // each term is bounded by 4 in magnitude, so 5 sigma <= 5 * 4 / sqrt(shots)
  CHECK(std::abs(e.near_hopping - hopping_expectation(psi, split.near_hopping)) <= 0.02);
  CHECK(std::abs(e.far_hopping - hopping_expectation(psi, split.far_hopping)) <= 0.02);
  CHECK(std::abs(e.onsite - hopping_expectation(psi, split.onsite)) <= 0.02);
}

TEST_CASE("ground state sector") {
  CHECK(ground_state_sector(kParams) == std::pair{2, 2});
}

TEST_CASE("post-selection") {
  Counts c(9);
  const ModeMapping m = measurement_mapping(MeasurementVariant::kOnsite);
  std::uint64_t good = 0;
  for (auto o : {SpinOrbital{1, Spin::kUp}, SpinOrbital{4, Spin::kUp},
                 SpinOrbital{1, Spin::kDown}, SpinOrbital{2, Spin::kDown}})
    good |= std::uint64_t{1} << (8 - m.cell_of(o));
  const std::uint64_t flipped = good ^ (std::uint64_t{1} << (8 - m.cell_of({2, Spin::kUp})));
  const std::uint64_t ancilla = good | (std::uint64_t{1} << (8 - m.ancilla_cell()));
  const std::uint64_t down_flip = good ^ (std::uint64_t{1} << (8 - m.cell_of({3, Spin::kDown})));
  c.histogram[good] = 90;
  c.histogram[flipped] = 4;
  c.histogram[ancilla] = 5;
  c.histogram[down_flip] = 1;

  const PostSelected up = post_select(c, {0, 2, std::nullopt}, MeasurementVariant::kOnsite);
  CHECK(up.counts[good] == 90);
  CHECK(up.counts[flipped] == 0);
  CHECK(up.counts[ancilla] == 0);
  CHECK(up.counts[down_flip] == 1);
  CHECK(up.retention == doctest::Approx(0.91));

  const PostSelected both = post_select(c, {0, 2, 2}, MeasurementVariant::kOnsite);
  CHECK(both.counts.total() == 90);
  const PostSelected herald = post_select(c, {}, MeasurementVariant::kOnsite);
  CHECK(herald.counts.total() == 95);
  CHECK_THROWS_AS(post_select(c, {0, 4, std::nullopt}, MeasurementVariant::kOnsite),
                  EmptySampleError);
}

TEST_CASE("noiseless retention of a QETU state equals the success probability") {
  QetuOptions options;
  options.cosine_scaling = 0.5;
  options.allow_infeasible = true;
  const QetuProgram program = compile_qetu(kParams, 10, options);
  const double success = run_qetu(program).success_probability;
  const auto plans = build_measurement_circuits(program.circuit);
  const auto dist = measurement_distributions(plans, NoiseModel{});
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const ModeMapping m = measurement_mapping(plans[k].variant);
    double kept = 0.0;
    for (Eigen::Index i = 0; i < dist[k].size(); ++i) {
      const auto idx = static_cast<std::uint64_t>(i);
      if (bit(idx, m.ancilla_cell()) != 0) continue;
      int up = 0;
      for (int cell = 0; cell < 9; ++cell)
        if (m.cell[static_cast<std::size_t>(cell)] &&
            m.cell[static_cast<std::size_t>(cell)]->spin == Spin::kUp)
          up += bit(idx, cell);
      if (up == 2) kept += dist[k](i);
    }
    CHECK(kept == doctest::Approx(success).epsilon(1e-10));
  }
}

TEST_CASE("number state energy") {
  Circuit base(9);
  const ModeMapping m = measurement_mapping(MeasurementVariant::kOnsite);
  for (auto o : {SpinOrbital{1, Spin::kUp}, SpinOrbital{4, Spin::kUp},
                 SpinOrbital{1, Spin::kDown}, SpinOrbital{4, Spin::kDown}})
    base.add(gates::x(m.cell_of(o)));
  const auto counts = sample_measurements(build_measurement_circuits(base), 1000000,
                                          NoiseModel{}, 3);
  const EnergyTerms e = estimate_energy_terms(counts, {2.0, 1.0});
  // sites 1 and 4 doubly occupied, 2 and 3 empty: every Z Z is +1
  CHECK(e.onsite == doctest::Approx(2.0));
  CHECK(std::abs(e.near_hopping) <= 0.02);
  CHECK(std::abs(e.far_hopping) <= 0.02);
}

TEST_CASE("energy estimator is unbiased") {
  const Ground& g = ground();
  const auto dist = measurement_distributions(build_measurement_circuits(g.base), NoiseModel{});
  double mean = 0.0;
  double sq = 0.0;
  const int runs = 100;
  for (int seed = 0; seed < runs; ++seed) {
    const double e = estimate_energy(sample_measurements(dist, 100000, seed), kParams);
    mean += e;
    sq += e * e;
  }
  mean /= runs;
  const double sd = std::sqrt(sq / runs - mean * mean);
  CHECK(std::abs(mean - g.spectrum.ground_energy()) <= 3 * sd / std::sqrt(runs));

  const auto spread = [&](std::uint64_t shots) {
    double m1 = 0.0;
    double m2 = 0.0;
    for (int seed = 0; seed < 40; ++seed) {
      const double e = estimate_energy(sample_measurements(dist, shots, 1000 + seed), kParams);
      m1 += e;
      m2 += e * e;
    }
    m1 /= 40;
    return std::sqrt(m2 / 40 - m1 * m1);
  };
  const double ratio = spread(10000) / spread(10000000);
  CHECK(ratio > std::sqrt(1000.0) / 1.5);
  CHECK(ratio < std::sqrt(1000.0) * 1.5);
}

TEST_CASE("empty histograms are rejected") {
  std::array<Counts, 3> counts = {Counts(9), Counts(9), Counts(9)};
  CHECK_THROWS_AS(estimate_energy(counts, kParams), EmptySampleError);
  CHECK_THROWS_AS(estimate_energy({Counts(4), Counts(4), Counts(4)}, kParams),
                  std::invalid_argument);
}

TEST_CASE("seeded sampling is reproducible") {
  const auto plans = build_measurement_circuits(ground().base);
  const auto a = sample_measurements(plans, 5000, NoiseModel::from_p2q(1e-3), 12);
  const auto b = sample_measurements(plans, 5000, NoiseModel::from_p2q(1e-3), 12);
  for (std::size_t k = 0; k < 3; ++k) CHECK(a[k].histogram == b[k].histogram);
  const auto c = sample_measurements(plans, 5000, NoiseModel::from_p2q(1e-3), 13);
  CHECK(a[0].histogram != c[0].histogram);
}

TEST_CASE("counts CSV") {
  std::array<Counts, 3> counts = {Counts(9), Counts(9), Counts(9)};
  counts[0].histogram[3] = 2;
  counts[2].histogram[256] = 7;
  std::ostringstream out;
  write_measurement_counts_csv(out, counts);
  CHECK(out.str() ==
        "variant,bitstring,count\nonsite,000000011,2\nhopping_h3,100000000,7\n");
}
