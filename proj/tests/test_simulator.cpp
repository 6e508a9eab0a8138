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
#include <sstream>

#include "fhqetu/oracle.hpp"
#include "fhqetu/simulator.hpp"
#include "fhqetu/swap_network.hpp"

using namespace fhqetu;

namespace {

double z_expectation(const DensityMatrix& rho, int qubit) {
  PauliString z = PauliString::single(rho.num_qubits, static_cast<std::size_t>(qubit), Pauli::Z);
  return (to_matrix(z) * rho.entries).trace().real();
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  return (psi.amplitudes.adjoint() * rho.entries * psi.amplitudes)(0, 0).real();
}

Circuit small_circuit() {
  Circuit c(3);
  c.add(gates::sqrt_y(0));
  c.add(gates::iswap(0, 1, 1.1, 0.2));
  c.add(gates::rz(1, 0.7));
  c.add(gates::sqrt_x(2));
  c.add(gates::cphase(1, 2, 0.9));
  c.add(gates::y(0));
  return c;
}

}  // namespace

TEST_CASE("statevector basics") {
  const StateVector zero = StateVector::zero(3);
  CHECK(apply_circuit(zero, Circuit(3)).amplitudes == zero.amplitudes);
  Circuit flip(3);
  flip.add(gates::x(0));
  const StateVector out = apply_circuit(zero, flip);
  CHECK(std::abs(out.amplitudes(4) - 1.0) < 1e-15);
  CHECK(apply_circuit(zero, small_circuit()).amplitudes.norm() ==
        doctest::Approx(1.0).epsilon(1e-12));

  Circuit abstract(3);
  abstract.add(gates::fswap(0, 1));
  CHECK_THROWS_AS(apply_circuit(zero, abstract), std::invalid_argument);
  CHECK_THROWS_AS(apply_circuit(StateVector::zero(2), flip), std::invalid_argument);
}

TEST_CASE("noiseless density matches statevector") {
  const Circuit c = small_circuit();
  const StateVector psi = apply_circuit(StateVector::zero(3), c);
  const DensityMatrix rho = run_density(c, NoiseModel{});
  CHECK(max_abs(rho.entries - psi.amplitudes * psi.amplitudes.adjoint()) <= 1e-10);
  for (int q = 0; q < 3; ++q) {
    PauliSum z(3);
    z.add(1.0, PauliString::single(3, static_cast<std::size_t>(q), Pauli::Z));
    CHECK(z_expectation(rho, q) == doctest::Approx(expectation(psi, z)).epsilon(1e-10));
  }
}

TEST_CASE("depolarizing channel") {
  Circuit c(1);
  c.add(gates::sqrt_x(0));
  NoiseModel full;
  full.p1q = 1.0;
  const DensityMatrix mixed = run_density(c, full);
  CHECK(max_abs(mixed.entries - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  // <Z> contracts by exactly (1 - p)
  DensityMatrix rho = DensityMatrix::zero(2);
  Circuit tilt(2);
  tilt.add(gates::sqrt_y(0));
  tilt.add(gates::rz(0, 0.3));
  tilt.add(gates::iswap(0, 1, 0.4, 0.0));
  apply_circuit(rho, tilt, NoiseModel{});
  const double before = z_expectation(rho, 1);
  depolarize(rho, {1}, 0.3);
  CHECK(z_expectation(rho, 1) == doctest::Approx(0.7 * before).epsilon(1e-12));

  DensityMatrix two = DensityMatrix::zero(3);
  apply_circuit(two, small_circuit(), NoiseModel{});
  const double z0 = z_expectation(two, 0);
  depolarize(two, {0, 2}, 0.2);
  CHECK(z_expectation(two, 0) == doctest::Approx(0.8 * z0).epsilon(1e-12));
  CHECK(two.entries.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(two.entries - two.entries.adjoint()) < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(two.entries);
  CHECK(es.eigenvalues().minCoeff() >= -1e-9);
}

TEST_CASE("noise reduces fidelity monotonically") {
  TrotterPlan plan;
  plan.shift = ShiftCoefficients{};
  const Circuit step = lower(build_trotter_step(plan));
  Circuit c = lower(prepare_initial_state_circuit());
  c.append(step);
  const StateVector ideal = apply_circuit(StateVector::zero(9), c);
  const double f4 = fidelity(run_density(c, NoiseModel::from_p2q(1e-4)), ideal);
  const double f3 = fidelity(run_density(c, NoiseModel::from_p2q(1e-3)), ideal);
  CHECK(f3 < f4);
  CHECK(f4 < 1.0);
}

TEST_CASE("noise model ratios and validation") {
  const NoiseModel m = NoiseModel::from_p2q(1e-3);
  CHECK(m.p1q == doctest::Approx(1e-4));
  CHECK(m.pmeas == doctest::Approx(1e-2));
  CHECK(m.gate_error(gates::rz(0, 1.0)) == 0.0);
  CHECK(m.gate_error(gates::sqrt_x(0)) == doctest::Approx(1e-4));
  CHECK(m.gate_error(gates::cphase(0, 1, 1.0)) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(NoiseModel::from_p2q(0.2), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::from_p2q(-1e-3), std::invalid_argument);
}

TEST_CASE("sampling") {
  const Counts zeros = sample(Circuit(4), 1000, NoiseModel{}, 1);
  CHECK(zeros[0] == 1000);
  CHECK(zeros.total() == 1000);

  Circuit plus(1);
  plus.add(gates::sqrt_y(0));
  const Counts c = sample(plus, 1000000, NoiseModel{}, 42);
  const double f = static_cast<double>(c[1]) / 1e6;
  CHECK(std::abs(f - 0.5) <= 3 * 0.0005);

  CHECK(sample(small_circuit(), 5000, NoiseModel::from_p2q(1e-2), 9).histogram ==
        sample(small_circuit(), 5000, NoiseModel::from_p2q(1e-2), 9).histogram);
  CHECK(sample(small_circuit(), 5000, NoiseModel::from_p2q(1e-2), 9, NoiseBackend::kTrajectory)
            .histogram == sample(small_circuit(), 5000, NoiseModel::from_p2q(1e-2), 9,
                                 NoiseBackend::kTrajectory)
                              .histogram);
  CHECK_THROWS_AS(sample(plus, 0, NoiseModel{}, 1), std::invalid_argument);
}

TEST_CASE("readout flips") {
  RealVector p = RealVector::Zero(4);
  p(0) = 1.0;
  const RealVector q = apply_readout_error(p, 2, 0.1);
  CHECK(q(0) == doctest::Approx(0.81));
  CHECK(q(1) == doctest::Approx(0.09));
  CHECK(q(3) == doctest::Approx(0.01));
  CHECK(q.sum() == doctest::Approx(1.0));
}

TEST_CASE("trajectory and density backends agree") {
  TrotterPlan plan;
  plan.shift = ShiftCoefficients{};
  const Circuit step = build_trotter_step(plan);
  Circuit c(9);
  c.add(gates::x(0));
  c.add(gates::x(8));
  c.append(lower(step));
  c.append(lower(inverse(step)));
  const NoiseModel noise = NoiseModel::from_p2q(1e-4);
  const std::uint64_t shots = 1000000;
  const Counts a = sample(c, shots, noise, 3, NoiseBackend::kDensity);
  const Counts b = sample(c, shots, noise, 4, NoiseBackend::kTrajectory);
  double tv = 0.0;
  for (std::size_t i = 0; i < a.histogram.size(); ++i)
    tv += std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
  tv /= 2.0 * static_cast<double>(shots);
  CHECK(tv <= 5e-3);
}

TEST_CASE("expectation values") {
  PauliSum z(1);
  z.add(1.0, "Z");
  CHECK(expectation(StateVector::zero(1), z) == doctest::Approx(1.0));
  PauliSum bad(1);
  bad.add(1.0, "iZ");
  CHECK_THROWS_AS(expectation(StateVector::zero(1), bad), std::invalid_argument);

  const PauliSum h = build_network_hamiltonian({1.0, 1.0});
  const Spectrum s = exact_spectrum(to_matrix(h));
  CHECK(expectation(StateVector::from(s.eigenvectors.col(0)), h) ==
        doctest::Approx(s.eigenvalues(0)).epsilon(1e-10));
  CHECK(expectation(StateVector::from(s.eigenvectors.col(1)), h) ==
        doctest::Approx(s.eigenvalues(1)).epsilon(1e-10));
}

TEST_CASE("counts CSV") {
  Counts c(2);
  c.histogram[1] = 3;
  c.histogram[2] = 5;
  std::ostringstream out;
  write_counts_csv(out, c);
  CHECK(out.str() == "bitstring,count\n01,3\n10,5\n");
}
