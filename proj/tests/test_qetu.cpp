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
#include <numbers>
#include <random>
#include <sstream>

#include "fhqetu/oracle.hpp"
#include "fhqetu/qetu.hpp"
#include "fhqetu/simulator.hpp"

using namespace fhqetu;

namespace {

constexpr double kPi = std::numbers::pi;

struct Hubbard {
  Spectrum spectrum;
  ShiftCoefficients shift;
  StepFunctionSpec spec;

  Hubbard() : spectrum(exact_spectrum(to_matrix(build_network_hamiltonian({1.0, 1.0})))) {
    shift = shift_coefficients(spectrum.eigenvalues(0),
                               spectrum.eigenvalues(spectrum.eigenvalues.size() - 1));
    spec = build_step_spec(shift.apply(spectrum.ground_energy()),
                           shift.apply(spectrum.first_excited_energy()));
  }
  Matrix shifted() const {
    return shift.c1 * to_matrix(build_network_hamiltonian({1.0, 1.0})) +
           shift.c2 * Matrix::Identity(256, 256);
  }
};

const Hubbard& hubbard() {
  static const Hubbard h;
  return h;
}

// ancilla is qubit 0, the system the remaining qubits
Gate exact_controlled_evolution(const Matrix& h, double s) {
  const auto dim = h.rows();
  Matrix v = Matrix::Zero(2 * dim, 2 * dim);
  v.topLeftCorner(dim, dim) = dense_expm(h, -s);
  v.bottomRightCorner(dim, dim) = dense_expm(h, s);
  std::vector<int> qubits;
  for (int q = 0; (Eigen::Index{1} << q) < 2 * dim; ++q) qubits.push_back(q);
  return gates::unitary(qubits, v);
}

Matrix random_hamiltonian(std::mt19937_64& rng, int dim, double eta) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  const Matrix h = a + a.adjoint();
  const auto ev = exact_spectrum(h).eigenvalues;
  const double lo = ev(0);
  const double hi = ev(dim - 1);
  const double scale = (kPi - 2 * eta) / (hi - lo);
  return scale * h + (eta - scale * lo) * Matrix::Identity(dim, dim);
}

}  // namespace

TEST_CASE("step function spec") {
  const StepFunctionSpec s = build_step_spec(1.1, 1.9);
  CHECK(s.mu == doctest::Approx(1.5));
  CHECK(s.delta == doctest::Approx(0.8));
  CHECK(s.sigma_min < s.sigma_minus);
  CHECK(s.sigma_minus < s.sigma_plus);
  CHECK(s.sigma_plus < s.sigma_max);
  CHECK(s.sigma_plus == doctest::Approx(std::cos(0.55)));

  const StepFunctionSpec narrow = build_step_spec(1.1, 1.5);
  CHECK(narrow.sigma_plus - narrow.sigma_minus < s.sigma_plus - s.sigma_minus);

  CHECK_THROWS_AS(build_step_spec(0.05, 1.0), std::domain_error);
  CHECK_THROWS_AS(build_step_spec(1.0, 3.1), std::domain_error);
  CHECK_THROWS_AS(build_step_spec(1.5, 1.1), std::domain_error);
  CHECK_THROWS_AS(build_step_spec(1.1, 1.9, 0.1, 1.0), std::domain_error);

  const Hubbard& h = hubbard();
  for (Eigen::Index k = 0; k < 256; ++k) {
    const double x = std::cos(h.spec.s * h.shift.apply(h.spectrum.eigenvalues(k)));
    if (h.spectrum.eigenvalues(k) > h.spectrum.ground_energy() + 1e-9)
      CHECK(x <= h.spec.sigma_minus + 1e-12);
    else
      CHECK(x >= h.spec.sigma_plus - 1e-12);
  }
}

TEST_CASE("chebyshev evaluation") {
  const std::vector<double> t3 = {0.0, 0.0, 0.0, 1.0};
  for (double x : {-0.9, -0.2, 0.4, 1.0})
    CHECK(chebyshev_eval(t3, x) == doctest::Approx(4 * x * x * x - 3 * x));
  CHECK(chebyshev_eval({2.5}, 0.3) == 2.5);
}

TEST_CASE("target polynomial fit") {
  const StepFunctionSpec& spec = hubbard().spec;
  const TargetPolynomial f30 = fit_target_polynomial(spec, 30);
  const TargetPolynomial f50 = fit_target_polynomial(spec, 50);
  for (const TargetPolynomial* f : {&f30, &f50}) {
    for (std::size_t k = 1; k < f->coefficients.size(); k += 2) CHECK(f->coefficients[k] == 0.0);
    for (int j = 0; j <= 2000; ++j) CHECK(std::abs((*f)(-1.0 + j / 1000.0)) <= 1.0);
  }
  CHECK(f50.band_error() < f30.band_error());
  CHECK(f30(spec.sigma_max) == doctest::Approx(spec.c).epsilon(0.02));
  CHECK(std::abs(f30(0.5 * (spec.sigma_min + spec.sigma_minus))) <= 0.05);
  CHECK(f30.low_band_error <= 0.05);

  CHECK_THROWS_AS(fit_target_polynomial(spec, 2), ConvergenceError);
  const TargetPolynomial loose = fit_target_polynomial(spec, 2, true);
  CHECK_FALSE(loose.feasible());
  CHECK_THROWS_AS(fit_target_polynomial(spec, 7), std::invalid_argument);
  CHECK_THROWS_AS(fit_target_polynomial(spec, 0), std::invalid_argument);
}

TEST_CASE("qsp evaluation") {
  CHECK(qsp_eval({kPi / 3}, 0.7) == doctest::Approx(0.5));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  PhaseSequence phi(9);
  for (double& p : phi) p = angle(rng);
  CHECK(std::abs(qsp_eval(phi, 0.3)) <= 1.0);
  CHECK_THROWS_AS(qsp_eval(phi, 1.2), std::domain_error);
  CHECK_THROWS_AS(qsp_eval({}, 0.3), std::invalid_argument);

  PhaseSequence zero = {kPi / 4, kPi / 2, 0.0, kPi / 2, kPi / 4};
  for (double x : {0.0, 0.4, 0.9}) CHECK(std::abs(qsp_eval(zero, x)) < 1e-15);
}

TEST_CASE("qsp evaluation matches a one-qubit circuit") {
  const StepFunctionSpec spec = build_step_spec(1.1, 1.9);
  const PhaseSequence phi = solve_phases(fit_target_polynomial(spec, 16)).phases;
  for (int j = 0; j < 100; ++j) {
    const double x = -0.99 + 1.98 * j / 99.0;
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = std::acos(x) / spec.s;
    Circuit v(2);
    v.add(exact_controlled_evolution(h, spec.s));
    const Matrix u = circuit_unitary(build_qetu_circuit(phi, v, 0));
    CHECK(std::abs(u(0, 0) - qsp_eval(phi, x)) <= 1e-8);
  }
}

TEST_CASE("phase solving") {
  const PhaseSolution constant = solve_phases(TargetPolynomial{{std::cos(0.4)}});
  REQUIRE(constant.phases.size() == 1);
  CHECK(constant.phases[0] == doctest::Approx(0.4));

  const PhaseSolution t2 = solve_phases(TargetPolynomial{{0.0, 0.0, 1.0}});
  CHECK(t2.residual <= kPhaseTolerance);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int j = 0; j < 50; ++j) {
    const double x = unit(rng);
    CHECK(std::abs(qsp_eval(t2.phases, x) - (2 * x * x - 1)) <= 1e-8);
  }

  const TargetPolynomial f = fit_target_polynomial(build_step_spec(1.1, 1.9), 30);
  const PhaseSolution sol = solve_phases(f, 3);
  REQUIRE(sol.phases.size() == 31);
  for (std::size_t j = 0; j < sol.phases.size(); ++j)
    CHECK(sol.phases[j] == sol.phases[sol.phases.size() - 1 - j]);
  double worst = 0.0;
  for (int j = 0; j <= 4000; ++j) {
    const double x = -1.0 + j / 2000.0;
    worst = std::max(worst, std::abs(qsp_eval(sol.phases, x) - f(x)));
  }
  CHECK(worst <= 1e-6);

  CHECK_THROWS_AS(solve_phases(TargetPolynomial{{0.5, 0.0, 1.5}}), ConvergenceError);
  CHECK_THROWS_AS(solve_phases(TargetPolynomial{{0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("qetu circuit structure") {
  Circuit v(2);
  v.add(gates::cphase(0, 1, 0.3));
  const Circuit single = build_qetu_circuit({0.2}, v, 0);
  REQUIRE(single.ops().size() == 1);
  CHECK(single.ops()[0].kind == GateKind::kXRotation);

  const Circuit c = build_qetu_circuit(PhaseSequence(7, 0.1), v, 0);
  int rotations = 0;
  int blocks = 0;
  for (const Gate& g : c.ops()) {
    rotations += g.kind == GateKind::kXRotation;
    blocks += g.kind == GateKind::kCPhase;
  }
  CHECK(rotations == 7);
  CHECK(blocks == 6);
  CHECK(c.ops()[1].params[0] == doctest::Approx(0.3));
  CHECK(c.ops()[3].params[0] == doctest::Approx(-0.3));
  CHECK_THROWS_AS(build_qetu_circuit(PhaseSequence(4, 0.1), v, 0), std::invalid_argument);
}

TEST_CASE("qetu with exact evolution applies the matrix function") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix h = random_hamiltonian(rng, 4, kDefaultEta);
    const Spectrum sp = exact_spectrum(h);
    const StepFunctionSpec spec = build_step_spec(sp.eigenvalues(0), sp.eigenvalues(1));
    const TargetPolynomial f = fit_target_polynomial(spec, 16, true);
    const PhaseSolution phi = solve_phases(f);
    Circuit v(3);
    v.add(exact_controlled_evolution(h, spec.s));
    const Matrix u = circuit_unitary(build_qetu_circuit(phi.phases, v, 0));
    CHECK(max_abs(u.topLeftCorner(4, 4) - matrix_function_oracle(h, f, spec.s)) <= 1e-6);
  }
}

TEST_CASE("matrix function oracle") {
  const Matrix h = Vector(Eigen::Vector3cd(0.3, 1.2, 2.5)).asDiagonal();
  CHECK(max_abs(matrix_function_oracle(h, TargetPolynomial{{1.0}}, 0.5) -
                Matrix::Identity(3, 3)) <= 1e-14);
  const TargetPolynomial t2{{0.0, 0.0, 1.0}};
  const Matrix m = matrix_function_oracle(h, t2, 0.5);
  for (int k = 0; k < 3; ++k) {
    const double x = std::cos(0.5 * h(k, k).real());
    CHECK(m(k, k).real() == doctest::Approx(2 * x * x - 1));
  }

  const Hubbard& hb = hubbard();
  const TargetPolynomial f = fit_target_polynomial(hb.spec, 30);
  const Vector psi = hb.spectrum.ground_state();
  const Matrix filtered = matrix_function_oracle(hb.shifted(), f, hb.spec.s);
  CHECK(spectral_norm(filtered - hb.spec.c * psi * psi.adjoint()) <= 1.05 * f.band_error());
}

TEST_CASE("cosine scaling calibration") {
  TrotterPlan plan;
  plan.shift = hubbard().shift;
  CHECK(calibrate_cosine_scaling(plan) == doctest::Approx(0.5).epsilon(1e-9));
  plan.dt = 0.3;
  CHECK(calibrate_cosine_scaling(plan) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("ground state preparation") {
  const Hubbard& hb = hubbard();
  const Vector psi0 = hb.spectrum.ground_state();
  QetuOptions options;
  options.cosine_scaling = 0.5;
  options.allow_infeasible = true;

  std::vector<double> trend;
  for (int d : {10, 20, 30, 40, 50}) {
    const PreparedState st = prepare_ground_state({1.0, 1.0}, d, options);
    CHECK(st.system.norm() == doctest::Approx(1.0));
    trend.push_back(std::norm(psi0.dot(st.system)));
  }
  for (std::size_t i = 1; i < trend.size(); ++i) CHECK(trend[i] >= trend[i - 1] - 0.05);
  CHECK(trend[2] >= 0.95);
  CHECK(trend[4] >= 0.985);

  const PreparedState low = prepare_ground_state({1.0, 1.0}, 2, options);
  CHECK(std::norm(psi0.dot(low.system)) < 0.3);

  const PreparedState direct = prepare_ground_state({1.0, 1.0}, 0.1, 0.999, 30, 1, 0);
  CHECK(std::norm(psi0.dot(direct.system)) == doctest::Approx(trend[2]).epsilon(1e-9));
}

TEST_CASE("success probability equals the filtered norm") {
  const Hubbard& hb = hubbard();
  QetuOptions options;
  options.cosine_scaling = 0.5;
  options.blocks = EvolutionBlocks::kExactEvolution;
  const QetuProgram program = compile_qetu({1.0, 1.0}, 30, options);
  const PreparedState st = run_qetu(program);

  const StateVector init =
      apply_circuit(StateVector::zero(9), lower(prepare_initial_state_circuit()));
  const Vector psi_init = system_component(init.amplitudes, 0);
  const Matrix filtered = matrix_function_oracle(hb.shifted(), program.target, 0.5);
  CHECK(st.success_probability ==
        doctest::Approx((filtered * psi_init).squaredNorm()).epsilon(1e-6));
  const Vector expected = (filtered * psi_init).normalized();
  CHECK(std::abs(expected.dot(st.system)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("indexed CSV") {
  const std::vector<double> values = {0.1, -2.5e-17, std::numbers::pi};
  std::ostringstream out;
  write_indexed_csv(out, values);
  CHECK(out.str().rfind("index,value\n0,0.10000000000000001\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(read_indexed_csv(in) == values);

  std::istringstream bad_header("i,v\n0,1\n");
  CHECK_THROWS_AS(read_indexed_csv(bad_header), std::invalid_argument);
  std::istringstream gap("index,value\n0,1\n2,3\n");
  CHECK_THROWS_AS(read_indexed_csv(gap), std::invalid_argument);
  std::istringstream junk("index,value\n0,1x\n");
  CHECK_THROWS_AS(read_indexed_csv(junk), std::invalid_argument);
}
