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

#include "fhqetu/oracle.hpp"

#include <stdexcept>

namespace fhqetu {

namespace {

constexpr Eigen::Index kDim = Eigen::Index{1} << kNumModes;

bool occupied(Eigen::Index state, int mode) {
  return (state >> (kNumModes - 1 - static_cast<std::size_t>(mode))) & 1;
}

Matrix number_parity() {
  Matrix p = Matrix::Zero(kDim, kDim);
  for (Eigen::Index s = 0; s < kDim; ++s)
    p(s, s) = (__builtin_popcountll(static_cast<unsigned long long>(s)) & 1) ? -1.0 : 1.0;
  return p;
}

Matrix hop(int a, int b) {
  const Matrix ca = fock_annihilator(a);
  const Matrix cb = fock_annihilator(b);
  return ca.adjoint() * cb + cb.adjoint() * ca;
}

Matrix assemble(const ModelParams& p, bool twist_wrap) {
  Matrix h = Matrix::Zero(kDim, kDim);
  const Matrix id = Matrix::Identity(kDim, kDim);
  for (int site = 1; site <= 4; ++site) {
    const Matrix cu = fock_annihilator(mode_index(site, Spin::kUp));
    const Matrix cd = fock_annihilator(mode_index(site, Spin::kDown));
    h += p.u * (cu.adjoint() * cu - 0.5 * id) * (cd.adjoint() * cd - 0.5 * id);
  }
  const Matrix parity = number_parity();
  for (auto [i, j] : kBonds) {
    for (Spin spin : {Spin::kUp, Spin::kDown}) {
      Matrix term = hop(mode_index(i, spin), mode_index(j, spin));
      if (twist_wrap && i == 1 && j == 3) term = -parity * term;
      h += -p.t * term;
    }
  }
  return h;
}

}  // namespace

Matrix fock_annihilator(int mode) {
  if (mode < 0 || static_cast<std::size_t>(mode) >= kNumModes)
    throw std::out_of_range("mode index out of range");
  Matrix a = Matrix::Zero(kDim, kDim);
  const Eigen::Index bit = Eigen::Index{1} << (kNumModes - 1 - static_cast<std::size_t>(mode));
  for (Eigen::Index s = 0; s < kDim; ++s) {
    if (!occupied(s, mode)) continue;
    int before = 0;
    for (int k = 0; k < mode; ++k) before += occupied(s, k);
    a(s ^ bit, s) = (before % 2) ? -1.0 : 1.0;
  }
  return a;
}

Matrix fock_hamiltonian(const ModelParams& p) { return assemble(p, false); }

Matrix fock_network_hamiltonian(const ModelParams& p) { return assemble(p, true); }

double Spectrum::first_excited_energy(double tol) const {
  for (Eigen::Index k = 1; k < eigenvalues.size(); ++k)
    if (eigenvalues(k) > eigenvalues(0) + tol) return eigenvalues(k);
  throw std::domain_error("spectrum has a single distinct eigenvalue");
}

Spectrum exact_spectrum(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix is not square");
  if (max_abs(h - h.adjoint()) > 1e-10)
    throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  Spectrum s{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index k = 0; k < s.eigenvectors.cols(); ++k) {
    Eigen::Index arg = 0;
    s.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    const cplx z = s.eigenvectors(arg, k);
    s.eigenvectors.col(k) *= std::conj(z) / std::abs(z);
  }
  return s;
}

Matrix dense_expm(const Matrix& h, double tau) {
  if (max_abs(h - h.adjoint()) > 1e-10)
    throw std::invalid_argument("matrix is not Hermitian");
  return hermitian_function(h, [tau](double x) { return std::polar(1.0, -tau * x); });
}

}  // namespace fhqetu
