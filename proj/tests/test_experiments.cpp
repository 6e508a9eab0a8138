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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fhqetu/csv.hpp"
#include "fhqetu/experiments.hpp"
#include "fhqetu/oracle.hpp"

using namespace fhqetu;

namespace {

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) out.push_back(split_csv_line(line));
  return out;
}

double quantity(const std::string& csv, const std::string& name) {
  for (const auto& r : rows(csv))
    if (r[0] == name) return std::stod(r[1]);
  FAIL("missing quantity " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  auto rejects = [](auto mutate) {
    ExperimentConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  };
  rejects([](ExperimentConfig& c) { c.degrees = {}; });
  rejects([](ExperimentConfig& c) { c.degrees = {7}; });
  rejects([](ExperimentConfig& c) { c.degrees = {0}; });
  rejects([](ExperimentConfig& c) { c.steps = {0}; });
  rejects([](ExperimentConfig& c) { c.noise = {}; });
  rejects([](ExperimentConfig& c) { c.noise = {-1e-3}; });
  rejects([](ExperimentConfig& c) { c.noise = {0.5}; });
  rejects([](ExperimentConfig& c) { c.shots = 0; });
  rejects([](ExperimentConfig& c) { c.c = 1.0; });
}

TEST_CASE("spectrum command") {
  ExperimentConfig cfg;
  std::ostringstream out;
  cmd_spectrum(cfg, out);
  const std::string csv = out.str();
  CHECK(csv.rfind("quantity,value\nlambda0,", 0) == 0);
  CHECK(rows(csv).size() == 8);
  CHECK(quantity(csv, "gamma") >= 0.09102);
  const double l0 = quantity(csv, "lambda0");
  const double l1 = quantity(csv, "lambda1");
  CHECK(quantity(csv, "delta") == doctest::Approx(l1 - l0));
  CHECK(quantity(csv, "mu") == doctest::Approx((l0 + l1) / 2));

  const Spectrum sp = exact_spectrum(to_matrix(build_network_hamiltonian({1.0, 1.0})));
  const double lmax = sp.eigenvalues(sp.eigenvalues.size() - 1);
  const double c1 = (std::numbers::pi - 2 * 0.1) / (lmax - l0);
  CHECK(quantity(csv, "c1") == doctest::Approx(c1).epsilon(1e-12));
  CHECK(quantity(csv, "c2") == doctest::Approx(0.1 - c1 * l0).epsilon(1e-12));
}

TEST_CASE("spectrum gap without hopping is the diagonal gap") {
  ExperimentConfig cfg;
  cfg.u = 2.0;
  cfg.t = 0.0;
  std::ostringstream out;
  cmd_spectrum(cfg, out);
  const Matrix h = to_matrix(build_network_hamiltonian({2.0, 0.0}));
  std::vector<double> diag;
  for (Eigen::Index k = 0; k < h.rows(); ++k) diag.push_back(h(k, k).real());
  std::sort(diag.begin(), diag.end());
  const double gap = *std::upper_bound(diag.begin(), diag.end(), diag.front() + 1e-9) - diag.front();
  CHECK(quantity(out.str(), "delta") == doctest::Approx(gap).epsilon(1e-12));
}

TEST_CASE("trotter command rows are sorted and second order") {
  ExperimentConfig cfg;
  cfg.steps = {4, 1, 2};
  std::ostringstream out;
  cmd_trotter(cfg, out);
  const auto r = rows(out.str());
  REQUIRE(r.size() == 4);
  CHECK(r[0] == std::vector<std::string>{"n_steps", "l2_error", "depth_excl_rz"});
  CHECK(r[1][0] == "1");
  CHECK(r[3][0] == "4");
  CHECK(r[1][2] == "31");
  const double e1 = std::stod(r[1][1]);
  const double e4 = std::stod(r[3][1]);
  CHECK(std::log(e1 / e4) / std::log(4.0) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("overlap command flags low degrees without failing") {
  ExperimentConfig cfg;
  cfg.degrees = {30, 2};
  std::ostringstream out;
  std::ostringstream log;
  const ExperimentReport report = cmd_overlap(cfg, out, log);
  CHECK(report.convergence_failures == 0);
  CHECK(log.str().find("degree 2") != std::string::npos);
  const auto r = rows(out.str());
  REQUIRE(r.size() == 3);
  CHECK(r[1][0] == "2");
  CHECK(std::stod(r[1][1]) < 0.3);
  CHECK(std::stod(r[2][1]) >= 0.95);
  CHECK(std::stod(r[2][2]) > 0.0);
}

TEST_CASE("energy command grid") {
  ExperimentConfig cfg;
  cfg.degrees = {10};
  cfg.noise = {1e-3, 0.0};
  cfg.shots = 5000;
  std::ostringstream out;
  std::ostringstream log;
  cmd_energy(cfg, out, log);
  const auto r = rows(out.str());
  REQUIRE(r.size() == 5);
  CHECK(r[0].size() == 6);
  CHECK(r[1][1] == "0");
  CHECK(r[1][3] == "0");
  CHECK(r[2][3] == "1");
  CHECK(r[3][1] == "0.001");
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i][2] == "5000");
  CHECK(r[1][4] == r[2][4]);

  cfg.postselect = PostSelectRows::kOn;
  std::ostringstream on;
  cmd_energy(cfg, on, log);
  const auto ron = rows(on.str());
  REQUIRE(ron.size() == 3);
  CHECK(ron[1][3] == "1");
  CHECK(ron[1] == r[2]);
  CHECK(ron[2] == r[4]);
}

TEST_CASE("identical config and seed give identical bytes") {
  ExperimentConfig cfg;
  cfg.degrees = {8};
  cfg.noise = {0.0, 1e-3};
  cfg.shots = 1000;
  cfg.seed = 5;
  auto energy = [](const ExperimentConfig& c) {
    std::ostringstream out;
    std::ostringstream log;
    cmd_energy(c, out, log);
    return out.str();
  };
  const std::string a = energy(cfg);
  CHECK(a == energy(cfg));
  cfg.backend = NoiseBackend::kTrajectory;
  cfg.shots = 100;
  CHECK(energy(cfg) == energy(cfg));
}

TEST_CASE("gnuplot companions") {
  for (const char* cmd : {"spectrum", "trotter", "overlap", "energy"}) {
    std::ostringstream out;
    write_gnuplot_script(out, cmd);
    CHECK(out.str().find(std::string(cmd) + ".csv") != std::string::npos);
  }
  std::ostringstream out;
  CHECK_THROWS_AS(write_gnuplot_script(out, "plot"), std::invalid_argument);
}
