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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fhqetu/errors.hpp"
#include "fhqetu/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

fhqetu::ExperimentReport run(const std::string& command, const fhqetu::ExperimentConfig& cfg,
                             std::ostream& out) {
  if (command == "spectrum") return fhqetu::cmd_spectrum(cfg, out);
  if (command == "trotter") return fhqetu::cmd_trotter(cfg, out);
  if (command == "overlap") return fhqetu::cmd_overlap(cfg, out, std::cerr);
  return fhqetu::cmd_energy(cfg, out, std::cerr);
}

void write_outputs(const std::string& command, const fhqetu::ExperimentConfig& cfg,
                   const std::string& csv) {
  if (cfg.out_dir.empty()) {
    std::cout << csv;
    return;
  }
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / (command + ".csv"));
  f << csv;
  if (!f) throw std::runtime_error("cannot write " + (dir / (command + ".csv")).string());
  if (cfg.gnuplot) {
    std::ofstream g(dir / (command + ".gp"));
    fhqetu::write_gnuplot_script(g, command);
    if (!g) throw std::runtime_error("cannot write gnuplot script");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state preparation experiments for the 2x2 Fermi-Hubbard plaquette"};
  app.set_config("--config", "", "flat key=value experiment file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  fhqetu::ExperimentConfig cfg;
  app.add_option("--u", cfg.u, "onsite repulsion")->capture_default_str();
  app.add_option("--t", cfg.t, "hopping energy")->capture_default_str();
  app.add_option("--eta", cfg.eta, "spectral margin of the shift")->capture_default_str();
  app.add_option("--c", cfg.c, "filter plateau height")->capture_default_str();
  app.add_option("--degrees", cfg.degrees, "even polynomial degrees")->delimiter(',');
  app.add_option("--steps", cfg.steps, "Trotter step counts")->delimiter(',');
  app.add_option("--noise", cfg.noise, "two-qubit depolarizing probabilities")->delimiter(',');
  app.add_option("--shots", cfg.shots, "shots per measurement circuit")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "output directory (stdout when omitted)");
  const std::map<std::string, fhqetu::PostSelectRows> postselect = {
      {"both", fhqetu::PostSelectRows::kBoth},
      {"on", fhqetu::PostSelectRows::kOn},
      {"off", fhqetu::PostSelectRows::kOff}};
  app.add_option("--postselect", cfg.postselect, "energy rows: both, on or off")
      ->transform(CLI::CheckedTransformer(postselect, CLI::ignore_case));
  app.add_flag("--postselect-sector", cfg.postselect_sector,
               "also post-select the spin-down count");
  const std::map<std::string, fhqetu::NoiseBackend> backends = {
      {"density", fhqetu::NoiseBackend::kDensity},
      {"trajectory", fhqetu::NoiseBackend::kTrajectory}};
  app.add_option("--noise-backend", cfg.backend, "density or trajectory")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  app.add_flag("--dump-circuit", cfg.dump_circuit, "write compiled circuits to --out");
  app.add_flag("--gnuplot", cfg.gnuplot, "write a gnuplot script next to the CSV");

  app.add_subcommand("spectrum", "eigenvalues, gap, initial overlap and shift coefficients");
  app.add_subcommand("trotter", "controlled-V Trotter error and depth per step count");
  app.add_subcommand("overlap", "ground-state overlap and success probability per degree");
  app.add_subcommand("energy", "sampled energy per degree and noise level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.gnuplot && cfg.out_dir.empty())
      throw std::invalid_argument("--gnuplot needs --out");
    std::ostringstream csv;
    const fhqetu::ExperimentReport report = run(command, cfg, csv);
    write_outputs(command, cfg, csv.str());
    if (report.convergence_failures > 0) return kExitConvergence;
  } catch (const fhqetu::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
