// Copyright 2026 The starkprobe Authors
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

// Experiment configuration. Files are JSON objects with nested sections;
// every default is materialized in the resolved form written to the
// manifest, so a manifest can be fed back to `run` unchanged.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stark/analysis.hpp"
#include "stark/lindblad.hpp"
#include "stark/metrology.hpp"

namespace stark::config {

enum class Experiment { LindbladSweep, TrajValidate, HnStatic, HnDynamic, UniStatic, UniDynamic, Table1 };

const char* name(Experiment e);

struct TimeGrid {
  // Either `values`, or {step, 2 step, ..., count * step}.
  std::vector<double> values;
  double step = 0.0;
  int count = 0;
  std::vector<double> resolve() const;
};

struct Lattice {
  double J = 1.0;
  std::vector<int> L;
  std::vector<double> h;
  std::vector<double> gamma;
};

struct LindbladSection {
  lindblad::Method method = lindblad::Method::Structured;
  // When > 0, the h scan at this time feeds transition_point and the
  // localized collapse check. Must be one of the sampled times.
  double snapshot_time = 0.0;
};

struct TrajectorySection {
  double dt = 0.01;
  int n_traj = 1000;
  std::vector<double> checkpoints;
  bool first_order = false;
  // Also run with n_traj / 2 to expose the 1/sqrt(N) trend.
  bool halving = false;
};

struct HnStaticSection {
  // "lowest" or "highest" real energy.
  std::string state = "lowest";
  // Field at which the skin-effect localization table is evaluated.
  double skin_h = 0.0;
};

struct UniStaticSection {
  // Any of "ground", "mid", "edge" (edge = highest label).
  std::vector<std::string> states = {"ground", "mid"};
};

struct PacketSection {
  double sigma = 2.0;
  // uni-dynamic only: Bloch-revival table over this many periods (0 = off).
  int revival_periods = 0;
};

struct Table1Section {
  double repetitions = 1000.0;
  double gamma = 0.01;
  double fixed_time = 10.0;
  int lindblad_size = 40;
  int nh_size = 100;
  std::vector<double> lindblad_h = {0.01, 0.05, 0.5};
  std::vector<double> hn_h = {0.001, 0.01, 0.1};
  std::vector<double> uni_h = {0.001, 0.01, 0.1};
  // Grid searched for t_opt.
  TimeGrid times{{}, 0.5, 1000};
};

struct Config {
  Experiment experiment = Experiment::LindbladSweep;
  std::uint64_t seed = 0;
  int threads = 1;
  Lattice lattice;
  TimeGrid times;
  metrology::DerivativeOptions derivative;
  analysis::Window alpha_window = analysis::kAlphaWindow;
  double spread = analysis::kSizeIndependenceSpread;
  LindbladSection lindblad;
  TrajectorySection trajectory;
  HnStaticSection hn_static;
  UniStaticSection uni_static;
  PacketSection packet;
  Table1Section table1;
};

// Throws ConfigError naming the key path (e.g. "lattice.L[2]") and the
// violated constraint.
Config parse(const std::string& text);
Config load(const std::filesystem::path& path);

// Resolved config as pretty-printed JSON.
std::string to_json(const Config& c);

}  // namespace stark::config
