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

// Experiment drivers behind the `run` command. Each writes its CSV files into
// the output directory and then the manifest, last.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "stark/config.hpp"

namespace stark::experiments {

struct OutputFile {
  std::string name;
  std::size_t rows = 0;
};

struct RunSummary {
  std::vector<OutputFile> files;
  double seconds = 0.0;
};

inline constexpr const char* kManifestName = "manifest.json";

RunSummary run(const config::Config& c, const std::filesystem::path& out_dir);

// Calls fn(i) for i in [0, n) on up to `threads` workers pulling from a
// shared counter. The first exception thrown by any task is rethrown after
// all workers stop.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

const char* code_version();

}  // namespace stark::experiments
