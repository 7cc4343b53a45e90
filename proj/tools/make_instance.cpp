// Copyright 2025 The EvoStage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generates placement instance files, including the shipped reference
// instance (default arguments reproduce data/micro100.instance exactly).

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "evostage/placement/instance.hpp"
#include "evostage/placement/task.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a placement instance file"};
  std::string out_path = "micro100.instance";
  std::uint64_t seed = 0;
  int cells = 100;
  int nets = 60;
  int bins = 8;
  double layout = 64.0;
  bool reference = false;
  app.add_option("--out", out_path, "output file");
  app.add_option("--seed", seed, "instance seed");
  app.add_option("--cells", cells, "cell count");
  app.add_option("--nets", nets, "net count");
  app.add_option("--bins", bins, "bins per side");
  app.add_option("--layout", layout, "layout side length");
  app.add_flag("--reference", reference, "emit the built-in reference instance");

  CLI11_PARSE(app, argc, argv);

  evostage::placement::PlacementInstance instance =
      reference ? evostage::placement::reference_instance()
                : evostage::placement::make_random_instance(seed, cells, nets, bins, layout);
  evostage::placement::save_instance(instance, out_path);
  std::printf("wrote %s (%zu cells, %zu nets)\n", out_path.c_str(), instance.cells.size(),
              instance.nets.size());
  return 0;
}
