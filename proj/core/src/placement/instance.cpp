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

#include "evostage/placement/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "evostage/rng.hpp"

namespace evostage::placement {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double PlacementInstance::total_cell_area() const {
  double area = 0.0;
  for (const auto& cell : cells) area += cell.width * cell.height;
  return area;
}

void PlacementInstance::validate() const {
  if (cells.empty()) throw std::invalid_argument("instance has no cells");
  if (nets.empty()) throw std::invalid_argument("instance has no nets");
  if (bins_x < 1 || bins_y < 1) throw std::invalid_argument("bin grid must be at least 1x1");
  if (layout_max_x <= layout_min_x || layout_max_y <= layout_min_y) {
    throw std::invalid_argument("layout bounds are degenerate");
  }
  if (target_density <= 0.0 || target_density > 1.0) {
    throw std::invalid_argument("target_density must be in (0, 1]");
  }
  for (const auto& cell : cells) {
    if (cell.width <= 0.0 || cell.height <= 0.0) {
      throw std::invalid_argument("cell dimensions must be positive");
    }
  }
  for (const auto& net : nets) {
    if (net.size() < 2) throw std::invalid_argument("every net must reference >= 2 cells");
    for (int idx : net) {
      if (idx < 0 || idx >= cell_count()) {
        throw std::invalid_argument("net references an unknown cell");
      }
    }
  }
  const double layout_area = layout_width() * layout_height();
  if (total_cell_area() > target_density * layout_area) {
    throw std::invalid_argument("instance infeasible: cell area exceeds density budget");
  }
}

PlacementInstance make_random_instance(std::uint64_t seed, int cell_count, int net_count,
                                       int bins_per_side, double layout_size) {
  if (cell_count < 2 || net_count < 1) {
    throw std::invalid_argument("instance needs at least 2 cells and 1 net");
  }
  Rng rng(seed);
  PlacementInstance instance;
  instance.layout_min_x = 0.0;
  instance.layout_min_y = 0.0;
  instance.layout_max_x = layout_size;
  instance.layout_max_y = layout_size;
  instance.bins_x = bins_per_side;
  instance.bins_y = bins_per_side;
  instance.target_density = 0.9;
  instance.target_overflow = 0.1;
  instance.position_seed = seed;

  instance.cells.reserve(static_cast<std::size_t>(cell_count));
  for (int i = 0; i < cell_count; ++i) {
    Cell cell;
    cell.width = rng.uniform(3.0, 6.0);
    cell.height = rng.uniform(3.0, 6.0);
    instance.cells.push_back(cell);
  }

  instance.nets.reserve(static_cast<std::size_t>(net_count));
  for (int n = 0; n < net_count; ++n) {
    // A net cannot have more distinct members than there are cells.
    const int degree = rng.uniform_int(2, std::min(5, cell_count));
    std::set<int> members;
    while (static_cast<int>(members.size()) < degree) {
      members.insert(rng.uniform_int(0, cell_count - 1));
    }
    instance.nets.emplace_back(members.begin(), members.end());
  }
  instance.validate();
  return instance;
}

std::vector<double> initial_positions(const PlacementInstance& instance) {
  Rng rng(instance.position_seed);
  const int n = instance.cell_count();
  const double cx = 0.5 * (instance.layout_min_x + instance.layout_max_x);
  const double cy = 0.5 * (instance.layout_min_y + instance.layout_max_y);
  const double sx = 0.05 * instance.layout_width();
  const double sy = 0.05 * instance.layout_height();
  std::vector<double> positions(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const double x = cx + sx * rng.gaussian();
    const double y = cy + sy * rng.gaussian();
    positions[static_cast<std::size_t>(i)] =
        std::clamp(x, instance.layout_min_x, instance.layout_max_x);
    positions[static_cast<std::size_t>(n + i)] =
        std::clamp(y, instance.layout_min_y, instance.layout_max_y);
  }
  return positions;
}

std::string serialize_instance(const PlacementInstance& instance) {
  std::ostringstream out;
  out << "placement_instance v1\n";
  out << "bounds " << format_double(instance.layout_min_x) << ' '
      << format_double(instance.layout_min_y) << ' ' << format_double(instance.layout_max_x)
      << ' ' << format_double(instance.layout_max_y) << '\n';
  out << "bins " << instance.bins_x << ' ' << instance.bins_y << '\n';
  out << "target_density " << format_double(instance.target_density) << '\n';
  out << "target_overflow " << format_double(instance.target_overflow) << '\n';
  out << "position_seed " << instance.position_seed << '\n';
  out << "cells " << instance.cells.size() << '\n';
  for (std::size_t i = 0; i < instance.cells.size(); ++i) {
    out << i << ' ' << format_double(instance.cells[i].width) << ' '
        << format_double(instance.cells[i].height) << '\n';
  }
  out << "nets " << instance.nets.size() << '\n';
  for (const auto& net : instance.nets) {
    for (std::size_t j = 0; j < net.size(); ++j) {
      if (j != 0) out << ' ';
      out << net[j];
    }
    out << '\n';
  }
  return out.str();
}

PlacementInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  std::string version;
  in >> tag >> version;
  if (tag != "placement_instance" || version != "v1") {
    throw std::runtime_error("unrecognized instance header");
  }
  PlacementInstance instance;
  std::size_t cell_count = 0;
  std::size_t net_count = 0;
  while (in >> tag) {
    if (tag == "bounds") {
      in >> instance.layout_min_x >> instance.layout_min_y >> instance.layout_max_x >>
          instance.layout_max_y;
    } else if (tag == "bins") {
      in >> instance.bins_x >> instance.bins_y;
    } else if (tag == "target_density") {
      in >> instance.target_density;
    } else if (tag == "target_overflow") {
      in >> instance.target_overflow;
    } else if (tag == "position_seed") {
      in >> instance.position_seed;
    } else if (tag == "cells") {
      in >> cell_count;
      instance.cells.resize(cell_count);
      for (std::size_t i = 0; i < cell_count; ++i) {
        std::size_t id = 0;
        in >> id >> instance.cells[i].width >> instance.cells[i].height;
        if (id != i) throw std::runtime_error("cell ids must be dense and ordered");
      }
    } else if (tag == "nets") {
      in >> net_count;
      in.ignore();  // rest of the "nets" line
      instance.nets.reserve(net_count);
      std::string line;
      while (instance.nets.size() < net_count && std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<int> net;
        int idx = 0;
        while (row >> idx) net.push_back(idx);
        instance.nets.push_back(std::move(net));
      }
    } else {
      throw std::runtime_error("unknown instance field: " + tag);
    }
    if (!in && !in.eof()) throw std::runtime_error("malformed instance file");
  }
  if (instance.nets.size() != net_count) {
    throw std::runtime_error("instance file truncated in net list");
  }
  instance.validate();
  return instance;
}

PlacementInstance load_instance(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_instance(buffer.str());
}

void save_instance(const PlacementInstance& instance, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write instance file: " + path);
  file << serialize_instance(instance);
}

}  // namespace evostage::placement
