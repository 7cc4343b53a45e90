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

#include "evostage/placement/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evostage::placement {
namespace {

// gamma * log sum exp(sign * x / gamma) with shifted exponents, plus the
// softmax weights (the gradient of that term w.r.t. each x).
double shifted_lse(const std::vector<double>& values, double gamma, double sign,
                   std::vector<double>& softmax) {
  double peak = sign * values[0];
  for (double v : values) peak = std::max(peak, sign * v);
  double total = 0.0;
  softmax.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    softmax[i] = std::exp((sign * values[i] - peak) / gamma);
    total += softmax[i];
  }
  for (auto& w : softmax) w /= total;
  return peak + gamma * std::log(total);
}

}  // namespace

double hpwl(const PlacementInstance& instance, const std::vector<double>& positions) {
  const int n = instance.cell_count();
  if (static_cast<int>(positions.size()) != 2 * n) {
    throw std::invalid_argument("positions length must be 2 * cell_count");
  }
  double total = 0.0;
  for (const auto& net : instance.nets) {
    double min_x = positions[static_cast<std::size_t>(net[0])];
    double max_x = min_x;
    double min_y = positions[static_cast<std::size_t>(n + net[0])];
    double max_y = min_y;
    for (std::size_t j = 1; j < net.size(); ++j) {
      const double x = positions[static_cast<std::size_t>(net[j])];
      const double y = positions[static_cast<std::size_t>(n + net[j])];
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
    total += (max_x - min_x) + (max_y - min_y);
  }
  return total;
}

SmoothWlResult smooth_wl(const PlacementInstance& instance, const std::vector<double>& positions,
                         double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  const int n = instance.cell_count();
  if (static_cast<int>(positions.size()) != 2 * n) {
    throw std::invalid_argument("positions length must be 2 * cell_count");
  }
  SmoothWlResult result;
  result.gradient.assign(positions.size(), 0.0);
  std::vector<double> axis_values;
  std::vector<double> softmax_pos;
  std::vector<double> softmax_neg;
  for (const auto& net : instance.nets) {
    for (int axis = 0; axis < 2; ++axis) {
      const int offset = axis == 0 ? 0 : n;
      axis_values.clear();
      for (int idx : net) {
        axis_values.push_back(positions[static_cast<std::size_t>(offset + idx)]);
      }
      const double upper = shifted_lse(axis_values, gamma, 1.0, softmax_pos);
      const double lower = shifted_lse(axis_values, gamma, -1.0, softmax_neg);
      result.value += upper + lower;
      for (std::size_t j = 0; j < net.size(); ++j) {
        result.gradient[static_cast<std::size_t>(offset + net[j])] +=
            softmax_pos[j] - softmax_neg[j];
      }
    }
  }
  return result;
}

DensityResult density_overflow(const PlacementInstance& instance,
                               const std::vector<double>& positions) {
  const int n = instance.cell_count();
  if (static_cast<int>(positions.size()) != 2 * n) {
    throw std::invalid_argument("positions length must be 2 * cell_count");
  }
  const int bx = instance.bins_x;
  const int by = instance.bins_y;
  const double bin_w = instance.bin_width();
  const double bin_h = instance.bin_height();
  const double bin_capacity = bin_w * bin_h;
  const double threshold = instance.target_density * bin_capacity;

  // usage_b plus, per (cell, bin) overlap, the pieces needed for the chain
  // rule: d(area)/dx = d(len_x)/dx * len_y and symmetrically for y.
  std::vector<double> usage(static_cast<std::size_t>(bx * by), 0.0);
  struct Overlap {
    int cell;
    int bin;
    double dlen_x;  // d len_x / d x in {-1, 0, +1}
    double dlen_y;
    double len_x;
    double len_y;
  };
  std::vector<Overlap> overlaps;
  overlaps.reserve(static_cast<std::size_t>(4 * n));

  for (int i = 0; i < n; ++i) {
    const double cx = positions[static_cast<std::size_t>(i)];
    const double cy = positions[static_cast<std::size_t>(n + i)];
    const double half_w = 0.5 * instance.cells[static_cast<std::size_t>(i)].width;
    const double half_h = 0.5 * instance.cells[static_cast<std::size_t>(i)].height;
    const double lo_x = cx - half_w;
    const double hi_x = cx + half_w;
    const double lo_y = cy - half_h;
    const double hi_y = cy + half_h;

    int first_bx = static_cast<int>(std::floor((lo_x - instance.layout_min_x) / bin_w));
    int last_bx = static_cast<int>(std::floor((hi_x - instance.layout_min_x) / bin_w));
    int first_by = static_cast<int>(std::floor((lo_y - instance.layout_min_y) / bin_h));
    int last_by = static_cast<int>(std::floor((hi_y - instance.layout_min_y) / bin_h));
    first_bx = std::clamp(first_bx, 0, bx - 1);
    last_bx = std::clamp(last_bx, 0, bx - 1);
    first_by = std::clamp(first_by, 0, by - 1);
    last_by = std::clamp(last_by, 0, by - 1);

    for (int gx = first_bx; gx <= last_bx; ++gx) {
      const double bin_lo_x = instance.layout_min_x + gx * bin_w;
      const double bin_hi_x = bin_lo_x + bin_w;
      const double left = std::max(lo_x, bin_lo_x);
      const double right = std::min(hi_x, bin_hi_x);
      const double len_x = right - left;
      if (len_x <= 0.0) continue;
      const double dlen_x = (hi_x < bin_hi_x ? 1.0 : 0.0) - (lo_x > bin_lo_x ? 1.0 : 0.0);
      for (int gy = first_by; gy <= last_by; ++gy) {
        const double bin_lo_y = instance.layout_min_y + gy * bin_h;
        const double bin_hi_y = bin_lo_y + bin_h;
        const double bottom = std::max(lo_y, bin_lo_y);
        const double top = std::min(hi_y, bin_hi_y);
        const double len_y = top - bottom;
        if (len_y <= 0.0) continue;
        const double dlen_y = (hi_y < bin_hi_y ? 1.0 : 0.0) - (lo_y > bin_lo_y ? 1.0 : 0.0);
        const int bin_index = gy * bx + gx;
        usage[static_cast<std::size_t>(bin_index)] += len_x * len_y;
        overlaps.push_back(Overlap{i, bin_index, dlen_x, dlen_y, len_x, len_y});
      }
    }
  }

  DensityResult result;
  result.gradient.assign(positions.size(), 0.0);
  for (double u : usage) {
    const double excess = u - threshold;
    if (excess > 0.0) {
      result.overflow += excess;
      result.penalty += excess * excess;
    }
  }
  result.overflow /= instance.total_cell_area();

  for (const auto& overlap : overlaps) {
    const double excess = usage[static_cast<std::size_t>(overlap.bin)] - threshold;
    if (excess <= 0.0) continue;
    const double scale = 2.0 * excess;
    result.gradient[static_cast<std::size_t>(overlap.cell)] +=
        scale * overlap.dlen_x * overlap.len_y;
    result.gradient[static_cast<std::size_t>(n + overlap.cell)] +=
        scale * overlap.len_x * overlap.dlen_y;
  }
  return result;
}

ObjectiveResult penalized_objective(const PlacementInstance& instance,
                                    const std::vector<double>& positions, double gamma,
                                    double lambda) {
  ObjectiveResult result;
  const SmoothWlResult wl = smooth_wl(instance, positions, gamma);
  const DensityResult density = density_overflow(instance, positions);
  result.smooth_wl = wl.value;
  result.penalty = density.penalty;
  result.overflow = density.overflow;
  result.value = wl.value + lambda * density.penalty;
  result.gradient.resize(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    result.gradient[i] = wl.gradient[i] + lambda * density.gradient[i];
  }
  return result;
}

}  // namespace evostage::placement
