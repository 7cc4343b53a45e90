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

#include "evostage/population.hpp"

#include <algorithm>
#include <stdexcept>

namespace evostage {

Population::Population(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw std::invalid_argument("population capacity must be >= 1");
  }
}

std::vector<AlgorithmIndividual> Population::snapshot() const {
  std::vector<AlgorithmIndividual> result;
  result.reserve(entries_.size());
  for (const auto& entry : entries_) result.push_back(entry.individual);
  return result;
}

void Population::update(std::vector<AlgorithmIndividual> offspring) {
  for (auto& child : offspring) {
    if (child.legality != Legality::kPass || !child.score.has_value()) {
      throw std::invalid_argument("offspring entering the population must have passed");
    }
    entries_.push_back(Entry{std::move(child), next_seq_++});
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (*a.individual.score != *b.individual.score) {
      return *a.individual.score > *b.individual.score;
    }
    return a.insertion_seq < b.insertion_seq;
  });
  if (entries_.size() > static_cast<std::size_t>(capacity_)) {
    entries_.resize(static_cast<std::size_t>(capacity_));
  }
}

std::vector<std::pair<int, const AlgorithmIndividual*>> Population::rank_entries() const {
  std::vector<std::pair<int, const AlgorithmIndividual*>> ranked;
  ranked.reserve(entries_.size());
  int rank = 1;
  for (const auto& entry : entries_) {
    ranked.emplace_back(rank++, &entry.individual);
  }
  return ranked;
}

std::vector<double> Population::selection_probabilities() const {
  std::vector<double> weights;
  weights.reserve(entries_.size());
  double total = 0.0;
  for (int rank = 1; rank <= size(); ++rank) {
    const double w = 1.0 / static_cast<double>(rank + capacity_);
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w /= total;
  return weights;
}

std::vector<AlgorithmIndividual> Population::select_parents(int k, Rng& rng) const {
  if (empty()) {
    throw std::runtime_error("no selectable individuals");
  }
  if (k < 1) {
    throw std::invalid_argument("selection count must be >= 1");
  }
  const std::vector<double> probabilities = selection_probabilities();
  std::vector<double> cumulative(probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;

  std::vector<AlgorithmIndividual> parents;
  parents.reserve(static_cast<std::size_t>(k));
  for (int draw = 0; draw < k; ++draw) {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    const auto index = static_cast<std::size_t>(it - cumulative.begin());
    parents.push_back(entries_[index].individual);
  }
  return parents;
}

}  // namespace evostage
