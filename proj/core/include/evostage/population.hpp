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

#ifndef EVOSTAGE_POPULATION_HPP_
#define EVOSTAGE_POPULATION_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "evostage/heuristic.hpp"
#include "evostage/rng.hpp"

namespace evostage {

// Top-M pool of passing individuals, kept sorted by (score desc, insertion
// asc). All mutation happens on one control thread; read-only snapshots may
// be shared with concurrently running evaluations.
class Population {
 public:
  explicit Population(int capacity);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  const AlgorithmIndividual& entry(int index) const { return entries_[static_cast<std::size_t>(index)].individual; }
  std::vector<AlgorithmIndividual> snapshot() const;

  // Folds the offspring into the pool and keeps the top-M by score. Ties
  // break toward earlier insertion, so incumbents outrank equal-scored
  // offspring and offspring keep their arrival order. Offspring must all
  // have legality kPass (illegal ones are filtered by the caller).
  void update(std::vector<AlgorithmIndividual> offspring);

  // 1-based ranks over the current entries, best score first.
  std::vector<std::pair<int, const AlgorithmIndividual*>> rank_entries() const;

  // Draws k parents independently with replacement. The rank-r entry is
  // selected with probability proportional to 1/(r + M) where M is the
  // configured capacity, not the current fill.
  std::vector<AlgorithmIndividual> select_parents(int k, Rng& rng) const;

  // Probability of selecting each rank, in rank order. Exposed so callers
  // and tests can reason about the selection law directly.
  std::vector<double> selection_probabilities() const;

 private:
  struct Entry {
    AlgorithmIndividual individual;
    std::uint64_t insertion_seq = 0;
  };

  int capacity_;
  std::uint64_t next_seq_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace evostage

#endif  // EVOSTAGE_POPULATION_HPP_
