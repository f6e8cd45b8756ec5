// Copyright 2026 The Authors.
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

// Test-only reference implementations. These deliberately use different data
// structures and no pruning, so they can vouch for the library paths they
// cross-check.

#ifndef KCOVER_TESTS_SUPPORT_HPP_
#define KCOVER_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "kcover/instance.hpp"
#include "kcover/netsim.hpp"
#include "kcover/oracle.hpp"
#include "kcover/rng.hpp"

namespace kcover::testing {

// Objective recount: per cover, the union of its subsets as a std::set.
inline std::uint64_t recount_objective(const ProblemInstance& instance,
                                       const Partition& partition) {
  std::uint64_t total = 0;
  for (CoverId i = 1; i <= instance.k(); ++i) {
    std::set<AreaId> covered;
    for (SubsetId j = 1; j <= instance.num_subsets(); ++j)
      if (partition.cover_of(j) == i)
        covered.insert(instance.subset(j).begin(), instance.subset(j).end());
    total += covered.size();
  }
  return total;
}

// l_v recount: distinct covers touching each area, via sets of cover ids.
inline std::vector<std::uint32_t> recount_cover_counts(const ProblemInstance& instance,
                                                       const Partition& partition) {
  std::vector<std::set<CoverId>> covers(instance.num_areas());
  for (SubsetId j = 1; j <= instance.num_subsets(); ++j)
    for (AreaId v : instance.subset(j)) covers[v - 1].insert(partition.cover_of(j));
  std::vector<std::uint32_t> counts(instance.num_areas());
  for (std::uint32_t v = 0; v < instance.num_areas(); ++v)
    counts[v] = static_cast<std::uint32_t>(covers[v].size());
  return counts;
}

struct BruteForceOptima {
  std::uint64_t objective = 0;
  std::uint32_t maxmin = 0;
};

// Plain k^n enumeration, no pruning, no symmetry breaking; every leaf is
// scored from scratch through the recount helpers.
inline BruteForceOptima brute_force_optima(const ProblemInstance& instance) {
  const std::uint32_t n = instance.num_subsets();
  const std::uint32_t k = instance.k();
  const auto subset_counts = instance.area_subset_counts();

  BruteForceOptima best;
  std::vector<CoverId> assignment(n, 1);
  for (;;) {
    const Partition partition(k, assignment);
    best.objective = std::max(best.objective, recount_objective(instance, partition));

    const auto counts = recount_cover_counts(instance, partition);
    std::uint32_t low = k;
    bool any_covered = false;
    for (std::uint32_t v = 0; v < instance.num_areas(); ++v) {
      if (subset_counts[v] < 1) continue;
      any_covered = true;
      low = std::min(low, counts[v]);
    }
    if (any_covered) best.maxmin = std::max(best.maxmin, low);

    // Odometer increment over the k^n assignment space.
    std::uint32_t pos = 0;
    while (pos < n && assignment[pos] == k) assignment[pos++] = 1;
    if (pos == n) break;
    ++assignment[pos];
  }
  return best;
}

// Exhaustive E4-SET SPLITTING: best number of sets split by any 2-coloring.
inline std::uint32_t brute_force_max_split(const SplittingInstance& splitting) {
  std::uint32_t best = 0;
  for (std::uint64_t coloring = 0; coloring < (1ULL << splitting.ground_set_size); ++coloring) {
    std::uint32_t split = 0;
    for (const auto& quad : splitting.sets) {
      bool has_first = false, has_second = false;
      for (std::uint32_t x : quad) {
        if ((coloring >> (x - 1)) & 1)
          has_first = true;
        else
          has_second = true;
      }
      split += has_first && has_second;
    }
    best = std::max(best, split);
  }
  return best;
}

// Random total partition, for exercising evaluate() away from the algorithms.
inline Partition random_partition_of(const ProblemInstance& instance, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CoverId> assignment(instance.num_subsets());
  for (auto& cover : assignment) cover = rng.next_index(instance.k());
  return Partition(instance.k(), std::move(assignment));
}

// Small fuzzed instance with everything permitted by the data model
// (empty subsets, uncovered areas).
inline ProblemInstance fuzz_instance(std::uint64_t seed, std::uint32_t max_areas = 12,
                                     std::uint32_t max_subsets = 10, std::uint32_t max_k = 4) {
  Rng rng(seed);
  const auto areas = static_cast<std::uint32_t>(1 + rng.next_below(max_areas));
  const auto subsets = static_cast<std::uint32_t>(1 + rng.next_below(max_subsets));
  const auto k = static_cast<std::uint32_t>(2 + rng.next_below(max_k - 1));
  std::vector<std::vector<AreaId>> membership(subsets);
  for (auto& subset : membership) {
    const auto size = rng.next_below(areas + 1);  // may stay empty
    std::set<AreaId> picks;
    while (picks.size() < size)
      picks.insert(static_cast<AreaId>(1 + rng.next_below(areas)));
    subset.assign(picks.begin(), picks.end());
  }
  return ProblemInstance(areas, k, std::move(membership));
}

// Random deployment on the unit square in which every sensor also monitors
// one point at (almost) the edge of its sensing range. With a uniform radius
// this makes the step-1 broadcast radius 2R cover the distance to any sensor
// sharing an area (which is at most 2R), so the preprocessing radii provably
// reach every neighbor. Plain uniform deployments do not have that property;
// see the reachability tests.
inline Deployment edge_beacon_deployment(Rng& rng, std::uint32_t sensors, std::uint32_t areas,
                                         double radius) {
  Deployment d;
  for (std::uint32_t j = 0; j < sensors; ++j) {
    d.sensor_positions.push_back({rng.next_double(), rng.next_double()});
    d.sensing_radii.push_back(radius);
  }
  for (std::uint32_t v = 0; v < areas; ++v)
    d.area_positions.push_back({rng.next_double(), rng.next_double()});
  for (std::uint32_t j = 0; j < sensors; ++j) {
    const double bearing = 6.283185307179586 * rng.next_double();
    const double reach = radius * (1.0 - 1e-9);  // strictly inside the closed ball
    d.area_positions.push_back({d.sensor_positions[j].x + reach * std::cos(bearing),
                                d.sensor_positions[j].y + reach * std::sin(bearing)});
  }
  return d;
}

}  // namespace kcover::testing

#endif  // KCOVER_TESTS_SUPPORT_HPP_
