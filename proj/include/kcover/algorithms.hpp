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

#ifndef KCOVER_ALGORITHMS_HPP_
#define KCOVER_ALGORITHMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcover/instance.hpp"
#include "kcover/rng.hpp"

namespace kcover {

enum class Algorithm { kRandomized, kDistributedGreedy, kCentralizedGreedy };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kRandomized, Algorithm::kDistributedGreedy, Algorithm::kCentralizedGreedy};

inline const char* algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::kRandomized: return "random";
    case Algorithm::kDistributedGreedy: return "dgreedy";
    case Algorithm::kCentralizedGreedy: return "cgreedy";
  }
  return "?";
}

inline std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (Algorithm alg : kAllAlgorithms)
    if (name == algorithm_name(alg)) return alg;
  return std::nullopt;
}

// One assignment decision: which cover subset j joined, the score that drove
// the choice, and whether another cover scored the same (tie broken by index).
struct TraceEntry {
  SubsetId subset = 0;
  CoverId cover = 0;
  double score = 0.0;
  bool tied = false;
};

struct AlgorithmOutcome {
  Partition partition;
  std::vector<TraceEntry> trace;
};

namespace detail {

// covered(i, v) == true iff cover i already contains a subset covering v.
class CoverOccupancy {
 public:
  CoverOccupancy(std::uint32_t k, std::uint32_t num_areas)
      : k_(k), bits_(static_cast<std::size_t>(k) * num_areas, 0) {}

  bool covered(CoverId cover, AreaId area) const {
    return bits_[index(cover, area)] != 0;
  }

  void add_subset(CoverId cover, const std::vector<AreaId>& areas) {
    for (AreaId v : areas) bits_[index(cover, v)] = 1;
  }

  // Number of areas in `areas` not yet covered by `cover`.
  std::uint32_t marginal(CoverId cover, const std::vector<AreaId>& areas) const {
    std::uint32_t gain = 0;
    for (AreaId v : areas) gain += bits_[index(cover, v)] == 0;
    return gain;
  }

 private:
  std::size_t index(CoverId cover, AreaId area) const {
    return static_cast<std::size_t>(area - 1) * k_ + (cover - 1);
  }

  std::uint32_t k_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace detail

// Every subset joins a cover drawn independently and uniformly from {1..k}.
// The trace records the realized marginal gain of each draw.
inline AlgorithmOutcome randomized_partition(const ProblemInstance& instance,
                                             std::uint64_t seed) {
  const std::uint32_t n = instance.num_subsets();
  const std::uint32_t k = instance.k();
  Rng rng(seed);

  std::vector<CoverId> assignment(n);
  for (auto& cover : assignment) cover = rng.next_index(k);

  detail::CoverOccupancy occupancy(k, instance.num_areas());
  std::vector<TraceEntry> trace;
  trace.reserve(n);
  for (SubsetId j = 1; j <= n; ++j) {
    const CoverId cover = assignment[j - 1];
    const auto& areas = instance.subset(j);
    trace.push_back({j, cover, static_cast<double>(occupancy.marginal(cover, areas)), false});
    occupancy.add_subset(cover, areas);
  }
  return {Partition(k, std::move(assignment)), std::move(trace)};
}

// Subsets decide in ascending id order; subset j joins the cover where it
// covers the most not-yet-covered of its areas. Ties go to the lowest cover
// index, so repeated runs are identical.
inline AlgorithmOutcome distributed_greedy_partition(const ProblemInstance& instance) {
  const std::uint32_t n = instance.num_subsets();
  const std::uint32_t k = instance.k();
  detail::CoverOccupancy occupancy(k, instance.num_areas());

  std::vector<CoverId> assignment(n, 1);
  std::vector<TraceEntry> trace;
  trace.reserve(n);
  for (SubsetId j = 1; j <= n; ++j) {
    const auto& areas = instance.subset(j);
    CoverId best = 1;
    std::uint32_t best_gain = occupancy.marginal(1, areas);
    bool tied = false;
    for (CoverId i = 2; i <= k; ++i) {
      const std::uint32_t gain = occupancy.marginal(i, areas);
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
        tied = false;
      } else if (gain == best_gain) {
        tied = true;
      }
    }
    assignment[j - 1] = best;
    occupancy.add_subset(best, areas);
    trace.push_back({j, best, static_cast<double>(best_gain), tied});
  }
  return {Partition(k, std::move(assignment)), std::move(trace)};
}

// Same schedule as the distributed greedy, but each still-uncovered area is
// weighted by (1 - 1/k)^(y_v - 1), the probability that none of the other
// y_v - 1 unassigned subsets containing it would land in a given cover.
// y_v counts the deciding subset itself, and drops by one for each of its
// areas after every assignment. Weights come from one shared power table, so
// equal scores are bit-identical and the exact tie comparison is stable.
inline AlgorithmOutcome centralized_greedy_partition(const ProblemInstance& instance) {
  const std::uint32_t n = instance.num_subsets();
  const std::uint32_t k = instance.k();
  detail::CoverOccupancy occupancy(k, instance.num_areas());

  std::vector<std::uint32_t> remaining = instance.area_subset_counts();  // y_v
  std::uint32_t max_exponent = 0;
  for (std::uint32_t y : remaining) max_exponent = std::max(max_exponent, y);

  const double base = 1.0 - 1.0 / static_cast<double>(k);
  std::vector<double> power(max_exponent, 0.0);  // power[e] = base^e
  if (max_exponent > 0) {
    power[0] = 1.0;
    for (std::uint32_t e = 1; e < max_exponent; ++e) power[e] = power[e - 1] * base;
  }

  std::vector<CoverId> assignment(n, 1);
  std::vector<TraceEntry> trace;
  trace.reserve(n);
  std::vector<double> score(k + 1, 0.0);
  for (SubsetId j = 1; j <= n; ++j) {
    const auto& areas = instance.subset(j);
    for (CoverId i = 1; i <= k; ++i) score[i] = 0.0;
    for (AreaId v : areas) {
      const double weight = power[remaining[v - 1] - 1];
      for (CoverId i = 1; i <= k; ++i)
        if (!occupancy.covered(i, v)) score[i] += weight;
    }

    CoverId best = 1;
    bool tied = false;
    for (CoverId i = 2; i <= k; ++i) {
      if (score[i] > score[best]) {
        best = i;
        tied = false;
      } else if (score[i] == score[best]) {
        tied = true;
      }
    }
    assignment[j - 1] = best;
    occupancy.add_subset(best, areas);
    for (AreaId v : areas) --remaining[v - 1];
    trace.push_back({j, best, score[best], tied});
  }
  return {Partition(k, std::move(assignment)), std::move(trace)};
}

// Closed-form expectation of the randomized objective:
// sum over areas of k - k(1 - 1/k)^N_v. Terms are evaluated and summed in
// extended precision so instances whose expectation is exactly representable
// (notably k = 2) come out bit-exact.
inline double expected_randomized_objective(const ProblemInstance& instance) {
  const auto counts = instance.area_subset_counts();
  std::uint32_t max_count = 0;
  for (std::uint32_t c : counts) max_count = std::max(max_count, c);

  const long double k = static_cast<long double>(instance.k());
  const long double base = 1.0L - 1.0L / k;
  std::vector<long double> term(max_count + 1, 0.0L);
  long double p = 1.0L;
  for (std::uint32_t m = 1; m <= max_count; ++m) {
    p *= base;
    term[m] = k - k * p;  // areas with N_v = 0 contribute term[0] = 0
  }

  long double total = 0.0L;
  for (std::uint32_t c : counts) total += term[c];
  return static_cast<double>(total);
}

inline AlgorithmOutcome run_algorithm(Algorithm alg, const ProblemInstance& instance,
                                      std::uint64_t seed) {
  switch (alg) {
    case Algorithm::kRandomized: return randomized_partition(instance, seed);
    case Algorithm::kDistributedGreedy: return distributed_greedy_partition(instance);
    case Algorithm::kCentralizedGreedy: return centralized_greedy_partition(instance);
  }
  throw ValidationError("unknown algorithm");
}

}  // namespace kcover

#endif  // KCOVER_ALGORITHMS_HPP_
