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

#ifndef KCOVER_INSTANCE_HPP_
#define KCOVER_INSTANCE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kcover/rng.hpp"

namespace kcover {

// Identifiers are 1-based dense integers; arrays indexed by id use id - 1.
using AreaId = std::uint32_t;
using SubsetId = std::uint32_t;
using CoverId = std::uint32_t;

// Thrown when a domain value would violate its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bipartite coverage structure: areas 1..num_areas, subsets (sensors)
// 1..num_subsets, and per subset the areas it covers. k is the number of
// covers a partition splits the subsets into. Memberships are normalized to
// ascending order at construction; instances are immutable afterwards.
class ProblemInstance {
 public:
  ProblemInstance(std::uint32_t num_areas, std::uint32_t k,
                  std::vector<std::vector<AreaId>> membership)
      : num_areas_(num_areas), k_(k), membership_(std::move(membership)) {
    if (num_areas_ < 1) throw ValidationError("instance needs at least one area");
    if (membership_.empty()) throw ValidationError("instance needs at least one subset");
    if (k_ < 2) throw ValidationError("k must be at least 2");
    edge_count_ = 0;
    for (auto& subset : membership_) {
      std::sort(subset.begin(), subset.end());
      for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 1 || subset[i] > num_areas_)
          throw ValidationError("area id " + std::to_string(subset[i]) + " out of range");
        if (i > 0 && subset[i] == subset[i - 1])
          throw ValidationError("duplicate area id " + std::to_string(subset[i]) +
                                " within one subset");
      }
      edge_count_ += subset.size();
    }
  }

  std::uint32_t num_areas() const { return num_areas_; }
  std::uint32_t num_subsets() const { return static_cast<std::uint32_t>(membership_.size()); }
  std::uint32_t k() const { return k_; }
  std::uint64_t edge_count() const { return edge_count_; }

  // Areas covered by subset j (1-based), ascending.
  const std::vector<AreaId>& subset(SubsetId j) const { return membership_[j - 1]; }
  const std::vector<std::vector<AreaId>>& membership() const { return membership_; }

  std::uint32_t max_subset_size() const {
    std::size_t m = 0;
    for (const auto& s : membership_) m = std::max(m, s.size());
    return static_cast<std::uint32_t>(m);
  }

  // N_v for every area, indexed by area id - 1.
  std::vector<std::uint32_t> area_subset_counts() const {
    std::vector<std::uint32_t> counts(num_areas_, 0);
    for (const auto& s : membership_)
      for (AreaId v : s) ++counts[v - 1];
    return counts;
  }

  bool operator==(const ProblemInstance&) const = default;

 private:
  std::uint32_t num_areas_;
  std::uint32_t k_;
  std::vector<std::vector<AreaId>> membership_;
  std::uint64_t edge_count_;
};

// Total assignment of every subset to exactly one of k covers.
class Partition {
 public:
  Partition(std::uint32_t k, std::vector<CoverId> assignment)
      : k_(k), assignment_(std::move(assignment)) {
    if (assignment_.empty()) throw ValidationError("partition must assign at least one subset");
    for (CoverId c : assignment_)
      if (c < 1 || c > k_)
        throw ValidationError("cover index " + std::to_string(c) + " outside [1, k]");
  }

  std::uint32_t k() const { return k_; }
  std::uint32_t num_subsets() const { return static_cast<std::uint32_t>(assignment_.size()); }
  CoverId cover_of(SubsetId j) const { return assignment_[j - 1]; }
  const std::vector<CoverId>& assignment() const { return assignment_; }

  bool operator==(const Partition&) const = default;

 private:
  std::uint32_t k_;
  std::vector<CoverId> assignment_;
};

// Coverage statistics of one partition: l_v per area, N_v per area, the
// objective sum(l_v), per-cover union sizes, and the fairness/range summaries.
struct CoverageReport {
  std::uint64_t objective = 0;
  std::vector<std::uint32_t> per_area_cover_count;   // l_v, index v - 1
  std::vector<std::uint32_t> per_area_subset_count;  // N_v, index v - 1
  std::vector<std::uint64_t> cover_sizes;            // |union of cover i|, index i - 1
  double min_fair_ratio = 1.0;   // min over areas with N_v >= 1 of l_v / min(k, N_v)
  double size_range_ratio = 1.0; // min cover size / max cover size

  bool operator==(const CoverageReport&) const = default;
};

struct UpperBound {
  enum class Binding { kAreaSlots, kEdges, kBoth };
  std::uint64_t value = 0;
  Binding which = Binding::kBoth;
};

// min(k * |S|, |E|): no partition can cover more area-cover slots than exist,
// nor more than one unit per membership edge.
inline UpperBound upper_bound(const ProblemInstance& instance) {
  const std::uint64_t area_slots =
      static_cast<std::uint64_t>(instance.k()) * instance.num_areas();
  const std::uint64_t edges = instance.edge_count();
  UpperBound bound;
  bound.value = std::min(area_slots, edges);
  bound.which = edges < area_slots   ? UpperBound::Binding::kEdges
                : area_slots < edges ? UpperBound::Binding::kAreaSlots
                                     : UpperBound::Binding::kBoth;
  return bound;
}

// Evaluates a partition with exact set semantics: an area counts once per
// cover that contains at least one subset covering it, no matter how many do.
inline CoverageReport evaluate(const ProblemInstance& instance, const Partition& partition) {
  if (partition.num_subsets() != instance.num_subsets() || partition.k() != instance.k())
    throw ValidationError("partition was not built for this instance");

  const std::uint32_t k = instance.k();
  const std::uint32_t num_areas = instance.num_areas();
  const std::uint32_t words = (k + 63) / 64;

  // covered bitmask per area: bit i-1 of word (i-1)/64 set iff cover i covers v.
  std::vector<std::uint64_t> covered(static_cast<std::size_t>(num_areas) * words, 0);
  for (SubsetId j = 1; j <= instance.num_subsets(); ++j) {
    const CoverId cover = partition.cover_of(j);
    const std::size_t word = (cover - 1) / 64;
    const std::uint64_t bit = 1ULL << ((cover - 1) % 64);
    for (AreaId v : instance.subset(j))
      covered[static_cast<std::size_t>(v - 1) * words + word] |= bit;
  }

  CoverageReport report;
  report.per_area_subset_count = instance.area_subset_counts();
  report.per_area_cover_count.assign(num_areas, 0);
  report.cover_sizes.assign(k, 0);

  double min_fair = 2.0;  // ratios are always <= 1
  for (std::uint32_t v = 0; v < num_areas; ++v) {
    std::uint32_t l_v = 0;
    for (std::uint32_t w = 0; w < words; ++w) {
      std::uint64_t mask = covered[static_cast<std::size_t>(v) * words + w];
      l_v += static_cast<std::uint32_t>(std::popcount(mask));
      while (mask != 0) {
        const int bit = std::countr_zero(mask);
        ++report.cover_sizes[w * 64 + bit];
        mask &= mask - 1;
      }
    }
    report.per_area_cover_count[v] = l_v;
    report.objective += l_v;
    const std::uint32_t n_v = report.per_area_subset_count[v];
    if (n_v >= 1)
      min_fair = std::min(min_fair, static_cast<double>(l_v) / std::min(k, n_v));
  }
  report.min_fair_ratio = min_fair <= 1.0 ? min_fair : 1.0;  // 1.0 when no covered area

  const auto [min_it, max_it] =
      std::minmax_element(report.cover_sizes.begin(), report.cover_sizes.end());
  report.size_range_ratio =
      *max_it == 0 ? 1.0 : static_cast<double>(*min_it) / static_cast<double>(*max_it);
  return report;
}

// Random bipartite instance: num_edges distinct subset-area pairs drawn
// uniformly without replacement (collisions redrawn, so |E| is exact).
// Pure function of its arguments: a fixed seed regenerates the same instance.
inline ProblemInstance generate_instance(std::uint32_t num_areas, std::uint32_t num_subsets,
                                         std::uint64_t num_edges, std::uint32_t k,
                                         std::uint64_t seed) {
  if (num_areas < 1 || num_subsets < 1 || num_edges < 1)
    throw ValidationError("num_areas, num_subsets and num_edges must all be at least 1");
  if (k < 2) throw ValidationError("k must be at least 2");
  const std::uint64_t pair_space =
      static_cast<std::uint64_t>(num_areas) * static_cast<std::uint64_t>(num_subsets);
  if (num_edges > pair_space)
    throw ValidationError("num_edges " + std::to_string(num_edges) +
                          " exceeds the number of possible subset-area pairs " +
                          std::to_string(pair_space));

  Rng rng(seed);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(static_cast<std::size_t>(num_edges) * 2);
  std::vector<std::vector<AreaId>> membership(num_subsets);
  while (taken.size() < num_edges) {
    const std::uint64_t code = rng.next_below(pair_space);
    if (!taken.insert(code).second) continue;
    const auto subset = static_cast<std::size_t>(code / num_areas);
    const auto area = static_cast<AreaId>(code % num_areas) + 1;
    membership[subset].push_back(area);
  }
  return ProblemInstance(num_areas, k, std::move(membership));
}

}  // namespace kcover

#endif  // KCOVER_INSTANCE_HPP_
