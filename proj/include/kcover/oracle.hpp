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

#ifndef KCOVER_ORACLE_HPP_
#define KCOVER_ORACLE_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcover/instance.hpp"
#include "kcover/rng.hpp"

namespace kcover {

// Exhaustive search refused: the instance shape or the explored node count
// is over budget. Never degraded to an approximation.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node ceiling used when the caller does not pass an explicit budget;
// covers the default shape guard (n <= 12, k <= 4) with room to spare.
inline constexpr std::uint64_t kDefaultOracleNodeBudget = 8'000'000;
inline constexpr std::uint32_t kDefaultOracleMaxSubsets = 12;
inline constexpr std::uint32_t kDefaultOracleMaxCovers = 4;

// Exact optima over all k^n partitions, with one witness per criterion.
struct OracleResult {
  std::uint64_t optimum_objective = 0;  // max of sum_v l_v
  std::uint32_t optimum_maxmin = 0;     // l*: max of min_v l_v over areas with N_v >= 1
  Partition objective_witness;
  Partition maxmin_witness;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const ProblemInstance& instance, std::uint64_t node_budget)
      : instance_(instance),
        n_(instance.num_subsets()),
        k_(instance.k()),
        words_((instance.num_areas() + 63) / 64),
        budget_(node_budget) {
    subset_masks_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (SubsetId j = 1; j <= n_; ++j)
      for (AreaId v : instance.subset(j))
        subset_masks_[(j - 1) * words_ + (v - 1) / 64] |= 1ULL << ((v - 1) % 64);

    suffix_sizes_.assign(n_ + 2, 0);
    for (SubsetId j = n_; j >= 1; --j)
      suffix_sizes_[j] = suffix_sizes_[j + 1] + instance.subset(j).size();

    const auto counts = instance.area_subset_counts();
    for (AreaId v = 1; v <= instance.num_areas(); ++v)
      if (counts[v - 1] >= 1) relevant_areas_.push_back(v);
  }

  std::uint64_t nodes() const { return nodes_; }

  // Maximizes sum_v l_v. Cover labels are interchangeable, so subset 1 is
  // pinned to cover 1; the first optimum found in this canonical order is
  // the witness, which keeps witnesses reproducible.
  std::pair<std::uint64_t, Partition> maximize_objective() {
    covered_.assign(static_cast<std::size_t>(k_) * words_, 0);
    assignment_.assign(n_, 1);
    best_value_ = 0;
    best_assignment_.assign(n_, 1);
    scratch_.assign(static_cast<std::size_t>(n_ + 1) * words_, 0);
    objective_dfs(1, 0);
    return {best_value_, Partition(k_, best_assignment_)};
  }

  // Maximizes min_v l_v over areas contained in at least one subset.
  std::pair<std::uint32_t, Partition> maximize_maxmin() {
    covered_.assign(static_cast<std::size_t>(k_) * words_, 0);
    assignment_.assign(n_, 1);
    best_min_ = 0;
    best_assignment_.assign(n_, 1);
    cover_count_.assign(instance_.num_areas(), 0);
    remaining_ = instance_.area_subset_counts();
    if (!relevant_areas_.empty()) maxmin_dfs(1);
    return {best_min_, Partition(k_, best_assignment_)};
  }

 private:
  void charge_node() {
    if (++nodes_ > budget_)
      throw BudgetExceeded("oracle node budget of " + std::to_string(budget_) +
                           " exhausted; raise --budget for an exact answer");
  }

  const std::uint64_t* mask_of(SubsetId j) const {
    return &subset_masks_[(j - 1) * words_];
  }

  std::uint64_t* cover_words(CoverId i) { return &covered_[(i - 1) * words_]; }

  void objective_dfs(SubsetId j, std::uint64_t current) {
    if (j > n_) {
      if (current > best_value_) {
        best_value_ = current;
        best_assignment_ = assignment_;
      }
      return;
    }
    // Optimistic remaining credit: every unassigned subset counts in full.
    if (current + suffix_sizes_[j] <= best_value_) return;

    const std::uint64_t* mask = mask_of(j);
    std::uint64_t* changed = &scratch_[static_cast<std::size_t>(j) * words_];
    const CoverId last = (j == 1) ? 1 : k_;
    for (CoverId i = 1; i <= last; ++i) {
      charge_node();
      std::uint64_t* cover = cover_words(i);
      std::uint64_t gain = 0;
      for (std::uint32_t w = 0; w < words_; ++w) {
        changed[w] = mask[w] & ~cover[w];
        gain += std::popcount(changed[w]);
        cover[w] |= mask[w];
      }
      assignment_[j - 1] = i;
      objective_dfs(j + 1, current + gain);
      for (std::uint32_t w = 0; w < words_; ++w) cover[w] &= ~changed[w];
    }
    assignment_[j - 1] = 1;
  }

  std::uint32_t maxmin_bound() const {
    std::uint32_t bound = k_;
    for (AreaId v : relevant_areas_) {
      const std::uint32_t reachable =
          std::min(k_, cover_count_[v - 1] + remaining_[v - 1]);
      bound = std::min(bound, reachable);
    }
    return bound;
  }

  void maxmin_dfs(SubsetId j) {
    if (j > n_) {
      std::uint32_t value = k_;
      for (AreaId v : relevant_areas_) value = std::min(value, cover_count_[v - 1]);
      if (value > best_min_) {
        best_min_ = value;
        best_assignment_ = assignment_;
      }
      return;
    }
    if (maxmin_bound() <= best_min_) return;

    const auto& areas = instance_.subset(j);
    for (AreaId v : areas) --remaining_[v - 1];
    const CoverId last = (j == 1) ? 1 : k_;
    std::vector<AreaId> newly;
    newly.reserve(areas.size());
    for (CoverId i = 1; i <= last; ++i) {
      charge_node();
      std::uint64_t* cover = cover_words(i);
      newly.clear();
      for (AreaId v : areas) {
        std::uint64_t& word = cover[(v - 1) / 64];
        const std::uint64_t bit = 1ULL << ((v - 1) % 64);
        if ((word & bit) == 0) {
          word |= bit;
          ++cover_count_[v - 1];
          newly.push_back(v);
        }
      }
      assignment_[j - 1] = i;
      maxmin_dfs(j + 1);
      for (AreaId v : newly) {
        cover[(v - 1) / 64] &= ~(1ULL << ((v - 1) % 64));
        --cover_count_[v - 1];
      }
    }
    assignment_[j - 1] = 1;
    for (AreaId v : areas) ++remaining_[v - 1];
  }

  const ProblemInstance& instance_;
  std::uint32_t n_;
  std::uint32_t k_;
  std::uint32_t words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;

  std::vector<std::uint64_t> subset_masks_;
  std::vector<std::uint64_t> suffix_sizes_;
  std::vector<AreaId> relevant_areas_;

  std::vector<std::uint64_t> covered_;
  std::vector<std::uint64_t> scratch_;
  std::vector<CoverId> assignment_;
  std::vector<CoverId> best_assignment_;
  std::uint64_t best_value_ = 0;
  std::uint32_t best_min_ = 0;
  std::vector<std::uint32_t> cover_count_;
  std::vector<std::uint32_t> remaining_;
};

}  // namespace detail

// Exact optimum objective and max-min cover count by depth-first enumeration
// with branch-and-bound pruning. budget == 0 selects the default policy:
// instances larger than n <= 12, k <= 4 are refused outright and the node
// ceiling is kDefaultOracleNodeBudget. A nonzero budget lifts the shape guard
// and caps explored nodes at that value instead.
inline OracleResult exact_optimum(const ProblemInstance& instance, std::uint64_t budget = 0) {
  if (budget == 0) {
    if (instance.num_subsets() > kDefaultOracleMaxSubsets ||
        instance.k() > kDefaultOracleMaxCovers)
      throw BudgetExceeded(
          "instance outside the default oracle guard (n <= " +
          std::to_string(kDefaultOracleMaxSubsets) + ", k <= " +
          std::to_string(kDefaultOracleMaxCovers) + "); pass an explicit budget to override");
    budget = kDefaultOracleNodeBudget;
  }

  detail::ExactSearch search(instance, budget);
  auto [objective, objective_witness] = search.maximize_objective();
  auto [maxmin, maxmin_witness] = search.maximize_maxmin();
  return {objective, maxmin, std::move(objective_witness), std::move(maxmin_witness),
          search.nodes()};
}

// E4-SET SPLITTING instance: 4-element sets over a ground set, to be
// 2-colored so that as many sets as possible see both colors.
struct SplittingInstance {
  std::uint32_t ground_set_size = 0;                    // |V|
  std::vector<std::array<std::uint32_t, 4>> sets;       // R_i, elements in [1, |V|]
};

// Maps set splitting to SET 2-COVER: one subset per ground-set variable, one
// area per R_i, membership iff the variable belongs to that set. Every area
// of the result has N_v = 4 and k = 2.
inline ProblemInstance reduce_splitting(const SplittingInstance& splitting) {
  if (splitting.ground_set_size < 1)
    throw ValidationError("ground set must not be empty");
  if (splitting.sets.empty())
    throw ValidationError("splitting instance needs at least one set");
  std::vector<std::vector<AreaId>> membership(splitting.ground_set_size);
  for (std::size_t i = 0; i < splitting.sets.size(); ++i) {
    const auto& quad = splitting.sets[i];
    for (std::size_t a = 0; a < 4; ++a) {
      const std::uint32_t x = quad[a];
      if (x < 1 || x > splitting.ground_set_size)
        throw ValidationError("set element " + std::to_string(x) + " out of range");
      for (std::size_t b = 0; b < a; ++b)
        if (quad[b] == x)
          throw ValidationError("set elements must be distinct (got " + std::to_string(x) +
                                " twice)");
      membership[x - 1].push_back(static_cast<AreaId>(i + 1));
    }
  }
  return ProblemInstance(static_cast<std::uint32_t>(splitting.sets.size()), 2,
                         std::move(membership));
}

// Random member of the tight family: k = 2 and every area lies in exactly 4
// subsets. The subset count is drawn from [4, 4 + num_areas], memberships
// uniformly at random subject to N_v = 4.
inline ProblemInstance tightness_family(std::uint32_t num_areas, std::uint64_t seed) {
  if (num_areas < 1) throw ValidationError("num_areas must be at least 1");
  Rng rng(seed);
  const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.next_below(num_areas + 1));
  std::vector<std::vector<AreaId>> membership(n);
  std::array<std::uint32_t, 4> picks{};
  for (AreaId v = 1; v <= num_areas; ++v) {
    std::size_t chosen = 0;
    while (chosen < 4) {
      const auto candidate = static_cast<std::uint32_t>(rng.next_below(n));
      bool fresh = true;
      for (std::size_t t = 0; t < chosen; ++t) fresh = fresh && picks[t] != candidate;
      if (fresh) picks[chosen++] = candidate;
    }
    for (std::uint32_t j : picks) membership[j].push_back(v);
  }
  return ProblemInstance(num_areas, 2, std::move(membership));
}

}  // namespace kcover

#endif  // KCOVER_ORACLE_HPP_
