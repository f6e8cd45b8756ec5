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

#ifndef KCOVER_NETSIM_HPP_
#define KCOVER_NETSIM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kcover/algorithms.hpp"
#include "kcover/instance.hpp"
#include "kcover/io.hpp"

namespace kcover {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

// Stationary sensors and monitored areas on a plane, no obstacles. A sensor
// covers an area iff the distance is at most its sensing radius (closed
// ball). broadcast_radii (d_j) start empty and are filled by preprocess().
struct Deployment {
  std::vector<Point> sensor_positions;
  std::vector<double> sensing_radii;   // one per sensor
  std::vector<Point> area_positions;
  std::vector<double> broadcast_radii; // d_j, one per sensor once preprocessed

  std::uint32_t num_sensors() const {
    return static_cast<std::uint32_t>(sensor_positions.size());
  }
  std::uint32_t num_areas() const {
    return static_cast<std::uint32_t>(area_positions.size());
  }
  bool preprocessed() const { return broadcast_radii.size() == sensor_positions.size(); }
};

struct Message {
  enum class Kind { kHello, kDecision };
  Kind kind = Kind::kHello;
  SubsetId sender = 0;
  std::uint32_t slot = 0;   // emit time; delivery is within the same slot
  double radius = 0.0;
  std::vector<AreaId> areas;           // areas the sender covers
  std::vector<double> area_distances;  // HELLO only: distance sender -> area
  CoverId cover = 0;                   // DECISION only
};

struct SimConfig {
  // Broadcasts are delivered instantaneously to every sensor within the
  // closed ball of the emit radius; that is the weakest delivery model under
  // which sensor j has heard slots 1..j-1 before its own turn.
  std::uint32_t k = 2;
};

// A DECISION that failed to reach a sensor sharing at least one area with
// the sender. Recorded rather than patched: the preprocessing radii do not
// provably reach every neighbor in every geometry.
struct MissedDecision {
  SubsetId sender = 0;
  SubsetId neighbor = 0;
  std::uint32_t slot = 0;
};

struct PreprocessResult {
  Deployment deployment;        // input plus broadcast_radii
  std::vector<Message> hellos;  // one per sensor (empty payload if it covers nothing)
};

struct PartitionPhaseResult {
  AlgorithmOutcome outcome;
  std::vector<Message> decisions;  // one per sensor, emitted at slot = sensor id
  std::vector<MissedDecision> missed;
};

struct NetsimResult {
  AlgorithmOutcome outcome;
  std::vector<Message> hellos;
  std::vector<Message> decisions;
  std::vector<MissedDecision> missed;
  Deployment deployment;  // with d_j
};

namespace detail {

inline void check_deployment(const Deployment& d) {
  if (d.sensor_positions.empty()) throw ValidationError("deployment needs at least one sensor");
  if (d.area_positions.empty()) throw ValidationError("deployment needs at least one area");
  if (d.sensing_radii.size() != d.sensor_positions.size())
    throw ValidationError("one sensing radius per sensor required");
}

// Coverage sets induced by the sensing radii, independent of k.
inline std::vector<std::vector<AreaId>> coverage_sets(const Deployment& d) {
  std::vector<std::vector<AreaId>> sets(d.num_sensors());
  for (std::uint32_t j = 0; j < d.num_sensors(); ++j) {
    const double reach2 = d.sensing_radii[j] * d.sensing_radii[j];
    for (std::uint32_t v = 0; v < d.num_areas(); ++v)
      if (squared_distance(d.sensor_positions[j], d.area_positions[v]) <= reach2)
        sets[j].push_back(v + 1);
  }
  return sets;
}

}  // namespace detail

// Abstracts the geometry away: subsets are the sensors' coverage sets under
// the closed-ball sensing rule, numbered in deployment order.
inline ProblemInstance derive_instance(const Deployment& deployment, std::uint32_t k) {
  detail::check_deployment(deployment);
  return ProblemInstance(deployment.num_areas(), k, detail::coverage_sets(deployment));
}

// Two-step broadcast preprocessing that fixes each sensor's decision radius:
//   step 1: broadcast id, covered areas, and area distances to twice the
//           distance of the furthest covered area (r_j);
//   step 2: d_j = the furthest area-to-sensor distance among heard sensors
//           sharing an area, floored at r_j. Sensors covering nothing keep
//           d_j = 0 and an empty HELLO.
inline PreprocessResult preprocess(const Deployment& deployment) {
  detail::check_deployment(deployment);
  const auto sets = detail::coverage_sets(deployment);
  const std::uint32_t n = deployment.num_sensors();

  PreprocessResult result{deployment, {}};
  result.hellos.reserve(n);
  std::vector<double> step1_radius(n, 0.0);
  for (std::uint32_t j = 0; j < n; ++j) {
    Message hello;
    hello.kind = Message::Kind::kHello;
    hello.sender = j + 1;
    hello.slot = 0;
    hello.areas = sets[j];
    double furthest = 0.0;
    for (AreaId v : sets[j]) {
      const double dist =
          distance(deployment.sensor_positions[j], deployment.area_positions[v - 1]);
      hello.area_distances.push_back(dist);
      furthest = std::max(furthest, dist);
    }
    step1_radius[j] = 2.0 * furthest;
    hello.radius = step1_radius[j];
    result.hellos.push_back(std::move(hello));
  }

  result.deployment.broadcast_radii.assign(n, 0.0);
  for (std::uint32_t j = 0; j < n; ++j) {
    if (sets[j].empty()) continue;  // covers nothing: d_j stays 0
    double d_j = step1_radius[j];
    for (std::uint32_t s = 0; s < n; ++s) {
      if (s == j) continue;
      const Message& hello = result.hellos[s];
      // Heard only if within the sender's step-1 radius.
      if (squared_distance(deployment.sensor_positions[j], deployment.sensor_positions[s]) >
          hello.radius * hello.radius)
        continue;
      for (std::size_t idx = 0; idx < hello.areas.size(); ++idx) {
        const AreaId v = hello.areas[idx];
        const bool shared =
            std::binary_search(sets[j].begin(), sets[j].end(), v);
        if (shared) d_j = std::max(d_j, hello.area_distances[idx]);
      }
    }
    result.deployment.broadcast_radii[j] = d_j;
  }
  return result;
}

// Time-slotted partition phase. At slot t = j sensor j sums each row of its
// k x |S_j| matrix (entries zeroed by DECISIONs heard so far), joins the
// best cover (ties to the lowest index), and broadcasts the decision with
// radius d_j. Neighbors that share an area but sit outside d_j are recorded
// in `missed`.
inline PartitionPhaseResult run_partition_phase(const Deployment& deployment,
                                                const SimConfig& config) {
  detail::check_deployment(deployment);
  if (!deployment.preprocessed())
    throw ValidationError("run_partition_phase requires preprocess() radii");
  if (config.k < 2) throw ValidationError("k must be at least 2");

  const auto sets = detail::coverage_sets(deployment);
  const std::uint32_t n = deployment.num_sensors();
  const std::uint32_t k = config.k;

  // Local matrix per sensor: row i, one column per covered area, 1 = that
  // cover does not yet monitor the area as far as this sensor knows.
  std::vector<std::vector<std::uint8_t>> matrix(n);
  for (std::uint32_t j = 0; j < n; ++j)
    matrix[j].assign(static_cast<std::size_t>(k) * sets[j].size(), 1);

  const auto column_of = [&](std::uint32_t sensor, AreaId v) -> std::ptrdiff_t {
    const auto& areas = sets[sensor];
    const auto it = std::lower_bound(areas.begin(), areas.end(), v);
    if (it == areas.end() || *it != v) return -1;
    return it - areas.begin();
  };

  std::vector<Message> decisions;
  std::vector<MissedDecision> missed;
  std::vector<CoverId> assignment(n, 1);
  std::vector<TraceEntry> trace;
  trace.reserve(n);

  for (std::uint32_t slot = 1; slot <= n; ++slot) {
    const std::uint32_t j = slot - 1;  // sensor deciding this slot
    const std::size_t columns = sets[j].size();

    const auto row_sum = [&](CoverId i) {
      std::uint32_t sum = 0;
      for (std::size_t c = 0; c < columns; ++c)
        sum += matrix[j][(i - 1) * columns + c];
      return sum;
    };

    CoverId best = 1;
    std::uint32_t best_sum = row_sum(1);
    bool tied = false;
    for (CoverId i = 2; i <= k; ++i) {
      const std::uint32_t sum = row_sum(i);
      if (sum > best_sum) {
        best = i;
        best_sum = sum;
        tied = false;
      } else if (sum == best_sum) {
        tied = true;
      }
    }
    assignment[j] = best;
    trace.push_back({j + 1, best, static_cast<double>(best_sum), tied});

    Message decision;
    decision.kind = Message::Kind::kDecision;
    decision.sender = j + 1;
    decision.slot = slot;
    decision.radius = deployment.broadcast_radii[j];
    decision.areas = sets[j];
    decision.cover = best;

    // Instantaneous delivery within the closed ball of d_j.
    const double reach2 = decision.radius * decision.radius;
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == j) continue;
      bool shares = false;
      for (AreaId v : sets[j]) {
        if (column_of(r, v) >= 0) {
          shares = true;
          break;
        }
      }
      const bool reached =
          squared_distance(deployment.sensor_positions[j], deployment.sensor_positions[r]) <=
          reach2;
      if (!reached) {
        if (shares) missed.push_back({j + 1, r + 1, slot});
        continue;
      }
      for (AreaId v : sets[j]) {
        const std::ptrdiff_t c = column_of(r, v);
        if (c >= 0) matrix[r][(best - 1) * sets[r].size() + static_cast<std::size_t>(c)] = 0;
      }
    }
    decisions.push_back(std::move(decision));
  }

  return {{Partition(k, std::move(assignment)), std::move(trace)}, std::move(decisions),
          std::move(missed)};
}

// Full protocol run: preprocessing then the partition phase.
inline NetsimResult simulate(const Deployment& deployment, const SimConfig& config) {
  PreprocessResult pre = preprocess(deployment);
  PartitionPhaseResult phase = run_partition_phase(pre.deployment, config);
  return {std::move(phase.outcome), std::move(pre.hellos), std::move(phase.decisions),
          std::move(phase.missed), std::move(pre.deployment)};
}

// Deployment file format (line oriented):
//   kdeploy 1
//   <num_sensors> <num_areas> <k>
//   <id> <x> <y> <sensing_radius>   (sensor lines)
//   <id> <x> <y>                    (area lines)
struct LoadedDeployment {
  Deployment deployment;
  std::uint32_t k = 2;
};

namespace detail {

inline std::string format_coord(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace detail

inline void write_deployment(const Deployment& deployment, std::uint32_t k,
                             std::ostream& out) {
  out << "kdeploy 1\n";
  out << deployment.num_sensors() << ' ' << deployment.num_areas() << ' ' << k << '\n';
  for (std::uint32_t j = 0; j < deployment.num_sensors(); ++j)
    out << (j + 1) << ' ' << detail::format_coord(deployment.sensor_positions[j].x) << ' '
        << detail::format_coord(deployment.sensor_positions[j].y) << ' '
        << detail::format_coord(deployment.sensing_radii[j]) << '\n';
  for (std::uint32_t v = 0; v < deployment.num_areas(); ++v)
    out << (v + 1) << ' ' << detail::format_coord(deployment.area_positions[v].x) << ' '
        << detail::format_coord(deployment.area_positions[v].y) << '\n';
}

inline LoadedDeployment read_deployment(std::istream& in,
                                        const std::string& source = "<deployment>") {
  detail::LineReader reader(in, source);
  std::string line;

  if (!reader.next(line)) reader.fail("missing header, expected 'kdeploy 1'");
  if (line != "kdeploy 1") reader.fail("bad header '" + line + "', expected 'kdeploy 1'");

  if (!reader.next(line)) reader.fail("missing dimensions line '<sensors> <areas> <k>'");
  std::vector<std::int64_t> dims;
  if (!detail::parse_fields(line, dims) || dims.size() != 3)
    reader.fail("expected three integers '<sensors> <areas> <k>'");
  if (dims[0] < 1 || dims[1] < 1) reader.fail("sensor and area counts must be at least 1");
  if (dims[2] < 2) reader.fail("k must be at least 2");

  LoadedDeployment loaded;
  loaded.k = static_cast<std::uint32_t>(dims[2]);
  auto& d = loaded.deployment;
  for (std::int64_t j = 1; j <= dims[0]; ++j) {
    if (!reader.next(line)) reader.fail("missing line for sensor " + std::to_string(j));
    std::istringstream fields(line);
    std::int64_t id = 0;
    double x = 0, y = 0, radius = 0;
    if (!(fields >> id >> x >> y >> radius) || !(fields >> std::ws).eof())
      reader.fail("expected '<id> <x> <y> <sensing_radius>'");
    if (id != j) reader.fail("sensor id " + std::to_string(id) + ", expected " + std::to_string(j));
    if (radius < 0) reader.fail("sensing radius must be nonnegative");
    d.sensor_positions.push_back({x, y});
    d.sensing_radii.push_back(radius);
  }
  for (std::int64_t v = 1; v <= dims[1]; ++v) {
    if (!reader.next(line)) reader.fail("missing line for area " + std::to_string(v));
    std::istringstream fields(line);
    std::int64_t id = 0;
    double x = 0, y = 0;
    if (!(fields >> id >> x >> y) || !(fields >> std::ws).eof())
      reader.fail("expected '<id> <x> <y>'");
    if (id != v) reader.fail("area id " + std::to_string(id) + ", expected " + std::to_string(v));
    d.area_positions.push_back({x, y});
  }
  if (reader.next(line)) reader.fail("unexpected trailing content '" + line + "'");
  return loaded;
}

inline LoadedDeployment read_deployment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_deployment(in, path);
}

}  // namespace kcover

#endif  // KCOVER_NETSIM_HPP_
