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

#ifndef KCOVER_IO_HPP_
#define KCOVER_IO_HPP_

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kcover/instance.hpp"

namespace kcover {

// Malformed input; the message carries "<source>:<line>:".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

// Line reader that skips comment (#) and blank lines and tracks line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_number_;
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_, line_number_, message);
  }

  std::size_t line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_number_ = 0;
};

template <typename T>
bool parse_fields(const std::string& line, std::vector<T>& out) {
  out.clear();
  std::istringstream fields(line);
  T value;
  while (fields >> value) out.push_back(value);
  return fields.eof();
}

}  // namespace detail

// Instance interchange format (line oriented):
//   kcover 1
//   <|S|> <n> <k>
//   <subset-id> <count> <area-id>...   (ids 1-based, areas ascending)
// Lines starting with '#' are comments.
inline void write_instance(const ProblemInstance& instance, std::ostream& out) {
  out << "kcover 1\n";
  out << instance.num_areas() << ' ' << instance.num_subsets() << ' ' << instance.k() << '\n';
  for (SubsetId j = 1; j <= instance.num_subsets(); ++j) {
    const auto& areas = instance.subset(j);
    out << j << ' ' << areas.size();
    for (AreaId v : areas) out << ' ' << v;
    out << '\n';
  }
}

inline ProblemInstance read_instance(std::istream& in, const std::string& source = "<instance>") {
  detail::LineReader reader(in, source);
  std::string line;

  if (!reader.next(line)) reader.fail("missing header, expected 'kcover 1'");
  if (line != "kcover 1") reader.fail("bad header '" + line + "', expected 'kcover 1'");

  if (!reader.next(line)) reader.fail("missing dimensions line '<|S|> <n> <k>'");
  std::vector<std::int64_t> dims;
  if (!detail::parse_fields(line, dims) || dims.size() != 3)
    reader.fail("expected three integers '<|S|> <n> <k>'");
  const auto [areas, subsets, k] = std::tuple(dims[0], dims[1], dims[2]);
  if (areas < 1 || subsets < 1) reader.fail("area and subset counts must be at least 1");
  if (areas > 0xFFFFFFFF || subsets > 0xFFFFFFFF || k > 0xFFFFFFFF)
    reader.fail("counts exceed the 32-bit id space");
  if (k < 2) reader.fail("k must be at least 2");

  std::vector<std::vector<AreaId>> membership;  // grows with actual lines, not the header
  for (std::int64_t j = 1; j <= subsets; ++j) {
    if (!reader.next(line)) reader.fail("missing line for subset " + std::to_string(j));
    std::vector<std::int64_t> fields;
    if (!detail::parse_fields(line, fields) || fields.size() < 2)
      reader.fail("expected '<subset-id> <count> <area-id>...'");
    if (fields[0] != j)
      reader.fail("subset id " + std::to_string(fields[0]) + ", expected " + std::to_string(j));
    const std::int64_t count = fields[1];
    if (count < 0 || static_cast<std::size_t>(count) != fields.size() - 2)
      reader.fail("area count " + std::to_string(count) + " does not match " +
                  std::to_string(fields.size() - 2) + " listed ids");
    std::vector<AreaId> subset;
    subset.reserve(static_cast<std::size_t>(count));
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::int64_t v = fields[i];
      if (v < 1 || v > areas) reader.fail("area id " + std::to_string(v) + " out of range");
      if (i > 2 && v <= fields[i - 1])
        reader.fail("area ids must be ascending (duplicate edge at id " + std::to_string(v) + ")");
      subset.push_back(static_cast<AreaId>(v));
    }
    membership.push_back(std::move(subset));
  }
  if (reader.next(line)) reader.fail("unexpected trailing content '" + line + "'");
  return ProblemInstance(static_cast<std::uint32_t>(areas), static_cast<std::uint32_t>(k),
                         std::move(membership));
}

// Partition format:
//   kpart 1
//   <n> <k>
//   <subset-id> <cover-index>
inline void write_partition(const Partition& partition, std::ostream& out) {
  out << "kpart 1\n";
  out << partition.num_subsets() << ' ' << partition.k() << '\n';
  for (SubsetId j = 1; j <= partition.num_subsets(); ++j)
    out << j << ' ' << partition.cover_of(j) << '\n';
}

inline Partition read_partition(std::istream& in, const std::string& source = "<partition>") {
  detail::LineReader reader(in, source);
  std::string line;

  if (!reader.next(line)) reader.fail("missing header, expected 'kpart 1'");
  if (line != "kpart 1") reader.fail("bad header '" + line + "', expected 'kpart 1'");

  if (!reader.next(line)) reader.fail("missing dimensions line '<n> <k>'");
  std::vector<std::int64_t> dims;
  if (!detail::parse_fields(line, dims) || dims.size() != 2)
    reader.fail("expected two integers '<n> <k>'");
  const std::int64_t subsets = dims[0];
  const std::int64_t k = dims[1];
  if (subsets < 1) reader.fail("subset count must be at least 1");
  if (subsets > 0xFFFFFFFF || k > 0xFFFFFFFF) reader.fail("counts exceed the 32-bit id space");
  if (k < 2) reader.fail("k must be at least 2");

  std::vector<CoverId> assignment;
  for (std::int64_t j = 1; j <= subsets; ++j) {
    if (!reader.next(line)) reader.fail("missing assignment for subset " + std::to_string(j));
    std::vector<std::int64_t> fields;
    if (!detail::parse_fields(line, fields) || fields.size() != 2)
      reader.fail("expected '<subset-id> <cover-index>'");
    if (fields[0] != j)
      reader.fail("subset id " + std::to_string(fields[0]) + ", expected " + std::to_string(j));
    if (fields[1] < 1 || fields[1] > k)
      reader.fail("cover index " + std::to_string(fields[1]) + " outside [1, k]");
    assignment.push_back(static_cast<CoverId>(fields[1]));
  }
  if (reader.next(line)) reader.fail("unexpected trailing content '" + line + "'");
  return Partition(static_cast<std::uint32_t>(k), std::move(assignment));
}

// Coverage reports travel as JSON (stable key order, round-trip exact).
inline nlohmann::json report_to_json(const CoverageReport& report) {
  return nlohmann::json{{"objective", report.objective},
                        {"per_area_cover_count", report.per_area_cover_count},
                        {"per_area_subset_count", report.per_area_subset_count},
                        {"cover_sizes", report.cover_sizes},
                        {"min_fair_ratio", report.min_fair_ratio},
                        {"size_range_ratio", report.size_range_ratio}};
}

inline void write_report(const CoverageReport& report, std::ostream& out) {
  out << report_to_json(report).dump(2) << '\n';
}

inline CoverageReport read_report(std::istream& in, const std::string& source = "<report>") {
  nlohmann::json data;
  try {
    in >> data;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  CoverageReport report;
  try {
    data.at("objective").get_to(report.objective);
    data.at("per_area_cover_count").get_to(report.per_area_cover_count);
    data.at("per_area_subset_count").get_to(report.per_area_subset_count);
    data.at("cover_sizes").get_to(report.cover_sizes);
    data.at("min_fair_ratio").get_to(report.min_fair_ratio);
    data.at("size_range_ratio").get_to(report.size_range_ratio);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("missing or mistyped field: ") + e.what());
  }
  return report;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

inline ProblemInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in, path);
}

inline Partition read_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_partition(in, path);
}

}  // namespace kcover

#endif  // KCOVER_IO_HPP_
