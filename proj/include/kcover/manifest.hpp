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

#ifndef KCOVER_MANIFEST_HPP_
#define KCOVER_MANIFEST_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kcover/io.hpp"
#include "kcover/version.hpp"

namespace kcover {

// Record of one CLI run, written next to its outputs. Replaying a manifest
// (the `replay` subcommand) reproduces the listed outputs byte for byte;
// wall_ms is informational and not part of that contract.
struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();  // flag name -> value
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
};

inline nlohmann::json manifest_to_json(const RunManifest& manifest) {
  return nlohmann::json{{"tool", "kcover"},
                        {"version", kVersion},
                        {"subcommand", manifest.subcommand},
                        {"parameters", manifest.parameters},
                        {"seed", manifest.seed},
                        {"inputs", manifest.inputs},
                        {"outputs", manifest.outputs},
                        {"wall_ms", manifest.wall_ms}};
}

inline void write_manifest(const RunManifest& manifest, std::ostream& out) {
  out << manifest_to_json(manifest).dump(2) << '\n';
}

inline RunManifest read_manifest(std::istream& in, const std::string& source = "<manifest>") {
  nlohmann::json data;
  try {
    in >> data;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  RunManifest manifest;
  try {
    data.at("subcommand").get_to(manifest.subcommand);
    manifest.parameters = data.at("parameters");
    data.at("seed").get_to(manifest.seed);
    data.at("inputs").get_to(manifest.inputs);
    data.at("outputs").get_to(manifest.outputs);
    data.at("wall_ms").get_to(manifest.wall_ms);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("missing or mistyped field: ") + e.what());
  }
  return manifest;
}

}  // namespace kcover

#endif  // KCOVER_MANIFEST_HPP_
