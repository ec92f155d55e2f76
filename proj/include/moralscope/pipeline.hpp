// Copyright 2026 The Moralscope Authors.
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

#ifndef MORALSCOPE_PIPELINE_HPP_
#define MORALSCOPE_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralscope {

namespace fs = std::filesystem;

struct TopicInput {
  std::string name;
  fs::path corpus;
  std::vector<std::string> query_words;
};

struct PipelineConfig {
  fs::path corpus;
  std::vector<std::string> query_words{"immoral", "immorality"};
  std::optional<std::string> lang = "en";
  std::vector<TopicInput> topics;
  fs::path dictionary;
  std::optional<fs::path> stopwords;  // replaces the embedded list
  std::size_t min_token_len = 3;
  bool lowercase = true;

  std::size_t n1 = 2000;
  std::size_t n2 = 20000;
  int k = 100;
  std::vector<std::size_t> topic_n{10, 100};
  std::size_t extend_n = 100;
  std::uint64_t seed = 42;
  fs::path out_dir = "moralscope-out";

  PipelineConfig();

  // Relative paths in the JSON are resolved against base_dir. Unknown keys
  // are rejected.
  static PipelineConfig from_json(const nlohmann::json& json, const fs::path& base_dir);
  static PipelineConfig load(const fs::path& path);
  nlohmann::ordered_json to_json() const;

  // Throws ConfigError on inconsistent parameters or missing input files.
  void validate() const;
};

enum class Stage { Ingest, Select, Matrix, Svd, Vectors, Loadings, Extend, Pca, Report, All };

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);
// Every concrete stage in execution order.
const std::vector<Stage>& pipeline_stages();

// File names (relative to out_dir) a stage writes for this config.
std::vector<std::string> stage_artifacts(Stage stage, const PipelineConfig& config);

// Runs one stage, or every stage in order for Stage::All. Each stage reads
// its inputs from out_dir, writes its artifacts and records their hashes in
// out_dir/manifest.json. Throws PrerequisiteError when an input artifact is
// missing, ConfigError on invalid configuration (before any work) and
// DataError on unusable data.
void run(Stage stage, const PipelineConfig& config);

// artifact name -> SHA-256 for every artifact recorded in a manifest.
std::map<std::string, std::string> manifest_hashes(const fs::path& out_dir);

}  // namespace moralscope

#endif  // MORALSCOPE_PIPELINE_HPP_
