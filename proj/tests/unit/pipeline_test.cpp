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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "moralscope/errors.hpp"
#include "moralscope/io.hpp"
#include "moralscope/pipeline.hpp"
#include "moralscope/synth.hpp"

using namespace moralscope;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() /
              ("moralscope-" + name + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const MFDictionary& dictionary() {
  static const MFDictionary d = load_dictionary(default_dictionary_path());
  return d;
}

// A small synthetic workspace and a config scaled down to match it.
PipelineConfig small_config(const fs::path& dir, const std::string& out) {
  SynthSpec spec;
  spec.tweets = 1500;
  spec.topic_tweets = 300;
  synth_workspace(spec, dictionary(), dir);
  auto config = PipelineConfig::load(dir / "config.json");
  config.n1 = 400;
  config.n2 = 3000;
  config.k = 20;
  config.topic_n = {10, 30};
  config.extend_n = 25;
  config.out_dir = dir / out;
  return config;
}

int cli(const std::string& args) {
  const std::string command = std::string(MORALSCOPE_CLI) + " -q " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("stage names") {
  CHECK(pipeline_stages().size() == 9);
  for (Stage s : pipeline_stages()) CHECK(parse_stage(to_string(s)) == s);
  CHECK(parse_stage("all") == Stage::All);
  CHECK_FALSE(parse_stage("train").has_value());
}

TEST_CASE("config defaults and validation") {
  PipelineConfig defaults;
  CHECK(defaults.n1 == 2000);
  CHECK(defaults.n2 == 20000);
  CHECK(defaults.k == 100);
  CHECK(defaults.topic_n == std::vector<std::size_t>{10, 100});
  CHECK(defaults.extend_n == 100);
  CHECK(defaults.seed == 42);

  TempDir dir("config");
  std::ofstream(dir.path() / "c.jsonl") << "{\"id\":\"1\",\"text\":\"x\"}\n";
  auto parse = [&](const std::string& text) {
    return PipelineConfig::from_json(nlohmann::json::parse(text), dir.path());
  };
  auto ok = parse(R"({"corpus":"c.jsonl","n1":10,"n2":20,"k":5})");
  CHECK(ok.corpus == dir.path() / "c.jsonl");
  CHECK_NOTHROW(ok.validate());

  CHECK_THROWS_AS(parse(R"({"corpus":"c.jsonl","bogus":1})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"corpus":"c.jsonl","n1":"many"})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"corpus":"c.jsonl","n1":30,"n2":20})").validate(), ConfigError);
  CHECK_THROWS_AS(parse(R"({"corpus":"c.jsonl","n1":10,"n2":20,"k":11})").validate(), ConfigError);
  CHECK_THROWS_AS(parse(R"({"corpus":"missing.jsonl"})").validate(), ConfigError);
  CHECK_THROWS_AS(parse(R"({"corpus":"c.jsonl","k":0})").validate(), ConfigError);

  // Validation failures happen before any output is written.
  auto bad = parse(R"({"corpus":"c.jsonl","n1":30,"n2":20})");
  bad.out_dir = dir.path() / "out";
  CHECK_THROWS_AS(run(Stage::Ingest, bad), ConfigError);
  CHECK_FALSE(fs::exists(bad.out_dir));
}

TEST_CASE("missing prerequisite names the stage to run") {
  TempDir dir("prereq");
  auto config = small_config(dir.path(), "out");
  try {
    run(Stage::Svd, config);
    FAIL("expected a prerequisite error");
  } catch (const PrerequisiteError& e) {
    CHECK(e.stage() == "matrix");
    CHECK(std::string(e.what()).find("matrix") != std::string::npos);
  }
  run(Stage::Ingest, config);
  CHECK_THROWS_AS(run(Stage::Matrix, config), PrerequisiteError);
}

TEST_CASE("full run, staged run and rerun agree") {
  TempDir dir("determinism");
  auto config = small_config(dir.path(), "all");
  run(Stage::All, config);

  std::size_t listed = 0;
  for (Stage s : pipeline_stages()) {
    for (const auto& name : stage_artifacts(s, config)) {
      CHECK(fs::exists(config.out_dir / name));
      ++listed;
    }
  }
  CHECK(listed >= 9);
  const auto hashes = manifest_hashes(config.out_dir);
  CHECK(hashes.size() == listed);
  for (const auto& [name, hash] : hashes) {
    CHECK(hash == io::sha256_file(config.out_dir / name));
  }

  auto again = config;
  again.out_dir = dir.path() / "again";
  run(Stage::All, again);
  CHECK(manifest_hashes(again.out_dir) == hashes);

  auto staged = config;
  staged.out_dir = dir.path() / "staged";
  for (Stage s : pipeline_stages()) run(s, staged);
  CHECK(manifest_hashes(staged.out_dir) == hashes);

  auto other_seed = config;
  other_seed.out_dir = dir.path() / "seed";
  other_seed.seed = 7;
  run(Stage::All, other_seed);
  CHECK(manifest_hashes(other_seed.out_dir).at("corpus.tsv") == hashes.at("corpus.tsv"));

  auto loadings = io::read_loadings(config.out_dir / "loadings.csv");
  CHECK(loadings.rows() > 0);
  for (const auto& row : loadings.values) {
    for (double v : row) CHECK(std::abs(v) <= 1.0);
  }
}

TEST_CASE("synthetic corpus generator") {
  TempDir dir("synth");
  SynthSpec spec;
  spec.tweets = 0;
  CHECK_THROWS_AS(synth_corpus(spec, dictionary(), dir.path() / "zero.jsonl"), ConfigError);

  spec.tweets = 5000;
  synth_corpus(spec, dictionary(), dir.path() / "a.jsonl");
  synth_corpus(spec, dictionary(), dir.path() / "b.jsonl");
  CHECK(slurp(dir.path() / "a.jsonl") == slurp(dir.path() / "b.jsonl"));
  auto loaded = load_records(dir.path() / "a.jsonl");
  CHECK(loaded.records.size() == 5000);
  CHECK(loaded.malformed == 0);
  CHECK(synth_cluster(loaded.records[0].id) != "");

  spec.seed = 43;
  synth_corpus(spec, dictionary(), dir.path() / "c.jsonl");
  CHECK(slurp(dir.path() / "a.jsonl") != slurp(dir.path() / "c.jsonl"));
}

TEST_CASE("command line exit codes") {
  TempDir dir("cli");
  const std::string ws = (dir.path() / "ws").string();
  CHECK(cli("synth --out " + ws + " --tweets 1200 --topic-tweets 200") == 0);
  const std::string config = ws + "/config.json";
  const std::string small = " --n1 300 --n2 2000 --k 10 --topic-n 10,20 --extend-n 10";

  CHECK(cli("") == 1);
  CHECK(cli("svd --config " + config + small) == 1);
  CHECK(cli("ingest --config " + config + " --bogus") == 1);
  CHECK(cli("ingest --config " + ws + "/nope.json") == 1);
  CHECK(cli("all --config " + config + " --n1 5000 --n2 10") == 1);
  CHECK(cli("all --config " + config + small) == 0);
  CHECK(fs::exists(fs::path(ws) / "out" / "manifest.json"));
  CHECK(cli("run --stage pca --config " + config + small) == 0);

  std::ofstream(ws + "/broken.jsonl") << "not json\n";
  std::ofstream(ws + "/broken.json") << R"({"corpus":"broken.jsonl","out":"broken"})";
  CHECK(cli("ingest --config " + ws + "/broken.json") == 2);
}
