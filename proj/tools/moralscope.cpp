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

// moralscope: staged moral-foundation loading pipeline.
//
//   moralscope all --config cfg.json
//   moralscope run --stage svd --config cfg.json --k 50
//   moralscope synth --out work --tweets 5000

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "moralscope/errors.hpp"
#include "moralscope/lexicon.hpp"
#include "moralscope/pipeline.hpp"
#include "moralscope/synth.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n1;
  std::optional<std::size_t> n2;
  std::optional<int> k;
  std::vector<std::size_t> topic_n;
  std::optional<std::size_t> extend_n;
  std::string stage;

  moralscope::PipelineConfig apply() const {
    auto c = moralscope::PipelineConfig::load(config);
    if (!out.empty()) c.out_dir = out;
    if (seed) c.seed = *seed;
    if (n1) c.n1 = *n1;
    if (n2) c.n2 = *n2;
    if (k) c.k = *k;
    if (!topic_n.empty()) c.topic_n = topic_n;
    if (extend_n) c.extend_n = *extend_n;
    return c;
  }
};

void add_pipeline_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline configuration (JSON)")->required();
  cmd->add_option("--out", o.out, "Output directory (overrides config)");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--n1", o.n1, "Number of keywords");
  cmd->add_option("--n2", o.n2, "Number of context words");
  cmd->add_option("--k", o.k, "Embedding dimension");
  cmd->add_option("--topic-n", o.topic_n, "Topic vector sizes")->delimiter(',');
  cmd->add_option("--extend-n", o.extend_n, "Extended dictionary size per foundation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moral foundation loadings for short-text corpora"};
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  Overrides overrides;
  std::optional<moralscope::Stage> chosen;
  for (moralscope::Stage stage : moralscope::pipeline_stages()) {
    auto* cmd = app.add_subcommand(std::string(moralscope::to_string(stage)),
                                   "Run the " + std::string(moralscope::to_string(stage)) +
                                       " stage");
    add_pipeline_options(cmd, overrides);
    cmd->callback([&chosen, stage] { chosen = stage; });
  }
  auto* all = app.add_subcommand("all", "Run every stage in order");
  add_pipeline_options(all, overrides);
  all->callback([&chosen] { chosen = moralscope::Stage::All; });

  auto* run = app.add_subcommand("run", "Run the stage named by --stage");
  add_pipeline_options(run, overrides);
  run->add_option("--stage", overrides.stage, "Stage name or 'all'")->required();

  moralscope::SynthSpec spec;
  std::string synth_out;
  std::string synth_dictionary;
  auto* synth = app.add_subcommand("synth", "Write a planted synthetic workspace");
  synth->add_option("--out", synth_out, "Workspace directory")->required();
  synth->add_option("--tweets", spec.tweets, "Immorality corpus size");
  synth->add_option("--topic-tweets", spec.topic_tweets, "Tweets per topic corpus");
  synth->add_option("--seed", spec.seed, "Random seed");
  synth->add_option("--dictionary", synth_dictionary, "Dictionary TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  spdlog::set_level(verbose ? spdlog::level::debug
                            : quiet ? spdlog::level::err : spdlog::level::info);

  try {
    if (synth->parsed()) {
      const auto dict = moralscope::load_dictionary(
          synth_dictionary.empty() ? moralscope::default_dictionary_path()
                                   : std::filesystem::path(synth_dictionary));
      moralscope::synth_workspace(spec, dict, synth_out);
      spdlog::info("wrote synthetic workspace to {}", synth_out);
      return 0;
    }
    if (run->parsed()) {
      chosen = moralscope::parse_stage(overrides.stage);
      if (!chosen) throw moralscope::ConfigError("unknown stage '" + overrides.stage + "'");
    }
    moralscope::run(*chosen, overrides.apply());
    return 0;
  } catch (const moralscope::ConfigError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
}
