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

#ifndef MORALSCOPE_SYNTH_HPP_
#define MORALSCOPE_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "moralscope/lexicon.hpp"

namespace moralscope {

// Shape of a planted corpus. Each foundation owns a cluster of pseudo-words
// that only ever co-occur with that foundation's vice words, so the
// foundation of a cluster tweet is known by construction.
struct SynthSpec {
  std::size_t tweets = 5000;
  std::uint64_t seed = 42;
  std::size_t cluster_words = 120;       // per foundation
  std::size_t background_words = 60000;  // shared Zipf-distributed filler
  double neutral_fraction = 0.2;         // tweets with filler only
  double stray_rate = 0.25;              // cluster tweets with one word of another foundation
  double background_exponent = 1.05;
  std::size_t topic_tweets = 2000;       // per topic corpus
  std::size_t topic_words = 40;          // topic-only words per topic
};

struct SynthTopic {
  std::string name;
  std::vector<std::string> query_words;
  Foundation leaning;
};

// abortion, homosexuality, immigration, religion.
const std::vector<SynthTopic>& synth_topics();

// Tweet ids are "<cluster>-<n>" where cluster is a lowercase foundation name
// or "neutral". Throws ConfigError when spec.tweets is 0.
void synth_corpus(const SynthSpec& spec, const MFDictionary& dict,
                  const std::filesystem::path& out);

// Writes immorality.jsonl, topics/<name>.jsonl and a config.json that runs
// the full pipeline on them.
void synth_workspace(const SynthSpec& spec, const MFDictionary& dict,
                     const std::filesystem::path& dir);

// Cluster id of a synthetic tweet id ("care", ..., "neutral").
std::string synth_cluster(const std::string& tweet_id);

}  // namespace moralscope

#endif  // MORALSCOPE_SYNTH_HPP_
