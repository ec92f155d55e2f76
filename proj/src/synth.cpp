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

#include "moralscope/synth.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <unordered_set>

#include "moralscope/corpus.hpp"
#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

std::string syllable_word(std::uint64_t code) {
  const std::uint64_t n = kConsonants.size() * kVowels.size();
  std::string word;
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t s = code % n;
    code /= n;
    word += kConsonants[s / kVowels.size()];
    word += kVowels[s % kVowels.size()];
  }
  return word;
}

struct Vocab {
  std::array<std::vector<std::string>, 5> dict_forms;
  std::array<std::vector<std::string>, 5> clusters;
  std::vector<std::string> background;
  std::vector<std::vector<std::string>> topic_only;
};

Vocab build_vocab(const SynthSpec& spec, const MFDictionary& dict) {
  std::unordered_set<std::string> reserved(default_stopwords().begin(),
                                           default_stopwords().end());
  for (const auto& t : synth_topics()) {
    reserved.insert(t.query_words.begin(), t.query_words.end());
  }
  reserved.insert({"immoral", "immorality"});

  Vocab v;
  std::unordered_set<std::string> used;
  for (const auto& e : dict.entries()) {
    const auto idx = foundation_index(e.foundation);
    if (!idx || e.polarity != Polarity::Vice) continue;
    std::vector<std::string> forms{std::string(e.stem())};
    if (e.is_wildcard()) forms.push_back(std::string(e.stem()) + "s");
    for (auto& form : forms) {
      const bool letters = std::all_of(form.begin(), form.end(),
                                       [](char c) { return c >= 'a' && c <= 'z'; });
      if (form.size() < 3 || !letters || reserved.contains(form)) continue;
      auto& list = v.dict_forms[*idx];
      if (std::find(list.begin(), list.end(), form) == list.end()) list.push_back(form);
      used.insert(form);
    }
  }

  // Pseudo-words must not collide with anything the cleaner or the
  // dictionary would treat specially.
  const std::uint64_t space = 85ULL * 85ULL * 85ULL;
  std::uint64_t cursor = 0;
  auto next_word = [&]() {
    while (true) {
      if (cursor >= space) throw ConfigError("synthetic vocabulary exhausted");
      std::string w = syllable_word((cursor++ * 7919ULL) % space);
      if (reserved.contains(w) || used.contains(w)) continue;
      bool matches = false;
      for (const auto& e : dict.entries()) {
        if (e.matches(w)) {
          matches = true;
          break;
        }
      }
      if (matches) continue;
      used.insert(w);
      return w;
    }
  };
  for (auto& cluster : v.clusters) {
    for (std::size_t i = 0; i < spec.cluster_words; ++i) cluster.push_back(next_word());
  }
  for (std::size_t t = 0; t < synth_topics().size(); ++t) {
    v.topic_only.emplace_back();
    for (std::size_t i = 0; i < spec.topic_words; ++i) v.topic_only.back().push_back(next_word());
  }
  for (std::size_t i = 0; i < spec.background_words; ++i) v.background.push_back(next_word());
  return v;
}

class Sampler {
 public:
  Sampler(const SynthSpec& spec, const Vocab& vocab)
      : rng_(spec.seed), vocab_(vocab) {
    std::vector<double> weights(vocab.background.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), spec.background_exponent);
    }
    background_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
    std::vector<double> cluster_weights(spec.cluster_words);
    for (std::size_t i = 0; i < cluster_weights.size(); ++i) {
      cluster_weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), 0.8);
    }
    cluster_ = std::discrete_distribution<std::size_t>(cluster_weights.begin(),
                                                       cluster_weights.end());
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  const std::string& background() { return vocab_.background[background_(rng_)]; }
  const std::string& cluster(std::size_t f) { return vocab_.clusters[f][cluster_(rng_)]; }
  const std::string& pick(const std::vector<std::string>& list) {
    return list[uniform(0, list.size() - 1)];
  }

  void shuffle(std::vector<std::string>& words) { std::shuffle(words.begin(), words.end(), rng_); }

  // Adds the noise the cleaner is meant to remove: mentions, links, hashtags,
  // punctuation, digits, capitals and the corpus query words.
  std::string render(std::vector<std::string> words,
                     const std::vector<std::string>& query_words) {
    if (!query_words.empty() && chance(0.7)) {
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(uniform(0, words.size())),
                   pick(query_words));
    }
    static constexpr std::array<std::string_view, 6> kPunct = {".", "!", ",", "?", "!!", "..."};
    std::string text;
    if (chance(0.3)) text += "@user" + std::to_string(uniform(1, 9999)) + " ";
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::string w = words[i];
      if (chance(0.08)) w = "#" + w;
      if (i == 0 && chance(0.5)) w[0] = static_cast<char>(std::toupper(w[0]));
      if (chance(0.15)) w += kPunct[uniform(0, kPunct.size() - 1)];
      text += w;
      text += ' ';
      if (chance(0.03)) text += std::to_string(uniform(1, 2020)) + "% ";
    }
    if (chance(0.25)) text += "https://t.co/" + syllable_word(uniform(0, 600000));
    while (!text.empty() && text.back() == ' ') text.pop_back();
    return text;
  }

  nlohmann::json record(const std::string& id, std::string body,
                        const std::string& lang) {
    nlohmann::json j;
    j["id"] = id;
    if (chance(0.1)) {
      j["text"] = "RT @user" + std::to_string(uniform(1, 9999)) + ": " + body.substr(0, 60);
      j["retweeted_status"] = {{"text", std::move(body)}};
    } else {
      j["text"] = std::move(body);
    }
    j["lang"] = lang;
    return j;
  }

 private:
  std::mt19937_64 rng_;
  const Vocab& vocab_;
  std::discrete_distribution<std::size_t> background_;
  std::discrete_distribution<std::size_t> cluster_;
};

std::string lowercase_name(Foundation f) {
  std::string s(to_string(f));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string padded(std::size_t n) {
  std::string s = std::to_string(n);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

void write_immorality(const SynthSpec& spec, const Vocab& vocab, std::ostream& out) {
  Sampler s(spec, vocab);
  const std::vector<std::string> query{"immoral", "immorality"};
  for (std::size_t n = 0; n < spec.tweets; ++n) {
    std::vector<std::string> words;
    std::string cluster;
    if (s.real() < spec.neutral_fraction) {
      cluster = "neutral";
      const std::size_t count = s.uniform(4, 9);
      for (std::size_t i = 0; i < count; ++i) words.push_back(s.background());
    } else {
      const std::size_t f = s.uniform(0, 4);
      cluster = lowercase_name(kFoundations[f]);
      const std::size_t dict_count = s.uniform(1, 2);
      for (std::size_t i = 0; i < dict_count; ++i) words.push_back(s.pick(vocab.dict_forms[f]));
      const std::size_t cluster_count = s.uniform(2, 4);
      for (std::size_t i = 0; i < cluster_count; ++i) words.push_back(s.cluster(f));
      if (s.chance(spec.stray_rate)) {
        const std::size_t other = (f + s.uniform(1, 4)) % 5;
        words.push_back(s.chance(0.5) ? s.cluster(other) : s.pick(vocab.dict_forms[other]));
      }
      const std::size_t filler = s.uniform(2, 6);
      for (std::size_t i = 0; i < filler; ++i) words.push_back(s.background());
    }
    s.shuffle(words);
    const std::string lang = s.chance(0.02) ? "fr" : "en";
    out << s.record(cluster + "-" + padded(n), s.render(words, query), lang).dump() << '\n';
  }
}

void write_topic(const SynthSpec& spec, const Vocab& vocab, std::size_t t,
                 std::ostream& out) {
  SynthSpec topic_spec = spec;
  topic_spec.seed = spec.seed + 1000003ULL * (t + 1);
  Sampler s(topic_spec, vocab);
  const auto& topic = synth_topics()[t];
  const std::size_t f = *foundation_index(topic.leaning);
  for (std::size_t n = 0; n < spec.topic_tweets; ++n) {
    std::vector<std::string> words;
    const std::size_t own = s.uniform(1, 3);
    for (std::size_t i = 0; i < own; ++i) words.push_back(s.pick(vocab.topic_only[t]));
    const std::size_t cluster_count = s.uniform(2, 4);
    for (std::size_t i = 0; i < cluster_count; ++i) words.push_back(s.cluster(f));
    if (s.chance(0.5)) words.push_back(s.pick(vocab.dict_forms[f]));
    const std::size_t filler = s.uniform(2, 5);
    for (std::size_t i = 0; i < filler; ++i) words.push_back(s.background());
    s.shuffle(words);
    out << s.record(topic.name + "-" + padded(n), s.render(words, topic.query_words), "en")
               .dump()
        << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

const std::vector<SynthTopic>& synth_topics() {
  static const std::vector<SynthTopic> kTopics = {
      {"abortion", {"abortion"}, Foundation::Care},
      {"homosexuality", {"homosexuality", "homosexual"}, Foundation::Purity},
      {"immigration", {"immigration", "immigrant"}, Foundation::Ingroup},
      {"religion", {"religion", "religious"}, Foundation::Authority},
  };
  return kTopics;
}

void synth_corpus(const SynthSpec& spec, const MFDictionary& dict,
                  const std::filesystem::path& out) {
  if (spec.tweets == 0) throw ConfigError("synthetic corpus needs at least one tweet");
  const Vocab vocab = build_vocab(spec, dict);
  for (const auto& forms : vocab.dict_forms) {
    if (forms.empty()) throw ConfigError("dictionary lacks vice words for some foundation");
  }
  auto file = open_out(out);
  write_immorality(spec, vocab, file);
}

void synth_workspace(const SynthSpec& spec, const MFDictionary& dict,
                     const std::filesystem::path& dir) {
  synth_corpus(spec, dict, dir / "immorality.jsonl");
  const Vocab vocab = build_vocab(spec, dict);
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < synth_topics().size(); ++t) {
    const auto& topic = synth_topics()[t];
    const auto rel = std::filesystem::path("topics") / (topic.name + ".jsonl");
    auto file = open_out(dir / rel);
    write_topic(spec, vocab, t, file);
    topics.push_back({{"name", topic.name},
                      {"corpus", rel.string()},
                      {"query_words", topic.query_words}});
  }
  nlohmann::ordered_json config;
  config["corpus"] = "immorality.jsonl";
  config["query_words"] = {"immoral", "immorality"};
  config["lang"] = "en";
  config["topics"] = std::move(topics);
  config["seed"] = spec.seed;
  config["out"] = "out";
  auto file = open_out(dir / "config.json");
  file << config.dump(2) << '\n';
}

std::string synth_cluster(const std::string& tweet_id) {
  return tweet_id.substr(0, tweet_id.find('-'));
}

}  // namespace moralscope
