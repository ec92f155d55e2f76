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

#include <random>
#include <sstream>

#include "moralscope/errors.hpp"
#include "moralscope/lexicon.hpp"

using namespace moralscope;

namespace {

MFDictionary parse(const std::string& text) {
  std::istringstream in(text);
  return parse_dictionary(in);
}

// Entries of the given polarity among the five foundations matched by any
// word, counted by direct string comparison.
std::size_t brute_force_matches(const MFDictionary& dict, const WordFrequencies& vocab,
                                Polarity polarity) {
  std::size_t matched = 0;
  for (const auto& e : dict.entries()) {
    if (e.polarity != polarity || e.foundation == Foundation::MoralityGeneral) continue;
    const bool wild = e.pattern.back() == '*';
    const std::string stem = wild ? e.pattern.substr(0, e.pattern.size() - 1) : e.pattern;
    for (const auto& [word, n] : vocab) {
      if (wild ? word.compare(0, stem.size(), stem) == 0 && word.size() >= stem.size()
               : word == stem) {
        ++matched;
        break;
      }
    }
  }
  return matched;
}

}  // namespace

TEST_CASE("parse a wildcard row") {
  auto d = parse("kill*\tCare\tvice\n");
  REQUIRE(d.size() == 1);
  const auto& e = d.entries()[0];
  CHECK(e.pattern == "kill*");
  CHECK(e.foundation == Foundation::Care);
  CHECK(e.polarity == Polarity::Vice);
  CHECK(e.is_wildcard());
  CHECK(e.stem() == "kill");
}

TEST_CASE("empty dictionary file") {
  auto d = parse("");
  CHECK(d.size() == 0);
  CHECK(d.vice_count() == 0);
}

TEST_CASE("vice count ignores virtue rows") {
  std::string text;
  for (int i = 0; i < 149; ++i) text += "word" + std::string(1, 'a' + i % 26) + std::to_string(i) + "\tHarm\tvice\n";
  text += "peace\tCare\tvirtue\n";
  auto d = parse(text);
  CHECK(d.size() == 150);
  CHECK(d.vice_count() == 149);
  CHECK(d.count(Polarity::Virtue) == 1);
}

TEST_CASE("malformed rows are fatal with row number") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("# comment\nkill*\tCare\tvice\nbad row\n").find("row 3") != std::string::npos);
  CHECK(message("kill*\tCourage\tvice\n").find("row 1") != std::string::npos);
  CHECK(message("kill*\tCare\tsometimes\n") != "");
  CHECK(message("k*ll\tCare\tvice\n") != "");
  CHECK(message("Kill\tCare\tvice\n") != "");
  CHECK_THROWS_AS(load_dictionary("/nonexistent/dict.tsv"), DataError);
}

TEST_CASE("foundation names") {
  CHECK(parse_foundation("harm") == Foundation::Care);
  CHECK(parse_foundation("INGROUP") == Foundation::Ingroup);
  CHECK_FALSE(parse_foundation("Liberty").has_value());
  CHECK(to_string(Foundation::Purity) == "Purity");
}

TEST_CASE("match_word") {
  auto d = parse("kill*\tCare\tvice\ntreason*\tIngroup\tvice\ntreason*\tAuthority\tvice\n"
                 "war\tCare\tvice\npeace*\tCare\tvirtue\n");
  CHECK(match_word(d, "killing", Polarity::Vice) == std::set<Foundation>{Foundation::Care});
  CHECK(match_word(d, "kill", Polarity::Vice) == std::set<Foundation>{Foundation::Care});
  CHECK(match_word(d, "kil", Polarity::Vice).empty());
  CHECK(match_word(d, "treasonous", Polarity::Vice) ==
        std::set<Foundation>{Foundation::Ingroup, Foundation::Authority});
  CHECK(match_word(d, "war", Polarity::Vice) == std::set<Foundation>{Foundation::Care});
  CHECK(match_word(d, "warfare", Polarity::Vice).empty());
  CHECK(match_word(d, "peaceful", Polarity::Vice).empty());
  CHECK(match_word(d, "peaceful", Polarity::Virtue) == std::set<Foundation>{Foundation::Care});
}

TEST_CASE("match_word stays inside dictionary foundations") {
  auto d = parse("cheat*\tFairness\tvice\nbetray*\tIngroup\tvice\n");
  std::mt19937_64 rng(11);
  const std::string letters = "abcehtrayi";
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    std::string w;
    for (int j = 0; j < 7; ++j) w += letters[pick(rng)];
    if (i % 3 == 0) w = "cheat" + w;
    for (auto f : match_word(d, w, Polarity::Vice)) {
      CHECK((f == Foundation::Fairness || f == Foundation::Ingroup));
    }
  }
}

TEST_CASE("coverage ratios") {
  auto d = parse("kill*\tCare\tvice\ncheat\tFairness\tvice\nbetray*\tIngroup\tvice\n"
                 "defy*\tAuthority\tvice\nwrong*\tMoralityGeneral\tvice\n");
  WordFrequencies vocab = {{"killing", 5}, {"kills", 2}, {"cheat", 1}, {"betrayal", 4},
                           {"cheating", 9}, {"wrongly", 3}};
  auto report = coverage(d, vocab, Polarity::Vice);
  CHECK(report.total_entries == 4);
  CHECK(report.matched_entries == 3);
  CHECK(report.fraction == doctest::Approx(0.75).epsilon(1e-15));
  REQUIRE(report.entries.size() == 4);
  CHECK(report.entries[0].matched ==
        std::vector<std::pair<std::string, std::uint64_t>>{{"killing", 5}, {"kills", 2}});
  CHECK(report.entries[3].matched.empty());

  CHECK(coverage(d, {}, Polarity::Vice).fraction == 0.0);
  CHECK_THROWS_AS(coverage(MFDictionary{}, vocab, Polarity::Vice), DataError);
  CHECK_THROWS_AS(coverage(d, vocab, Polarity::Virtue), DataError);
}

TEST_CASE("packaged dictionary") {
  auto d = load_dictionary(default_dictionary_path());
  CHECK(d.vice_count() == 149);
  CHECK(match_word(d, "treasonous", Polarity::Vice) ==
        std::set<Foundation>{Foundation::Ingroup, Foundation::Authority});
  CHECK(match_word(d, "killing", Polarity::Vice).contains(Foundation::Care));
}

TEST_CASE("coverage of 121 of 149 packaged vice entries") {
  auto d = load_dictionary(default_dictionary_path());
  WordFrequencies vocab;
  for (const auto& e : d.entries()) {
    if (e.polarity != Polarity::Vice || e.foundation == Foundation::MoralityGeneral) continue;
    WordFrequencies trial = vocab;
    trial[std::string(e.stem()) + (e.is_wildcard() ? "zz" : "")] = 1;
    if (brute_force_matches(d, trial, Polarity::Vice) <= 121) vocab = trial;
  }
  REQUIRE(brute_force_matches(d, vocab, Polarity::Vice) == 121);
  auto report = coverage(d, vocab, Polarity::Vice);
  CHECK(report.matched_entries == 121);
  CHECK(report.total_entries == 149);
  CHECK(report.fraction == doctest::Approx(121.0 / 149.0).epsilon(1e-15));
  CHECK(report.fraction == doctest::Approx(0.812).epsilon(1e-3));
}

TEST_CASE("coverage is monotone in vocabulary") {
  auto d = load_dictionary(default_dictionary_path());
  std::vector<std::string> candidates;
  for (const auto& e : d.entries()) {
    candidates.push_back(std::string(e.stem()) + "ing");
    candidates.push_back(std::string(e.stem()));
  }
  for (int i = 0; i < 200; ++i) candidates.push_back("noise" + std::to_string(i));
  std::shuffle(candidates.begin(), candidates.end(), std::mt19937_64(5));
  WordFrequencies vocab;
  double previous = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    vocab[candidates[i]] = i + 1;
    if (i % 25 != 0) continue;
    auto report = coverage(d, vocab, Polarity::Vice);
    CHECK(report.fraction >= previous);
    CHECK(report.matched_entries == brute_force_matches(d, vocab, Polarity::Vice));
    previous = report.fraction;
  }
}
