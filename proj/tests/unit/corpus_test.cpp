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

#include "moralscope/corpus.hpp"
#include "moralscope/errors.hpp"

using namespace moralscope;

namespace {

TweetRecord rec(std::string text, std::string id = "1") {
  return {std::move(id), std::move(text), std::nullopt, std::nullopt};
}

const CleaningConfig& immorality() {
  static const CleaningConfig c = CleaningConfig::english({"immoral", "immorality"});
  return c;
}

std::vector<std::string> tokens(const std::string& text) {
  return clean_and_tokenize(rec(text), immorality()).tokens;
}

}  // namespace

TEST_CASE("worked example tweet") {
  const std::string text =
      "@CharlesMBlow 50% marginal taxrates aren't immoral. Letting the majority of "
      "public school kids live in poverty is. https://t.co/grEgeu9lPj";
  const std::vector<std::string> expected = {"marginal", "taxrates", "letting", "majority",
                                             "public",   "school",   "kids",    "live",
                                             "poverty"};
  CHECK(tokens(text) == expected);
}

TEST_CASE("clean_and_tokenize rule sequence") {
  CHECK(tokens("").empty());
  // '#' stripped, "is" is a stopword, "!!" splits off nothing but the word.
  CHECK(tokens("#harm is BAD!!") == std::vector<std::string>{"harm", "bad"});
  // Digits and punctuation split tokens in place.
  CHECK(tokens("war2peace self-indulgent") ==
        std::vector<std::string>{"war", "peace", "self", "indulgent"});
  CHECK(tokens("see www.example.com and HTTP://X.CO/abc now") ==
        std::vector<std::string>{"see"});
  CHECK(tokens("@someone's mention") == std::vector<std::string>{"mention"});
  CHECK(tokens("IMMORAL Immorality immorally") == std::vector<std::string>{"immorally"});
}

TEST_CASE("non-ASCII letters survive, symbols do not") {
  CHECK(tokens("Café naïve ÉCOLE") == std::vector<std::string>{"café", "naïve", "école"});
  CHECK(tokens("Москва 😀 hello😀world") ==
        std::vector<std::string>{"москва", "hello", "world"});
  // Short means fewer than three code points, not bytes.
  CHECK(tokens("éé ééé") == std::vector<std::string>{"ééé"});
}

TEST_CASE("retweet text takes precedence") {
  TweetRecord r = rec("RT @x: truncated");
  r.retweet_text = "original retweeted content";
  CHECK(clean_and_tokenize(r, immorality()).tokens ==
        std::vector<std::string>{"original", "retweeted", "content"});
}

TEST_CASE("cleaning config options") {
  CleaningConfig c = CleaningConfig::english({});
  c.min_token_len = 1;
  CHECK(clean_and_tokenize(rec("a b cd"), c).tokens == std::vector<std::string>{"b", "cd"});
  c.lowercase = false;
  CHECK(clean_and_tokenize(rec("Hello"), c).tokens == std::vector<std::string>{"Hello"});
  c.min_token_len = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("embedded stopword list") {
  const auto& words = default_stopwords();
  CHECK(words.size() == 153);
  CHECK(std::find(words.begin(), words.end(), "aren") != words.end());
}

TEST_CASE("token invariants on random noisy text") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ  #@!?.,'0129%/:-_éü";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < 40; ++i) text += alphabet[pick(rng)];
    auto r = rec(text);
    auto first = clean_and_tokenize(r, immorality());
    CHECK(first == clean_and_tokenize(r, immorality()));
    for (const auto& t : first.tokens) {
      CHECK(t.size() >= 3);
      CHECK_FALSE(immorality().stopwords.contains(t));
      CHECK(t.find_first_of(" #@0123456789") == std::string::npos);
    }
  }
}

TEST_CASE("deduplicate keeps first occurrence") {
  Corpus c = {{"1", {"a", "b"}}, {"2", {"a", "b"}}, {"3", {"b", "a"}}};
  auto d = deduplicate(c);
  REQUIRE(d.tweets.size() == 2);
  CHECK(d.tweets[0].id == "1");
  CHECK(d.tweets[1].id == "3");
  CHECK(d.removed == 1);

  Corpus many(1000, {"x", {"same", "tweet"}});
  auto dm = deduplicate(many);
  CHECK(dm.tweets.size() == 1);
  CHECK(dm.removed == 999);
}

TEST_CASE("tweets differing only by URL collapse") {
  std::vector<TweetRecord> records = {rec("killing is wrong https://t.co/a", "1"),
                                      rec("killing is wrong https://t.co/b", "2")};
  auto d = tokenize_corpus(records, immorality());
  CHECK(d.tweets.size() == 1);
  CHECK(d.removed == 1);
}

TEST_CASE("deduplicate is idempotent") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(0, 3);
  Corpus c;
  for (int i = 0; i < 200; ++i) {
    TokenizedTweet t{std::to_string(i), {}};
    for (int j = 0; j < 2; ++j) t.tokens.push_back(std::string(1, static_cast<char>('a' + w(rng))));
    c.push_back(t);
  }
  auto once = deduplicate(c).tweets;
  CHECK(deduplicate(once).tweets == once);
}

TEST_CASE("load_records") {
  SUBCASE("well-formed lines") {
    std::istringstream in(R"({"id":"1","text":"a"}
{"id":"2","text":"b"}
{"id":"3","text":"c","retweeted_status":{"text":"orig"}})");
    auto r = parse_records(in);
    CHECK(r.records.size() == 3);
    CHECK(r.records[2].effective_text() == "orig");
  }
  SUBCASE("language filter") {
    std::istringstream in(R"({"id":"1","text":"a","lang":"en"}
{"id":"2","text":"b","lang":"fr"}
{"id":"3","text":"c","lang":"en"})");
    auto r = parse_records(in, std::string("en"));
    CHECK(r.records.size() == 2);
    CHECK(r.filtered == 1);
  }
  SUBCASE("malformed line is skipped with its line number") {
    std::istringstream in(R"({"id":"1","text":"a"}
{"id":"2","text":"b"}
{"id":"3" "text":}
{"id":"4","text":"d"}
{"id":"5","text":"e"})");
    auto r = parse_records(in);
    CHECK(r.records.size() == 4);
    CHECK(r.malformed == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].starts_with("line 3"));
  }
  SUBCASE("missing fields and duplicate ids") {
    std::istringstream in(R"({"id":"1"}
{"text":"x"}
{"id":"","text":"x"}
{"id":"9","text":"x"}
{"id":"9","text":"y"})");
    auto r = parse_records(in);
    CHECK(r.records.size() == 1);
    CHECK(r.malformed == 4);
  }
  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(load_records("/nonexistent/file.jsonl"), DataError);
  }
}
