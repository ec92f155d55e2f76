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

#include "moralscope/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

void validate_pattern(const std::string& pattern) {
  if (pattern.empty() || pattern == "*") {
    throw DataError("empty dictionary pattern");
  }
  const auto star = pattern.find('*');
  if (star != std::string::npos && star != pattern.size() - 1) {
    throw DataError("'*' must be the last character of pattern '" + pattern +
                    "'");
  }
  if (lower(pattern) != pattern) {
    throw DataError("pattern '" + pattern + "' is not lowercase");
  }
}

bool is_five(Foundation f) { return f != Foundation::MoralityGeneral; }

}  // namespace

std::string_view to_string(Foundation f) {
  switch (f) {
    case Foundation::Care: return "Care";
    case Foundation::Fairness: return "Fairness";
    case Foundation::Ingroup: return "Ingroup";
    case Foundation::Authority: return "Authority";
    case Foundation::Purity: return "Purity";
    case Foundation::MoralityGeneral: return "MoralityGeneral";
  }
  return "?";
}

std::string_view to_string(Polarity p) {
  return p == Polarity::Virtue ? "virtue" : "vice";
}

std::optional<Foundation> parse_foundation(std::string_view name) {
  const std::string key = lower(name);
  if (key == "care" || key == "harm") return Foundation::Care;
  if (key == "fairness") return Foundation::Fairness;
  if (key == "ingroup") return Foundation::Ingroup;
  if (key == "authority") return Foundation::Authority;
  if (key == "purity") return Foundation::Purity;
  if (key == "moralitygeneral") return Foundation::MoralityGeneral;
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view name) {
  const std::string key = lower(name);
  if (key == "virtue") return Polarity::Virtue;
  if (key == "vice") return Polarity::Vice;
  return std::nullopt;
}

std::optional<std::size_t> foundation_index(Foundation f) {
  if (!is_five(f)) return std::nullopt;
  return static_cast<std::size_t>(f);
}

bool MFEntry::matches(std::string_view word) const {
  if (!is_wildcard()) return word == pattern;
  return word.starts_with(stem());
}

MFDictionary::MFDictionary(std::vector<MFEntry> entries)
    : entries_(std::move(entries)) {
  for (const auto& e : entries_) validate_pattern(e.pattern);
}

std::size_t MFDictionary::count(Polarity polarity) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [&](const MFEntry& e) {
        return e.polarity == polarity && is_five(e.foundation);
      }));
}

MFDictionary parse_dictionary(std::istream& in) {
  std::vector<MFEntry> entries;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, '\t');) {
      fields.push_back(field);
    }
    auto fail = [&](const std::string& why) {
      return DataError("dictionary row " + std::to_string(row) + ": " + why);
    };
    if (fields.size() != 3) throw fail("expected 3 tab-separated columns");
    auto foundation = parse_foundation(fields[1]);
    if (!foundation) throw fail("unknown foundation '" + fields[1] + "'");
    auto polarity = parse_polarity(fields[2]);
    if (!polarity) throw fail("unknown polarity '" + fields[2] + "'");
    try {
      validate_pattern(fields[0]);
    } catch (const DataError& e) {
      throw fail(e.what());
    }
    entries.push_back({fields[0], *foundation, *polarity});
  }
  return MFDictionary(std::move(entries));
}

MFDictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dictionary " + path.string());
  return parse_dictionary(in);
}

std::filesystem::path default_dictionary_path() {
  return std::filesystem::path(MORALSCOPE_DATA_DIR) / "moral_foundations.tsv";
}

std::set<Foundation> match_word(const MFDictionary& dict, std::string_view word,
                                Polarity polarity) {
  std::set<Foundation> out;
  for (const auto& e : dict.entries()) {
    if (e.polarity == polarity && e.matches(word)) out.insert(e.foundation);
  }
  return out;
}

CoverageReport coverage(const MFDictionary& dict,
                        const WordFrequencies& vocabulary, Polarity polarity) {
  CoverageReport report;
  for (const auto& e : dict.entries()) {
    if (e.polarity != polarity || !is_five(e.foundation)) continue;
    CoverageEntry ce{&e, {}};
    // Vocabulary is sorted, so every prefix match sits in one contiguous run.
    const std::string stem(e.stem());
    for (auto it = vocabulary.lower_bound(stem);
         it != vocabulary.end() && it->first.starts_with(stem); ++it) {
      if (e.matches(it->first)) ce.matched.emplace_back(it->first, it->second);
    }
    if (!ce.matched.empty()) ++report.matched_entries;
    report.entries.push_back(std::move(ce));
  }
  report.total_entries = report.entries.size();
  if (report.total_entries == 0) {
    throw DataError("dictionary has no " + std::string(to_string(polarity)) +
                    " entries; coverage undefined");
  }
  report.fraction = static_cast<double>(report.matched_entries) /
                    static_cast<double>(report.total_entries);
  return report;
}

}  // namespace moralscope
