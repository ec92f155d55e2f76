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

#ifndef MORALSCOPE_LEXICON_HPP_
#define MORALSCOPE_LEXICON_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace moralscope {

enum class Foundation { Care, Fairness, Ingroup, Authority, Purity, MoralityGeneral };

// The five foundations in canonical order. MoralityGeneral is not one of them.
inline constexpr std::array<Foundation, 5> kFoundations = {
    Foundation::Care, Foundation::Fairness, Foundation::Ingroup,
    Foundation::Authority, Foundation::Purity};

enum class Polarity { Virtue, Vice };

std::string_view to_string(Foundation f);
std::string_view to_string(Polarity p);

// Accepts the canonical names case-insensitively, plus "Harm" for Care.
std::optional<Foundation> parse_foundation(std::string_view name);
std::optional<Polarity> parse_polarity(std::string_view name);

// Position of f in kFoundations; MoralityGeneral has none.
std::optional<std::size_t> foundation_index(Foundation f);

struct MFEntry {
  std::string pattern;
  Foundation foundation;
  Polarity polarity;

  bool is_wildcard() const { return !pattern.empty() && pattern.back() == '*'; }

  std::string_view stem() const {
    return is_wildcard() ? std::string_view(pattern).substr(0, pattern.size() - 1)
                         : std::string_view(pattern);
  }

  // Exact match, or prefix match on the stem for wildcard patterns.
  bool matches(std::string_view word) const;
};

class MFDictionary {
 public:
  MFDictionary() = default;
  // Throws DataError on an invalid pattern.
  explicit MFDictionary(std::vector<MFEntry> entries);

  const std::vector<MFEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Vice entries belonging to the five foundations.
  std::size_t vice_count() const { return count(Polarity::Vice); }
  std::size_t count(Polarity polarity) const;

 private:
  std::vector<MFEntry> entries_;
};

// TSV rows: pattern<TAB>foundation<TAB>polarity. Blank lines and lines
// starting with '#' are skipped. Any malformed row is a DataError naming the
// row number.
MFDictionary parse_dictionary(std::istream& in);
MFDictionary load_dictionary(const std::filesystem::path& path);

// Dictionary shipped with the project.
std::filesystem::path default_dictionary_path();

// Every foundation with an entry of the given polarity matching word.
std::set<Foundation> match_word(const MFDictionary& dict, std::string_view word,
                                Polarity polarity);

using WordFrequencies = std::map<std::string, std::uint64_t>;

struct CoverageEntry {
  const MFEntry* entry = nullptr;
  // Vocabulary words the entry matches, with their corpus frequencies.
  std::vector<std::pair<std::string, std::uint64_t>> matched;
};

struct CoverageReport {
  double fraction = 0.0;
  std::size_t matched_entries = 0;
  std::size_t total_entries = 0;
  std::vector<CoverageEntry> entries;  // one per entry considered, file order
};

// Fraction of the five foundations' entries of the given polarity matched by
// at least one vocabulary word. The report borrows entries from dict.
// Throws DataError when the dictionary has no such entries.
CoverageReport coverage(const MFDictionary& dict,
                        const WordFrequencies& vocabulary, Polarity polarity);

}  // namespace moralscope

#endif  // MORALSCOPE_LEXICON_HPP_
