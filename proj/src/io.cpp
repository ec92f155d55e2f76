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

#include "moralscope/io.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "moralscope/errors.hpp"

namespace moralscope::io {
namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return in;
}

void close(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw DataError("error while writing " + path.string());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s, const fs::path& path, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DataError(fmt::format("{}:{}: bad number '{}'", path.string(), line, s));
  }
  return v;
}

std::string exact_real(double v) { return fmt::format("{:.17g}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_label(const std::string& label) {
  if (label.find_first_of("\t\n\r") != std::string::npos) {
    throw DataError("label '" + label + "' contains a tab or newline");
  }
}

std::vector<std::string> read_lines(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  auto out = open_out(path);
  for (const auto& l : lines) {
    check_label(l);
    out << l << '\n';
  }
  close(out, path);
}

template <typename T, typename Format>
void write_triplets_impl(const fs::path& path, const LabeledSparseMatrix<T>& m,
                         Format format) {
  auto out = open_out(path);
  for (const auto& e : m.entries) {
    out << m.rows[e.row] << '\t' << m.cols[e.col] << '\t' << format(e.value) << '\n';
  }
  close(out, path);
  write_lines(fs::path(path.string() + ".rows"), m.rows.words());
  write_lines(fs::path(path.string() + ".cols"), m.cols);
}

void write_real_rows(const fs::path& path, const std::vector<std::string>& labels,
                     const Eigen::MatrixXd& values) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    check_label(labels[static_cast<std::size_t>(i)]);
    out << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << '\t' << format_real(values(i, j));
    out << '\n';
  }
  close(out, path);
}

std::pair<std::vector<std::string>, Eigen::MatrixXd> read_real_rows(const fs::path& path) {
  const auto lines = read_lines(path);
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split(lines[i], '\t');
    if (!rows.empty() && fields.size() != rows.front().size() + 1) {
      throw DataError(fmt::format("{}:{}: inconsistent dimension", path.string(), i + 1));
    }
    labels.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row.push_back(parse_real(fields[j], path, i + 1));
    }
    rows.push_back(std::move(row));
  }
  const Eigen::Index k = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      values(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return {std::move(labels), std::move(values)};
}

constexpr const char* kLoadingHeader = "care,fairness,ingroup,authority,purity";

}  // namespace

std::string format_real(double v) { return fmt::format("{:.9g}", v); }

void write_corpus(const fs::path& path, const Corpus& corpus) {
  auto out = open_out(path);
  for (const auto& tweet : corpus) {
    check_label(tweet.id);
    out << tweet.id << '\t';
    for (std::size_t i = 0; i < tweet.tokens.size(); ++i) {
      if (i) out << ' ';
      out << tweet.tokens[i];
    }
    out << '\n';
  }
  close(out, path);
}

Corpus read_corpus(const fs::path& path) {
  Corpus corpus;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tab = lines[i].find('\t');
    if (tab == std::string::npos) {
      throw DataError(fmt::format("{}:{}: expected id<TAB>tokens", path.string(), i + 1));
    }
    TokenizedTweet tweet;
    tweet.id = lines[i].substr(0, tab);
    std::istringstream ss(lines[i].substr(tab + 1));
    for (std::string token; ss >> token;) tweet.tokens.push_back(token);
    corpus.push_back(std::move(tweet));
  }
  return corpus;
}

void write_ranking(const fs::path& path, const std::vector<WordScore>& ranking) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    out << (i + 1) << '\t' << ranking[i].word << '\t' << exact_real(ranking[i].score) << '\n';
  }
  close(out, path);
}

std::vector<WordScore> read_ranking(const fs::path& path) {
  std::vector<WordScore> ranking;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = split(lines[i], '\t');
    if (fields.size() != 3) {
      throw DataError(fmt::format("{}:{}: expected rank<TAB>word<TAB>score", path.string(), i + 1));
    }
    ranking.push_back({fields[1], parse_real(fields[2], path, i + 1)});
  }
  return ranking;
}

void write_triplets(const fs::path& path, const SparseCountMatrix& m) {
  write_triplets_impl(path, m, [](std::uint64_t v) { return std::to_string(v); });
}

void write_triplets(const fs::path& path, const WeightedMatrix& m) {
  write_triplets_impl(path, m, exact_real);
}

WeightedMatrix read_weighted_triplets(const fs::path& path) {
  WeightedMatrix m;
  m.rows = Vocabulary(read_lines(fs::path(path.string() + ".rows")));
  m.cols = read_lines(fs::path(path.string() + ".cols"));
  std::unordered_map<std::string, std::uint32_t> col_index;
  for (std::size_t j = 0; j < m.cols.size(); ++j) {
    col_index.emplace(m.cols[j], static_cast<std::uint32_t>(j));
  }
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = split(lines[i], '\t');
    auto row = fields.size() == 3 ? m.rows.find(fields[0]) : std::nullopt;
    auto col = fields.size() == 3 ? col_index.find(fields[1]) : col_index.end();
    if (!row || col == col_index.end()) {
      throw DataError(fmt::format("{}:{}: bad triplet", path.string(), i + 1));
    }
    m.entries.push_back({static_cast<std::uint32_t>(*row), col->second,
                         parse_real(fields[2], path, i + 1)});
  }
  return m;
}

void write_embedding(const fs::path& path, const EmbeddingSpace& emb) {
  write_real_rows(path, emb.words.words(), emb.vectors);
}

EmbeddingSpace read_embedding(const fs::path& path) {
  auto [labels, values] = read_real_rows(path);
  return {Vocabulary(std::move(labels)), std::move(values)};
}

void write_vectors(const fs::path& path, std::span<const ContextVector> vectors) {
  std::vector<std::string> labels;
  const Eigen::Index k = vectors.empty() ? 0 : vectors.front().vector.size();
  Eigen::MatrixXd values(static_cast<Eigen::Index>(vectors.size()), k);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    labels.push_back(vectors[i].label);
    values.row(static_cast<Eigen::Index>(i)) = vectors[i].vector.transpose();
  }
  write_real_rows(path, labels, values);
}

std::vector<ContextVector> read_vectors(const fs::path& path) {
  auto [labels, values] = read_real_rows(path);
  std::vector<ContextVector> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ContextVector cv;
    cv.label = labels[i];
    cv.vector = values.row(static_cast<Eigen::Index>(i)).transpose();
    // Only non-empty sums are persisted as vectors.
    if (cv.vector.squaredNorm() > 0.0) cv.contributing_words.emplace_back(cv.label, 1);
    out.push_back(std::move(cv));
  }
  return out;
}

void write_singular_values(const fs::path& path, const Eigen::VectorXd& values) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out << (i + 1) << '\t' << format_real(values(i)) << '\n';
  }
  close(out, path);
}

void write_loadings(const fs::path& path, const LoadingMatrix& m) {
  auto out = open_out(path);
  out << "id," << kLoadingHeader << ",dominant,degenerate\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << csv_field(m.row_labels[i]);
    for (double v : m.values[i]) out << ',' << format_real(v);
    const auto dominant = m.degenerate[i] ? std::nullopt : dominant_foundation(m.values[i]);
    out << ',' << (dominant ? to_string(*dominant) : std::string_view("unclassified"));
    out << ',' << (m.degenerate[i] ? 1 : 0) << '\n';
  }
  close(out, path);
}

void write_topic_loadings(const fs::path& path, const LoadingMatrix& m) {
  auto out = open_out(path);
  out << "topic," << kLoadingHeader << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << csv_field(m.row_labels[i]);
    for (double v : m.values[i]) out << ',' << format_real(v);
    out << '\n';
  }
  close(out, path);
}

LoadingMatrix read_loadings(const fs::path& path) {
  const auto lines = read_lines(path);
  LoadingMatrix m;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], ',');
    if (fields.size() < 6) {
      throw DataError(fmt::format("{}:{}: expected at least 6 columns", path.string(), i + 1));
    }
    LoadingRow row{};
    for (std::size_t f = 0; f < 5; ++f) row[f] = parse_real(fields[f + 1], path, i + 1);
    m.row_labels.push_back(fields[0]);
    m.values.push_back(row);
    m.degenerate.push_back(fields.size() >= 8 && fields[7] == "1");
  }
  return m;
}

void write_mf_similarity(const fs::path& path, const Eigen::Matrix<double, 5, 5>& m) {
  auto out = open_out(path);
  out << "foundation," << kLoadingHeader << '\n';
  for (int i = 0; i < 5; ++i) {
    out << to_string(kFoundations[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 5; ++j) out << ',' << format_real(m(i, j));
    out << '\n';
  }
  close(out, path);
}

void write_foundation_counts(const fs::path& path,
                             const std::array<std::size_t, 5>& counts) {
  auto out = open_out(path);
  out << "foundation,tweets\n";
  for (std::size_t f = 0; f < 5; ++f) {
    out << to_string(kFoundations[f]) << ',' << counts[f] << '\n';
  }
  close(out, path);
}

void write_extended_dictionary(const fs::path& path, const ExtendedDictionary& d) {
  auto out = open_out(path);
  for (std::size_t f = 0; f < 5; ++f) {
    for (std::size_t r = 0; r < d.lists[f].size(); ++r) {
      out << to_string(kFoundations[f]) << '\t' << (r + 1) << '\t' << d.lists[f][r].word
          << '\t' << exact_real(d.lists[f][r].similarity) << '\n';
    }
  }
  close(out, path);
}

ExtendedDictionary read_extended_dictionary(const fs::path& path) {
  ExtendedDictionary d;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = split(lines[i], '\t');
    auto f = fields.size() == 4 ? parse_foundation(fields[0]) : std::nullopt;
    if (!f || !foundation_index(*f)) {
      throw DataError(fmt::format("{}:{}: bad extended dictionary row", path.string(), i + 1));
    }
    d.lists[*foundation_index(*f)].push_back({fields[2], parse_real(fields[3], path, i + 1)});
  }
  return d;
}

void write_pca(const fs::path& path, const PCAProjection& p) {
  auto out = open_out(path);
  out << "label,pc1,pc2\n";
  for (const auto& pt : p.points) {
    out << csv_field(pt.label) << ',' << format_real(pt.pc1) << ',' << format_real(pt.pc2)
        << '\n';
  }
  close(out, path);
}

void write_vice_report(const fs::path& path, const ViceReport& r) {
  auto out = open_out(path);
  out << "# coverage\t" << format_real(r.coverage) << '\n';
  out << "word\tfoundations\tfrequency\n";
  for (const auto& row : r.rows) {
    out << row.word << '\t';
    for (std::size_t i = 0; i < row.foundations.size(); ++i) {
      if (i) out << ',';
      out << to_string(row.foundations[i]);
    }
    out << '\t' << row.frequency << '\n';
  }
  close(out, path);
}

void write_coverage(const fs::path& path, const CoverageReport& r) {
  nlohmann::ordered_json json;
  json["fraction"] = r.fraction;
  json["matched_entries"] = r.matched_entries;
  json["total_entries"] = r.total_entries;
  auto& entries = json["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json item;
    item["foundation"] = std::string(to_string(e.entry->foundation));
    item["pattern"] = e.entry->pattern;
    auto& matched = item["matched"] = nlohmann::ordered_json::array();
    for (const auto& [word, freq] : e.matched) {
      matched.push_back({{"word", word}, {"frequency", freq}});
    }
    entries.push_back(std::move(item));
  }
  auto out = open_out(path);
  out << json.dump(2) << '\n';
  close(out, path);
}

std::string sha256_file(const fs::path& path) {
  auto in = open_in(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace moralscope::io
