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

#include "moralscope/pipeline.hpp"

#include <fcntl.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

#include "moralscope/corpus.hpp"
#include "moralscope/errors.hpp"
#include "moralscope/io.hpp"
#include "moralscope/lexicon.hpp"
#include "moralscope/linalg.hpp"
#include "moralscope/semantics.hpp"
#include "moralscope/vectorizer.hpp"

namespace moralscope {
namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kLock = ".moralscope.lock";

constexpr const char* kCorpus = "corpus.tsv";
constexpr const char* kSelection = "selection.tsv";
constexpr const char* kCooccurrence = "cooccurrence.tsv";
constexpr const char* kPpmi = "ppmi.tsv";
constexpr const char* kEmbedding = "embedding.tsv";
constexpr const char* kSingularValues = "singular_values.tsv";
constexpr const char* kMfVectors = "mf_vectors.tsv";
constexpr const char* kTopicVectors = "topic_vectors.tsv";
constexpr const char* kLoadings = "loadings.csv";
constexpr const char* kCounts = "foundation_counts.csv";
constexpr const char* kMfSimilarity = "mf_similarity.csv";
constexpr const char* kExtended = "extended_dict.tsv";
constexpr const char* kPca = "pca.csv";
constexpr const char* kViceReport = "vice_report.tsv";
constexpr const char* kCoverage = "coverage.json";

std::string topic_corpus(const TopicInput& t) { return "topic_" + t.name + ".tsv"; }
std::string topic_ranking(const TopicInput& t) { return "topic_" + t.name + "_ranking.tsv"; }
std::string topic_loadings(std::size_t n) { return fmt::format("topics_n{}.csv", n); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// Exclusive ownership of an output directory for the lifetime of a run.
class OutputLock {
 public:
  explicit OutputLock(const fs::path& dir) : path_(dir / kLock) {
    fs::create_directories(dir);
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      throw ConfigError("output directory " + dir.string() +
                        " is locked by another run (remove " + path_.string() +
                        " if stale)");
    }
  }
  ~OutputLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

// Producer of every artifact another stage reads.
struct Prerequisite {
  std::string artifact;
  Stage producer;
};

std::vector<Prerequisite> prerequisites(Stage stage, const PipelineConfig& config) {
  std::vector<Prerequisite> out;
  auto topic_files = [&](auto name_of, Stage producer) {
    for (const auto& t : config.topics) out.push_back({name_of(t), producer});
  };
  switch (stage) {
    case Stage::Ingest:
    case Stage::All:
      break;
    case Stage::Select:
      out.push_back({kCorpus, Stage::Ingest});
      topic_files(topic_corpus, Stage::Ingest);
      break;
    case Stage::Matrix:
      out = {{kCorpus, Stage::Ingest}, {kSelection, Stage::Select}};
      break;
    case Stage::Svd:
      out = {{kPpmi, Stage::Matrix}};
      break;
    case Stage::Vectors:
      out = {{kEmbedding, Stage::Svd}};
      topic_files(topic_ranking, Stage::Select);
      break;
    case Stage::Loadings:
      out = {{kCorpus, Stage::Ingest}, {kEmbedding, Stage::Svd}, {kMfVectors, Stage::Vectors}};
      if (!config.topics.empty()) out.push_back({kTopicVectors, Stage::Vectors});
      break;
    case Stage::Extend:
      out = {{kEmbedding, Stage::Svd}, {kMfVectors, Stage::Vectors}};
      break;
    case Stage::Pca:
      out = {{kEmbedding, Stage::Svd}, {kMfVectors, Stage::Vectors}, {kExtended, Stage::Extend}};
      break;
    case Stage::Report:
      out = {{kCorpus, Stage::Ingest}};
      break;
  }
  return out;
}

CleaningConfig cleaning(const PipelineConfig& config, const std::vector<std::string>& query) {
  CleaningConfig c = CleaningConfig::english({query.begin(), query.end()});
  if (config.stopwords) c.stopwords = load_stopwords(*config.stopwords);
  c.min_token_len = config.min_token_len;
  c.lowercase = config.lowercase;
  return c;
}

Corpus ingest_file(const fs::path& path, const PipelineConfig& config,
                   const std::vector<std::string>& query) {
  auto loaded = load_records(path, config.lang);
  constexpr std::size_t kMaxWarnings = 20;
  for (std::size_t i = 0; i < loaded.warnings.size() && i < kMaxWarnings; ++i) {
    spdlog::warn("{}: {}", path.string(), loaded.warnings[i]);
  }
  auto dedup = tokenize_corpus(loaded.records, cleaning(config, query));
  spdlog::info("{}: {} records, {} malformed, {} filtered by language, {} duplicates removed",
               path.string(), loaded.records.size(), loaded.malformed, loaded.filtered,
               dedup.removed);
  if (dedup.tweets.empty()) throw DataError(path.string() + " yields no tweets");
  return std::move(dedup.tweets);
}

class StageRunner {
 public:
  explicit StageRunner(const PipelineConfig& config)
      : config_(config), out_(config.out_dir) {}

  void run(Stage stage) {
    for (const auto& p : prerequisites(stage, config_)) {
      if (!fs::exists(out_ / p.artifact)) {
        throw PrerequisiteError(p.artifact, std::string(to_string(p.producer)));
      }
    }
    const std::string started = utc_now();
    spdlog::info("stage {}", to_string(stage));
    switch (stage) {
      case Stage::Ingest: ingest(); break;
      case Stage::Select: select(); break;
      case Stage::Matrix: matrix(); break;
      case Stage::Svd: svd(); break;
      case Stage::Vectors: vectors(); break;
      case Stage::Loadings: loadings(); break;
      case Stage::Extend: extend(); break;
      case Stage::Pca: pca(); break;
      case Stage::Report: report(); break;
      case Stage::All: return;
    }
    record(stage, started);
  }

 private:
  fs::path at(const std::string& name) const { return out_ / name; }

  void ingest() {
    io::write_corpus(at(kCorpus), ingest_file(config_.corpus, config_, config_.query_words));
    for (const auto& t : config_.topics) {
      io::write_corpus(at(topic_corpus(t)), ingest_file(t.corpus, config_, t.query_words));
    }
  }

  void select() {
    const auto selection = rank_corpus(io::read_corpus(at(kCorpus)), config_.n1, config_.n2);
    io::write_ranking(at(kSelection), selection.ranking);
    for (const auto& t : config_.topics) {
      const auto corpus = io::read_corpus(at(topic_corpus(t)));
      auto scores = overlap_scores(tfidf(build_word_tweet_matrix(corpus)));
      io::write_ranking(at(topic_ranking(t)), select_terms(scores, 0, 0).ranking);
    }
  }

  SelectionResult selection() const {
    return select_terms(io::read_ranking(at(kSelection)), config_.n1, config_.n2);
  }

  void matrix() {
    const auto counts = build_cooccurrence(io::read_corpus(at(kCorpus)), selection());
    io::write_triplets(at(kCooccurrence), counts);
    io::write_triplets(at(kPpmi), ppmi(counts));
  }

  void svd() {
    const auto weights = io::read_weighted_triplets(at(kPpmi));
    const auto result = truncated_svd(to_sparse(weights), config_.k, config_.seed);
    spdlog::info("SVD: {}x{} matrix, k={}, {} subspace iterations", weights.n_rows(),
                 weights.n_cols(), config_.k, result.iterations);
    io::write_embedding(at(kEmbedding), {weights.rows, result.left_vectors});
    io::write_singular_values(at(kSingularValues), result.singular_values);
  }

  void vectors() {
    const auto emb = io::read_embedding(at(kEmbedding));
    const auto mf = mf_vectors(load_dictionary(config_.dictionary), emb);
    io::write_vectors(at(kMfVectors), mf);
    if (config_.topics.empty()) return;
    std::vector<ContextVector> topics;
    for (std::size_t n : config_.topic_n) {
      for (const auto& t : config_.topics) {
        const auto ranking = io::read_ranking(at(topic_ranking(t)));
        topics.push_back(topic_vector(fmt::format("{}@{}", t.name, n), ranking, emb, n));
      }
    }
    io::write_vectors(at(kTopicVectors), topics);
  }

  MFVectors read_mf() const {
    auto vectors = io::read_vectors(at(kMfVectors));
    if (vectors.size() != 5) throw DataError(std::string(kMfVectors) + " must hold 5 vectors");
    MFVectors mf;
    std::move(vectors.begin(), vectors.end(), mf.begin());
    return mf;
  }

  void loadings() {
    const auto emb = io::read_embedding(at(kEmbedding));
    const auto mf = read_mf();
    const auto corpus = io::read_corpus(at(kCorpus));
    std::vector<ContextVector> tweets;
    tweets.reserve(corpus.size());
    for (const auto& tweet : corpus) tweets.push_back(tweet_vector(tweet, emb));
    const auto matrix = loading_matrix(tweets, mf);
    io::write_loadings(at(kLoadings), matrix);
    io::write_foundation_counts(at(kCounts), foundation_counts(matrix));
    io::write_mf_similarity(at(kMfSimilarity), mf_similarity_matrix(mf));
    if (config_.topics.empty()) return;
    const auto topic_vectors = io::read_vectors(at(kTopicVectors));
    for (std::size_t n : config_.topic_n) {
      const std::string suffix = fmt::format("@{}", n);
      std::vector<ContextVector> rows;
      for (const auto& cv : topic_vectors) {
        if (cv.label.ends_with(suffix)) {
          rows.push_back(cv);
          rows.back().label = cv.label.substr(0, cv.label.size() - suffix.size());
        }
      }
      io::write_topic_loadings(at(topic_loadings(n)), loading_matrix(rows, mf));
    }
  }

  void extend() {
    io::write_extended_dictionary(
        at(kExtended),
        extend_dictionary(io::read_embedding(at(kEmbedding)), read_mf(), config_.extend_n));
  }

  // Extended-dictionary words and the five foundation vectors, each scaled to
  // unit length so that only direction matters.
  void pca() {
    const auto emb = io::read_embedding(at(kEmbedding));
    const auto mf = read_mf();
    const auto extended = io::read_extended_dictionary(at(kExtended));
    std::vector<std::string> labels;
    std::vector<Eigen::VectorXd> rows;
    auto add = [&](std::string label, Eigen::VectorXd v) {
      const double norm = v.norm();
      if (norm > 0.0) v /= norm;
      labels.push_back(std::move(label));
      rows.push_back(std::move(v));
    };
    for (std::size_t f = 0; f < 5; ++f) {
      for (const auto& ws : extended.lists[f]) {
        auto v = emb.vector(ws.word);
        if (!v) throw DataError("extended dictionary word '" + ws.word + "' has no embedding");
        add(fmt::format("{}/{}", to_string(kFoundations[f]), ws.word), *v);
      }
    }
    for (const auto& cv : mf) add("MF/" + cv.label, cv.vector);
    Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()), emb.k());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      points.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    io::write_pca(at(kPca), pca_2d(points, labels));
  }

  void report() {
    const auto dict = load_dictionary(config_.dictionary);
    const auto corpus = io::read_corpus(at(kCorpus));
    const auto vocabulary = word_frequencies(corpus);
    const auto cov = coverage(dict, vocabulary, Polarity::Vice);
    spdlog::info("vice coverage: {}/{} entries ({:.1f}%)", cov.matched_entries,
                 cov.total_entries, 100.0 * cov.fraction);
    io::write_coverage(at(kCoverage), cov);
    io::write_vice_report(at(kViceReport), vice_frequency_report(dict, corpus, vocabulary));
  }

  void record(Stage stage, const std::string& started) {
    nlohmann::ordered_json manifest;
    if (fs::exists(at(kManifest))) {
      std::ifstream in(at(kManifest));
      manifest = nlohmann::ordered_json::parse(in, nullptr, false);
      if (manifest.is_discarded()) manifest = nlohmann::ordered_json::object();
    }
    manifest["parameters"] = config_.to_json();
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    auto fingerprint = [&](const fs::path& p) { inputs[p.string()] = io::sha256_file(p); };
    fingerprint(config_.corpus);
    for (const auto& t : config_.topics) fingerprint(t.corpus);
    fingerprint(config_.dictionary);
    if (config_.stopwords) fingerprint(*config_.stopwords);
    manifest["inputs"] = std::move(inputs);

    nlohmann::ordered_json entry;
    entry["started"] = started;
    entry["finished"] = utc_now();
    nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
    for (const auto& name : stage_artifacts(stage, config_)) {
      artifacts[name] = io::sha256_file(at(name));
    }
    entry["artifacts"] = std::move(artifacts);
    manifest["stages"][std::string(to_string(stage))] = std::move(entry);

    std::ofstream out(at(kManifest), std::ios::trunc);
    out << manifest.dump(2) << '\n';
    if (!out) throw DataError("cannot write " + at(kManifest).string());
  }

  const PipelineConfig& config_;
  fs::path out_;
};

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

PipelineConfig::PipelineConfig() : dictionary(default_dictionary_path()) {}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& json, const fs::path& base_dir) {
  if (!json.is_object()) throw ConfigError("configuration must be a JSON object");
  static const std::set<std::string> kKeys = {
      "corpus", "query_words", "lang", "topics", "dictionary", "stopwords",
      "min_token_len", "lowercase", "n1", "n2", "k", "topic_n", "extend_n", "seed", "out"};
  for (const auto& [key, unused] : json.items()) {
    if (!kKeys.contains(key)) throw ConfigError("unknown configuration key '" + key + "'");
  }
  PipelineConfig c;
  try {
    if (json.contains("corpus")) c.corpus = resolve(base_dir, json.at("corpus").get<std::string>());
    if (json.contains("query_words")) {
      c.query_words = json.at("query_words").get<std::vector<std::string>>();
    }
    if (json.contains("lang")) {
      if (json.at("lang").is_null()) {
        c.lang.reset();
      } else {
        c.lang = json.at("lang").get<std::string>();
      }
    }
    if (json.contains("topics")) {
      for (const auto& t : json.at("topics")) {
        c.topics.push_back({t.at("name").get<std::string>(),
                            resolve(base_dir, t.at("corpus").get<std::string>()),
                            t.at("query_words").get<std::vector<std::string>>()});
      }
    }
    if (json.contains("dictionary")) {
      c.dictionary = resolve(base_dir, json.at("dictionary").get<std::string>());
    }
    if (json.contains("stopwords")) {
      c.stopwords = resolve(base_dir, json.at("stopwords").get<std::string>());
    }
    if (json.contains("min_token_len")) c.min_token_len = json.at("min_token_len").get<std::size_t>();
    if (json.contains("lowercase")) c.lowercase = json.at("lowercase").get<bool>();
    if (json.contains("n1")) c.n1 = json.at("n1").get<std::size_t>();
    if (json.contains("n2")) c.n2 = json.at("n2").get<std::size_t>();
    if (json.contains("k")) c.k = json.at("k").get<int>();
    if (json.contains("topic_n")) c.topic_n = json.at("topic_n").get<std::vector<std::size_t>>();
    if (json.contains("extend_n")) c.extend_n = json.at("extend_n").get<std::size_t>();
    if (json.contains("seed")) c.seed = json.at("seed").get<std::uint64_t>();
    if (json.contains("out")) c.out_dir = resolve(base_dir, json.at("out").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration " + path.string());
  auto json = nlohmann::json::parse(in, nullptr, false);
  if (json.is_discarded()) throw ConfigError(path.string() + " is not valid JSON");
  return from_json(json, path.parent_path());
}

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["corpus"] = corpus.string();
  j["query_words"] = query_words;
  j["lang"] = lang ? nlohmann::ordered_json(*lang) : nlohmann::ordered_json(nullptr);
  j["topics"] = nlohmann::ordered_json::array();
  for (const auto& t : topics) {
    j["topics"].push_back(
        {{"name", t.name}, {"corpus", t.corpus.string()}, {"query_words", t.query_words}});
  }
  j["dictionary"] = dictionary.string();
  if (stopwords) j["stopwords"] = stopwords->string();
  j["min_token_len"] = min_token_len;
  j["lowercase"] = lowercase;
  j["n1"] = n1;
  j["n2"] = n2;
  j["k"] = k;
  j["topic_n"] = topic_n;
  j["extend_n"] = extend_n;
  j["seed"] = seed;
  j["out"] = out_dir.string();
  return j;
}

void PipelineConfig::validate() const {
  auto require_file = [](const fs::path& p, const std::string& what) {
    if (p.empty()) throw ConfigError(what + " path is not set");
    if (!fs::is_regular_file(p)) throw ConfigError(what + " " + p.string() + " does not exist");
  };
  require_file(corpus, "corpus");
  require_file(dictionary, "dictionary");
  if (stopwords) require_file(*stopwords, "stopword file");
  if (query_words.empty()) throw ConfigError("query_words must not be empty");
  std::set<std::string> names;
  for (const auto& t : topics) {
    const bool ok = !t.name.empty() && std::all_of(t.name.begin(), t.name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
    if (!ok) throw ConfigError("topic name '" + t.name + "' must be alphanumeric");
    if (!names.insert(t.name).second) throw ConfigError("duplicate topic '" + t.name + "'");
    if (t.query_words.empty()) throw ConfigError("topic '" + t.name + "' has no query words");
    require_file(t.corpus, "topic corpus");
  }
  if (min_token_len < 1) throw ConfigError("min_token_len must be >= 1");
  if (n1 < 1) throw ConfigError("n1 must be >= 1");
  if (n1 > n2) throw ConfigError("n1 must not exceed n2");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (static_cast<std::size_t>(k) > n1) throw ConfigError("k must not exceed n1");
  if (topic_n.empty()) throw ConfigError("topic_n must list at least one size");
  for (std::size_t n : topic_n) {
    if (n < 1) throw ConfigError("topic_n entries must be >= 1");
  }
  if (out_dir.empty()) throw ConfigError("output directory is not set");
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Select: return "select";
    case Stage::Matrix: return "matrix";
    case Stage::Svd: return "svd";
    case Stage::Vectors: return "vectors";
    case Stage::Loadings: return "loadings";
    case Stage::Extend: return "extend";
    case Stage::Pca: return "pca";
    case Stage::Report: return "report";
    case Stage::All: return "all";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : pipeline_stages()) {
    if (to_string(s) == name) return s;
  }
  if (name == "all") return Stage::All;
  return std::nullopt;
}

const std::vector<Stage>& pipeline_stages() {
  static const std::vector<Stage> kStages = {
      Stage::Ingest, Stage::Select, Stage::Matrix, Stage::Svd,   Stage::Vectors,
      Stage::Loadings, Stage::Extend, Stage::Pca,  Stage::Report};
  return kStages;
}

std::vector<std::string> stage_artifacts(Stage stage, const PipelineConfig& config) {
  std::vector<std::string> out;
  auto with_sidecars = [&](const std::string& name) {
    out.push_back(name);
    out.push_back(name + ".rows");
    out.push_back(name + ".cols");
  };
  switch (stage) {
    case Stage::Ingest:
      out.push_back(kCorpus);
      for (const auto& t : config.topics) out.push_back(topic_corpus(t));
      break;
    case Stage::Select:
      out.push_back(kSelection);
      for (const auto& t : config.topics) out.push_back(topic_ranking(t));
      break;
    case Stage::Matrix:
      with_sidecars(kCooccurrence);
      with_sidecars(kPpmi);
      break;
    case Stage::Svd:
      out = {kEmbedding, kSingularValues};
      break;
    case Stage::Vectors:
      out.push_back(kMfVectors);
      if (!config.topics.empty()) out.push_back(kTopicVectors);
      break;
    case Stage::Loadings:
      out = {kLoadings, kCounts, kMfSimilarity};
      if (!config.topics.empty()) {
        for (std::size_t n : config.topic_n) out.push_back(topic_loadings(n));
      }
      break;
    case Stage::Extend:
      out = {kExtended};
      break;
    case Stage::Pca:
      out = {kPca};
      break;
    case Stage::Report:
      out = {kViceReport, kCoverage};
      break;
    case Stage::All:
      for (Stage s : pipeline_stages()) {
        auto more = stage_artifacts(s, config);
        out.insert(out.end(), more.begin(), more.end());
      }
      break;
  }
  return out;
}

void run(Stage stage, const PipelineConfig& config) {
  config.validate();
  OutputLock lock(config.out_dir);
  StageRunner runner(config);
  if (stage == Stage::All) {
    for (Stage s : pipeline_stages()) runner.run(s);
  } else {
    runner.run(stage);
  }
}

std::map<std::string, std::string> manifest_hashes(const fs::path& out_dir) {
  std::ifstream in(out_dir / kManifest);
  if (!in) throw DataError("no manifest in " + out_dir.string());
  auto manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded()) throw DataError("corrupt manifest in " + out_dir.string());
  std::map<std::string, std::string> out;
  if (!manifest.contains("stages")) return out;
  for (const auto& [stage, entry] : manifest["stages"].items()) {
    for (const auto& [name, hash] : entry["artifacts"].items()) out[name] = hash.get<std::string>();
  }
  return out;
}

}  // namespace moralscope
