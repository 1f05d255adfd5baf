#include "rlcomp/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "rlcomp/error.hpp"

namespace rlcomp {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::string_view kManifestFile = "manifest.json";
constexpr std::string_view kTermsFile = "terms.tsv";
constexpr std::string_view kDocsFile = "docs.tsv";
constexpr std::string_view kTokensFile = "tokens.txt";
constexpr std::string_view kPostingsFile = "postings.tsv";

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

void check_doc_id(const std::string& id) {
  if (id.empty()) throw IndexError("document id must not be empty");
  if (id.find_first_of("\t\n\r") != std::string::npos) {
    throw IndexError("document id contains a tab or newline: '" + id + "'");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_uint(std::string_view text, const fs::path& file, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IndexError(file.string() + ":" + std::to_string(line) + ": bad integer '" +
                     std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IndexError("missing index file " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return lines;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<RawDocument> read_corpus(const fs::path& path) {
  std::vector<RawDocument> docs;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      std::string name = entry.path().filename().string();
      if (name.empty() || name.front() == '.') continue;
      docs.push_back({std::move(name), read_file(entry.path())});
    }
    std::sort(docs.begin(), docs.end(),
              [](const RawDocument& a, const RawDocument& b) { return a.id < b.id; });
    return docs;
  }
  std::ifstream in(path);
  if (!in) throw IndexError("cannot open corpus " + path.string());
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + "invalid JSON (" + e.what() + ")");
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("text") ||
        !record["id"].is_string() || !record["text"].is_string()) {
      throw FormatError(where + "expected an object with string fields \"id\" and \"text\"");
    }
    docs.push_back({record["id"].get<std::string>(), record["text"].get<std::string>()});
  }
  return docs;
}

double tf_idf_weight(std::uint64_t freq, std::uint64_t doc_length, std::uint64_t doc_count,
                     std::uint64_t doc_freq) {
  if (doc_length == 0 || doc_freq == 0 || doc_freq > doc_count) {
    throw ParameterError("tf-idf needs |d| > 0 and 0 < n_t <= N");
  }
  return (static_cast<double>(freq) / static_cast<double>(doc_length)) *
         std::log(static_cast<double>(doc_count) / static_cast<double>(doc_freq));
}

CorpusIndex CorpusIndex::ingest(std::vector<RawDocument> documents) {
  if (documents.empty()) throw IndexError("corpus has no documents");
  std::sort(documents.begin(), documents.end(),
            [](const RawDocument& a, const RawDocument& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < documents.size(); ++i) {
    check_doc_id(documents[i].id);
    if (i > 0 && documents[i].id == documents[i - 1].id) {
      throw IndexError("duplicate document id '" + documents[i].id + "'");
    }
  }

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(documents.size());
  std::vector<std::string> vocabulary;
  {
    std::unordered_set<std::string> seen;
    for (const auto& doc : documents) {
      auto tokens = tokenize(doc.text);
      if (tokens.empty()) throw IndexError("document '" + doc.id + "' has no tokens");
      for (const auto& t : tokens) {
        if (seen.insert(t).second) vocabulary.push_back(t);
      }
      tokenized.push_back(std::move(tokens));
    }
  }
  std::sort(vocabulary.begin(), vocabulary.end());

  CorpusIndex index;
  index.terms_ = std::move(vocabulary);
  index.term_lookup_.reserve(index.terms_.size());
  for (TermId id = 0; id < index.terms_.size(); ++id) index.term_lookup_.emplace(index.terms_[id], id);
  index.doc_ids_.reserve(documents.size());
  index.tokens_.reserve(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    index.doc_ids_.push_back(std::move(documents[d].id));
    std::vector<TermId> ids;
    ids.reserve(tokenized[d].size());
    for (const auto& t : tokenized[d]) ids.push_back(index.term_lookup_.at(t));
    index.tokens_.push_back(std::move(ids));
  }
  index.build_statistics();
  return index;
}

void CorpusIndex::build_statistics() {
  postings_.assign(terms_.size(), {});
  token_count_ = 0;
  std::vector<std::uint32_t> counts(terms_.size(), 0);
  std::vector<TermId> touched;
  for (DocIndex d = 0; d < tokens_.size(); ++d) {
    touched.clear();
    for (TermId t : tokens_[d]) {
      if (counts[t]++ == 0) touched.push_back(t);
    }
    for (TermId t : touched) {
      postings_[t].push_back({d, counts[t]});
      counts[t] = 0;
    }
    token_count_ += tokens_[d].size();
  }
  const std::uint64_t n_docs = doc_ids_.size();
  corpus_tf_idf_.assign(terms_.size(), 0.0);
  for (TermId t = 0; t < terms_.size(); ++t) {
    double sum = 0.0;
    for (const Posting& p : postings_[t]) {
      sum += tf_idf_weight(p.freq, tokens_[p.doc].size(), n_docs, postings_[t].size());
    }
    corpus_tf_idf_[t] = sum;
  }
}

void CorpusIndex::save(const fs::path& dir) const {
  fs::create_directories(dir);
  auto open = [&dir](std::string_view name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IndexError("cannot write " + (dir / name).string());
    return out;
  };

  json manifest = {
      {"format", "rlcomp-index"},
      {"format_version", kIndexFormatVersion},
      {"tokenizer", std::string(kTokenizerId)},
      {"doc_count", doc_ids_.size()},
      {"vocabulary_size", terms_.size()},
      {"token_count", token_count_},
      {"files",
       {{"terms", kTermsFile}, {"docs", kDocsFile}, {"tokens", kTokensFile},
        {"postings", kPostingsFile}}},
  };
  open(kManifestFile) << manifest.dump(2) << '\n';

  {
    auto out = open(kTermsFile);
    for (TermId t = 0; t < terms_.size(); ++t) {
      std::uint64_t cf = 0;
      for (const Posting& p : postings_[t]) cf += p.freq;
      out << terms_[t] << '\t' << postings_[t].size() << '\t' << cf << '\n';
    }
  }
  {
    auto out = open(kDocsFile);
    for (DocIndex d = 0; d < doc_ids_.size(); ++d) {
      out << doc_ids_[d] << '\t' << tokens_[d].size() << '\n';
    }
  }
  {
    auto out = open(kTokensFile);
    for (const auto& doc : tokens_) {
      for (std::size_t i = 0; i < doc.size(); ++i) out << (i ? " " : "") << doc[i];
      out << '\n';
    }
  }
  {
    auto out = open(kPostingsFile);
    for (TermId t = 0; t < terms_.size(); ++t) {
      out << t << '\t';
      for (std::size_t i = 0; i < postings_[t].size(); ++i) {
        out << (i ? " " : "") << postings_[t][i].doc << ':' << postings_[t][i].freq;
      }
      out << '\n';
    }
  }
}

CorpusIndex CorpusIndex::load(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestFile;
  if (!fs::exists(manifest_path)) throw IndexError("no index manifest at " + manifest_path.string());
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    throw IndexError("unreadable manifest " + manifest_path.string() + ": " + e.what());
  }
  try {
    if (manifest.at("format").get<std::string>() != "rlcomp-index") {
      throw IndexError(manifest_path.string() + " is not an rlcomp index");
    }
    const int version = manifest.at("format_version").get<int>();
    if (version != kIndexFormatVersion) {
      throw IndexError("index format version " + std::to_string(version) + " is not supported (expected " +
                       std::to_string(kIndexFormatVersion) + ")");
    }
    const auto tokenizer = manifest.at("tokenizer").get<std::string>();
    if (tokenizer != kTokenizerId) {
      throw IndexError("index was built with tokenizer '" + tokenizer + "', expected '" +
                       std::string(kTokenizerId) + "'");
    }
  } catch (const json::exception& e) {
    throw IndexError("malformed manifest " + manifest_path.string() + ": " + e.what());
  }

  CorpusIndex index;
  std::vector<std::uint64_t> stored_df;
  std::vector<std::uint64_t> stored_length;

  const fs::path terms_path = dir / kTermsFile;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(terms_path)) {
    ++line_no;
    auto fields = split(line, '\t');
    if (fields.size() != 3) throw IndexError(terms_path.string() + ":" + std::to_string(line_no) + ": expected 3 fields");
    index.terms_.emplace_back(fields[0]);
    stored_df.push_back(parse_uint<std::uint64_t>(fields[1], terms_path, line_no));
  }
  for (TermId id = 0; id < index.terms_.size(); ++id) {
    if (id > 0 && !(index.terms_[id - 1] < index.terms_[id])) {
      throw IndexError(terms_path.string() + ": terms are not strictly sorted");
    }
    index.term_lookup_.emplace(index.terms_[id], id);
  }

  const fs::path docs_path = dir / kDocsFile;
  line_no = 0;
  for (const auto& line : read_lines(docs_path)) {
    ++line_no;
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw IndexError(docs_path.string() + ":" + std::to_string(line_no) + ": expected 2 fields");
    index.doc_ids_.emplace_back(fields[0]);
    stored_length.push_back(parse_uint<std::uint64_t>(fields[1], docs_path, line_no));
  }

  const fs::path tokens_path = dir / kTokensFile;
  line_no = 0;
  for (const auto& line : read_lines(tokens_path)) {
    ++line_no;
    std::vector<TermId> ids;
    if (!line.empty()) {
      for (auto field : split(line, ' ')) {
        const auto id = parse_uint<TermId>(field, tokens_path, line_no);
        if (id >= index.terms_.size()) throw IndexError(tokens_path.string() + ":" + std::to_string(line_no) + ": term id out of range");
        ids.push_back(id);
      }
    }
    index.tokens_.push_back(std::move(ids));
  }

  if (index.tokens_.size() != index.doc_ids_.size()) {
    throw IndexError("index files disagree on the number of documents");
  }
  const auto expected_docs = manifest.value("doc_count", std::uint64_t{0});
  if (expected_docs != index.doc_ids_.size() ||
      manifest.value("vocabulary_size", std::uint64_t{0}) != index.terms_.size()) {
    throw IndexError("manifest counts do not match the index files");
  }
  for (DocIndex d = 0; d < index.doc_ids_.size(); ++d) {
    if (stored_length[d] != index.tokens_[d].size()) {
      throw IndexError("stored length of document '" + index.doc_ids_[d] + "' does not match its tokens");
    }
  }

  index.build_statistics();

  for (TermId t = 0; t < index.terms_.size(); ++t) {
    if (stored_df[t] != index.postings_[t].size()) {
      throw IndexError("stored document frequency of '" + index.terms_[t] + "' does not match its postings");
    }
  }
  const fs::path postings_path = dir / kPostingsFile;
  line_no = 0;
  for (const auto& line : read_lines(postings_path)) {
    ++line_no;
    auto fields = split(line, '\t');
    if (fields.size() != 2) throw IndexError(postings_path.string() + ":" + std::to_string(line_no) + ": expected 2 fields");
    const auto t = parse_uint<TermId>(fields[0], postings_path, line_no);
    if (t >= index.terms_.size()) throw IndexError(postings_path.string() + ": term id out of range");
    std::vector<Posting> stored;
    if (!fields[1].empty()) {
      for (auto item : split(fields[1], ' ')) {
        auto colon = item.find(':');
        if (colon == std::string_view::npos) throw IndexError(postings_path.string() + ":" + std::to_string(line_no) + ": bad posting");
        stored.push_back({parse_uint<DocIndex>(item.substr(0, colon), postings_path, line_no),
                          parse_uint<std::uint32_t>(item.substr(colon + 1), postings_path, line_no)});
      }
    }
    if (stored != index.postings_[t]) {
      throw IndexError("postings of '" + index.terms_[t] + "' do not match the token store");
    }
  }
  if (line_no != index.terms_.size()) throw IndexError("postings file does not cover every term");
  return index;
}

std::optional<TermId> CorpusIndex::find(std::string_view term) const {
  auto it = term_lookup_.find(std::string(term));
  if (it == term_lookup_.end()) return std::nullopt;
  return it->second;
}

TermId CorpusIndex::require(std::string_view term) const {
  auto id = find(term);
  if (!id) throw AbsentTermError(std::string(term));
  return *id;
}

std::optional<DocIndex> CorpusIndex::find_doc(std::string_view id) const {
  auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), id);
  if (it == doc_ids_.end() || *it != id) return std::nullopt;
  return static_cast<DocIndex>(it - doc_ids_.begin());
}

std::size_t CorpusIndex::doc_freq(std::string_view term) const {
  return postings_[require(term)].size();
}

std::uint32_t CorpusIndex::term_freq(TermId id, DocIndex doc) const {
  const auto& list = postings_.at(id);
  auto it = std::lower_bound(list.begin(), list.end(), doc,
                             [](const Posting& p, DocIndex d) { return p.doc < d; });
  return (it != list.end() && it->doc == doc) ? it->freq : 0;
}

std::uint32_t CorpusIndex::term_freq(std::string_view term, std::string_view doc_id) const {
  const TermId id = require(term);
  auto doc = find_doc(doc_id);
  if (!doc) throw IndexError("unknown document '" + std::string(doc_id) + "'");
  return term_freq(id, *doc);
}

double CorpusIndex::tf_idf(std::string_view term, std::string_view doc_id) const {
  const TermId id = require(term);
  auto doc = find_doc(doc_id);
  if (!doc) throw IndexError("unknown document '" + std::string(doc_id) + "'");
  return tf_idf_weight(term_freq(id, *doc), doc_length(*doc), doc_count(), postings_[id].size());
}

double CorpusIndex::corpus_tf_idf(std::string_view term) const {
  return corpus_tf_idf_[require(term)];
}

std::vector<DocIndex> CorpusIndex::top_docs_by_occurrence(std::span<const std::string> terms,
                                                          std::size_t k) const {
  if (terms.empty()) throw ParameterError("top_docs_by_occurrence needs at least one term");
  std::vector<TermId> ids;
  for (const auto& t : terms) {
    if (auto id = find(t)) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::unordered_map<DocIndex, std::uint64_t> totals;
  for (TermId id : ids) {
    for (const Posting& p : postings_[id]) totals[p.doc] += p.freq;
  }
  std::vector<std::pair<DocIndex, std::uint64_t>> ranked(totals.begin(), totals.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);
  std::vector<DocIndex> out;
  out.reserve(ranked.size());
  for (const auto& [doc, count] : ranked) out.push_back(doc);
  return out;
}

std::map<TermId, std::uint64_t> CorpusIndex::context_counts(TermId id, std::size_t width) const {
  if (width == 0) throw ParameterError("context window width must be >= 1");
  std::map<TermId, std::uint64_t> counts;
  for (const Posting& p : postings_.at(id)) {
    const auto& doc = tokens_[p.doc];
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
      if (doc[pos] != id) continue;
      const std::size_t lo = pos >= width ? pos - width : 0;
      const std::size_t hi = std::min(doc.size() - 1, pos + width);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j != pos) ++counts[doc[j]];
      }
    }
  }
  return counts;
}

ContextProfile CorpusIndex::context_windows(std::string_view term, std::size_t width) const {
  ContextProfile profile{std::string(term), {}};
  for (const auto& [id, count] : context_counts(require(term), width)) {
    profile.context_counts.emplace(terms_[id], count);
  }
  return profile;
}

}  // namespace rlcomp
