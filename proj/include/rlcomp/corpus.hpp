#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rlcomp {

/// Identifier written into persisted indexes; bump when tokenize() changes.
inline constexpr std::string_view kTokenizerId = "lower-alnum-v1";
inline constexpr int kIndexFormatVersion = 1;

/// Lowercases ASCII and splits on runs of characters that are neither ASCII
/// letters nor digits. Bytes >= 0x80 are kept inside tokens so UTF-8 words
/// survive intact. No stemming and no stopword removal.
std::vector<std::string> tokenize(std::string_view text);

/// A document as read from disk, before tokenization.
struct RawDocument {
  std::string id;
  std::string text;
};

/// Reads a corpus from either a directory of plain-text files (file name is
/// the document id; hidden files are skipped) or a JSON-lines file with
/// "id" and "text" fields. Throws IndexError or FormatError.
std::vector<RawDocument> read_corpus(const std::filesystem::path& path);

/// (f / |d|) * ln(N / n_t): the contribution of one document to a term's
/// TF-IDF weight.
double tf_idf_weight(std::uint64_t freq, std::uint64_t doc_length, std::uint64_t doc_count,
                     std::uint64_t doc_freq);

using TermId = std::uint32_t;
using DocIndex = std::uint32_t;

struct Posting {
  DocIndex doc;
  std::uint32_t freq;

  friend bool operator==(const Posting&, const Posting&) = default;
};

/// Counts of the tokens seen within a window around every occurrence of
/// `term`. The occurrence at the window center itself is not counted.
struct ContextProfile {
  std::string term;
  std::map<std::string, std::uint64_t> context_counts;
};

/// Immutable term statistics, postings and token store for a corpus.
///
/// Documents are held in ascending id order and terms in ascending byte
/// order, so two indexes built from the same documents are identical no
/// matter what order the documents arrived in.
class CorpusIndex {
 public:
  /// Throws IndexError on an empty corpus, a duplicate or malformed id, or
  /// a document with no tokens.
  static CorpusIndex ingest(std::vector<RawDocument> documents);

  /// Loads an index directory written by save(). Throws IndexError if the
  /// manifest version or tokenizer differs, or if the files disagree.
  static CorpusIndex load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  std::size_t vocabulary_size() const noexcept { return terms_.size(); }
  std::uint64_t token_count() const noexcept { return token_count_; }

  std::optional<TermId> find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term).has_value(); }
  /// Like find() but throws AbsentTermError.
  TermId require(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }

  const std::string& doc_id(DocIndex doc) const { return doc_ids_.at(doc); }
  std::optional<DocIndex> find_doc(std::string_view id) const;
  std::size_t doc_length(DocIndex doc) const { return tokens_.at(doc).size(); }
  std::span<const TermId> doc_tokens(DocIndex doc) const { return tokens_.at(doc); }

  /// Documents containing the term, ascending by document index.
  std::span<const Posting> postings(TermId id) const { return postings_.at(id); }
  std::size_t doc_freq(std::string_view term) const;
  /// Frequency of `term` in `doc`; 0 when the document lacks the term.
  std::uint32_t term_freq(TermId id, DocIndex doc) const;
  std::uint32_t term_freq(std::string_view term, std::string_view doc_id) const;

  double tf_idf(std::string_view term, std::string_view doc_id) const;
  /// Sum over documents containing the term of (f/|d|) * ln(N/n_t).
  double corpus_tf_idf(std::string_view term) const;
  double corpus_tf_idf(TermId id) const { return corpus_tf_idf_.at(id); }

  /// Up to k documents ordered by the summed frequency of `terms`
  /// (descending), ties by ascending document id. Terms missing from the
  /// index contribute nothing. Throws ParameterError on an empty term set.
  std::vector<DocIndex> top_docs_by_occurrence(std::span<const std::string> terms,
                                               std::size_t k) const;

  /// Context counts within +/- width tokens of each occurrence of term,
  /// clipped at document boundaries.
  ContextProfile context_windows(std::string_view term, std::size_t width) const;

  /// Same as context_windows but keyed by term id; the map is ordered.
  std::map<TermId, std::uint64_t> context_counts(TermId id, std::size_t width) const;

 private:
  CorpusIndex() = default;
  void build_statistics();

  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_lookup_;
  std::vector<std::string> doc_ids_;
  std::vector<std::vector<TermId>> tokens_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<double> corpus_tf_idf_;
  std::uint64_t token_count_ = 0;
};

}  // namespace rlcomp
