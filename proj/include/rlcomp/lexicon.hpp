#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlcomp/corpus.hpp"

namespace rlcomp {

enum class Relation { kHypernym, kHyponym, kSynonym };

std::string_view relation_key(Relation relation) noexcept;
/// Throws FormatError for anything but hypernym, hyponym or synonym.
Relation parse_relation(std::string_view key);

/// Related terms of one lexicon term. Hypernym and hyponym links are kept
/// mutually consistent: `a hypernym b` implies `b hyponym a` and vice versa.
struct LexicalEntry {
  std::string term;
  std::set<std::string> hypernyms;
  std::set<std::string> hyponyms;
  std::set<std::string> synonyms;
};

struct Candidate {
  std::string term;
  Relation relation;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// The candidate chosen to stand in for a term.
struct NearSynonym {
  std::string original;
  /// Candidate as written in the lexicon (normalized, space-joined).
  std::string substitute;
  /// Token used to look the substitute up in the corpus: the last token of a
  /// multi-word candidate, the candidate itself otherwise.
  std::string index_term;
  Relation relation;
  /// Number of the top documents containing index_term.
  std::size_t support_docs = 0;
  /// Total frequency of index_term in those documents.
  std::uint64_t support_freq = 0;
};

/// Last token of a tokenized candidate, or an empty string.
std::string head_token(std::string_view candidate);

class Lexicon {
 public:
  Lexicon() = default;

  /// Reads `term<TAB>relation<TAB>candidate` rows. Blank lines and lines
  /// starting with '#' are ignored. Terms and candidates are normalized with
  /// tokenize() and re-joined with single spaces (so WordNet-style
  /// "motor_vehicle" becomes "motor vehicle").
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::istream& in, std::string_view source = "<lexicon>");

  /// Adds one row. Self-links and rows that normalize to nothing are dropped.
  void add(std::string_view term, Relation relation, std::string_view candidate);

  const LexicalEntry* entry(std::string_view term) const;
  std::size_t size() const noexcept { return entries_.size(); }

  /// Hypernyms of `term` together with every hyponym of those hypernyms.
  /// When that set is empty the synonyms are returned instead. The term
  /// itself is never a candidate. Unknown terms yield an empty vector.
  /// Output is sorted by candidate string.
  std::vector<Candidate> candidates(std::string_view term) const;

 private:
  LexicalEntry& touch(const std::string& term);

  std::map<std::string, LexicalEntry, std::less<>> entries_;
};

/// Chooses the candidate best supported by the k documents where `term` and
/// its candidates occur most often: most documents containing it, then the
/// highest total frequency there, then the smaller string. Returns nullopt
/// when no candidate occurs in any of those documents.
std::optional<NearSynonym> select_near_synonym(std::string_view term,
                                               std::span<const Candidate> candidates,
                                               const CorpusIndex& index, std::size_t k = 100);

}  // namespace rlcomp
