#include "rlcomp/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <tuple>

#include "rlcomp/error.hpp"

namespace rlcomp {
namespace {

std::string normalize(std::string_view text) {
  std::string out;
  for (const auto& token : tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace

std::string_view relation_key(Relation relation) noexcept {
  switch (relation) {
    case Relation::kHypernym: return "hypernym";
    case Relation::kHyponym: return "hyponym";
    case Relation::kSynonym: return "synonym";
  }
  return "unknown";
}

Relation parse_relation(std::string_view key) {
  if (key == "hypernym") return Relation::kHypernym;
  if (key == "hyponym") return Relation::kHyponym;
  if (key == "synonym") return Relation::kSynonym;
  throw FormatError("unknown lexical relation '" + std::string(key) + "'");
}

std::string head_token(std::string_view candidate) {
  auto tokens = tokenize(candidate);
  return tokens.empty() ? std::string() : tokens.back();
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open lexicon " + path.string());
  return parse(in, path.string());
}

Lexicon Lexicon::parse(std::istream& in, std::string_view source) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) +
                        ": expected term<TAB>relation<TAB>candidate");
    }
    Relation relation;
    try {
      relation = parse_relation(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
    } catch (const FormatError& e) {
      throw FormatError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
    lexicon.add(std::string_view(line).substr(0, t1), relation,
                std::string_view(line).substr(t2 + 1));
  }
  return lexicon;
}

LexicalEntry& Lexicon::touch(const std::string& term) {
  auto it = entries_.find(term);
  if (it == entries_.end()) it = entries_.emplace(term, LexicalEntry{term, {}, {}, {}}).first;
  return it->second;
}

void Lexicon::add(std::string_view term, Relation relation, std::string_view candidate) {
  const std::string t = normalize(term);
  const std::string c = normalize(candidate);
  if (t.empty() || c.empty() || t == c) return;
  switch (relation) {
    case Relation::kHypernym:
      touch(t).hypernyms.insert(c);
      touch(c).hyponyms.insert(t);
      break;
    case Relation::kHyponym:
      touch(t).hyponyms.insert(c);
      touch(c).hypernyms.insert(t);
      break;
    case Relation::kSynonym:
      touch(t).synonyms.insert(c);
      break;
  }
}

const LexicalEntry* Lexicon::entry(std::string_view term) const {
  auto it = entries_.find(normalize(term));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Candidate> Lexicon::candidates(std::string_view term) const {
  const std::string key = normalize(term);
  const LexicalEntry* e = entry(key);
  if (e == nullptr) return {};

  std::map<std::string, Relation> found;
  auto offer = [&](const std::string& cand, Relation relation) {
    if (cand == key || head_token(cand) == key) return;
    found.emplace(cand, relation);  // first relation wins; hypernyms go first
  };
  for (const auto& h : e->hypernyms) offer(h, Relation::kHypernym);
  for (const auto& h : e->hypernyms) {
    if (const LexicalEntry* parent = entry(h)) {
      for (const auto& sibling : parent->hyponyms) offer(sibling, Relation::kHyponym);
    }
  }
  if (found.empty()) {
    for (const auto& s : e->synonyms) offer(s, Relation::kSynonym);
  }

  std::vector<Candidate> out;
  out.reserve(found.size());
  for (auto& [cand, relation] : found) out.push_back({cand, relation});
  return out;
}

std::optional<NearSynonym> select_near_synonym(std::string_view term,
                                               std::span<const Candidate> candidates,
                                               const CorpusIndex& index, std::size_t k) {
  if (candidates.empty() || k == 0) return std::nullopt;
  const std::string original = normalize(term);

  std::vector<std::string> query{original};
  for (const auto& c : candidates) query.push_back(head_token(c.term));
  const std::vector<DocIndex> docs = index.top_docs_by_occurrence(query, k);

  std::optional<NearSynonym> best;
  for (const auto& c : candidates) {
    const std::string head = head_token(c.term);
    if (head.empty() || head == original) continue;
    const auto id = index.find(head);
    if (!id) continue;
    std::size_t cover = 0;
    std::uint64_t freq = 0;
    for (DocIndex d : docs) {
      const auto f = index.term_freq(*id, d);
      if (f > 0) {
        ++cover;
        freq += f;
      }
    }
    if (cover == 0) continue;
    const bool better =
        !best || std::tie(cover, freq) > std::tie(best->support_docs, best->support_freq) ||
        (cover == best->support_docs && freq == best->support_freq && c.term < best->substitute);
    if (better) best = NearSynonym{original, c.term, head, c.relation, cover, freq};
  }
  return best;
}

}  // namespace rlcomp
