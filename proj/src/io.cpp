#include "rlcomp/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "rlcomp/error.hpp"

namespace rlcomp {
namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(where + "bad number '" + std::string(text) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::string location(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::vector<Phrase> read_phrases(std::istream& in, std::string_view source) {
  std::vector<Phrase> phrases;
  std::string errors;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (skippable(line)) continue;
    const std::string_view text = std::string_view(line).substr(0, line.find('\t'));
    try {
      phrases.push_back(Phrase::parse(text));
    } catch (const FormatError& e) {
      errors += location(source, line_no) + e.what() + '\n';
    }
  }
  if (!errors.empty()) throw FormatError("malformed phrase lines:\n" + errors);
  return phrases;
}

std::vector<Phrase> read_phrases(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_phrases(in, path.string());
}

void write_scores(std::ostream& out, std::span<const PhraseOutcome> outcomes,
                  std::span<const MetricKind> metrics) {
  out << kScoreHeader << '\n';
  for (const auto& outcome : outcomes) {
    const std::string key = outcome.phrase.text();
    for (MetricKind kind : metrics) {
      out << key << '\t' << metric_key(kind) << '\t';
      if (!outcome.score) {
        out << kNotAvailable << '\t' << kNotAvailable << '\t' << outcome.reason << '\n';
        continue;
      }
      const MetricResult& r = outcome.score->result(kind);
      if (r.mean) {
        out << format_number(*r.mean) << '\t' << format_number(*r.noncompositionality) << '\t'
            << r.per_perturbation.size() << '\n';
      } else {
        out << kNotAvailable << '\t' << kNotAvailable << '\t' << r.failure << '\n';
      }
    }
  }
}

ScoreTable read_scores(std::istream& in, std::string_view source) {
  ScoreTable table;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line) || line == kScoreHeader) continue;
    const std::string where = location(source, line_no);
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 5) throw FormatError(where + "expected 5 tab-separated fields");
    MetricKind kind;
    try {
      kind = parse_metric(fields[1]);
    } catch (const ParameterError& e) {
      throw FormatError(where + e.what());
    }
    std::string key;
    try {
      key = Phrase::parse(fields[0]).text();
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    std::optional<double> value;
    if (fields[3] != kNotAvailable) value = parse_double(fields[3], where);
    if (!table[kind].emplace(key, value).second) {
      throw FormatError(where + "duplicate row for '" + key + "' / " + std::string(fields[1]));
    }
  }
  return table;
}

ScoreTable read_scores(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_scores(in, path.string());
}

std::vector<AnnotatedPhrase> read_dataset(std::istream& in, std::string_view source) {
  std::vector<AnnotatedPhrase> dataset;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    const std::string where = location(source, line_no);
    const char sep = line.find('\t') != std::string::npos ? '\t' : ',';
    const auto fields = split_fields(line, sep);
    if (fields.size() != 5) throw FormatError(where + "expected a phrase and four judgments");
    AnnotatedPhrase item;
    try {
      item.phrase = Phrase::parse(fields[0]);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    for (std::size_t j = 0; j < 4; ++j) {
      const auto f = trim(fields[j + 1]);
      if (f != "0" && f != "1") throw FormatError(where + "judgments must be 0 or 1");
      item.judgments[j] = f == "1" ? 1 : 0;
    }
    dataset.push_back(std::move(item));
  }
  return dataset;
}

std::vector<AnnotatedPhrase> read_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_dataset(in, path.string());
}

void write_bins(std::ostream& out, std::span<const BinSummary> bins) {
  out << kBinHeader << '\n';
  for (const auto& b : bins) {
    out << b.bin_index << '\t' << b.size << '\t' << format_number(b.mean_score) << '\t'
        << format_number(b.mean_human) << '\n';
  }
}

}  // namespace rlcomp
