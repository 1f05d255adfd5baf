#pragma once

// Text file formats shared by the command-line tool and the Python module.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rlcomp/eval.hpp"
#include "rlcomp/metrics.hpp"
#include "rlcomp/pipeline.hpp"

namespace rlcomp {

inline constexpr std::string_view kScoreHeader =
    "phrase\tmetric\traw_value\tnoncomp_value\tn_perturbations";
inline constexpr std::string_view kBinHeader = "bin_index\tsize\tmean_score\tmean_human";
inline constexpr std::string_view kNotAvailable = "NA";

/// Shortest decimal text that reads back as the same double.
std::string format_number(double value);

/// One phrase per line; only the first tab-separated field is used, so a
/// dataset file can double as a phrase file. Blank and '#' lines are
/// skipped. Throws FormatError listing every malformed line.
std::vector<Phrase> read_phrases(std::istream& in, std::string_view source = "<phrases>");
std::vector<Phrase> read_phrases(const std::filesystem::path& path);

/// Score TSV: a header, then one row per phrase and metric. Rows that have
/// no value carry NA in both value columns and a reason code in the last
/// column.
void write_scores(std::ostream& out, std::span<const PhraseOutcome> outcomes,
                  std::span<const MetricKind> metrics);
ScoreTable read_scores(std::istream& in, std::string_view source = "<scores>");
ScoreTable read_scores(const std::filesystem::path& path);

/// `term1 term2<TAB>j1<TAB>j2<TAB>j3<TAB>j4` with j in {0, 1}. A comma is
/// accepted as the separator when a line has no tab.
std::vector<AnnotatedPhrase> read_dataset(std::istream& in, std::string_view source = "<dataset>");
std::vector<AnnotatedPhrase> read_dataset(const std::filesystem::path& path);

void write_bins(std::ostream& out, std::span<const BinSummary> bins);

}  // namespace rlcomp
