#include "rlcomp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rlcomp/error.hpp"
#include "rlcomp/io.hpp"

namespace rlcomp {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share ranks i+1..j
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ParameterError("spearman_rho needs equal-length sequences");
  if (xs.size() < 2) throw ParameterError("spearman_rho needs at least two points");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return kernel::pearson(rx, ry);
}

std::size_t scott_bin_count(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw ParameterError("Scott's rule needs at least two values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (range == 0.0) return 1;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double m = range * std::cbrt(static_cast<double>(n)) / (3.49 * sd);
  const auto rounded = static_cast<std::size_t>(std::max(1.0, std::round(m)));
  return std::clamp<std::size_t>(rounded, 1, n);
}

std::vector<std::size_t> equal_count_bin_sizes(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) {
    throw ParameterError("bin count must be in [1, N] (M=" + std::to_string(m) +
                         ", N=" + std::to_string(n) + ")");
  }
  const std::size_t width = (n + m - 1) / m;
  std::vector<std::size_t> sizes;
  if ((m - 1) * width < n) {
    sizes.assign(m - 1, width);
    sizes.push_back(n - (m - 1) * width);
  } else {
    sizes.assign(m, n / m);
    for (std::size_t i = 0; i < n % m; ++i) ++sizes[i];
  }
  return sizes;
}

std::vector<BinSummary> equal_count_bins(std::vector<std::pair<double, double>> scored,
                                         std::size_t m) {
  const auto sizes = equal_count_bin_sizes(scored.size(), m);
  std::sort(scored.begin(), scored.end());
  std::vector<BinSummary> bins;
  std::size_t start = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    double score_sum = 0.0, human_sum = 0.0;
    for (std::size_t i = start; i < start + sizes[b]; ++i) {
      score_sum += scored[i].first;
      human_sum += scored[i].second;
    }
    const auto count = static_cast<double>(sizes[b]);
    bins.push_back({b, sizes[b], score_sum / count, human_sum / count});
    start += sizes[b];
  }
  return bins;
}

double AnnotatedPhrase::human_mean() const noexcept {
  return static_cast<double>(judgments[0] + judgments[1] + judgments[2] + judgments[3]) / 4.0;
}

std::vector<std::pair<double, double>> join_scores(std::span<const AnnotatedPhrase> dataset,
                                                   const MetricScores& scores) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& item : dataset) {
    auto it = scores.find(item.phrase.text());
    if (it != scores.end() && it->second) pairs.emplace_back(*it->second, item.human_mean());
  }
  return pairs;
}

EvaluationReport evaluate(std::span<const AnnotatedPhrase> dataset, const ScoreTable& scores) {
  EvaluationReport report;
  report.dataset_size = dataset.size();

  std::set<std::string> keys;
  for (const auto& item : dataset) keys.insert(item.phrase.text());
  std::set<std::string> unmatched;
  for (const auto& [kind, per_phrase] : scores) {
    for (const auto& [phrase, value] : per_phrase) {
      if (!keys.contains(phrase)) unmatched.insert(phrase);
    }
  }
  report.unmatched_scores.assign(unmatched.begin(), unmatched.end());

  for (const auto& [kind, per_phrase] : scores) {
    MetricEvaluation eval;
    eval.kind = kind;
    eval.total = dataset.size();
    std::vector<double> system, human;
    for (const auto& item : dataset) {
      auto it = per_phrase.find(item.phrase.text());
      if (it == per_phrase.end()) {
        ++eval.missing;
      } else if (!it->second) {
        ++eval.unscorable;
      } else {
        system.push_back(*it->second);
        human.push_back(item.human_mean());
      }
    }
    eval.scored = system.size();
    if (eval.scored < 2) {
      throw UndefinedValueError("metric " + std::string(metric_key(kind)) + " has only " +
                                std::to_string(eval.scored) + " scored phrase(s); need 2");
    }
    try {
      eval.rho = spearman_rho(system, human);
    } catch (const UndefinedValueError& e) {
      eval.note = e.what();
    }
    report.metrics.push_back(std::move(eval));
  }
  return report;
}

std::string EvaluationReport::to_text() const {
  std::ostringstream out;
  out << "phrases in dataset: " << dataset_size << '\n';
  for (const auto& m : metrics) {
    out << metric_key(m.kind) << "\trho=" << (m.rho ? format_number(*m.rho) : "undefined")
        << "\tcoverage=" << m.scored << '/' << m.total;
    if (m.unscorable) out << "\tunscorable=" << m.unscorable;
    if (m.missing) out << "\tmissing=" << m.missing;
    if (!m.note.empty()) out << "\tnote=" << m.note;
    out << '\n';
  }
  if (!unmatched_scores.empty()) {
    out << "scored phrases not in dataset: " << unmatched_scores.size() << '\n';
    for (const auto& p : unmatched_scores) out << "  " << p << '\n';
  }
  return out.str();
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["dataset_size"] = dataset_size;
  doc["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : metrics) {
    nlohmann::ordered_json entry;
    entry["metric"] = std::string(metric_key(m.kind));
    entry["rho"] = m.rho ? nlohmann::ordered_json(*m.rho) : nlohmann::ordered_json(nullptr);
    entry["scored"] = m.scored;
    entry["total"] = m.total;
    entry["coverage"] = m.coverage();
    entry["unscorable"] = m.unscorable;
    entry["missing"] = m.missing;
    if (!m.note.empty()) entry["note"] = m.note;
    doc["metrics"].push_back(std::move(entry));
  }
  doc["unmatched_scores"] = unmatched_scores;
  return doc.dump();
}

}  // namespace rlcomp
