#pragma once

// Distances and correlations between ranked lists of term weights.
//
// Two families are provided. Metrics that compare lists position by position
// (l1, Minkowski, Chebyshev, CosRank, Hamming, Pearson, tau-AP) take an
// AlignedPair, i.e. two lists cut to a common length. Hausdorff compares the
// lists as sets of reals and accepts lists of different lengths.
//
// Every function here is pure and safe to call concurrently.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rlcomp {

/// Non-increasing sequence of non-negative, finite weights.
class RankedList {
 public:
  RankedList() = default;

  /// Takes ownership of `values`. Throws ParameterError if a value is
  /// negative or not finite, or if the sequence ever increases.
  explicit RankedList(std::vector<double> values);

  /// Builds a list from unordered scores: drops duplicate values, sorts
  /// descending and keeps at most `cap` entries.
  static RankedList from_scores(std::vector<double> scores, std::size_t cap);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const RankedList&, const RankedList&) = default;

 private:
  std::vector<double> values_;
};

/// Two equal-length, non-empty value sequences compared position by position.
class AlignedPair {
 public:
  /// Throws AlignmentError when the lengths differ or either side is empty.
  AlignedPair(std::vector<double> left, std::vector<double> right);

  std::span<const double> left() const noexcept { return left_; }
  std::span<const double> right() const noexcept { return right_; }
  std::size_t length() const noexcept { return left_.size(); }

  /// The same pair with the sides exchanged.
  AlignedPair swapped() const { return AlignedPair(right_, left_); }

 private:
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Truncates both lists to min(cap, |r1|, |r2|), keeping the heads.
/// Throws AlignmentError if either list is empty and ParameterError if
/// cap is zero.
AlignedPair align(const RankedList& r1, const RankedList& r2, std::size_t cap);

enum class MetricKind {
  kRankL1,
  kMinkowski,
  kChebyshev,
  kCosRank,
  kHamming,
  kHausdorff,
  kPearson,
  kSymmTauAp,
};

enum class Polarity { kDistance, kCorrelation };

/// Stable string key of a metric, as used on the command line and in files.
std::string_view metric_key(MetricKind kind) noexcept;

/// Inverse of metric_key. Throws ParameterError for unknown names.
MetricKind parse_metric(std::string_view key);

/// Parses a comma-separated list of metric keys; duplicates are dropped and
/// the input order is kept.
std::vector<MetricKind> parse_metric_list(std::string_view csv);

Polarity polarity_of(MetricKind kind) noexcept;

/// All eight metrics, in declaration order.
std::span<const MetricKind> all_metrics() noexcept;

/// The seven metrics scored by default (every metric except the general
/// Minkowski distance, which is opt-in).
std::span<const MetricKind> default_metrics() noexcept;

struct MetricScore {
  MetricKind kind;
  double value;

  Polarity polarity() const noexcept { return polarity_of(kind); }
};

struct MetricParams {
  double minkowski_exponent = 1.0;
  double hamming_epsilon = 0.0;
};

/// Throws ParameterError unless exponent >= 1 and epsilon >= 0.
void validate(const MetricParams& params);

// Kernels over raw value sequences. The positional kernels require equal
// lengths and throw AlignmentError otherwise.
namespace kernel {

double l1(std::span<const double> a, std::span<const double> b);
double minkowski(std::span<const double> a, std::span<const double> b, double exponent);
double chebyshev(std::span<const double> a, std::span<const double> b);
double cosine(std::span<const double> a, std::span<const double> b);
std::size_t hamming(std::span<const double> a, std::span<const double> b, double epsilon);
double hausdorff(std::span<const double> a, std::span<const double> b);
double pearson(std::span<const double> a, std::span<const double> b);
double tau_ap(std::span<const double> reference, std::span<const double> other);
double symm_tau_ap(std::span<const double> a, std::span<const double> b);

}  // namespace kernel

MetricScore rank_l1(const AlignedPair& p);
MetricScore minkowski(const AlignedPair& p, double exponent);
MetricScore chebyshev(const AlignedPair& p);
MetricScore cosrank(const AlignedPair& p);
MetricScore hamming(const AlignedPair& p, double epsilon = 0.0);
MetricScore hausdorff(const RankedList& r1, const RankedList& r2);
MetricScore pearson(const AlignedPair& p);

/// tau_AP of `other` against `reference`:
///   2 * (1/(n-1)) * sum_{i=2..n} C(i)/(i-1) - 1,
/// where C(i) counts positions j < i with reference[j] >= other[i].
/// Throws UndefinedValueError when n < 2.
double tau_ap_one_sided(std::span<const double> reference, std::span<const double> other);

MetricScore symm_tau_ap(const AlignedPair& p);

/// Evaluates `kind` between two ranked lists. Hausdorff sees the full lists;
/// every other metric sees align(r1, r2, cap).
MetricScore compare(MetricKind kind, const RankedList& r1, const RankedList& r2,
                    std::size_t cap, const MetricParams& params = {});

/// Maps a score onto one axis where larger means less compositional:
/// distances pass through, correlations are negated.
double to_noncompositionality(const MetricScore& score) noexcept;

}  // namespace rlcomp
