#include "rlcomp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "rlcomp/error.hpp"

namespace rlcomp {
namespace {

constexpr std::array<MetricKind, 8> kAllMetrics = {
    MetricKind::kRankL1,  MetricKind::kMinkowski, MetricKind::kChebyshev,
    MetricKind::kCosRank, MetricKind::kHamming,   MetricKind::kHausdorff,
    MetricKind::kPearson, MetricKind::kSymmTauAp,
};

constexpr std::array<MetricKind, 7> kDefaultMetrics = {
    MetricKind::kRankL1,  MetricKind::kChebyshev, MetricKind::kCosRank,
    MetricKind::kHamming, MetricKind::kHausdorff, MetricKind::kPearson,
    MetricKind::kSymmTauAp,
};

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw AlignmentError("lists must have equal length (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

void require_non_empty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw AlignmentError("lists must be non-empty");
}

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

RankedList::RankedList(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw ParameterError("ranked list value at position " + std::to_string(i) +
                           " is negative or not finite");
    }
    if (i > 0 && v > values_[i - 1]) {
      throw ParameterError("ranked list increases at position " + std::to_string(i));
    }
  }
}

RankedList RankedList::from_scores(std::vector<double> scores, std::size_t cap) {
  std::sort(scores.begin(), scores.end(), std::greater<>());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
  if (scores.size() > cap) scores.resize(cap);
  return RankedList(std::move(scores));
}

AlignedPair::AlignedPair(std::vector<double> left, std::vector<double> right)
    : left_(std::move(left)), right_(std::move(right)) {
  require_non_empty(left_, right_);
  require_same_length(left_, right_);
}

AlignedPair align(const RankedList& r1, const RankedList& r2, std::size_t cap) {
  if (cap == 0) throw ParameterError("alignment cap must be positive");
  if (r1.empty() || r2.empty()) throw AlignmentError("cannot align an empty ranked list");
  const std::size_t n = std::min({cap, r1.size(), r2.size()});
  auto head = [n](const RankedList& r) {
    return std::vector<double>(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
  };
  return AlignedPair(head(r1), head(r2));
}

std::string_view metric_key(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::kRankL1: return "rank_l1";
    case MetricKind::kMinkowski: return "minkowski_p";
    case MetricKind::kChebyshev: return "chebyshev";
    case MetricKind::kCosRank: return "cosrank";
    case MetricKind::kHamming: return "hamming";
    case MetricKind::kHausdorff: return "hausdorff";
    case MetricKind::kPearson: return "pearson";
    case MetricKind::kSymmTauAp: return "symm_tau_ap";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view key) {
  for (MetricKind kind : kAllMetrics) {
    if (metric_key(kind) == key) return kind;
  }
  throw ParameterError("unknown metric '" + std::string(key) + "'");
}

std::vector<MetricKind> parse_metric_list(std::string_view csv) {
  std::vector<MetricKind> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view item = csv.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw ParameterError("empty metric name in list '" + std::string(csv) + "'");
    MetricKind kind = parse_metric(item);
    if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    start = comma + 1;
  }
  return out;
}

Polarity polarity_of(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::kCosRank:
    case MetricKind::kPearson:
    case MetricKind::kSymmTauAp:
      return Polarity::kCorrelation;
    default:
      return Polarity::kDistance;
  }
}

std::span<const MetricKind> all_metrics() noexcept { return kAllMetrics; }
std::span<const MetricKind> default_metrics() noexcept { return kDefaultMetrics; }

void validate(const MetricParams& params) {
  if (!(params.minkowski_exponent >= 1.0)) {
    throw ParameterError("Minkowski exponent must be >= 1");
  }
  if (!(params.hamming_epsilon >= 0.0) || std::isinf(params.hamming_epsilon)) {
    throw ParameterError("Hamming epsilon must be finite and >= 0");
  }
}

namespace kernel {

double l1(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double minkowski(std::span<const double> a, std::span<const double> b, double exponent) {
  if (!(exponent >= 1.0)) throw ParameterError("Minkowski exponent must be >= 1");
  if (exponent == 1.0) return l1(a, b);
  if (std::isinf(exponent)) return chebyshev(a, b);
  // Scale by the largest difference so large exponents do not overflow.
  const double largest = chebyshev(a, b);
  if (largest == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::pow(std::abs(a[i] - b[i]) / largest, exponent);
  }
  return largest * std::pow(sum, 1.0 / exponent);
}

double chebyshev(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw UndefinedValueError("cosine of an all-zero list");
  return std::clamp(dot / std::sqrt(aa * bb), -1.0, 1.0);
}

std::size_t hamming(std::span<const double> a, std::span<const double> b, double epsilon) {
  require_same_length(a, b);
  if (!(epsilon >= 0.0)) throw ParameterError("Hamming epsilon must be >= 0");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > epsilon) ++count;
  }
  return count;
}

namespace {

// max over x in `from` of the distance to the nearest element of `to`;
// `to` must be sorted ascending.
double directed_hausdorff(std::span<const double> from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double x : from) {
    auto it = std::lower_bound(to.begin(), to.end(), x);
    double nearest = std::numeric_limits<double>::infinity();
    if (it != to.end()) nearest = *it - x;
    if (it != to.begin()) nearest = std::min(nearest, x - *std::prev(it));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

double hausdorff(std::span<const double> a, std::span<const double> b) {
  require_non_empty(a, b);
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return std::max(directed_hausdorff(a, sb), directed_hausdorff(b, sa));
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b);
  const std::size_t n = a.size();
  if (n < 2) throw UndefinedValueError("Pearson correlation needs at least two points");
  if (is_constant(a) || is_constant(b)) {
    throw UndefinedValueError("Pearson correlation of a constant list");
  }
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double tau_ap(std::span<const double> reference, std::span<const double> other) {
  require_same_length(reference, other);
  const std::size_t n = reference.size();
  if (n < 2) throw UndefinedValueError("tau_AP needs at least two positions");
  // Reference values seen so far, kept sorted ascending.
  std::vector<double> seen;
  seen.reserve(n);
  // Each position contributes (2 C(i) - (i-1)) / (i-1), which folds the final
  // 2p - 1 into the sum and avoids cancellation near zero.
  long double sum = 0.0L;
  for (std::size_t i = 1; i < n; ++i) {
    seen.insert(std::upper_bound(seen.begin(), seen.end(), reference[i - 1]), reference[i - 1]);
    const auto at_least =
        static_cast<std::size_t>(seen.end() - std::lower_bound(seen.begin(), seen.end(), other[i]));
    sum += (2.0L * static_cast<long double>(at_least) - static_cast<long double>(i)) /
           static_cast<long double>(i);
  }
  return static_cast<double>(sum / static_cast<long double>(n - 1));
}

double symm_tau_ap(std::span<const double> a, std::span<const double> b) {
  return (tau_ap(a, b) + tau_ap(b, a)) / 2.0;
}

}  // namespace kernel

MetricScore rank_l1(const AlignedPair& p) {
  return {MetricKind::kRankL1, kernel::l1(p.left(), p.right())};
}

MetricScore minkowski(const AlignedPair& p, double exponent) {
  return {MetricKind::kMinkowski, kernel::minkowski(p.left(), p.right(), exponent)};
}

MetricScore chebyshev(const AlignedPair& p) {
  return {MetricKind::kChebyshev, kernel::chebyshev(p.left(), p.right())};
}

MetricScore cosrank(const AlignedPair& p) {
  return {MetricKind::kCosRank, kernel::cosine(p.left(), p.right())};
}

MetricScore hamming(const AlignedPair& p, double epsilon) {
  return {MetricKind::kHamming,
          static_cast<double>(kernel::hamming(p.left(), p.right(), epsilon))};
}

MetricScore hausdorff(const RankedList& r1, const RankedList& r2) {
  return {MetricKind::kHausdorff, kernel::hausdorff(r1.values(), r2.values())};
}

MetricScore pearson(const AlignedPair& p) {
  return {MetricKind::kPearson, kernel::pearson(p.left(), p.right())};
}

double tau_ap_one_sided(std::span<const double> reference, std::span<const double> other) {
  return kernel::tau_ap(reference, other);
}

MetricScore symm_tau_ap(const AlignedPair& p) {
  return {MetricKind::kSymmTauAp, kernel::symm_tau_ap(p.left(), p.right())};
}

MetricScore compare(MetricKind kind, const RankedList& r1, const RankedList& r2,
                    std::size_t cap, const MetricParams& params) {
  validate(params);
  if (kind == MetricKind::kHausdorff) return hausdorff(r1, r2);
  const AlignedPair pair = align(r1, r2, cap);
  switch (kind) {
    case MetricKind::kRankL1: return rank_l1(pair);
    case MetricKind::kMinkowski: return minkowski(pair, params.minkowski_exponent);
    case MetricKind::kChebyshev: return chebyshev(pair);
    case MetricKind::kCosRank: return cosrank(pair);
    case MetricKind::kHamming: return hamming(pair, params.hamming_epsilon);
    case MetricKind::kPearson: return pearson(pair);
    case MetricKind::kSymmTauAp: return symm_tau_ap(pair);
    case MetricKind::kHausdorff: break;
  }
  throw ParameterError("unhandled metric");
}

double to_noncompositionality(const MetricScore& score) noexcept {
  return score.polarity() == Polarity::kDistance ? score.value : -score.value;
}

}  // namespace rlcomp
