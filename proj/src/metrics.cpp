#include "dpc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dpc {

namespace {

using i128 = __int128;

std::vector<std::size_t> compact(const std::vector<int>& labels, std::size_t& count) {
  std::map<int, std::size_t> ids;
  for (int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  count = next;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

i128 choose2(std::int64_t x) { return static_cast<i128>(x) * (x - 1) / 2; }

struct PairSums {
  i128 together = 0;  // sum over cells of C(n_ij, 2)
  i128 rows = 0;      // sum of C(a_i, 2)
  i128 cols = 0;      // sum of C(b_j, 2)
  i128 total = 0;     // C(n, 2)
};

PairSums pair_sums(const ContingencyTable& t) {
  PairSums s;
  for (auto c : t.counts) s.together += choose2(c);
  for (auto a : t.row_sums) s.rows += choose2(a);
  for (auto b : t.col_sums) s.cols += choose2(b);
  s.total = choose2(t.n);
  return s;
}

double entropy(const std::vector<std::int64_t>& sums, std::int64_t n) {
  double h = 0.0;
  for (auto a : sums) {
    if (a == 0) continue;
    const double p = static_cast<double>(a) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

ContingencyTable contingency(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("label vectors differ in length");
  if (truth.size() < 2) throw std::invalid_argument("need at least 2 labeled points");
  ContingencyTable t;
  const auto a = compact(truth, t.rows);
  const auto b = compact(pred, t.cols);
  t.counts.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    ++t.counts[a[k] * t.cols + b[k]];
    ++t.row_sums[a[k]];
    ++t.col_sums[b[k]];
  }
  t.n = static_cast<std::int64_t>(truth.size());
  return t;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [f, f_new] = fwd.emplace(a[i], b[i]);
    auto [r, r_new] = bwd.emplace(b[i], a[i]);
    if (f->second != b[i] || r->second != a[i]) return false;
  }
  return true;
}

double ari(const std::vector<int>& truth, const std::vector<int>& pred) {
  const auto t = contingency(truth, pred);
  const auto s = pair_sums(t);
  // Scaled by 2 * C(n,2) so everything stays integral.
  const i128 num = 2 * (s.together * s.total - s.rows * s.cols);
  const i128 den = (s.rows + s.cols) * s.total - 2 * s.rows * s.cols;
  if (den == 0) return same_partition(truth, pred) ? 1.0 : 0.0;
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double fmi(const std::vector<int>& truth, const std::vector<int>& pred) {
  const auto t = contingency(truth, pred);
  if (same_partition(truth, pred)) return 1.0;
  const auto s = pair_sums(t);
  if (s.rows == 0 || s.cols == 0) return 0.0;
  return static_cast<double>(s.together) /
         std::sqrt(static_cast<double>(s.rows)) / std::sqrt(static_cast<double>(s.cols));
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j) {
      const auto c = t.at(i, j);
      if (c == 0) continue;
      const double nij = static_cast<double>(c);
      mi += nij / n *
            std::log(n * nij / (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  return std::max(mi, 0.0);
}

double expected_mutual_information(const ContingencyTable& t) {
  const std::int64_t n = t.n;
  const double nd = static_cast<double>(n);
  auto lf = [](std::int64_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  const double lf_n = lf(n);
  double emi = 0.0;
  for (auto a : t.row_sums) {
    for (auto b : t.col_sums) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      const double fixed = lf(a) + lf(b) + lf(n - a) + lf(n - b) - lf_n;
      for (std::int64_t k = lo; k <= hi; ++k) {
        const double kd = static_cast<double>(k);
        const double log_p = fixed - lf(k) - lf(a - k) - lf(b - k) - lf(n - a - b + k);
        emi += kd / nd * std::log(nd * kd / (static_cast<double>(a) * static_cast<double>(b))) *
               std::exp(log_p);
      }
    }
  }
  return emi;
}

double ami(const std::vector<int>& truth, const std::vector<int>& pred) {
  const auto t = contingency(truth, pred);
  if (same_partition(truth, pred)) return 1.0;
  const double mi = mutual_information(t);
  const double emi = expected_mutual_information(t);
  const double h = std::max(entropy(t.row_sums, t.n), entropy(t.col_sums, t.n));
  const double den = h - emi;
  if (std::abs(den) < 1e-15) return 0.0;
  return (mi - emi) / den;
}

MetricTriple score_all(const std::vector<int>& truth, const std::vector<int>& pred) {
  return {ari(truth, pred), ami(truth, pred), fmi(truth, pred)};
}

}  // namespace dpc
