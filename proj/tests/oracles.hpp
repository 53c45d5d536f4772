#pragma once

// Slow reference implementations written straight from the definitions.
// Nothing here calls into the library except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dpc/dataset.hpp"
#include "dpc/rng.hpp"

namespace oracle {

using Sets = std::vector<std::set<std::size_t>>;

inline double dist(const dpc::Dataset& ds, std::size_t i, std::size_t j) {
  double s = 0;
  for (std::size_t k = 0; k < ds.dim; ++k) {
    const double t = ds.at(i, k) - ds.at(j, k);
    s += t * t;
  }
  return std::sqrt(s);
}

// Row i of the neighbor ordering: all j != i by (distance, index).
inline std::vector<std::size_t> sorted_row(const dpc::Dataset& ds, std::size_t i) {
  std::vector<std::size_t> row;
  for (std::size_t j = 0; j < ds.size(); ++j)
    if (j != i) row.push_back(j);
  std::sort(row.begin(), row.end(), [&](std::size_t a, std::size_t b) {
    const double da = dist(ds, i, a), db = dist(ds, i, b);
    return da < db || (da == db && a < b);
  });
  return row;
}

struct NnnAt {
  Sets nn, rnn, nnn;
  std::set<std::size_t> empty;
};

// NN_r, RNN_r and NNN_r = NN_r ∩ RNN_r evaluated from scratch.
inline NnnAt nnn_at(const std::vector<std::vector<std::size_t>>& rows, std::size_t r) {
  const std::size_t n = rows.size();
  NnnAt out{Sets(n), Sets(n), Sets(n), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k) out.nn[i].insert(rows[i][k]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && out.nn[j].count(i)) out.rnn[i].insert(j);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : out.nn[i])
      if (out.rnn[i].count(j)) out.nnn[i].insert(j);
    if (out.nnn[i].empty()) out.empty.insert(i);
  }
  return out;
}

struct NnnResult {
  std::size_t lambda = 0;
  NnnAt at;
};

// Least r with no empty NNN_r.
inline NnnResult nnn_exact(const dpc::Dataset& ds) {
  const std::size_t n = ds.size();
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = sorted_row(ds, i);
  for (std::size_t r = 1; r < n; ++r) {
    auto at = nnn_at(rows, r);
    if (at.empty.empty()) return {r, std::move(at)};
  }
  return {n - 1, nnn_at(rows, n - 1)};
}

// Least r where NNN_r has no empty set, or where the number of i in
// [0, r-1] with NNN_i^0 == NNN_{i+1}^0 reaches ln r + ln n (NNN_0^0 = X).
inline NnnResult nnn_log(const dpc::Dataset& ds) {
  const std::size_t n = ds.size();
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = sorted_row(ds, i);
  std::vector<std::set<std::size_t>> empties;
  std::set<std::size_t> all;
  for (std::size_t i = 0; i < n; ++i) all.insert(i);
  empties.push_back(all);
  for (std::size_t r = 1; r < n; ++r) {
    auto at = nnn_at(rows, r);
    empties.push_back(at.empty);
    std::size_t same = 0;
    for (std::size_t i = 0; i + 1 <= r; ++i)
      if (empties[i] == empties[i + 1]) ++same;
    if (at.empty.empty() ||
        static_cast<double>(same) >= std::log(static_cast<double>(r)) + std::log(static_cast<double>(n)))
      return {r, std::move(at)};
  }
  return {n - 1, nnn_at(rows, n - 1)};
}

inline std::vector<double> rho_gaussian(const dpc::Dataset& ds, double dc) {
  std::vector<double> rho(ds.size(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j)
      if (i != j) rho[i] += std::exp(-std::pow(dist(ds, i, j) / dc, 2));
  return rho;
}

inline std::vector<double> rho_cutoff(const dpc::Dataset& ds, double dc) {
  std::vector<double> rho(ds.size(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < ds.size(); ++j)
      if (i != j && dist(ds, i, j) < dc) rho[i] += 1.0;
  return rho;
}

inline std::vector<double> rho_nnn(const dpc::Dataset& ds, const Sets& nnn) {
  std::vector<double> rho(ds.size(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    double sigma = 0.0;
    for (auto j : nnn[i]) sigma = std::max(sigma, dist(ds, i, j));
    for (auto j : nnn[i])
      rho[i] += sigma > 0 ? std::exp(-std::pow(dist(ds, i, j) / sigma, 2)) : 1.0;
  }
  return rho;
}

inline bool higher(const std::vector<double>& rho, std::size_t a, std::size_t b) {
  return rho[a] > rho[b] || (rho[a] == rho[b] && a > b);
}

// delta by scanning every strictly higher point; -1 marks the peak.
inline std::pair<std::vector<double>, std::vector<long>> delta(const dpc::Dataset& ds,
                                                               const std::vector<double>& rho) {
  const std::size_t n = ds.size();
  std::vector<double> d(n);
  std::vector<long> nhd(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    double best = INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      if (!higher(rho, j, i)) continue;
      const double dij = dist(ds, i, j);
      if (dij < best || (dij == best && static_cast<long>(j) < nhd[i])) {
        best = dij;
        nhd[i] = static_cast<long>(j);
      }
    }
    if (nhd[i] < 0) {
      best = 0;
      for (std::size_t j = 0; j < n; ++j) best = std::max(best, dist(ds, i, j));
    }
    d[i] = best;
  }
  return {d, nhd};
}

struct PairCounts {
  double both = 0, truth_only = 0, pred_only = 0, neither = 0;
};

inline PairCounts pairs(const std::vector<int>& t, const std::vector<int>& p) {
  PairCounts c;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const bool st = t[i] == t[j], sp = p[i] == p[j];
      if (st && sp) c.both += 1;
      else if (st) c.truth_only += 1;
      else if (sp) c.pred_only += 1;
      else c.neither += 1;
    }
  return c;
}

inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  const auto c = pairs(a, b);
  return c.truth_only == 0 && c.pred_only == 0;
}

// Hubert-Arabie pair form.
inline double ari(const std::vector<int>& t, const std::vector<int>& p) {
  const auto c = pairs(t, p);
  const double a = c.both, b = c.truth_only, cc = c.pred_only, d = c.neither;
  const double den = (a + b) * (b + d) + (a + cc) * (cc + d);
  if (den == 0) return same_partition(t, p) ? 1.0 : 0.0;
  return 2 * (a * d - b * cc) / den;
}

inline double fmi(const std::vector<int>& t, const std::vector<int>& p) {
  if (same_partition(t, p)) return 1.0;
  const auto c = pairs(t, p);
  const double den = (c.both + c.truth_only) * (c.both + c.pred_only);
  return den == 0 ? 0.0 : c.both / std::sqrt(den);
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Margins {
  std::map<int, int> a, b;
  std::map<std::pair<int, int>, int> joint;
  int n = 0;
};

inline Margins margins(const std::vector<int>& t, const std::vector<int>& p) {
  Margins m;
  m.n = static_cast<int>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    ++m.a[t[i]];
    ++m.b[p[i]];
    ++m.joint[{t[i], p[i]}];
  }
  return m;
}

inline double entropy(const std::map<int, int>& counts, int n) {
  double h = 0;
  for (auto [k, c] : counts) h -= (double(c) / n) * std::log(double(c) / n);
  return h;
}

inline double mi(const Margins& m) {
  double s = 0;
  for (auto [key, nij] : m.joint)
    s += double(nij) / m.n *
         std::log(double(m.n) * nij / (double(m.a.at(key.first)) * m.b.at(key.second)));
  return s;
}

// Hypergeometric expectation with probabilities as binomial ratios.
inline double emi(const Margins& m) {
  double s = 0;
  for (auto [ka, ai] : m.a)
    for (auto [kb, bj] : m.b)
      for (int nij = std::max(1, ai + bj - m.n); nij <= std::min(ai, bj); ++nij) {
        const double prob = binom(bj, nij) * binom(m.n - bj, ai - nij) / binom(m.n, ai);
        s += double(nij) / m.n * std::log(double(m.n) * nij / (double(ai) * bj)) * prob;
      }
  return s;
}

inline double ami(const std::vector<int>& t, const std::vector<int>& p) {
  if (same_partition(t, p)) return 1.0;
  const auto m = margins(t, p);
  const double e = emi(m);
  const double den = std::max(entropy(m.a, m.n), entropy(m.b, m.n)) - e;
  return std::abs(den) < 1e-15 ? 0.0 : (mi(m) - e) / den;
}

// E[MI] by averaging MI over every permutation of the predicted labels.
inline double emi_by_permutation(const std::vector<int>& t, std::vector<int> p) {
  std::sort(p.begin(), p.end());
  double sum = 0;
  long count = 0;
  do {
    sum += mi(margins(t, p));
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  // next_permutation skips duplicates, so weight each distinct arrangement
  // equally, which is exactly uniform over label arrangements.
  return sum / count;
}

// Flood from each center in density order over the (symmetric) NNN graph.
inline std::vector<int> reach_labels(const std::vector<std::vector<std::uint32_t>>& nnn,
                                     const std::vector<double>& rho,
                                     std::vector<std::size_t> centers) {
  const std::size_t n = nnn.size();
  std::sort(centers.begin(), centers.end(),
            [&](std::size_t a, std::size_t b) { return higher(rho, a, b); });
  std::vector<int> label(n, dpc::kNoise);
  int next = 0;
  for (auto c : centers) {
    if (label[c] != dpc::kNoise) continue;
    std::vector<std::size_t> stack{c};
    label[c] = next;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto z : nnn[x])
        if (label[z] == dpc::kNoise) {
          label[z] = next;
          stack.push_back(z);
        }
    }
    ++next;
  }
  return label;
}

inline dpc::Dataset random_dataset(dpc::Rng& rng, std::size_t n, std::size_t d) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform(-1.0, 1.0);
  return dpc::make_dataset("random", rows);
}

inline std::vector<int> random_labels(dpc::Rng& rng, std::size_t n, std::size_t k) {
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(rng.below(k));
  return out;
}

}  // namespace oracle
