#include "dpc/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace dpc {

NeighborOrder::NeighborOrder(const DistanceMatrix& dm) : n_(dm.size()) {
  if (n_ < 2) throw std::invalid_argument("neighbor order needs n >= 2");
  order_.resize(n_ * (n_ - 1));
  rank_.assign(n_ * n_, 0);
  std::vector<std::uint32_t> idx(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    idx.clear();
    for (std::uint32_t j = 0; j < n_; ++j)
      if (j != i) idx.push_back(j);
    const auto row = dm.row(i);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return row[a] < row[b] || (row[a] == row[b] && a < b);
    });
    std::copy(idx.begin(), idx.end(), order_.begin() + i * (n_ - 1));
    for (std::size_t k = 0; k < idx.size(); ++k)
      rank_[i * n_ + idx[k]] = static_cast<std::uint32_t>(k + 1);
  }
}

NeighborOrder build_neighbor_order(const DistanceMatrix& dm) { return NeighborOrder(dm); }

std::string to_string(NnnMode mode) {
  return mode == NnnMode::exact ? "exact" : "log";
}

NnnMode parse_nnn_mode(const std::string& s) {
  if (s == "exact") return NnnMode::exact;
  if (s == "log" || s == "logarithmic") return NnnMode::logarithmic;
  throw std::invalid_argument("unknown NNN mode '" + s + "' (expected exact|log)");
}

NeighborhoodIndex nnn_search(const NeighborOrder& order, NnnMode mode) {
  const std::size_t n = order.size();
  if (n < 2) throw std::invalid_argument("nnn_search needs n >= 2");

  NeighborhoodIndex idx;
  idx.mode = mode;
  idx.nnn.assign(n, {});

  // NNN_0^0(X) = X.
  std::size_t empty = n;
  std::size_t prev_empty = n;
  std::size_t unchanged = 0;
  const double log_n = std::log(static_cast<double>(n));

  std::size_t r = 1;
  for (;; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t j = order.kth(i, r);
      // j enters NN_r(i). The pair becomes mutual now iff i is already within
      // j's first r neighbors. Pairs where both ranks equal r are seen twice;
      // only the lower index records them.
      const std::uint32_t back = order.rank(j, i);
      if (back < r || (back == r && i < j)) {
        if (idx.nnn[i].empty()) --empty;
        if (idx.nnn[j].empty()) --empty;
        idx.nnn[i].push_back(j);
        idx.nnn[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
    idx.empty_history.push_back(empty);
    // The empty set only shrinks, so equal sizes mean equal sets.
    if (empty == prev_empty) ++unchanged;
    prev_empty = empty;

    if (empty == 0) break;
    if (mode == NnnMode::logarithmic &&
        static_cast<double>(unchanged) >= std::log(static_cast<double>(r)) + log_n)
      break;
    if (r == n - 1) break;
  }

  idx.lambda = r;
  idx.nn.assign(n, {});
  idx.rnn.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 1; k <= r; ++k) {
      const std::uint32_t j = order.kth(i, k);
      idx.nn[i].push_back(j);
      idx.rnn[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(idx.nn[i].begin(), idx.nn[i].end());
    std::sort(idx.rnn[i].begin(), idx.rnn[i].end());
    std::sort(idx.nnn[i].begin(), idx.nnn[i].end());
    if (idx.nnn[i].empty()) idx.empty_set_members.push_back(static_cast<std::uint32_t>(i));
  }
  return idx;
}

bool is_outlier(const NeighborhoodIndex& idx, std::size_t i) {
  if (i >= idx.size()) throw std::out_of_range("point index " + std::to_string(i) + " out of range");
  return std::binary_search(idx.empty_set_members.begin(), idx.empty_set_members.end(),
                            static_cast<std::uint32_t>(i));
}

std::string neighborhood_json(const NeighborhoodIndex& idx) {
  nlohmann::json j;
  j["lambda"] = idx.lambda;
  j["mode"] = to_string(idx.mode);
  j["nnn"] = idx.nnn;
  j["empty_set_members"] = idx.empty_set_members;
  j["empty_history"] = idx.empty_history;
  return j.dump(2);
}

}  // namespace dpc
