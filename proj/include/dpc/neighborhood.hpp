#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpc/dataset.hpp"

namespace dpc {

/// Row i lists every other point by ascending distance to i, ties broken by
/// ascending index.
class NeighborOrder {
 public:
  NeighborOrder() = default;
  explicit NeighborOrder(const DistanceMatrix& dm);

  std::size_t size() const { return n_; }
  /// The k-th nearest neighbor of i, k in [1, n-1].
  std::uint32_t kth(std::size_t i, std::size_t k) const { return order_[i * (n_ - 1) + k - 1]; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {order_.data() + i * (n_ - 1), n_ - 1};
  }
  /// 1-based position of j in row i.
  std::uint32_t rank(std::size_t i, std::size_t j) const { return rank_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> rank_;
};

NeighborOrder build_neighbor_order(const DistanceMatrix& dm);

enum class NnnMode { exact, logarithmic };

std::string to_string(NnnMode mode);
NnnMode parse_nnn_mode(const std::string& s);

struct NeighborhoodIndex {
  NnnMode mode = NnnMode::exact;
  std::size_t lambda = 0;
  /// Sorted ascending.
  std::vector<std::vector<std::uint32_t>> nnn;
  std::vector<std::vector<std::uint32_t>> nn;
  std::vector<std::vector<std::uint32_t>> rnn;
  std::vector<std::uint32_t> empty_set_members;
  /// |empty set| after each round r = 1..lambda.
  std::vector<std::size_t> empty_history;

  std::size_t size() const { return nnn.size(); }
};

/// Natural nearest neighborhood search. Round r adds each point's r-th
/// neighbor to its NN set (and the point to that neighbor's RNN set); a
/// point's NNN set is NN ∩ RNN. Exact mode stops at the first round where no
/// NNN set is empty. Logarithmic mode additionally counts rounds in which the
/// set of empty-NNN points did not change and stops once that count reaches
/// ln r + ln n.
NeighborhoodIndex nnn_search(const NeighborOrder& order, NnnMode mode);

bool is_outlier(const NeighborhoodIndex& idx, std::size_t i);

/// λ, NNN sets and the per-round empty-set sizes as JSON.
std::string neighborhood_json(const NeighborhoodIndex& idx);

}  // namespace dpc
