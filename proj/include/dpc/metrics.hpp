#pragma once

#include <cstdint>
#include <vector>

namespace dpc {

/// Co-occurrence counts between true classes (rows) and predicted clusters
/// (columns). Label values are compacted to 0..r-1 and 0..c-1 in ascending
/// order of the original ids; noise (-1) is an ordinary id.
struct ContingencyTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> counts;  // rows * cols
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t n = 0;

  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

/// Throws std::invalid_argument on length mismatch or fewer than 2 points.
ContingencyTable contingency(const std::vector<int>& truth, const std::vector<int>& pred);

/// True when the two labelings induce the same partition.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

double ari(const std::vector<int>& truth, const std::vector<int>& pred);
double ami(const std::vector<int>& truth, const std::vector<int>& pred);
double fmi(const std::vector<int>& truth, const std::vector<int>& pred);

/// Mutual information (nats) of a table.
double mutual_information(const ContingencyTable& t);
/// Expected mutual information under the permutation (hypergeometric) model.
double expected_mutual_information(const ContingencyTable& t);

struct MetricTriple {
  double ari = 0.0;
  double ami = 0.0;
  double fmi = 0.0;
};

MetricTriple score_all(const std::vector<int>& truth, const std::vector<int>& pred);

}  // namespace dpc
