#pragma once

#include <string>
#include <vector>

#include "dpc/dataset.hpp"

namespace dpc {

struct RoundTrace {
  std::size_t patient_zero = 0;
  std::size_t checks = 0;
  std::size_t infected = 0;  // including patient zero
  std::size_t immunized = 0;
};

struct ClusterAssignment {
  std::vector<int> labels;
  std::vector<std::size_t> centers_used;
  std::vector<std::size_t> immune_at_end;
  std::vector<std::size_t> fallback_assigned;
  std::vector<RoundTrace> rounds;

  std::size_t cluster_count() const;
  std::size_t noise_count() const;
};

/// "index,label" rows.
std::string assignment_csv(const ClusterAssignment& asg);

}  // namespace dpc
