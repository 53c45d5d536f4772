#include "dpc/assignment.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dpc {

std::size_t ClusterAssignment::cluster_count() const {
  std::set<int> ids;
  for (int l : labels)
    if (l >= 0) ids.insert(l);
  return ids.size();
}

std::size_t ClusterAssignment::noise_count() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

std::string assignment_csv(const ClusterAssignment& asg) {
  std::ostringstream out;
  out << "index,label\n";
  for (std::size_t i = 0; i < asg.labels.size(); ++i) out << i << ',' << asg.labels[i] << '\n';
  return out.str();
}

}  // namespace dpc
