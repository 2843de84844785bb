#include "coclust/enumeration.hpp"

#include <algorithm>
#include <limits>

namespace coclust {

std::uint64_t stirling2(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n == 0) return 1;  // S(0,0)
  if (k == 0) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      const std::uint64_t keep = row[j];
      const std::uint64_t grow = row[j - 1];
      if (keep != 0 && static_cast<std::uint64_t>(j) > kMax / keep) {
        row[j] = kMax;
      } else {
        const std::uint64_t scaled = keep * static_cast<std::uint64_t>(j);
        row[j] = scaled > kMax - grow ? kMax : scaled + grow;
      }
    }
    row[0] = 0;
  }
  return row[k];
}

KPartitionEnumerator::KPartitionEnumerator(int n, int k) : n_(n), k_(k) {
  done_ = n < 1 || k < 1 || k > n;
}

bool KPartitionEnumerator::next(std::vector<int>& labels) {
  if (done_) return false;
  if (!started_) {
    // Smallest string with exactly k blocks: zeros then 1, 2, ..., k-1.
    labels_.assign(n_, 0);
    for (int i = 0; i < k_ - 1; ++i) labels_[n_ - 1 - i] = k_ - 1 - i;
    started_ = true;
    labels = labels_;
    return true;
  }
  // Find the rightmost position whose value can grow while keeping the
  // string a valid RGS, then refill the tail minimally so all k blocks
  // still occur.
  std::vector<int> prefix_max(n_, 0);
  for (int i = 1; i < n_; ++i)
    prefix_max[i] = std::max(prefix_max[i - 1], labels_[i - 1]);
  for (int i = n_ - 1; i >= 1; --i) {
    if (labels_[i] >= k_ - 1 || labels_[i] > prefix_max[i]) continue;
    const int grown = labels_[i] + 1;
    const int new_max = std::max(prefix_max[i], grown);
    const int missing = k_ - 1 - new_max;  // block ids still unused
    const int tail = n_ - 1 - i;
    if (tail < missing) continue;
    labels_[i] = grown;
    for (int t = i + 1; t < n_; ++t) labels_[t] = 0;
    for (int t = 0; t < missing; ++t) labels_[n_ - missing + t] = new_max + 1 + t;
    labels = labels_;
    return true;
  }
  done_ = true;
  return false;
}

}  // namespace coclust
