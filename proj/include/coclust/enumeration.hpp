#pragma once

#include <cstdint>
#include <vector>

namespace coclust {

// Stirling number of the second kind S(n, k), saturating at UINT64_MAX.
std::uint64_t stirling2(int n, int k);

// Enumerates set partitions of {0..n-1} into exactly k non-empty blocks as
// restricted growth strings, lexicographically. Block ids are canonical:
// block 0 appears first, then block 1, and so on.
class KPartitionEnumerator {
 public:
  KPartitionEnumerator(int n, int k);

  // False once the enumeration is exhausted. The first call yields the
  // lexicographically smallest string.
  bool next(std::vector<int>& labels);

 private:
  int n_;
  int k_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> labels_;
};

}  // namespace coclust
