#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace topofuse {

/// Disjoint sets over 0..n-1 with path compression and union by rank.
///
/// Each root also carries an "elder" tag: the member with the smallest
/// filtration rank. Merging keeps the elder of the two tags on the new root
/// regardless of which root wins by rank.
class UnionFind {
 public:
  explicit UnionFind(std::uint32_t n) : parent_(n), rank_(n, 0), elder_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
    std::iota(elder_.begin(), elder_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  std::uint32_t elder(std::uint32_t root) const { return elder_[root]; }

  /// Links two distinct roots and returns the surviving root. The caller
  /// supplies the elder tag for the merged set.
  std::uint32_t link(std::uint32_t a, std::uint32_t b, std::uint32_t merged_elder) {
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    elder_[a] = merged_elder;
    return a;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<std::uint32_t> elder_;
};

}  // namespace topofuse
