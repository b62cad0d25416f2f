#pragma once

#include <cstdint>
#include <vector>

#include "bstlab/error.hpp"

namespace bstlab {

using Key = std::int32_t;
using NodeId = std::int32_t;
inline constexpr NodeId kNull = 0;

// Shape of the static complete binary tree on keys 1..n. The tree is
// heap-shaped (levels filled left to right) and labeled in order, so every
// node has two children, only a left child, or none.
//
// Arrays are indexed by key; index 0 is unused.
struct CompleteShape {
  Key n = 0;
  Key root = kNull;
  std::vector<NodeId> parent;
  std::vector<NodeId> left;
  std::vector<NodeId> right;
  std::vector<std::int32_t> depth;
  // Key interval [lo, hi] covered by the subtree of each key.
  std::vector<Key> lo;
  std::vector<Key> hi;

  bool is_leaf(Key k) const { return left[k] == kNull && right[k] == kNull; }
  bool contains(Key ancestor, Key k) const {
    return lo[ancestor] <= k && k <= hi[ancestor];
  }
};

inline CompleteShape make_complete_shape(Key n) {
  if (n < 1) throw Error("bad-size", "complete tree needs n >= 1");
  CompleteShape s;
  s.n = n;
  const auto sz = static_cast<std::size_t>(n) + 1;
  s.parent.assign(sz, kNull);
  s.left.assign(sz, kNull);
  s.right.assign(sz, kNull);
  s.depth.assign(sz, 0);
  s.lo.assign(sz, 0);
  s.hi.assign(sz, 0);

  // Heap slot h has children 2h and 2h+1. An iterative in-order walk over
  // the slots hands out keys 1..n.
  std::vector<Key> key_of_slot(sz, kNull);
  {
    Key next = 1;
    std::vector<std::int64_t> stack;
    std::int64_t h = 1;
    while (h <= n || !stack.empty()) {
      while (h <= n) {
        stack.push_back(h);
        h *= 2;
      }
      h = stack.back();
      stack.pop_back();
      key_of_slot[static_cast<std::size_t>(h)] = next++;
      h = 2 * h + 1;
    }
  }
  for (std::int64_t h = 1; h <= n; ++h) {
    const Key k = key_of_slot[static_cast<std::size_t>(h)];
    if (h > 1) s.parent[k] = key_of_slot[static_cast<std::size_t>(h / 2)];
    if (2 * h <= n) s.left[k] = key_of_slot[static_cast<std::size_t>(2 * h)];
    if (2 * h + 1 <= n) s.right[k] = key_of_slot[static_cast<std::size_t>(2 * h + 1)];
    std::int32_t d = 0;
    for (std::int64_t t = h; t > 1; t /= 2) ++d;
    s.depth[k] = d;
  }
  s.root = key_of_slot[1];

  // Subtree intervals, children before parents (deepest slots first).
  for (std::int64_t h = n; h >= 1; --h) {
    const Key k = key_of_slot[static_cast<std::size_t>(h)];
    s.lo[k] = s.left[k] != kNull ? s.lo[s.left[k]] : k;
    s.hi[k] = s.right[k] != kNull ? s.hi[s.right[k]] : k;
  }
  return s;
}

}  // namespace bstlab
