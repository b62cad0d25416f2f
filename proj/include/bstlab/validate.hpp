#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bstlab/cost_model.hpp"
#include "bstlab/path_aug.hpp"

namespace bstlab {

// Unmetered structural checks. None of this is reachable from an access.

using Partition = std::vector<std::vector<Key>>;

// Sorts each block and the list of blocks so partitions compare with ==.
inline Partition canonical(Partition p) {
  for (auto& block : p) std::sort(block.begin(), block.end());
  std::sort(p.begin(), p.end());
  return p;
}

inline Partition aux_partition(const NodeStore<PathAug>& store) {
  std::vector<std::vector<Key>> by_root(static_cast<std::size_t>(store.size()) + 1);
  for (Key k = 1; k <= store.size(); ++k) {
    NodeId r = k;
    while (!store.record(r).aug.aux_root) r = store.record(r).parent;
    by_root[r].push_back(k);
  }
  Partition out;
  for (auto& block : by_root) {
    if (!block.empty()) out.push_back(std::move(block));
  }
  return canonical(std::move(out));
}

template <Augmentation Aug>
std::optional<std::string> validate_bst(const NodeStore<Aug>& store) {
  if (!links_consistent(store)) return "parent/child links inconsistent";
  const auto keys = inorder_keys(store);
  if (keys.size() != static_cast<std::size_t>(store.size())) return "in-order size mismatch";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] != static_cast<Key>(i + 1)) return "in-order is not 1..n";
  }
  return std::nullopt;
}

namespace detail {

struct AuxSummary {
  int min_depth;
  int max_depth;
  int black_height;  // -1 when unbalanced
};

inline bool is_aux_child(const NodeStore<PathAug>& s, NodeId id) {
  return id != kNull && !s.record(id).aug.aux_root;
}

}  // namespace detail

// Checks order, link symmetry, aux-root marks, min/max depth summaries,
// depth contiguity of every aux tree and, when `colored`, red-black rules
// inside every aux tree (marked children count as null leaves).
inline std::optional<std::string> validate_path_tree(const NodeStore<PathAug>& store,
                                                     bool colored) {
  if (auto e = validate_bst(store)) return e;
  if (!store.record(store.root()).aug.aux_root) return "global root is not an aux root";

  // Post-order over the whole tree; each aux tree is summarized separately.
  const auto n = static_cast<std::size_t>(store.size());
  std::vector<detail::AuxSummary> sum(n + 1);
  std::vector<NodeId> order;
  order.reserve(n);
  {
    std::vector<NodeId> stack{store.root()};
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      const auto& r = store.record(v);
      if (r.left != kNull) stack.push_back(r.left);
      if (r.right != kNull) stack.push_back(r.right);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    const auto& r = store.record(v);
    int lo = r.aug.depth;
    int hi = r.aug.depth;
    int bh_l = 0;
    int bh_r = 0;
    if (detail::is_aux_child(store, r.left)) {
      lo = std::min(lo, sum[r.left].min_depth);
      hi = std::max(hi, sum[r.left].max_depth);
      bh_l = sum[r.left].black_height;
    }
    if (detail::is_aux_child(store, r.right)) {
      lo = std::min(lo, sum[r.right].min_depth);
      hi = std::max(hi, sum[r.right].max_depth);
      bh_r = sum[r.right].black_height;
    }
    if (r.aug.min_depth != lo || r.aug.max_depth != hi) {
      return "stale min/max depth at key " + std::to_string(v);
    }
    int bh = -1;
    if (colored) {
      if (bh_l < 0 || bh_r < 0 || bh_l != bh_r) {
        return "unequal black heights below key " + std::to_string(v);
      }
      if (r.aug.red) {
        if (r.aug.aux_root) return "red aux root at key " + std::to_string(v);
        const bool red_kid =
            (detail::is_aux_child(store, r.left) && store.record(r.left).aug.red) ||
            (detail::is_aux_child(store, r.right) && store.record(r.right).aug.red);
        if (red_kid) return "red-red edge at key " + std::to_string(v);
      }
      bh = bh_l + (r.aug.red ? 0 : 1);
    }
    sum[v] = {lo, hi, bh};
  }

  // Depths inside one aux tree must be distinct and contiguous.
  for (const auto& block : aux_partition(store)) {
    std::vector<int> depths;
    depths.reserve(block.size());
    for (Key k : block) depths.push_back(store.record(k).aug.depth);
    std::sort(depths.begin(), depths.end());
    for (std::size_t i = 1; i < depths.size(); ++i) {
      if (depths[i] != depths[i - 1] + 1) {
        return "aux tree containing key " + std::to_string(block.front()) +
               " has non-contiguous depths";
      }
    }
  }
  return std::nullopt;
}

}  // namespace bstlab
