#pragma once

// Independent checks used by the unit tests and the acceptance binary.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bstlab/bstlab.hpp"

namespace oracle {

using bstlab::Key;

// Interleave bound straight from its definition: for every node v of the
// reference tree, take the accesses that fall in v's subtree, label each as
// left region (left subtree or v itself) or right region, and count label
// changes. Leaves have no left region and their own access is unlabeled.
inline std::int64_t direct_interleave_bound(std::span<const Key> keys, Key n) {
  const auto shape = bstlab::make_complete_shape(n);
  std::int64_t total = 0;
  for (Key v = 1; v <= n; ++v) {
    int last = -1;
    for (Key x : keys) {
      if (!shape.contains(v, x)) continue;
      int label;
      if (x < v) {
        label = 0;
      } else if (x > v) {
        label = 1;
      } else if (shape.left[v] != bstlab::kNull) {
        label = 0;
      } else {
        continue;
      }
      if (last >= 0 && label != last) ++total;
      last = label;
    }
  }
  return total;
}

// Replays `keys` on a path tree and, after every access, compares the aux
// tree partition with the reference model and runs the structural
// validator. Returns a description of the first mismatch.
template <class Tree>
std::optional<std::string> check_against_reference(Key n, std::span<const Key> keys) {
  Tree t(n);
  bstlab::ReferenceModel ref(n);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    t.access(keys[i]);
    ref.record_access(keys[i]);
    if (auto e = bstlab::validate_path_tree(t.store(), Tree::policy_colored)) {
      return "step " + std::to_string(i) + ": " + *e;
    }
    if (bstlab::aux_partition(t.store()) != bstlab::canonical(ref.preferred_paths())) {
      return "step " + std::to_string(i) + ": partition differs from reference";
    }
  }
  return std::nullopt;
}

inline std::vector<Key> random_keys(Key n, std::size_t m, std::uint64_t seed) {
  bstlab::Rng rng(seed);
  std::vector<Key> out(m);
  for (auto& k : out) k = static_cast<Key>(rng.next() % static_cast<std::uint64_t>(n)) + 1;
  return out;
}

}  // namespace oracle
