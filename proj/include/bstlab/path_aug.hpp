#pragma once

#include <algorithm>
#include <cstdint>

#include "bstlab/cost_model.hpp"

namespace bstlab {

// Per-node payload shared by the preferred-path trees (tango, multi-splay).
// Auxiliary-tree membership is encoded by `aux_root` marks: a node belongs to
// the auxiliary tree of its nearest marked ancestor-or-self.
struct PathAug {
  std::int32_t depth = 0;      // locked depth in the reference tree
  std::int32_t min_depth = 0;  // over this node's subtree within its aux tree
  std::int32_t max_depth = 0;
  bool red = false;
  bool aux_root = false;
  bool has_left_in_reference = false;  // static, fixed at lock time

  static void pull(PathAug& s, const PathAug* l, const PathAug* r) {
    s.min_depth = s.max_depth = s.depth;
    if (l != nullptr && !l->aux_root) {
      s.min_depth = std::min(s.min_depth, l->min_depth);
      s.max_depth = std::max(s.max_depth, l->max_depth);
    }
    if (r != nullptr && !r->aux_root) {
      s.min_depth = std::min(s.min_depth, r->min_depth);
      s.max_depth = std::max(s.max_depth, r->max_depth);
    }
  }

  // The aux-root mark follows whichever node ends up on top.
  static void transfer(PathAug& lowered, PathAug& raised) {
    if (lowered.aux_root) {
      lowered.aux_root = false;
      raised.aux_root = true;
    }
  }
};

using PathCursor = Cursor<PathAug>;

// Heights of the two sides left after a split.
struct SideHeights {
  int left = 0;
  int right = 0;
};

namespace aux {

inline bool child_in_aux(const PathCursor& c, Direction d) {
  return c.has(d) && !c.peek(d).aug.aux_root;
}

// Top of the tree currently being worked on: either an aux root, or the
// child of `ceiling` when operating on a piece below a split pivot.
inline bool is_top(const PathCursor& c, NodeId ceiling) {
  return c.aug().aux_root || (ceiling != kNull && c.node().parent == ceiling);
}

inline bool is_top(const NodeRecord<PathAug>& r, NodeId ceiling) {
  return r.aug.aux_root || (ceiling != kNull && r.parent == ceiling);
}

inline void climb(PathCursor& c, int steps) {
  for (; steps > 0; --steps) c.move(Direction::parent);
}

inline void climb_to_top(PathCursor& c, NodeId ceiling) {
  while (!is_top(c, ceiling)) c.move(Direction::parent);
}

// Walks from the current top down to `x` inside the same aux tree.
inline void descend_to(PathCursor& c, Key x) {
  while (c.key() != x) {
    const Direction d = x < c.key() ? Direction::left : Direction::right;
    if (!child_in_aux(c, d)) throw Error("key-absent", std::to_string(x));
    c.move(d);
  }
}

}  // namespace aux
}  // namespace bstlab
