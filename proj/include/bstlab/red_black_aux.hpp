#pragma once

#include <array>
#include <cstddef>

#include "bstlab/path_aug.hpp"

namespace bstlab {

// Red-black auxiliary trees. Split and concatenate are done entirely with
// metered rotations and moves:
//
//  * concatenate(pivot): the pivot sits on top of two valid red-black trees
//    and sinks down the spine of the taller one until both its children have
//    equal black height, then red-red violations are repaired upwards.
//  * split(x): x is rotated to the top, which leaves a chain of ancestor
//    pieces on each side; the chain is re-assembled bottom-up with
//    concatenate, exactly like the classical join-based split.
//
// Black heights count the node itself and are never stored. The height of
// a whole aux tree is measured by walking its left spine; heights of the
// pieces inside a split follow from the colors seen on the search path.
struct RedBlackAux {
  static constexpr bool colored = true;
  static constexpr const char* name = "tango";

  static bool red_child(const PathCursor& c, Direction d) {
    return aux::child_in_aux(c, d) && c.peek(d).aug.red;
  }

  // Cursor at a tree top; returns there.
  static int tree_height(PathCursor& c) {
    int h = c.aug().red ? 0 : 1;
    int steps = 0;
    while (aux::child_in_aux(c, Direction::left)) {
      c.move(Direction::left);
      ++steps;
      if (!c.aug().red) ++h;
    }
    aux::climb(c, steps);
    return h;
  }

  static void make_aux_root(PathCursor& c) { c.aug().red = false; }

  // Returns to the top after a search that went `steps` links down.
  static void settle(PathCursor& c, int steps) { aux::climb(c, steps); }

  // Cursor at the pivot, which is the top of its tree (relative to
  // `ceiling`). `hl`/`hr` are the black heights of the pivot's aux subtrees.
  // Leaves the cursor at the new top and returns its black height.
  static int concatenate(PathCursor& c, NodeId ceiling, int hl, int hr) {
    if (red_child(c, Direction::left)) {
      c.move(Direction::left);
      c.aug().red = false;
      c.move(Direction::parent);
      ++hl;
    }
    if (red_child(c, Direction::right)) {
      c.move(Direction::right);
      c.aug().red = false;
      c.move(Direction::parent);
      ++hr;
    }
    if (hl == hr) {
      c.aug().red = false;
      return hl + 1;
    }
    const Direction tall = hl > hr ? Direction::left : Direction::right;
    const Direction spine = opposite(tall);
    const int target = std::min(hl, hr);
    int cur = std::max(hl, hr);
    for (;;) {
      const bool exists = aux::child_in_aux(c, tall);
      const bool black = !exists || !c.peek(tall).aug.red;
      if (black && cur == target) break;
      if (!exists) throw Error("rb-invariant", "black height mismatch");
      c.move(tall);
      c.rotate_up();
      if (!c.aug().red) --cur;
      c.move(spine);
    }
    c.aug().red = true;
    const int h = fix_red(c, ceiling, std::max(hl, hr));
    aux::climb_to_top(c, ceiling);
    return h;
  }

  // Rotates x to the top of its tree and rebuilds both sides into valid
  // red-black trees. Cursor starts at the top and ends at x.
  static SideHeights split(PathCursor& c, Key x, NodeId ceiling, int height) {
    struct Step {
      NodeId id;
      bool black;
      bool went_left;
      int bh;
    };
    std::array<Step, 128> path;
    std::size_t len = 0;
    int bh = height;
    while (c.key() != x) {
      const Direction d = x < c.key() ? Direction::left : Direction::right;
      if (!aux::child_in_aux(c, d)) throw Error("key-absent", std::to_string(x));
      if (len == path.size()) throw Error("rb-invariant", "aux tree too tall");
      const bool black = !c.aug().red;
      path[len++] = {c.at(), black, d == Direction::left, bh};
      if (black) --bh;
      c.move(d);
    }
    const int below_x = bh - (c.aug().red ? 0 : 1);
    for (std::size_t i = 0; i < len; ++i) c.rotate_up();
    (void)ceiling;

    SideHeights out;
    out.left = rebuild_side(c, path.data(), len, Direction::left, below_x);
    out.right = rebuild_side(c, path.data(), len, Direction::right, below_x);
    c.aug().red = false;
    return out;
  }

  template <class Step>
  static int rebuild_side(PathCursor& c, const Step* path, std::size_t len, Direction side,
                          int acc) {
    // Ancestors that end up on `side` of x, shallow to deep. An ancestor on
    // the left side is one where the search went right.
    std::array<const Step*, 128> chain;
    std::size_t cn = 0;
    for (std::size_t i = 0; i < len; ++i) {
      if (path[i].went_left == (side == Direction::right)) chain[cn++] = &path[i];
    }
    if (cn == 0) return acc;
    const Direction back = opposite(side);
    const NodeId x = c.at();
    c.move(side);
    for (std::size_t i = 1; i < cn; ++i) c.move(back);
    for (std::size_t i = cn; i-- > 0;) {
      const Step& s = *chain[i];
      const int piece = s.bh - (s.black ? 1 : 0);
      const NodeId ceiling = i > 0 ? chain[i - 1]->id : x;
      acc = side == Direction::left ? concatenate(c, ceiling, piece, acc)
                                    : concatenate(c, ceiling, acc, piece);
      c.move(Direction::parent);
    }
    return acc;
  }

  // Hooks used by the multi-splay flavour; red-black trees need none.
  static void gather(PathCursor&, Key) {}
  static void finish(PathCursor&, Key) {}

 private:
  // Cursor at a red node z. Repairs red-red edges up to the top; returns the
  // black height of the tree given its height `h` before the repair.
  static int fix_red(PathCursor& c, NodeId ceiling, int h) {
    for (;;) {
      if (aux::is_top(c, ceiling)) {
        c.aug().red = false;
        return h + 1;
      }
      const Key z = c.key();
      c.move(Direction::parent);
      if (!c.aug().red) return h;
      if (aux::is_top(c, ceiling)) {
        c.aug().red = false;
        return h + 1;
      }
      const Key p = c.key();
      c.move(Direction::parent);
      const Key g = c.key();
      const Direction pdir = p < g ? Direction::left : Direction::right;
      const Direction udir = opposite(pdir);
      if (red_child(c, udir)) {
        c.aug().red = true;
        c.move(udir);
        c.aug().red = false;
        c.move(Direction::parent);
        c.move(pdir);
        c.aug().red = false;
        c.move(Direction::parent);
        continue;
      }
      const Direction zdir = z < p ? Direction::left : Direction::right;
      c.move(pdir);
      if (zdir != pdir) {
        c.move(zdir);
        c.rotate_up();
        c.rotate_up();
      } else {
        c.rotate_up();
      }
      c.aug().red = false;
      c.move(udir);
      c.aug().red = true;
      c.move(Direction::parent);
      return h;
    }
  }
};

}  // namespace bstlab
