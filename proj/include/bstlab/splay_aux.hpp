#pragma once

#include "bstlab/path_aug.hpp"
#include "bstlab/splay.hpp"

namespace bstlab {

// Splay auxiliary trees: splitting at x is splaying x to the top of its
// tree, and a pivot on top of two splay trees is already their
// concatenation.
struct SplayAux {
  static constexpr bool colored = false;
  static constexpr const char* name = "multisplay";

  static int tree_height(PathCursor&) { return 0; }
  static void make_aux_root(PathCursor&) {}

  // Ends a search by splaying the last node reached to the top, which pays
  // for the walk in the amortized sense.
  static void settle(PathCursor& c, int) {
    splay_to_top(c, [](NodeId, const NodeRecord<PathAug>& r) { return r.aug.aux_root; });
  }

  static int concatenate(PathCursor&, NodeId, int, int) { return 0; }

  static SideHeights split(PathCursor& c, Key x, NodeId ceiling, int) {
    aux::descend_to(c, x);
    splay_to_top(c, [ceiling](NodeId, const NodeRecord<PathAug>& r) {
      return aux::is_top(r, ceiling);
    });
    return {};
  }

  // Brings the accessed key to the top of the root aux tree. The cursor is
  // either already on x or at the global root.
  static void gather(PathCursor& c, Key x) {
    aux::descend_to(c, x);
    splay_to_top(c, [](NodeId, const NodeRecord<PathAug>& r) { return r.aug.aux_root; });
  }

  static void finish(PathCursor& c, Key x) { gather(c, x); }
};

}  // namespace bstlab
