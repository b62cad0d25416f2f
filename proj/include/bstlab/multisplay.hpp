#pragma once

#include "bstlab/path_tree.hpp"
#include "bstlab/splay_aux.hpp"

namespace bstlab {

// Multi-splay tree: the tango skeleton with splay trees as auxiliary trees.
// The accessed key is splayed to the global root at the end of each access.
using MultiSplayTree = PathTree<SplayAux>;

inline MultiSplayTree lock_multisplay(Key n) { return MultiSplayTree(n); }

}  // namespace bstlab
