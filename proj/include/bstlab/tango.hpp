#pragma once

#include "bstlab/path_tree.hpp"
#include "bstlab/red_black_aux.hpp"

namespace bstlab {

// Tango tree: preferred paths stored as depth-augmented red-black trees.
using TangoTree = PathTree<RedBlackAux>;

inline TangoTree lock_tango(Key n) { return TangoTree(n); }

}  // namespace bstlab
