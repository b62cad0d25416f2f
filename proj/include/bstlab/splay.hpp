#pragma once

#include <cstdint>
#include <string>

#include "bstlab/complete_tree.hpp"
#include "bstlab/cost_model.hpp"

namespace bstlab {

// Bottom-up splay of the cursor's node until `is_top(id, record)` holds for
// it. Zig-zig and zig-zag steps cost two rotations; no links are followed.
template <Augmentation Aug, class IsTop>
void splay_to_top(Cursor<Aug>& c, IsTop&& is_top) {
  while (!is_top(c.at(), c.node())) {
    const NodeId p = c.node().parent;
    const auto& pr = c.peek(Direction::parent);
    if (is_top(p, pr)) {
      c.rotate_up();  // zig
      return;
    }
    const NodeId g = pr.parent;
    const bool x_left = c.at() < p;
    const bool p_left = p < g;
    if (x_left == p_left) {
      c.rotate_parent_up();  // zig-zig
      c.rotate_up();
    } else {
      c.rotate_up();  // zig-zag
      c.rotate_up();
    }
  }
}

// Classic splay tree over the metered node store. The initial shape is the
// complete tree on 1..n.
class SplayTree {
 public:
  explicit SplayTree(Key n)
      : store_(make_complete_shape(n), [](Key) { return NoAug{}; }) {}

  Key size() const { return store_.size(); }
  const CostMeter& meter() const { return meter_; }
  const NodeStore<NoAug>& store() const { return store_; }

  // Returns the cost of this access.
  std::uint64_t access(Key key) {
    if (!store_.contains(key)) throw Error("key-out-of-range", std::to_string(key));
    const std::uint64_t before = meter_.total();
    auto c = begin_access(store_, meter_);
    while (c.key() != key) c.move(key < c.key() ? Direction::left : Direction::right);
    splay_to_top(c, [](NodeId, const NodeRecord<NoAug>& r) { return r.parent == kNull; });
    return meter_.total() - before;
  }

 private:
  NodeStore<NoAug> store_;
  CostMeter meter_;
};

inline SplayTree build_splay(Key n) { return SplayTree(n); }

}  // namespace bstlab
