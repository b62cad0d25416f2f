#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bstlab/complete_tree.hpp"
#include "bstlab/cost_model.hpp"
#include "bstlab/path_aug.hpp"

namespace bstlab {

// A BST made of auxiliary trees, one per preferred path of the reference
// tree, hung together in key order. `Policy` decides how an aux tree is
// balanced and how it splits and concatenates (red-black for tango, splay
// for multi-splay); cut and join on depth ranges are shared.
//
// An access walks from the root to the key, noting every aux root it
// enters. Cuts and joins are then done lazily from the root down, one per
// crossed boundary, so the root aux tree ends up holding the whole
// root-to-key path. Finally the key's own preferred child is set to its
// left child, as an access counts toward the accessed node's left region.
template <class Policy>
class PathTree {
 public:
  static constexpr bool policy_colored = Policy::colored;

  explicit PathTree(Key n) {
    const auto shape = make_complete_shape(n);
    store_ = NodeStore<PathAug>(shape, [&shape](Key k) {
      PathAug a;
      a.depth = a.min_depth = a.max_depth = shape.depth[k];
      a.aux_root = true;
      a.has_left_in_reference = shape.left[k] != kNull;
      return a;
    });
  }

  Key size() const { return store_.size(); }
  const CostMeter& meter() const { return meter_; }
  const NodeStore<PathAug>& store() const { return store_; }

  std::uint64_t access(Key key) {
    if (!store_.contains(key)) throw Error("key-out-of-range", std::to_string(key));
    const std::uint64_t before = meter_.total();
    auto c = begin_access(store_, meter_);

    crossings_.clear();
    while (c.key() != key) {
      c.move(key < c.key() ? Direction::left : Direction::right);
      if (c.aug().aux_root) crossings_.push_back(c.aug().min_depth);
    }
    const int key_depth = c.aug().depth;
    const bool key_has_left = c.aug().has_left_in_reference;

    if (!crossings_.empty()) {
      while (!c.at_root()) c.move(Direction::parent);
      for (const int entry_depth : crossings_) {
        const int cut_depth = entry_depth - 1;
        if (c.aug().max_depth > cut_depth) cut(c, cut_depth);
        if (!join(c, 2 * static_cast<std::int64_t>(key))) {
          throw Error("internal", "boundary vanished during access");
        }
      }
    }

    Policy::gather(c, key);
    if (key_has_left) prefer_left_of(c, key, key_depth);
    Policy::finish(c, key);
    return meter_.total() - before;
  }

  // Test entry points working on the aux tree rooted at `aux_root`. They
  // reach it by a metered search from the global root.
  void cut_aux(Key aux_root, int cut_depth) {
    auto c = begin_access(store_, meter_);
    walk_to(c, aux_root);
    cut(c, cut_depth);
  }

  // Joins the aux tree rooted at `aux_root` with the child aux tree whose key
  // range contains `probe`. Returns false when nothing hangs there.
  bool join_aux(Key aux_root, Key probe) {
    auto c = begin_access(store_, meter_);
    walk_to(c, aux_root);
    return join(c, 2 * static_cast<std::int64_t>(probe));
  }

 private:
  static void walk_to(PathCursor& c, Key k) {
    while (c.key() != k) c.move(k < c.key() ? Direction::left : Direction::right);
    if (!c.aug().aux_root) throw Error("not-aux-root", std::to_string(k));
  }

  // Key of the last node before the deep range (depth > cut_depth) on
  // `side`, or kNull when the deep range touches that end of the tree.
  static Key find_boundary(PathCursor& c, int cut_depth, Direction side) {
    const Direction inward = opposite(side);
    Key found = kNull;
    bool deep_seen = false;
    int steps = 0;
    for (;;) {
      Direction d;
      if (c.aug().depth > cut_depth) {
        deep_seen = true;
        d = side;
      } else if (!deep_seen && aux::child_in_aux(c, side) &&
                 c.peek(side).aug.max_depth > cut_depth) {
        d = side;
      } else {
        found = c.key();
        d = inward;
      }
      if (!aux::child_in_aux(c, d)) break;
      c.move(d);
      ++steps;
    }
    Policy::settle(c, steps);
    return found;
  }

  static void mark_child(PathCursor& c, Direction d) {
    c.move(d);
    c.aug().aux_root = true;
    Policy::make_aux_root(c);
    c.move(Direction::parent);
    c.refresh();
  }

  static int unmark_child(PathCursor& c, Direction d) {
    c.move(d);
    c.aug().aux_root = false;
    const int h = Policy::tree_height(c);
    c.move(Direction::parent);
    c.refresh();
    return h;
  }

  // Cursor at an aux root. Detaches every node deeper than `cut_depth` into
  // its own aux tree; the cursor ends at the (possibly new) aux root.
  static void cut(PathCursor& c, int cut_depth) {
    if (c.aug().max_depth <= cut_depth) throw Error("nothing-to-cut");
    const Key lo = find_boundary(c, cut_depth, Direction::left);
    const Key hi = find_boundary(c, cut_depth, Direction::right);
    if (lo == kNull && hi == kNull) throw Error("nothing-to-keep");
    const int h = Policy::tree_height(c);
    if (lo != kNull && hi != kNull) {
      const auto outer = Policy::split(c, lo, kNull, h);
      c.move(Direction::right);
      const auto inner = Policy::split(c, hi, lo, outer.right);
      mark_child(c, Direction::left);
      const int hr = Policy::concatenate(c, lo, 0, inner.right);
      c.move(Direction::parent);
      c.refresh();
      Policy::concatenate(c, kNull, outer.left, hr);
    } else if (lo != kNull) {
      const auto s = Policy::split(c, lo, kNull, h);
      mark_child(c, Direction::right);
      Policy::concatenate(c, kNull, s.left, 0);
    } else {
      const auto s = Policy::split(c, hi, kNull, h);
      mark_child(c, Direction::left);
      Policy::concatenate(c, kNull, 0, s.right);
    }
  }

  // Cursor at an aux root. Merges in the child aux tree found by searching
  // for `probe2` (a doubled key, so odd values fall between keys). Returns
  // false if the search leaves the tree through a null link.
  static bool join(PathCursor& c, std::int64_t probe2) {
    const int top_max = c.aug().max_depth;
    Key lo = kNull;
    Key hi = kNull;
    bool found = false;
    int steps = 0;
    for (;;) {
      Direction d;
      if (probe2 < 2 * static_cast<std::int64_t>(c.key())) {
        hi = c.key();
        d = Direction::left;
      } else {
        lo = c.key();
        d = Direction::right;
      }
      if (!c.has(d)) break;
      const auto& child = c.peek(d).aug;
      if (child.aux_root) {
        if (child.min_depth != top_max + 1) {
          Policy::settle(c, steps);
          throw Error("bad-join", "child aux tree does not continue the path");
        }
        found = true;
        break;
      }
      c.move(d);
      ++steps;
    }
    Policy::settle(c, steps);
    if (!found) return false;

    const int h = Policy::tree_height(c);
    if (lo != kNull && hi != kNull) {
      const auto outer = Policy::split(c, lo, kNull, h);
      c.move(Direction::right);
      const auto inner = Policy::split(c, hi, lo, outer.right);
      const int hc = unmark_child(c, Direction::left);
      const int hr = Policy::concatenate(c, lo, hc, inner.right);
      c.move(Direction::parent);
      c.refresh();
      Policy::concatenate(c, kNull, outer.left, hr);
    } else if (lo != kNull) {
      const auto s = Policy::split(c, lo, kNull, h);
      const int hc = unmark_child(c, Direction::right);
      Policy::concatenate(c, kNull, s.left, hc);
    } else {
      const auto s = Policy::split(c, hi, kNull, h);
      const int hc = unmark_child(c, Direction::left);
      Policy::concatenate(c, kNull, hc, s.right);
    }
    return true;
  }

  // Which side of `key` the nodes deeper than `key_depth` lie on, if any.
  // Cursor at the aux root; returns there.
  static Direction deep_side(PathCursor& c, Key key, int key_depth, bool& any) {
    any = c.aug().max_depth > key_depth;
    if (!any) return Direction::parent;
    int steps = 0;
    Direction side;
    for (;;) {
      const bool deep_left = aux::child_in_aux(c, Direction::left) &&
                             c.peek(Direction::left).aug.max_depth > key_depth;
      if (c.key() == key) {
        side = deep_left ? Direction::left : Direction::right;
        break;
      }
      if (c.aug().depth > key_depth) {
        side = c.key() < key ? Direction::left : Direction::right;
        break;
      }
      c.move(deep_left ? Direction::left : Direction::right);
      ++steps;
    }
    Policy::settle(c, steps);
    return side;
  }

  // Makes the left child of `key` in the reference tree its preferred child.
  // The cursor is on `key` or at the global root.
  void prefer_left_of(PathCursor& c, Key key, int key_depth) {
    if (c.key() == key) {
      // Cheap exits when the deep part of the path hangs right below us.
      if (aux::child_in_aux(c, Direction::left) &&
          c.peek(Direction::left).aug.max_depth > key_depth) {
        return;
      }
      while (!c.at_root()) c.move(Direction::parent);
    }
    bool any = false;
    const Direction side = deep_side(c, key, key_depth, any);
    if (any && side == Direction::left) return;
    if (any) cut(c, key_depth);
    if (!join(c, 2 * static_cast<std::int64_t>(key) - 1)) {
      throw Error("internal", "left subtree of accessed key not found");
    }
  }

  NodeStore<PathAug> store_;
  CostMeter meter_;
  std::vector<int> crossings_;
};

}  // namespace bstlab
