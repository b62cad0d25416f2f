#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bstlab/complete_tree.hpp"
#include "bstlab/error.hpp"

namespace bstlab {

// Unit-cost pointer machine. An access starts a cursor at the root (cost 1),
// then pays 1 per followed link and 1 per rotation. Field reads and writes
// are free; rotations are the only way to change links after lock time.

struct CostMeter {
  std::uint64_t access_inits = 0;
  std::uint64_t link_follows = 0;
  std::uint64_t rotations = 0;

  std::uint64_t total() const { return access_inits + link_follows + rotations; }

  friend CostMeter operator-(const CostMeter& a, const CostMeter& b) {
    return {a.access_inits - b.access_inits, a.link_follows - b.link_follows,
            a.rotations - b.rotations};
  }
  friend bool operator==(const CostMeter&, const CostMeter&) = default;
};

enum class Direction : std::uint8_t { parent, left, right };

inline constexpr Direction opposite(Direction d) {
  return d == Direction::left ? Direction::right : Direction::left;
}

// Augmentation payload contract. `pull` recomputes a node's summary from its
// children (null children arrive as nullptr); `transfer` runs before a
// rotation lifts `raised` above `lowered`.
template <class A>
concept Augmentation = requires(A& a, const A* c) {
  A::pull(a, c, c);
  A::transfer(a, a);
};

struct NoAug {
  static void pull(NoAug&, const NoAug*, const NoAug*) {}
  static void transfer(NoAug&, NoAug&) {}
};

template <Augmentation Aug>
struct NodeRecord {
  NodeId parent = kNull;
  NodeId left = kNull;
  NodeId right = kNull;
  Aug aug{};
};

template <Augmentation Aug>
class Cursor;

// Arena of nodes addressed by key (node id == key, 1..n). Links are
// read-only from outside; only a Cursor can rotate.
template <Augmentation Aug>
class NodeStore {
 public:
  NodeStore() = default;

  // Builds the locked initial shape directly, unmetered.
  template <class Init>
  NodeStore(const CompleteShape& shape, Init&& init) : root_(shape.root) {
    nodes_.resize(static_cast<std::size_t>(shape.n) + 1);
    for (Key k = 1; k <= shape.n; ++k) {
      auto& r = nodes_[k];
      r.parent = shape.parent[k];
      r.left = shape.left[k];
      r.right = shape.right[k];
      r.aug = init(k);
    }
  }

  NodeStore(const NodeStore&) = delete;
  NodeStore& operator=(const NodeStore&) = delete;
  NodeStore(NodeStore&&) noexcept = default;
  NodeStore& operator=(NodeStore&&) noexcept = default;

  Key size() const { return nodes_.empty() ? 0 : static_cast<Key>(nodes_.size() - 1); }
  NodeId root() const { return root_; }
  bool contains(Key k) const { return k >= 1 && k <= size(); }

  // Unmetered read access for validators and tests.
  const NodeRecord<Aug>& record(NodeId id) const { return nodes_[id]; }

 private:
  friend class Cursor<Aug>;
  template <Augmentation A>
  friend Cursor<A> begin_access(NodeStore<A>& store, CostMeter& meter);

  std::vector<NodeRecord<Aug>> nodes_;
  NodeId root_ = kNull;
  bool cursor_live_ = false;
};

template <Augmentation Aug>
class Cursor {
 public:
  Cursor(const Cursor&) = delete;
  Cursor& operator=(const Cursor&) = delete;
  Cursor(Cursor&& o) noexcept : store_(std::exchange(o.store_, nullptr)), meter_(o.meter_), at_(o.at_) {}
  Cursor& operator=(Cursor&&) = delete;
  ~Cursor() {
    if (store_ != nullptr) store_->cursor_live_ = false;
  }

  NodeId at() const { return at_; }
  Key key() const { return at_; }
  const NodeRecord<Aug>& node() const { return store_->nodes_[at_]; }
  Aug& aug() { return store_->nodes_[at_].aug; }
  const Aug& aug() const { return store_->nodes_[at_].aug; }
  bool at_root() const { return node().parent == kNull; }

  NodeId link(Direction d) const {
    const auto& r = node();
    switch (d) {
      case Direction::parent: return r.parent;
      case Direction::left: return r.left;
      case Direction::right: return r.right;
    }
    return kNull;
  }
  bool has(Direction d) const { return link(d) != kNull; }

  // Free read of a neighbor's record; the link itself is not followed.
  const NodeRecord<Aug>& peek(Direction d) const {
    const NodeId id = link(d);
    if (id == kNull) throw Error("null-link", "peek");
    return store_->nodes_[id];
  }

  void move(Direction d) {
    const NodeId id = link(d);
    if (id == kNull) throw Error("null-link");
    ++meter_->link_follows;
    at_ = id;
  }

  // Single rotation lifting the cursor's node above its parent. The cursor
  // stays on the same node.
  void rotate_up() {
    if (node().parent == kNull) throw Error("rotate-root");
    rotate_edge(at_);
    ++meter_->rotations;
  }

  // Rotation of the edge between parent and grandparent; the cursor does not
  // move. Used for the zig-zig splay step.
  void rotate_parent_up() {
    const NodeId p = node().parent;
    if (p == kNull || store_->nodes_[p].parent == kNull) throw Error("rotate-root");
    rotate_edge(p);
    ++meter_->rotations;
  }

  // Recomputes the current node's augmentation from its children (free).
  void refresh() { pull(at_); }

 private:
  template <Augmentation A>
  friend Cursor<A> begin_access(NodeStore<A>& store, CostMeter& meter);

  Cursor(NodeStore<Aug>* store, CostMeter* meter, NodeId at)
      : store_(store), meter_(meter), at_(at) {}

  void pull(NodeId id) {
    auto& n = store_->nodes_;
    auto& r = n[id];
    Aug::pull(r.aug, r.left != kNull ? &n[r.left].aug : nullptr,
              r.right != kNull ? &n[r.right].aug : nullptr);
  }

  void rotate_edge(NodeId x) {
    auto& n = store_->nodes_;
    const NodeId p = n[x].parent;
    const NodeId g = n[p].parent;
    if (n[p].left == x) {
      const NodeId b = n[x].right;
      n[p].left = b;
      if (b != kNull) n[b].parent = p;
      n[x].right = p;
    } else {
      const NodeId b = n[x].left;
      n[p].right = b;
      if (b != kNull) n[b].parent = p;
      n[x].left = p;
    }
    n[p].parent = x;
    n[x].parent = g;
    if (g == kNull) {
      store_->root_ = x;
    } else if (n[g].left == p) {
      n[g].left = x;
    } else {
      n[g].right = x;
    }
    Aug::transfer(n[p].aug, n[x].aug);
    pull(p);
    pull(x);
  }

  NodeStore<Aug>* store_;
  CostMeter* meter_;
  NodeId at_;
};

template <Augmentation Aug>
Cursor<Aug> begin_access(NodeStore<Aug>& store, CostMeter& meter) {
  if (store.root_ == kNull) throw Error("empty-tree");
  if (store.cursor_live_) throw Error("cursor-live", "one cursor per tree at a time");
  store.cursor_live_ = true;
  ++meter.access_inits;
  return Cursor<Aug>(&store, &meter, store.root_);
}

// Unmetered in-order listing of keys, for validation only.
template <Augmentation Aug>
std::vector<Key> inorder_keys(const NodeStore<Aug>& store) {
  std::vector<Key> out;
  out.reserve(static_cast<std::size_t>(store.size()));
  std::vector<NodeId> stack;
  NodeId cur = store.root();
  while (cur != kNull || !stack.empty()) {
    while (cur != kNull) {
      stack.push_back(cur);
      cur = store.record(cur).left;
    }
    cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    cur = store.record(cur).right;
  }
  return out;
}

// Unmetered check of parent/child symmetry and root parentage.
template <Augmentation Aug>
bool links_consistent(const NodeStore<Aug>& store) {
  if (store.size() == 0) return store.root() == kNull;
  if (store.record(store.root()).parent != kNull) return false;
  for (Key k = 1; k <= store.size(); ++k) {
    const auto& r = store.record(k);
    if (r.left != kNull && store.record(r.left).parent != k) return false;
    if (r.right != kNull && store.record(r.right).parent != k) return false;
    if (r.parent != kNull) {
      const auto& p = store.record(r.parent);
      if (p.left != k && p.right != k) return false;
    }
  }
  return true;
}

// Unmetered depth of a key in the current shape (root depth 0).
template <Augmentation Aug>
int current_depth(const NodeStore<Aug>& store, Key k) {
  int d = 0;
  for (NodeId p = store.record(k).parent; p != kNull; p = store.record(p).parent) ++d;
  return d;
}

}  // namespace bstlab
