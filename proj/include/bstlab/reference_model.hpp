#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "bstlab/complete_tree.hpp"
#include "bstlab/error.hpp"

namespace bstlab {

enum class Preferred : std::uint8_t { none, left, right };

// Outcome of one access replayed on the reference tree.
struct AccessUpdate {
  // Preferred children that flipped left <-> right (interleaves).
  std::int64_t ib_increment = 0;
  // Preferred children set for the first time (none -> left/right).
  std::int64_t first_touch = 0;

  std::int64_t total_updates() const { return ib_increment + first_touch; }
};

struct InterleaveTrace {
  std::vector<std::int64_t> per_access_increment;
  std::int64_t total = 0;
};

// A rational number p/q, used for exact probabilities.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Ratio reduced() const {
    const std::int64_t g = std::gcd(num, den);
    const std::int64_t sign = den < 0 ? -1 : 1;
    return g == 0 ? *this : Ratio{sign * num / g, sign * den / g};
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    const Ratio x = a.reduced();
    const Ratio y = b.reduced();
    return x.num == y.num && x.den == y.den;
  }
};

// The static complete tree P over 1..n together with its preferred-child
// state. A node counts itself in its left region, so accessing a node with a
// left child makes that child preferred.
class ReferenceModel {
 public:
  explicit ReferenceModel(Key n) : shape_(make_complete_shape(n)) {
    preferred_.assign(static_cast<std::size_t>(n) + 1, Preferred::none);
  }

  Key n() const { return shape_.n; }
  Key root() const { return shape_.root; }
  const CompleteShape& shape() const { return shape_; }
  std::int32_t depth(Key k) const { return shape_.depth[k]; }
  Preferred preferred(Key k) const { return preferred_[k]; }
  std::int64_t ib_total() const { return ib_total_; }

  AccessUpdate record_access(Key key) {
    if (key < 1 || key > shape_.n) throw Error("key-out-of-range", std::to_string(key));
    AccessUpdate u;
    Key v = shape_.root;
    while (v != kNull) {
      Preferred want;
      Key next;
      if (key < v) {
        want = Preferred::left;
        next = shape_.left[v];
      } else if (key > v) {
        want = Preferred::right;
        next = shape_.right[v];
      } else {
        // Leaves have an empty right region; nothing to prefer.
        if (shape_.left[v] == kNull) break;
        want = Preferred::left;
        next = kNull;
      }
      auto& p = preferred_[v];
      if (p == Preferred::none) {
        ++u.first_touch;
      } else if (p != want) {
        ++u.ib_increment;
      }
      p = want;
      v = next;
    }
    ib_total_ += u.ib_increment;
    return u;
  }

  Key preferred_child(Key k) const {
    switch (preferred_[k]) {
      case Preferred::left: return shape_.left[k];
      case Preferred::right: return shape_.right[k];
      case Preferred::none: break;
    }
    return kNull;
  }

  // Maximal chains of preferred children, each listed top-down. Paths are
  // ordered by their top key.
  std::vector<std::vector<Key>> preferred_paths() const {
    std::vector<std::vector<Key>> paths;
    for (Key k = 1; k <= shape_.n; ++k) {
      const Key p = shape_.parent[k];
      if (p != kNull && preferred_child(p) == k) continue;
      std::vector<Key> path;
      for (Key v = k; v != kNull; v = preferred_child(v)) path.push_back(v);
      paths.push_back(std::move(path));
    }
    return paths;
  }

  // Keys on the preferred path that contains the root.
  std::vector<Key> root_path() const {
    std::vector<Key> path;
    for (Key v = shape_.root; v != kNull; v = preferred_child(v)) path.push_back(v);
    return path;
  }

 private:
  CompleteShape shape_;
  std::vector<Preferred> preferred_;
  std::int64_t ib_total_ = 0;
};

inline ReferenceModel build_reference(Key n) { return ReferenceModel(n); }

inline InterleaveTrace interleave_bound(std::span<const Key> keys, Key n) {
  ReferenceModel model(n);
  InterleaveTrace t;
  t.per_access_increment.reserve(keys.size());
  for (Key k : keys) {
    const auto u = model.record_access(k);
    t.per_access_increment.push_back(u.ib_increment);
    t.total += u.ib_increment;
  }
  return t;
}

// max(m, IB/2 - n): the interleave bound together with the trivial bound.
inline double opt_lower_bound(std::int64_t ib, std::int64_t m, Key n) {
  return std::max(static_cast<double>(m), static_cast<double>(ib) / 2.0 - n);
}

inline double opt_lower_bound(std::span<const Key> keys, Key n) {
  return opt_lower_bound(interleave_bound(keys, n).total,
                         static_cast<std::int64_t>(keys.size()), n);
}

// Leading-order probability that two random keys share a root-leaf path.
inline double rho(double n) {
  if (n < 2) throw Error("bad-size", "rho needs n >= 2");
  return 2.0 * std::log2(n) / n;
}

// Exact fraction of key pairs in which one key is an ancestor of the other.
inline Ratio exact_common_path_probability(Key n) {
  if (n < 2) throw Error("bad-size", "need n >= 2");
  const auto s = make_complete_shape(n);
  std::int64_t ancestor_pairs = 0;
  for (Key k = 1; k <= n; ++k) ancestor_pairs += s.depth[k];
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t g = std::gcd(ancestor_pairs, pairs);
  return {ancestor_pairs / g, pairs / g};
}

// Per-access unified bound lg(min_i t_ij + |x_i - x_j| + 2); the first access
// is charged lg(n + 2).
inline std::vector<double> unified_bound(std::span<const Key> keys, Key n) {
  if (keys.empty()) throw Error("empty-sequence");
  std::vector<double> out(keys.size());
  out[0] = std::log2(static_cast<double>(n) + 2.0);
  std::vector<std::int64_t> stamp(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t j = 1; j < keys.size(); ++j) {
    const auto stamp_id = static_cast<std::int64_t>(j);
    std::int64_t best = INT64_MAX;
    std::int64_t distinct = 0;
    for (std::size_t i = j; i-- > 0;) {
      // distinct = number of distinct keys strictly between i and j.
      if (distinct + 2 >= best) break;
      const std::int64_t gap = std::abs(static_cast<std::int64_t>(keys[i]) - keys[j]);
      best = std::min(best, distinct + gap + 2);
      auto& s = stamp[static_cast<std::size_t>(keys[i])];
      if (s != stamp_id) {
        s = stamp_id;
        ++distinct;
      }
    }
    out[j] = std::log2(static_cast<double>(best));
  }
  return out;
}

}  // namespace bstlab
