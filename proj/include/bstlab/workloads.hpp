#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bstlab/complete_tree.hpp"
#include "bstlab/error.hpp"

namespace bstlab {

// SplitMix64; bit-exact across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

enum class Generator { sequential, random, working_set, unified };

inline std::string_view generator_name(Generator g) {
  switch (g) {
    case Generator::sequential: return "sequential";
    case Generator::random: return "random";
    case Generator::working_set: return "workingset";
    case Generator::unified: return "unified";
  }
  return "?";
}

inline Generator parse_generator(std::string_view s) {
  if (s == "sequential") return Generator::sequential;
  if (s == "random") return Generator::random;
  if (s == "workingset" || s == "working_set") return Generator::working_set;
  if (s == "unified") return Generator::unified;
  throw Error("bad-generator", std::string(s));
}

struct AccessSequence {
  std::vector<Key> keys;
  Key n = 0;
  Generator generator = Generator::sequential;
  std::int64_t passes = 0;
  std::int64_t k = 0;
  std::int64_t accesses_per_element = 0;
  std::uint64_t seed = 0;
  // Keys left out because k does not divide the universe.
  std::int64_t dropped_keys = 0;

  std::int64_t m() const { return static_cast<std::int64_t>(keys.size()); }
};

inline constexpr std::int64_t kSequentialPasses = 25;
inline constexpr std::int64_t kRandomAccessesPerKey = 25;
inline constexpr std::int64_t kWorkingSetAccessesPerElement = 100;

inline AccessSequence gen_sequential(Key n, std::int64_t passes = kSequentialPasses) {
  if (n < 1) throw Error("bad-size", "n >= 1 required");
  if (passes < 1) throw Error("bad-passes");
  AccessSequence s;
  s.n = n;
  s.generator = Generator::sequential;
  s.passes = passes;
  s.keys.reserve(static_cast<std::size_t>(n * passes));
  for (std::int64_t p = 0; p < passes; ++p) {
    for (Key k = 1; k <= n; ++k) s.keys.push_back(k);
  }
  return s;
}

inline AccessSequence gen_random(Key n, std::uint64_t seed,
                                 std::int64_t per_key = kRandomAccessesPerKey) {
  if (n < 1) throw Error("bad-size", "n >= 1 required");
  AccessSequence s;
  s.n = n;
  s.generator = Generator::random;
  s.seed = seed;
  const std::int64_t m = per_key * n;
  s.keys.reserve(static_cast<std::size_t>(m));
  Rng rng(seed);
  for (std::int64_t i = 0; i < m; ++i) {
    s.keys.push_back(static_cast<Key>(rng.next() % static_cast<std::uint64_t>(n)) + 1);
  }
  return s;
}

// Shuffles 1..n, cuts the shuffle into blocks of k, and visits each block
// round-robin `accesses_per_element` times before moving to the next one.
inline AccessSequence gen_working_set(Key n, std::int64_t k, std::uint64_t seed,
                                      std::int64_t accesses_per_element =
                                          kWorkingSetAccessesPerElement) {
  if (n < 1) throw Error("bad-size", "n >= 1 required");
  if (k < 1 || k > n) throw Error("bad-k", "need 1 <= k <= n");
  if (accesses_per_element < 1) throw Error("bad-passes");
  std::vector<Key> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Key{1});
  Rng rng(seed);
  for (std::size_t i = perm.size() - 1; i >= 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(perm[i], perm[j]);
  }
  AccessSequence s;
  s.n = n;
  s.generator = Generator::working_set;
  s.k = k;
  s.seed = seed;
  s.accesses_per_element = accesses_per_element;
  const std::int64_t sets = n / k;
  s.dropped_keys = n - sets * k;
  s.keys.reserve(static_cast<std::size_t>(sets * k * accesses_per_element));
  for (std::int64_t b = 0; b < sets; ++b) {
    const auto* block = perm.data() + b * k;
    for (std::int64_t r = 0; r < accesses_per_element; ++r) {
      for (std::int64_t i = 0; i < k; ++i) s.keys.push_back(block[i]);
    }
  }
  return s;
}

// Chunks of 2k consecutive keys, grouped k at a time with stride
// chunk_count / k. Within a group, round 2i visits offset i of every chunk
// in increasing key order and round 2i+1 visits offset k+i.
inline AccessSequence gen_unified(Key n, std::int64_t k) {
  if (n < 1) throw Error("bad-size", "n >= 1 required");
  if (k < 1 || 2 * k * k > n) throw Error("k-too-large", "need 2k^2 <= n");
  const std::int64_t chunk = 2 * k;
  const std::int64_t chunks = n / chunk;
  const std::int64_t groups = chunks / k;
  AccessSequence s;
  s.n = n;
  s.generator = Generator::unified;
  s.k = k;
  s.dropped_keys = n - groups * k * chunk;
  s.keys.reserve(static_cast<std::size_t>(groups * k * chunk));
  for (std::int64_t g = 0; g < groups; ++g) {
    for (std::int64_t i = 0; i < k; ++i) {
      for (const std::int64_t offset : {i, k + i}) {
        for (std::int64_t c = 0; c < k; ++c) {
          const std::int64_t first = (g + c * groups) * chunk;
          s.keys.push_back(static_cast<Key>(first + offset + 1));
        }
      }
    }
  }
  return s;
}

// Text format: one header line, then one key per line.
//   # gen=<name> n=<n> k=<k> seed=<seed> m=<m>
inline void write_sequence(std::ostream& out, const AccessSequence& s) {
  out << "# gen=" << generator_name(s.generator) << " n=" << s.n << " k=" << s.k
      << " seed=" << s.seed << " m=" << s.m() << '\n';
  for (Key k : s.keys) out << k << '\n';
}

inline AccessSequence read_sequence(std::istream& in) {
  AccessSequence s;
  std::string line;
  Key max_key = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string field;
      while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const auto name = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        if (name == "gen") {
          s.generator = parse_generator(value);
        } else if (name == "n") {
          s.n = static_cast<Key>(std::stol(value));
          have_n = true;
        } else if (name == "k") {
          s.k = std::stoll(value);
        } else if (name == "seed") {
          s.seed = std::stoull(value);
        }
      }
      continue;
    }
    const long v = std::stol(line);
    if (v < 1) throw Error("bad-trace", "key " + line + " out of range");
    s.keys.push_back(static_cast<Key>(v));
    max_key = std::max(max_key, static_cast<Key>(v));
  }
  if (!have_n) s.n = max_key;
  if (max_key > s.n) throw Error("bad-trace", "key exceeds n");
  return s;
}

}  // namespace bstlab
