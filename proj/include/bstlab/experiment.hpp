#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "bstlab/multisplay.hpp"
#include "bstlab/reference_model.hpp"
#include "bstlab/splay.hpp"
#include "bstlab/tango.hpp"
#include "bstlab/validate.hpp"
#include "bstlab/workloads.hpp"

namespace bstlab {

enum class Structure { splay, tango, multisplay };

inline std::string_view structure_name(Structure s) {
  switch (s) {
    case Structure::splay: return "splay";
    case Structure::tango: return "tango";
    case Structure::multisplay: return "multisplay";
  }
  return "?";
}

inline Structure parse_structure(std::string_view s) {
  if (s == "splay") return Structure::splay;
  if (s == "tango") return Structure::tango;
  if (s == "multisplay" || s == "multi-splay") return Structure::multisplay;
  throw Error("bad-structure", std::string(s));
}

struct WorkloadParams {
  Generator workload = Generator::sequential;
  Key n = 0;
  std::int64_t k = 0;
  std::int64_t passes = kSequentialPasses;
  std::int64_t accesses_per_element = kWorkingSetAccessesPerElement;
  std::uint64_t seed = 42;
};

inline AccessSequence make_sequence(const WorkloadParams& p) {
  switch (p.workload) {
    case Generator::sequential: return gen_sequential(p.n, p.passes);
    case Generator::random: return gen_random(p.n, p.seed);
    case Generator::working_set:
      return gen_working_set(p.n, p.k, p.seed, p.accesses_per_element);
    case Generator::unified: return gen_unified(p.n, p.k);
  }
  throw Error("bad-generator");
}

struct ExperimentRecord {
  Structure structure = Structure::splay;
  Generator workload = Generator::sequential;
  Key n = 0;
  std::int64_t k = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_cost = 0;
  std::uint64_t access_inits = 0;
  std::uint64_t link_follows = 0;
  std::uint64_t rotations = 0;
  double avg_cost = 0;
  std::int64_t ib = 0;
  double opt_lb = 0;
};

struct RunOptions {
  // Full structural check after every access (slow; meant for small n).
  bool validate_structures = false;
  // Called after every access with (index, cost of that access).
  std::function<void(std::size_t, std::uint64_t)> on_access;
};

namespace detail {

template <class Tree>
std::optional<std::string> check_tree(const Tree& t) {
  if constexpr (std::is_same_v<Tree, SplayTree>) {
    return validate_bst(t.store());
  } else {
    return validate_path_tree(t.store(), Tree::policy_colored);
  }
}

template <class Tree>
CostMeter replay(Tree& tree, const AccessSequence& seq, const RunOptions& opt) {
  for (std::size_t i = 0; i < seq.keys.size(); ++i) {
    const std::uint64_t c = tree.access(seq.keys[i]);
    if (opt.on_access) opt.on_access(i, c);
    if (opt.validate_structures) {
      if (auto e = check_tree(tree)) {
        throw Error("invalid-structure",
                    "after access " + std::to_string(i) + " (key " +
                        std::to_string(seq.keys[i]) + "): " + *e);
      }
    }
  }
  return tree.meter();
}

}  // namespace detail

// Replays `seq` on a freshly locked tree and returns its meter.
inline CostMeter replay_on(Structure s, const AccessSequence& seq, const RunOptions& opt = {}) {
  switch (s) {
    case Structure::splay: {
      SplayTree t(seq.n);
      return detail::replay(t, seq, opt);
    }
    case Structure::tango: {
      TangoTree t(seq.n);
      return detail::replay(t, seq, opt);
    }
    case Structure::multisplay: {
      MultiSplayTree t(seq.n);
      return detail::replay(t, seq, opt);
    }
  }
  throw Error("bad-structure");
}

inline std::int64_t interleave_total(const AccessSequence& seq) {
  ReferenceModel model(seq.n);
  for (Key k : seq.keys) model.record_access(k);
  return model.ib_total();
}

// `ib` may be passed in when the same sequence is replayed on several trees.
inline ExperimentRecord run_on_sequence(Structure s, const AccessSequence& seq,
                                        std::optional<std::int64_t> ib = std::nullopt,
                                        const RunOptions& opt = {}) {
  if (seq.keys.empty()) throw Error("empty-sequence");
  const CostMeter meter = replay_on(s, seq, opt);
  ExperimentRecord r;
  r.structure = s;
  r.workload = seq.generator;
  r.n = seq.n;
  r.k = seq.k;
  r.m = seq.m();
  r.seed = seq.seed;
  r.total_cost = meter.total();
  r.access_inits = meter.access_inits;
  r.link_follows = meter.link_follows;
  r.rotations = meter.rotations;
  r.avg_cost = static_cast<double>(r.total_cost) / static_cast<double>(r.m);
  r.ib = ib ? *ib : interleave_total(seq);
  r.opt_lb = opt_lower_bound(r.ib, r.m, r.n);
  return r;
}

inline ExperimentRecord run_experiment(Structure s, const WorkloadParams& p,
                                       const RunOptions& opt = {}) {
  return run_on_sequence(s, make_sequence(p), std::nullopt, opt);
}

struct Job {
  Structure structure;
  WorkloadParams params;
};

// Runs jobs on up to `workers` threads. Output order is the job order no
// matter which job finishes first; the first failure is rethrown.
inline std::vector<ExperimentRecord> run_matrix(const std::vector<Job>& jobs, unsigned workers,
                                                bool validate_structures = false) {
  std::vector<ExperimentRecord> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        RunOptions opt;
        opt.validate_structures = validate_structures;
        out[i] = run_experiment(jobs[i].structure, jobs[i].params, opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Sizes spaced evenly in lg lg n between `lo` and `hi`, rounded to integers;
// duplicates after rounding are dropped.
inline std::vector<Key> lglg_grid(double lo, double hi, int count) {
  if (count < 1 || lo > hi || lo < 0) throw Error("bad-grid", "need count >= 1 and lo <= hi");
  if (hi > std::log2(std::log2(static_cast<double>(INT32_MAX)))) throw Error("bad-grid", "hi too large");
  std::vector<Key> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    const auto n = static_cast<Key>(std::llround(std::exp2(std::exp2(t))));
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  return out;
}

// Parses an n-grid: comma separated items, each one of
//   1024          a single size
//   2^8..2^17     every power of two in range
//   lglg:2:4.087:24   `count` sizes evenly spaced in lg lg n
inline std::vector<Key> parse_n_grid(std::string_view text) {
  auto to_int = [](std::string_view s) {
    if (s.empty()) throw Error("bad-grid", "empty item");
    std::size_t used = 0;
    const long long v = std::stoll(std::string(s), &used);
    if (used != s.size()) throw Error("bad-grid", std::string(s));
    return v;
  };
  auto to_double = [](std::string_view s) {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw Error("bad-grid", std::string(s));
    return v;
  };
  auto pow_exp = [&](std::string_view s) {
    if (s.substr(0, 2) != "2^") throw Error("bad-grid", "range ends must be 2^e: " + std::string(s));
    return to_int(s.substr(2));
  };
  std::vector<Key> out;
  std::size_t pos = 0;
  try {
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto item = text.substr(pos, comma == std::string_view::npos ? text.size() - pos
                                                                          : comma - pos);
      if (item.substr(0, 5) == "lglg:") {
        const auto rest = item.substr(5);
        const auto c1 = rest.find(':');
        const auto c2 = rest.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
          throw Error("bad-grid", "expected lglg:lo:hi:count");
        }
        const auto g = lglg_grid(to_double(rest.substr(0, c1)),
                                 to_double(rest.substr(c1 + 1, c2 - c1 - 1)),
                                 static_cast<int>(to_int(rest.substr(c2 + 1))));
        out.insert(out.end(), g.begin(), g.end());
      } else if (const auto dots = item.find(".."); dots != std::string_view::npos) {
        const auto a = pow_exp(item.substr(0, dots));
        const auto b = pow_exp(item.substr(dots + 2));
        if (a < 0 || b > 30 || a > b) throw Error("bad-grid", std::string(item));
        for (auto e = a; e <= b; ++e) out.push_back(Key{1} << e);
      } else if (item.substr(0, 2) == "2^") {
        const auto e = pow_exp(item);
        if (e < 0 || e > 30) throw Error("bad-grid", std::string(item));
        out.push_back(Key{1} << e);
      } else {
        const auto v = to_int(item);
        if (v < 1 || v > INT32_MAX) throw Error("bad-grid", std::string(item));
        out.push_back(static_cast<Key>(v));
      }
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw Error("bad-grid", std::string(text));
  }
  if (out.empty()) throw Error("bad-grid", "no sizes");
  return out;
}

}  // namespace bstlab
