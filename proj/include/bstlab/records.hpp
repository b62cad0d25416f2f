#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "bstlab/experiment.hpp"

namespace bstlab {

inline constexpr std::string_view kCsvHeader =
    "structure,workload,n,k,m,seed,total_cost,access_inits,link_follows,rotations,avg_cost,ib,"
    "opt_lb";

// One CSV row, no trailing newline. Reals use fixed precision so the same
// run always produces the same bytes.
inline std::string format_record(const ExperimentRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s,%s,%" PRId32 ",%" PRId64 ",%" PRId64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                ",%" PRIu64 ",%" PRIu64 ",%.6f,%" PRId64 ",%.1f",
                std::string(structure_name(r.structure)).c_str(),
                std::string(generator_name(r.workload)).c_str(), r.n, r.k, r.m, r.seed,
                r.total_cost, r.access_inits, r.link_follows, r.rotations, r.avg_cost, r.ib,
                r.opt_lb);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
                      bool header = true) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& r : records) out << format_record(r) << '\n';
}

inline ExperimentRecord parse_record(std::string_view line) {
  std::vector<std::string> f;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    f.emplace_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (f.size() != 13) throw Error("bad-csv", "expected 13 fields: " + std::string(line));
  ExperimentRecord r;
  try {
    r.structure = parse_structure(f[0]);
    r.workload = parse_generator(f[1]);
    r.n = static_cast<Key>(std::stol(f[2]));
    r.k = std::stoll(f[3]);
    r.m = std::stoll(f[4]);
    r.seed = std::stoull(f[5]);
    r.total_cost = std::stoull(f[6]);
    r.access_inits = std::stoull(f[7]);
    r.link_follows = std::stoull(f[8]);
    r.rotations = std::stoull(f[9]);
    r.avg_cost = std::stod(f[10]);
    r.ib = std::stoll(f[11]);
    r.opt_lb = std::stod(f[12]);
  } catch (const std::logic_error&) {
    throw Error("bad-csv", "unparsable field in: " + std::string(line));
  }
  return r;
}

// Reads records after an exact header match. Blank lines are skipped; a
// repeated header (from appended files) is tolerated.
inline std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == kCsvHeader) {
      have_header = true;
      continue;
    }
    if (!have_header) throw Error("bad-csv", "missing or wrong header");
    out.push_back(parse_record(line));
  }
  if (!have_header) throw Error("bad-csv", "missing or wrong header");
  return out;
}

// Elementwise avg_cost ratio a/b keyed by n. Both sides must cover the same
// sizes, each exactly once.
inline std::vector<std::pair<Key, double>> ratio_table(const std::vector<ExperimentRecord>& a,
                                                       const std::vector<ExperimentRecord>& b) {
  std::map<Key, double> by_n;
  for (const auto& r : b) {
    if (!by_n.emplace(r.n, r.avg_cost).second) {
      throw Error("mismatched-n", "duplicate n=" + std::to_string(r.n));
    }
  }
  if (a.size() != b.size()) throw Error("mismatched-n", "different record counts");
  std::vector<std::pair<Key, double>> out;
  std::map<Key, bool> seen;
  for (const auto& r : a) {
    const auto it = by_n.find(r.n);
    if (it == by_n.end() || seen[r.n]) {
      throw Error("mismatched-n", "n=" + std::to_string(r.n));
    }
    seen[r.n] = true;
    out.emplace_back(r.n, r.avg_cost / it->second);
  }
  return out;
}

// Numeric column of a record by CSV header name.
inline double record_column(const ExperimentRecord& r, std::string_view col) {
  if (col == "n") return r.n;
  if (col == "k") return static_cast<double>(r.k);
  if (col == "m") return static_cast<double>(r.m);
  if (col == "seed") return static_cast<double>(r.seed);
  if (col == "total_cost") return static_cast<double>(r.total_cost);
  if (col == "access_inits") return static_cast<double>(r.access_inits);
  if (col == "link_follows") return static_cast<double>(r.link_follows);
  if (col == "rotations") return static_cast<double>(r.rotations);
  if (col == "avg_cost") return r.avg_cost;
  if (col == "ib") return static_cast<double>(r.ib);
  if (col == "opt_lb") return r.opt_lb;
  throw Error("bad-column", std::string(col));
}

// `splay<multisplay<tango` or with `<=`: inside every (workload, n, k,
// seed) group holding all named structures, total cost must follow the
// chain.
struct OrderSpec {
  std::vector<Structure> chain;
  std::vector<bool> strict;  // strict[i] relates chain[i] and chain[i+1]
};

inline OrderSpec parse_order(std::string_view text) {
  OrderSpec o;
  std::size_t pos = 0;
  for (;;) {
    const auto lt = text.find('<', pos);
    o.chain.push_back(parse_structure(text.substr(pos, lt == text.npos ? text.npos : lt - pos)));
    if (lt == text.npos) break;
    const bool le = lt + 1 < text.size() && text[lt + 1] == '=';
    o.strict.push_back(!le);
    pos = lt + (le ? 2 : 1);
  }
  if (o.chain.size() < 2) throw Error("bad-order", std::string(text));
  return o;
}

struct ValidationReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_records(const std::vector<ExperimentRecord>& records,
                                         const std::optional<OrderSpec>& order = std::nullopt) {
  ValidationReport rep;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    ++rep.checked;
    if (static_cast<double>(r.total_cost) < r.opt_lb ||
        r.total_cost < static_cast<std::uint64_t>(std::max<std::int64_t>(r.m, 0))) {
      rep.violations.push_back("record " + std::to_string(i + 1) +
                               " below lower bound: " + format_record(r));
    }
  }
  if (!order) return rep;
  using Group = std::tuple<int, Key, std::int64_t, std::uint64_t>;
  std::map<Group, std::map<Structure, const ExperimentRecord*>> groups;
  for (const auto& r : records) {
    groups[{static_cast<int>(r.workload), r.n, r.k, r.seed}][r.structure] = &r;
  }
  for (const auto& [g, by_s] : groups) {
    for (std::size_t i = 0; i + 1 < order->chain.size(); ++i) {
      const auto a = by_s.find(order->chain[i]);
      const auto b = by_s.find(order->chain[i + 1]);
      if (a == by_s.end() || b == by_s.end()) continue;
      const auto ca = a->second->total_cost;
      const auto cb = b->second->total_cost;
      const bool holds = order->strict[i] ? ca < cb : ca <= cb;
      if (!holds) {
        rep.violations.push_back(
            "order " + std::string(structure_name(order->chain[i])) +
            (order->strict[i] ? "<" : "<=") + std::string(structure_name(order->chain[i + 1])) +
            " fails at workload=" + std::string(generator_name(a->second->workload)) +
            " n=" + std::to_string(a->second->n) + " k=" + std::to_string(a->second->k) + ": " +
            std::to_string(ca) + " vs " + std::to_string(cb));
      }
    }
  }
  return rep;
}

}  // namespace bstlab
