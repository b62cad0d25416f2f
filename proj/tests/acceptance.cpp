// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// fails. Sequences and interleave bounds are generated once per (n, k) and
// shared by all structures to keep the full run within desk scale.
//
//   acceptance [--max-exp 17] [--only 1,2,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bstlab/bstlab.hpp"
#include "oracle.hpp"

using namespace bstlab;

namespace {

constexpr std::array kAll{Structure::splay, Structure::multisplay, Structure::tango};
constexpr std::array kWorkingSetK{std::int64_t{4}, std::int64_t{16}, std::int64_t{64}};

int failures = 0;
std::vector<ExperimentRecord> all_records;

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double lglg(double n) { return std::log2(std::log2(n)); }

// (max - min) / min over a set of averages.
double variation(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *lo;
}

std::vector<Key> pow2_sizes(int lo, int hi) {
  std::vector<Key> out;
  for (int e = lo; e <= hi; ++e) out.push_back(Key{1} << e);
  return out;
}

// Runs every structure in `which` on one shared sequence.
std::map<Structure, ExperimentRecord> run_all(const AccessSequence& seq,
                                              std::span<const Structure> which,
                                              const RunOptions& opt = {}) {
  const std::int64_t ib = interleave_total(seq);
  std::map<Structure, ExperimentRecord> out;
  for (Structure s : which) {
    out[s] = run_on_sequence(s, seq, ib, opt);
    all_records.push_back(out[s]);
  }
  return out;
}

void criterion_oracle() {
  int checked = 0;
  std::string first_error;
  for (Key n : {7, 15, 63, 255}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto xs = oracle::random_keys(n, 50, seed * 7919 + n);
      for (auto err : {oracle::check_against_reference<TangoTree>(n, xs),
                       oracle::check_against_reference<MultiSplayTree>(n, xs)}) {
        ++checked;
        if (err && first_error.empty()) first_error = "n=" + std::to_string(n) + ": " + *err;
      }
    }
  }
  report(1, first_error.empty(),
         first_error.empty() ? fmt("%d sequences matched the reference partition", checked)
                             : first_error);
}

void criterion_interleave() {
  Rng rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Key n = static_cast<Key>(rng.next() % 63) + 1;
    const std::size_t m = rng.next() % 100 + 1;
    const auto xs = oracle::random_keys(n, m, rng.next());
    if (interleave_bound(xs, n).total != oracle::direct_interleave_bound(xs, n)) ++mismatches;
  }
  report(2, mismatches == 0, fmt("1000 instances, %d mismatches", mismatches));
}

struct SequentialData {
  std::vector<double> leaf_lglg;
  std::vector<double> leaf_mean;
};

SequentialData criterion_sequential(int max_exp) {
  std::map<Structure, std::vector<double>> avg;
  std::vector<double> x;
  SequentialData leaf;
  for (Key n : pow2_sizes(8, max_exp)) {
    const auto seq = gen_sequential(n, kSequentialPasses);
    const auto shape = make_complete_shape(n);
    double leaf_sum = 0;
    std::int64_t leaf_count = 0;
    RunOptions opt;
    opt.on_access = [&](std::size_t i, std::uint64_t c) {
      if (shape.is_leaf(seq.keys[i])) {
        leaf_sum += static_cast<double>(c);
        ++leaf_count;
      }
    };
    const std::int64_t ib = interleave_total(seq);
    for (Structure s : kAll) {
      const auto r = run_on_sequence(s, seq, ib, s == Structure::tango ? opt : RunOptions{});
      all_records.push_back(r);
      avg[s].push_back(r.avg_cost);
    }
    x.push_back(lglg(n));
    leaf.leaf_lglg.push_back(lglg(n));
    leaf.leaf_mean.push_back(leaf_sum / static_cast<double>(leaf_count));
  }
  const double v_splay = variation(avg[Structure::splay]);
  const double v_multi = variation(avg[Structure::multisplay]);
  const auto tango = fit_line(x, avg[Structure::tango]);
  int inversions = 0;
  std::string ratios;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = avg[Structure::tango][i] / avg[Structure::splay][i];
    ratios += fmt(i ? " %.2f" : "%.2f", r);
    if (i > 0 && r < avg[Structure::tango][i - 1] / avg[Structure::splay][i - 1]) ++inversions;
  }
  const bool ok = v_splay < 0.25 && v_multi < 0.25 && tango.beta[1] > 0 &&
                  tango.r_squared >= 0.9 && inversions <= 1;
  report(4, ok,
         fmt("splay var %.3f, multisplay var %.3f, tango slope %.2f r2 %.3f, "
             "tango/splay [%s] inversions %d",
             v_splay, v_multi, tango.beta[1], tango.r_squared, ratios.c_str(), inversions));
  return leaf;
}

void criterion_random(int max_exp) {
  std::vector<double> lg;
  std::vector<double> x;
  std::vector<double> splay;
  std::vector<double> ts;
  std::vector<double> tm;
  for (Key n : pow2_sizes(8, max_exp)) {
    const auto r = run_all(gen_random(n, 42), kAll);
    lg.push_back(std::log2(n));
    x.push_back(lglg(n));
    splay.push_back(r.at(Structure::splay).avg_cost);
    ts.push_back(r.at(Structure::tango).avg_cost / r.at(Structure::splay).avg_cost);
    tm.push_back(r.at(Structure::tango).avg_cost / r.at(Structure::multisplay).avg_cost);
  }
  const auto fs = fit_line(lg, splay);
  const auto fts = fit_line(x, ts);
  const auto ftm = fit_line(x, tm);
  const bool ok = fs.r_squared >= 0.98 && fts.r_squared >= 0.9 && ftm.r_squared >= 0.9;
  report(5, ok,
         fmt("splay vs lg n r2 %.4f slope %.2f; tango/splay vs lglg n r2 %.3f slope %.2f; "
             "tango/multisplay r2 %.3f slope %.2f",
             fs.r_squared, fs.beta[1], fts.r_squared, fts.beta[1], ftm.r_squared, ftm.beta[1]));
}

void criterion_working_set(int max_exp) {
  const int lo = std::min(10, max_exp - 1);
  const Key top = Key{1} << max_exp;
  std::vector<std::string> notes;
  bool ok = true;
  std::map<std::int64_t, std::map<Structure, std::uint64_t>> at_top;
  for (std::int64_t k : kWorkingSetK) {
    std::vector<double> x;
    std::vector<double> splay;
    std::vector<double> tango;
    for (Key n : pow2_sizes(lo, max_exp)) {
      const auto seq = gen_working_set(n, k, 42);
      if (n == top) {
        const auto r = run_all(seq, kAll);
        for (auto& [s, rec] : r) at_top[k][s] = rec.total_cost;
        splay.push_back(r.at(Structure::splay).avg_cost);
        tango.push_back(r.at(Structure::tango).avg_cost);
      } else {
        const std::array two{Structure::splay, Structure::tango};
        const auto r = run_all(seq, two);
        splay.push_back(r.at(Structure::splay).avg_cost);
        tango.push_back(r.at(Structure::tango).avg_cost);
      }
      x.push_back(lglg(n));
    }
    const double v = variation(splay);
    const auto ft = fit_line(x, tango);
    ok = ok && v < 0.15 && ft.beta[1] > 0 && ft.r_squared >= 0.85;
    notes.push_back(fmt("k=%lld splay var %.3f tango slope %.2f r2 %.3f",
                        static_cast<long long>(k), v, ft.beta[1], ft.r_squared));
  }

  // Splay against lg k at a fixed size one below the top.
  const Key n_k = Key{1} << (max_exp - 1);
  std::vector<double> lgk;
  std::vector<double> cost;
  for (std::int64_t k = 2; k <= 128; k *= 2) {
    const auto seq = gen_working_set(n_k, k, 42);
    const auto r = run_on_sequence(Structure::splay, seq);
    all_records.push_back(r);
    lgk.push_back(std::log2(static_cast<double>(k)));
    cost.push_back(r.avg_cost);
  }
  const auto fk = fit_line(lgk, cost);
  ok = ok && fk.r_squared >= 0.95;
  std::string detail;
  for (auto& s : notes) detail += s + "; ";
  detail += fmt("splay at n=%d vs lg k r2 %.4f slope %.2f", n_k, fk.r_squared, fk.beta[1]);
  report(6, ok, detail);

  bool ordered = true;
  std::string totals;
  for (std::int64_t k : kWorkingSetK) {
    auto& t = at_top[k];
    ordered = ordered && t[Structure::splay] < t[Structure::multisplay] &&
              t[Structure::multisplay] < t[Structure::tango];
    totals += fmt("%sk=%lld %llu<%llu<%llu", totals.empty() ? "" : "; ",
                  static_cast<long long>(k),
                  static_cast<unsigned long long>(t[Structure::splay]),
                  static_cast<unsigned long long>(t[Structure::multisplay]),
                  static_cast<unsigned long long>(t[Structure::tango]));
  }
  report(11, ordered, fmt("n=%d totals splay<multisplay<tango: %s", top, totals.c_str()));
}

void criterion_fine_grid(int max_exp) {
  const double hi = std::log2(static_cast<double>(max_exp));
  std::vector<double> ns;
  std::vector<double> ys;
  for (Key n : lglg_grid(2.0, hi, 24)) {
    const auto r = run_on_sequence(Structure::multisplay, gen_working_set(n, 2, 42));
    all_records.push_back(r);
    ns.push_back(n);
    ys.push_back(r.avg_cost);
  }
  const auto f = fit(FitModel::rho_linear, ns, ys);
  const double a = f.coefficients[0];
  const double b = f.coefficients[1];

  // Plateau: slope over the last third, relative to the mean level there.
  const std::size_t from = ns.size() - ns.size() / 3;
  std::vector<double> tail_x;
  std::vector<double> tail_y;
  for (std::size_t i = from; i < ns.size(); ++i) {
    tail_x.push_back(lglg(ns[i]));
    tail_y.push_back(ys[i]);
  }
  double mean = 0;
  for (double y : tail_y) mean += y / static_cast<double>(tail_y.size());
  const double plateau = std::fabs(fit_line(tail_x, tail_y).beta[1]) / mean;
  const bool ok = a < b && f.r_squared >= 0.8 && plateau <= 0.10;
  report(7, ok,
         fmt("A %.3f B %.3f (reference 10.641 / 34.679) r2 %.3f, last-third relative slope %.3f",
             a, b, f.r_squared, plateau));
}

void criterion_fit_round_trip() {
  std::vector<double> ns;
  for (Key n : lglg_grid(2.0, std::log2(17.0), 24)) ns.push_back(n);
  const double a = 10.641;
  const double b = 34.679;
  const std::vector<double> c{59.087, -175.309, 305.574, -285.435};
  std::vector<double> y_lin;
  std::vector<double> y_cub;
  for (double n : ns) {
    const double r = rho(n);
    y_lin.push_back(b - (b - a) * r);
    y_cub.push_back(c[0] + c[1] * r + c[2] * r * r + c[3] * r * r * r);
  }
  double worst = 0;
  auto rel = [&](double got, double want) {
    worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
  };
  const auto fl = fit(FitModel::rho_linear, ns, y_lin);
  rel(fl.coefficients[0], a);
  rel(fl.coefficients[1], b);
  const auto fc = fit(FitModel::rho_cubic, ns, y_cub);
  for (int i = 0; i < 4; ++i) rel(fc.coefficients[i], c[i]);
  const auto back = fit_from_json(nlohmann::json::parse(fit_to_json(fc).dump()));
  for (int i = 0; i < 4; ++i) rel(back.coefficients[i], c[i]);
  report(8, worst <= 1e-6, fmt("worst relative error %.2e", worst));
}

void criterion_appendix(const SequentialData& leaf) {
  std::string problem;
  for (Key n : {Key{1} << 8, Key{1} << 12}) {
    auto m = build_reference(n);
    const auto& s = m.shape();
    std::vector<bool> accessed(static_cast<std::size_t>(n) + 1, false);
    for (Key k : gen_sequential(n, kSequentialPasses).keys) {
      m.record_access(k);
      accessed[k] = true;
      const auto path = m.root_path();
      if (!s.is_leaf(path.back()) && problem.empty()) {
        problem = fmt("n=%d: root path stops at inner node %d after access %d", n, path.back(), k);
      }
      for (Key v : path) {
        if (s.is_leaf(v) && !accessed[v] && problem.empty()) {
          problem = fmt("n=%d: leaf %d on root path before its access", n, v);
        }
      }
    }
  }
  const auto f = fit_line(leaf.leaf_lglg, leaf.leaf_mean);
  const bool ok = problem.empty() && f.beta[1] > 0;
  report(9, ok,
         problem.empty()
             ? fmt("root path reaches a leaf and no leaf enters early; tango leaf-access mean "
                   "%.2f..%.2f, slope vs lglg n %.2f",
                   leaf.leaf_mean.front(), leaf.leaf_mean.back(), f.beta[1])
             : problem);
}

void criterion_validation(int max_exp) {
  std::vector<Job> jobs;
  for (Key n : {Key{16}, Key{100}, Key{1} << std::min(10, max_exp)}) {
    for (Structure s : kAll) {
      WorkloadParams p;
      p.n = n;
      for (Generator g : {Generator::sequential, Generator::random}) {
        p.workload = g;
        jobs.push_back({s, p});
      }
      for (std::int64_t k : {2, 4}) {
        p.workload = Generator::working_set;
        p.k = k;
        jobs.push_back({s, p});
        if (2 * k * k <= n) {
          p.workload = Generator::unified;
          jobs.push_back({s, p});
        }
      }
    }
  }
  try {
    const auto records = run_matrix(jobs, std::thread::hardware_concurrency(), true);
    all_records.insert(all_records.end(), records.begin(), records.end());
    report(10, true, fmt("%zu runs validated after every access", records.size()));
  } catch (const Error& e) {
    report(10, false, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int max_exp = 17;
  std::vector<int> only;
  app.add_option("--max-exp", max_exp, "largest size exponent")->check(CLI::Range(9, 17));
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const std::set<int> want(only.begin(), only.end());
  auto on = [&](int id) { return want.empty() || want.count(id) > 0; };

  const auto start = std::chrono::steady_clock::now();
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    std::fprintf(stderr, "  (%.1f s)\n",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  };
  try {
    if (on(1)) timed(criterion_oracle);
    if (on(2)) timed(criterion_interleave);
    SequentialData leaf;
    if (on(4) || on(9)) timed([&] { leaf = criterion_sequential(max_exp); });
    if (on(5)) timed([&] { criterion_random(max_exp); });
    if (on(6) || on(11)) timed([&] { criterion_working_set(max_exp); });
    if (on(7)) timed([&] { criterion_fine_grid(max_exp); });
    if (on(8)) timed(criterion_fit_round_trip);
    if (on(9)) timed([&] { criterion_appendix(leaf); });
    if (on(10)) timed([&] { criterion_validation(max_exp); });
    if (on(3)) {
      const auto v = validate_records(all_records);
      report(3, v.ok(),
             fmt("%zu records checked against max(m, ib/2 - n), %zu violations", v.checked,
                 v.violations.size()));
    }
  } catch (const std::exception& e) {
    std::printf("FAIL internal error: %s\n", e.what());
    return 1;
  }
  std::fprintf(stderr, "total %.1f s\n",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
