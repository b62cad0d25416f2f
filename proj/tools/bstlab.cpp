// bstlab: experiment driver for the splay / tango / multi-splay laboratory.
//
//   bstlab run --structure tango --workload random --n 2^8..2^17 --out r.csv
//   bstlab fit --model lglgn --in r.csv --filter structure=tango
//   bstlab validate --in r.csv --order 'splay<multisplay<tango'
//   bstlab ib --trace seq.txt
//   bstlab ratio --in r.csv --num tango --den splay
//
// Exit codes: 0 ok, 1 validation failure, 2 bad arguments or input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bstlab/bstlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBadArgs = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<bstlab::ExperimentRecord> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bstlab::Error("io", "cannot open " + path);
  return bstlab::read_csv(in);
}

// `col=value` filters, all of which must match (string compare on the
// formatted CSV field).
bool passes_filters(const bstlab::ExperimentRecord& r, const std::vector<std::string>& filters) {
  static const std::vector<std::string> cols = split_list(std::string(bstlab::kCsvHeader));
  const auto fields = split_list(bstlab::format_record(r));
  for (const auto& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw bstlab::Error("bad-filter", f);
    const auto name = f.substr(0, eq);
    const auto value = f.substr(eq + 1);
    bool known = false;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] != name) continue;
      known = true;
      const bool same = name == "workload"
                            ? bstlab::parse_generator(value) == r.workload
                            : (name == "structure" ? bstlab::parse_structure(value) == r.structure
                                                   : fields[i] == value);
      if (!same) return false;
    }
    if (!known) throw bstlab::Error("bad-filter", "unknown column " + name);
  }
  return true;
}

struct RunArgs {
  std::string structures = "splay,tango,multisplay";
  std::string workload = "sequential";
  std::string n = "2^8..2^17";
  std::string k;
  std::int64_t passes = bstlab::kSequentialPasses;
  std::int64_t per_element = bstlab::kWorkingSetAccessesPerElement;
  std::uint64_t seed = 42;
  std::string out = "-";
  bool validate = false;
  bool append = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

int cmd_run(const RunArgs& a) {
  const auto gen = bstlab::parse_generator(a.workload);
  const auto sizes = bstlab::parse_n_grid(a.n);
  std::vector<bstlab::Structure> structures;
  for (const auto& s : split_list(a.structures)) structures.push_back(bstlab::parse_structure(s));
  if (structures.empty()) throw bstlab::Error("bad-structure", "none given");
  std::vector<std::int64_t> ks;
  for (const auto& s : split_list(a.k)) ks.push_back(std::stoll(s));
  const bool needs_k = gen == bstlab::Generator::working_set || gen == bstlab::Generator::unified;
  if (needs_k && ks.empty()) throw bstlab::Error("bad-k", "--k is required for this workload");
  if (!needs_k) ks = {0};

  std::vector<bstlab::Job> jobs;
  for (const auto n : sizes) {
    for (const auto k : ks) {
      for (const auto s : structures) {
        bstlab::WorkloadParams p;
        p.workload = gen;
        p.n = n;
        p.k = k;
        p.passes = a.passes;
        p.accesses_per_element = a.per_element;
        p.seed = a.seed;
        jobs.push_back({s, p});
      }
    }
  }
  const auto records = bstlab::run_matrix(jobs, a.jobs, a.validate);
  if (a.out == "-") {
    bstlab::write_csv(std::cout, records);
  } else {
    std::ifstream probe(a.out);
    const bool header = !(a.append && probe.good() && probe.peek() != EOF);
    std::ofstream out(a.out, a.append ? std::ios::app : std::ios::trunc);
    if (!out) throw bstlab::Error("io", "cannot write " + a.out);
    bstlab::write_csv(out, records, header);
  }
  return kExitOk;
}

struct FitArgs {
  std::string model;
  std::string in;
  std::string x;
  std::string y = "avg_cost";
  std::vector<std::string> filters;
  std::string out;
};

int cmd_fit(const FitArgs& a) {
  const auto model = bstlab::parse_fit_model(a.model);
  const std::string xcol = a.x.empty() ? (model == bstlab::FitModel::lgk ? "k" : "n") : a.x;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : load_csv(a.in)) {
    if (!passes_filters(r, a.filters)) continue;
    xs.push_back(bstlab::record_column(r, xcol));
    ys.push_back(bstlab::record_column(r, a.y));
  }
  const auto j = bstlab::fit_to_json(bstlab::fit(model, xs, ys));
  std::cout << j.dump(2) << '\n';
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw bstlab::Error("io", "cannot write " + a.out);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_validate(const std::string& in, const std::string& order) {
  std::optional<bstlab::OrderSpec> spec;
  if (!order.empty()) spec = bstlab::parse_order(order);
  const auto rep = bstlab::validate_records(load_csv(in), spec);
  for (const auto& v : rep.violations) std::cout << "FAIL " << v << '\n';
  std::cout << (rep.ok() ? "ok" : "violations") << ": " << rep.checked << " records, "
            << rep.violations.size() << " violations\n";
  return rep.ok() ? kExitOk : kExitInvalid;
}

int cmd_ib(const std::string& path, bstlab::Key n_override) {
  std::ifstream in(path);
  if (!in) throw bstlab::Error("io", "cannot open " + path);
  auto seq = bstlab::read_sequence(in);
  if (n_override > 0) {
    if (n_override < seq.n) throw bstlab::Error("bad-trace", "--n smaller than largest key");
    seq.n = n_override;
  }
  if (seq.keys.empty()) throw bstlab::Error("bad-trace", "no keys");
  const auto ib = bstlab::interleave_total(seq);
  const nlohmann::json j = {{"n", seq.n},
                            {"m", seq.m()},
                            {"ib", ib},
                            {"opt_lb", bstlab::opt_lower_bound(ib, seq.m(), seq.n)}};
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int cmd_ratio(const std::string& in, const std::string& num, const std::string& den,
              const std::vector<std::string>& filters) {
  const auto sn = bstlab::parse_structure(num);
  const auto sd = bstlab::parse_structure(den);
  std::vector<bstlab::ExperimentRecord> a;
  std::vector<bstlab::ExperimentRecord> b;
  for (const auto& r : load_csv(in)) {
    if (!passes_filters(r, filters)) continue;
    if (r.structure == sn) a.push_back(r);
    if (r.structure == sd) b.push_back(r);
  }
  std::cout << "n,ratio\n";
  for (const auto& [n, ratio] : bstlab::ratio_table(a, b)) {
    std::printf("%d,%.6f\n", n, ratio);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Splay, tango and multi-splay trees on a unit-cost pointer machine"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a structure x size matrix and write CSV records");
  run_cmd->add_option("--structure", run.structures, "splay|tango|multisplay, comma separated")
      ->capture_default_str();
  run_cmd->add_option("--workload", run.workload, "sequential|random|workingset|unified")
      ->capture_default_str();
  run_cmd->add_option("--n", run.n, "sizes: 1024,2^8..2^17,lglg:lo:hi:count")
      ->capture_default_str();
  run_cmd->add_option("--k", run.k, "working-set or unified k, comma separated");
  run_cmd->add_option("--passes", run.passes, "sequential passes")->capture_default_str();
  run_cmd->add_option("--accesses-per-element", run.per_element,
                      "working-set accesses per element")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "generator seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "CSV path, - for stdout")->capture_default_str();
  run_cmd->add_flag("--append", run.append, "append to --out instead of overwriting");
  run_cmd->add_flag("--validate-structures", run.validate,
                    "check every tree invariant after every access");
  run_cmd->add_option("--jobs", run.jobs, "worker threads")->capture_default_str();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Least-squares fit of a cost model, printed as JSON");
  fit_cmd->add_option("--model", fit.model, "lgn|lglgn|lgk|rho-linear|rho-cubic")->required();
  fit_cmd->add_option("--in", fit.in, "CSV file")->required();
  fit_cmd->add_option("--x", fit.x, "x column (default n, or k for lgk)");
  fit_cmd->add_option("--y", fit.y, "y column")->capture_default_str();
  fit_cmd->add_option("--filter", fit.filters, "col=value, repeatable");
  fit_cmd->add_option("--out", fit.out, "also write the JSON here");

  std::string val_in;
  std::string val_order;
  auto* val_cmd = app.add_subcommand("validate", "Check lower bounds and cost orderings");
  val_cmd->add_option("--in", val_in, "CSV file")->required();
  val_cmd->add_option("--order", val_order, "e.g. splay<multisplay<tango");

  std::string ib_trace;
  bstlab::Key ib_n = 0;
  auto* ib_cmd = app.add_subcommand("ib", "Interleave bound of an access trace");
  ib_cmd->add_option("--trace", ib_trace, "sequence file (one key per line)")->required();
  ib_cmd->add_option("--n", ib_n, "universe size (default: header, else largest key)");

  std::string r_in;
  std::string r_num = "tango";
  std::string r_den = "splay";
  std::vector<std::string> r_filters;
  auto* ratio_cmd = app.add_subcommand("ratio", "Per-n avg cost ratio of two structures");
  ratio_cmd->add_option("--in", r_in, "CSV file")->required();
  ratio_cmd->add_option("--num", r_num, "numerator structure")->capture_default_str();
  ratio_cmd->add_option("--den", r_den, "denominator structure")->capture_default_str();
  ratio_cmd->add_option("--filter", r_filters, "col=value, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*fit_cmd) return cmd_fit(fit);
    if (*val_cmd) return cmd_validate(val_in, val_order);
    if (*ib_cmd) return cmd_ib(ib_trace, ib_n);
    if (*ratio_cmd) return cmd_ratio(r_in, r_num, r_den, r_filters);
  } catch (const bstlab::Error& e) {
    std::cerr << "bstlab: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "bstlab: " << e.what() << '\n';
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
