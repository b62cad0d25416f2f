#include <gtest/gtest.h>

#include "bstlab/experiment.hpp"

using namespace bstlab;

TEST(Experiment, TrivialSplay) {
  WorkloadParams p;
  p.n = 1;
  p.passes = 1;
  const auto r = run_experiment(Structure::splay, p);
  EXPECT_EQ(r.total_cost, 1u);
  EXPECT_DOUBLE_EQ(r.avg_cost, 1.0);
  EXPECT_EQ(r.m, 1);
  EXPECT_EQ(r.ib, 0);
  EXPECT_DOUBLE_EQ(r.opt_lb, 1.0);
}

TEST(Experiment, RecordFieldsConsistent) {
  for (auto s : {Structure::splay, Structure::tango, Structure::multisplay}) {
    WorkloadParams p;
    p.workload = Generator::random;
    p.n = 300;
    p.seed = 5;
    const auto r = run_experiment(s, p);
    EXPECT_EQ(r.total_cost, r.access_inits + r.link_follows + r.rotations);
    EXPECT_EQ(r.access_inits, static_cast<std::uint64_t>(r.m));
    EXPECT_EQ(r.m, 25 * 300);
    EXPECT_DOUBLE_EQ(r.avg_cost, static_cast<double>(r.total_cost) / r.m);
    EXPECT_GE(static_cast<double>(r.total_cost), r.opt_lb);
    EXPECT_GT(r.ib, 0);
  }
}

TEST(Experiment, ValidateStructuresMode) {
  RunOptions opt;
  opt.validate_structures = true;
  std::size_t seen = 0;
  opt.on_access = [&](std::size_t, std::uint64_t c) {
    EXPECT_GE(c, 1u);
    ++seen;
  };
  for (auto s : {Structure::splay, Structure::tango, Structure::multisplay}) {
    seen = 0;
    WorkloadParams p;
    p.workload = Generator::working_set;
    p.n = 64;
    p.k = 4;
    p.accesses_per_element = 3;
    EXPECT_NO_THROW(run_experiment(s, p, opt));
    EXPECT_EQ(seen, 64u * 3);
  }
}

TEST(Experiment, SharedIbMatchesOwn) {
  const auto seq = gen_random(200, 3);
  const auto ib = interleave_total(seq);
  const auto a = run_on_sequence(Structure::tango, seq, ib);
  const auto b = run_on_sequence(Structure::tango, seq);
  EXPECT_EQ(a.ib, b.ib);
  EXPECT_EQ(a.total_cost, b.total_cost);
}

TEST(Experiment, MatrixOrderIsDeterministic) {
  std::vector<Job> jobs;
  for (Key n : {50, 10, 30, 20}) {
    for (auto s : {Structure::tango, Structure::splay}) {
      WorkloadParams p;
      p.workload = Generator::random;
      p.n = n;
      jobs.push_back({s, p});
    }
  }
  const auto one = run_matrix(jobs, 1);
  const auto four = run_matrix(jobs, 4);
  ASSERT_EQ(one.size(), jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(one[i].n, jobs[i].params.n);
    EXPECT_EQ(one[i].structure, jobs[i].structure);
    EXPECT_EQ(one[i].total_cost, four[i].total_cost);
  }
}

TEST(Experiment, MatrixPropagatesErrors) {
  WorkloadParams p;
  p.workload = Generator::unified;
  p.n = 8;
  p.k = 3;
  EXPECT_THROW(run_matrix({{Structure::splay, p}}, 2), Error);
}

TEST(Grid, Parsing) {
  EXPECT_EQ(parse_n_grid("2^8..2^10"), (std::vector<Key>{256, 512, 1024}));
  EXPECT_EQ(parse_n_grid("7,15,2^4"), (std::vector<Key>{7, 15, 16}));
  const auto g = parse_n_grid("lglg:2:4.087462841250339:24");
  EXPECT_EQ(g.front(), 16);
  EXPECT_EQ(g.back(), 131072);
  EXPECT_EQ(g.size(), 24u);
  for (const char* bad : {"", "x", "2^5..3", "0", "lglg:2:3", "2^9..2^8"}) {
    EXPECT_THROW(parse_n_grid(bad), Error) << bad;
  }
}

TEST(Names, RoundTrip) {
  for (auto s : {Structure::splay, Structure::tango, Structure::multisplay}) {
    EXPECT_EQ(parse_structure(structure_name(s)), s);
  }
  EXPECT_THROW(parse_structure("avl"), Error);
}
