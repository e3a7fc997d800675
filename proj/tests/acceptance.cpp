#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "causalvote/game.hpp"
#include "causalvote/process.hpp"
#include "causalvote/validity.hpp"

using namespace causalvote;

// Each test case covers one acceptance criterion and prints a single
// [PASS]/[FAIL] line so the gate can be read off the log directly.

namespace {

void report(const char* criterion, bool ok) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", criterion);
  std::fflush(stdout);
  CHECK_MESSAGE(ok, criterion);
}

const RoutedGraph& standard_graph() {
  static const RoutedGraph g = build_gamma(ModelParams::standard(), {});
  return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("acceptance: perfect transmission over all referee configurations") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = exhaustive_game_audit(standard_graph());
  const double elapsed = seconds_since(t0);
  report("process strategy: 40/40 configurations, probability exactly 1/1, < 5 s",
         r.process_configs == 40 && r.process_successes == 40 &&
             r.process_probability == Rational(1) && elapsed < 5.0);
}

TEST_CASE("acceptance: fixed-order bound of 3/4 on every order") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto orders = all_causal_orders(5);
  bool ok = orders.size() == 120;
  for (const auto& order : orders)
    ok = ok && dco_success_probability(order, 5) == Rational(3, 4);
  const double elapsed = seconds_since(t0);
  report("fixed-order forwarding: 120 orders, each exactly 3/4, < 5 s",
         ok && elapsed < 5.0);
}

TEST_CASE("acceptance: the choice relation is a function on all inputs") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rel = choice_relation_serial(standard_graph());
  const auto v = check_univocality_serial(rel);
  const double elapsed = seconds_since(t0);
  report("univocality: 1,048,576 inputs, single-threaded, one output each, < 60 s",
         v.pass && rel.space == 1048576 && elapsed < 60.0);
}

TEST_CASE("acceptance: the scenario classes partition the input space") {
  const auto rel = choice_relation(standard_graph(), 2);
  const auto sweep = sweep_partition(rel, 2);
  report("partition: 782336 + 184320 + 81920 = 1048576, no overlaps",
         sweep.pass() && sweep.lost == 782336 && sweep.chancellor_total() == 184320 &&
             sweep.chancellor_president_total() == 81920 &&
             sweep.membership_violations == 0);
}

TEST_CASE("acceptance: structural lemmas and the brute-force assignment oracle") {
  const auto p = ModelParams::standard();
  const auto allowed = enumerate_allowed(p);
  const auto lemmas = check_lemmas(allowed);

  // unstructured oracle: all 9^5 branch-structured candidates, filtered by
  // check_constraints alone
  std::vector<GlobalAssignment> oracle;
  std::vector<int> opt(5, 0);
  while (true) {
    GlobalAssignment a(5);
    for (int q = 0; q < 5; ++q) {
      if (opt[q] < 4) {
        a.set_vote_ch(q, unrank_party(q, opt[q]), 1);
      } else if (opt[q] < 8) {
        a.l_ch[q] = 1;
        a.set_vote_pr(q, unrank_party(q, opt[q] - 4), 1);
      } else {
        a.l_pr[q] = 1;
      }
    }
    if (check_constraints(a, p)) oracle.push_back(std::move(a));
    int q = 0;
    while (q < 5 && ++opt[q] == 9) opt[q++] = 0;
    if (q == 5) break;
  }
  std::sort(oracle.begin(), oracle.end());
  report("lemma suite passes and enumeration matches the 9^5 oracle",
         lemmas.all_pass() && allowed.size() == 964 && oracle == allowed);
}

TEST_CASE("acceptance: branch-graph cycles are weak") {
  const auto rel = choice_relation(standard_graph(), 2);
  const auto bg = build_branch_graph(standard_graph(), rel, 2);
  const auto v = check_weak_loops(bg);

  bool disciplines = true;
  const int future = bg.index_of({BranchNode::Kind::future});
  for (const auto& e : bg.edges) {
    const auto& src = bg.nodes[e.src];
    const auto& dst = bg.nodes[e.dst];
    switch (e.color) {
      case ArrowColor::solid:
        // no wide arrow leaves a station branch downward, none climbs
        // from a president branch into the station
        if (src.kind == BranchNode::Kind::station &&
            (dst.kind == BranchNode::Kind::party_lost ||
             dst.kind == BranchNode::Kind::party_ch))
          disciplines = false;
        if (src.kind == BranchNode::Kind::party_pr &&
            dst.kind == BranchNode::Kind::station)
          disciplines = false;
        break;
      case ArrowColor::green_dashed:
        if (src.kind != BranchNode::Kind::party_lost &&
            src.kind != BranchNode::Kind::party_ch)
          disciplines = false;
        break;
      case ArrowColor::red_dashed:
        if (e.dst != future) disciplines = false;
        break;
    }
  }
  report("weak loops: no solid/red cycle, arrow disciplines, layering",
         v.pass && disciplines);
}

TEST_CASE("acceptance: reverse univocality") {
  const auto v = check_co_univocality(standard_graph());
  report("co-univocality: every allowed tuple fixes all branches", v.pass);
}

TEST_CASE("acceptance: executed composition equals the choice function") {
  const auto& g = standard_graph();
  const auto rel = choice_relation(g, 2);
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> pick(0, rel.space - 1);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    const std::size_t idx = pick(rng);
    const auto in = decode_input(idx, g.params.n);
    std::vector<Instrument> instruments;
    for (int q = 0; q < g.params.n; ++q)
      instruments.push_back(instrument_from_choice(q, in.choices[q], g.params));
    const auto exec = compose_superchannel(g, instruments);
    const auto expected = rel.unique_output(idx);
    ok = expected.has_value() && exec.assignment_id == expected->z_index &&
         exec.branches == expected->branches;
  }
  report("execution vs choice function: 1000 sampled inputs, exact agreement", ok);
}

TEST_CASE("acceptance: the mutated constraint system is caught") {
  const auto g =
      build_gamma(ModelParams::standard(5, Mutation::drop_majority_recheck), {});
  const auto rel = choice_relation(g, 2);
  const auto v = check_univocality(rel, 2);
  report("negative control: drop-majority-recheck fails validation", !v.pass);
}
