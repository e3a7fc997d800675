#include <doctest.h>

#include "causalvote/game.hpp"

using namespace causalvote;

namespace {

const RoutedGraph& standard_graph() {
  static const RoutedGraph g = build_gamma(ModelParams::standard(), {});
  return g;
}

}  // namespace

TEST_CASE("referee configuration validation") {
  CHECK_THROWS_AS(RefereeConfig::make(5, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(RefereeConfig::make(5, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(RefereeConfig::make(5, 0, 1, 2), std::invalid_argument);
  const auto cfg = RefereeConfig::make(5, 0, 2, 1);
  CHECK(cfg.dummy_rec.size() == 5);
}

TEST_CASE("the process strategy transmits the bit") {
  const auto& g = standard_graph();

  SUBCASE("bit 1 makes the receiver president") {
    const auto r = play_process_strategy(g, RefereeConfig::make(5, 0, 2, 1));
    CHECK(r.success);
    CHECK(r.guess == 1);
    CHECK(r.exec.branches[2].pr == 1);
    CHECK(r.exec.branches[0].ch == 1);  // the sender is elected chancellor
  }

  SUBCASE("bit 0 sends the presidency to the decoy") {
    const auto r = play_process_strategy(g, RefereeConfig::make(5, 0, 2, 0));
    CHECK(r.success);
    CHECK(r.guess == 0);
    CHECK(r.exec.branches[2].pr == 0);
    CHECK(r.exec.branches[3].pr == 1);  // receiver's successor
  }
}

TEST_CASE("the receiver's guess ignores non-sender dummies") {
  const auto& g = standard_graph();
  for (int bit = 0; bit <= 1; ++bit) {
    auto cfg = RefereeConfig::make(5, 0, 2, bit);
    const auto reference = play_process_strategy(g, cfg);
    // quantify over every dummy receiver label and dummy bit of every
    // non-sender, one party at a time
    for (int q = 0; q < 5; ++q) {
      if (q == cfg.q_send) continue;
      for (int dummy = 0; dummy < 5; ++dummy)
        for (int dbit = 0; dbit <= 1; ++dbit) {
          auto varied = cfg;
          varied.dummy_rec[q] = dummy;
          varied.dummy_bits[q] = dbit;
          const auto r = play_process_strategy(g, varied);
          CHECK(r.guess == reference.guess);
          CHECK(r.success);
        }
    }
  }
}

TEST_CASE("forwarding strategy under a fixed order") {
  const auto& g = standard_graph();
  (void)g;
  CausalOrder identity{0, 1, 2, 3, 4};
  CHECK(play_dco_forwarding(identity, RefereeConfig::make(5, 0, 4, 1)) == Rational(1));
  CHECK(play_dco_forwarding(identity, RefereeConfig::make(5, 4, 0, 1)) == Rational(1, 2));

  // antisymmetry: each order splits the sender/receiver pairs evenly
  for (const auto& order : all_causal_orders(5)) {
    int forwarded = 0;
    for (int s = 0; s < 5; ++s)
      for (int r = 0; r < 5; ++r)
        if (s != r &&
            play_dco_forwarding(order, RefereeConfig::make(5, s, r, 0)) == Rational(1))
          ++forwarded;
    CHECK(forwarded == 10);
  }
}

TEST_CASE("every fixed order caps at three quarters") {
  const auto orders = all_causal_orders(5);
  CHECK(orders.size() == 120);
  for (const auto& order : orders)
    CHECK(dco_success_probability(order, 5) == Rational(3, 4));
}

TEST_CASE("exhaustive audit reproduces both probabilities") {
  const auto report = exhaustive_game_audit(standard_graph());
  CHECK(report.process_configs == 40);
  CHECK(report.process_successes == 40);
  CHECK(report.process_probability == Rational(1));
  CHECK(report.dco_orders == 120);
  CHECK(report.all_orders_equal);
  CHECK(report.dco_probability == Rational(3, 4));
  CHECK(report.pass());

  const auto j = report.to_json();
  CHECK(j["process"]["configs"] == 40);
  CHECK(j["process"]["successes"] == 40);
  CHECK(j["process"]["probability"] == "1/1");
  CHECK(j["dco"]["orders"] == 120);
  CHECK(j["dco"]["probability"] == "3/4");
}

TEST_CASE("audit traces cover every configuration") {
  nlohmann::ordered_json traces = nlohmann::ordered_json::array();
  const auto report = exhaustive_game_audit(standard_graph(), &traces);
  CHECK(report.pass());
  CHECK(traces.size() == 40);
  for (const auto& t : traces) {
    CHECK(t["success"] == true);
    CHECK(t["execution"]["probability"] == "1/1");
  }
}
