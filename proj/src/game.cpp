#include "causalvote/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace causalvote {

RefereeConfig RefereeConfig::make(int n, int q_send, int q_rec, int input_bit) {
  if (q_send < 0 || q_send >= n || q_rec < 0 || q_rec >= n || q_send == q_rec)
    throw std::invalid_argument("RefereeConfig: need distinct sender and receiver");
  if (input_bit != 0 && input_bit != 1)
    throw std::invalid_argument("RefereeConfig: input must be a bit");
  RefereeConfig cfg;
  cfg.q_send = q_send;
  cfg.q_rec = q_rec;
  cfg.input_bit = input_bit;
  cfg.dummy_rec.assign(n, 0);
  cfg.dummy_bits.assign(n, 0);
  return cfg;
}

PlayResult play_process_strategy(const RoutedGraph& g, const RefereeConfig& cfg) {
  const int n = g.params.n;
  std::vector<Instrument> instruments;
  instruments.reserve(n);
  for (int q = 0; q < n; ++q) {
    InstrumentSettings s;
    s.q_send = cfg.q_send;
    if (q == cfg.q_send) {
      s.input_bit = cfg.input_bit;
      s.q_rec = cfg.q_rec;
    } else {
      s.input_bit = cfg.dummy_bits[q];
      s.q_rec = cfg.dummy_rec[q];
    }
    instruments.push_back(party_instrument(q, s, g.params));
  }
  PlayResult r;
  r.exec = compose_superchannel(g, instruments);
  r.guess = r.exec.branches[cfg.q_rec].pr ? 1 : 0;
  r.success = r.guess == cfg.input_bit;
  return r;
}

Rational play_dco_forwarding(const CausalOrder& order, const RefereeConfig& cfg) {
  const auto pos = [&](int q) {
    return std::find(order.begin(), order.end(), q) - order.begin();
  };
  if (pos(cfg.q_send) < pos(cfg.q_rec)) return Rational(1);
  return Rational(1, 2);
}

Rational dco_success_probability(const CausalOrder& order, int n) {
  Rational total;
  int pairs = 0;
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r) {
      if (s == r) continue;
      // The forwarding expectation does not depend on the input bit, so
      // averaging over both bits is averaging a constant.
      total += play_dco_forwarding(order, RefereeConfig::make(n, s, r, 0));
      ++pairs;
    }
  return total / Rational(pairs);
}

std::vector<CausalOrder> all_causal_orders(int n) {
  CausalOrder order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<CausalOrder> orders;
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return orders;
}

bool GameReport::pass() const {
  return process_configs > 0 && process_successes == process_configs &&
         process_probability == Rational(1) && all_orders_equal &&
         dco_probability == Rational(3, 4);
}

nlohmann::ordered_json GameReport::to_json() const {
  nlohmann::ordered_json j;
  j["process"] = {{"configs", process_configs},
                  {"successes", process_successes},
                  {"probability", process_probability.str()}};
  j["dco"] = {{"orders", dco_orders}, {"probability", dco_probability.str()}};
  return j;
}

GameReport exhaustive_game_audit(const RoutedGraph& g,
                                 nlohmann::ordered_json* traces) {
  const int n = g.params.n;
  GameReport report;
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r) {
      if (s == r) continue;
      for (int bit = 0; bit <= 1; ++bit) {
        const auto cfg = RefereeConfig::make(n, s, r, bit);
        const auto play = play_process_strategy(g, cfg);
        ++report.process_configs;
        if (play.success) ++report.process_successes;
        if (traces) {
          nlohmann::ordered_json t;
          t["sender"] = s + 1;
          t["receiver"] = r + 1;
          t["input_bit"] = bit;
          t["guess"] = play.guess;
          t["success"] = play.success;
          t["execution"] = play.exec.to_json();
          traces->push_back(std::move(t));
        }
      }
    }
  report.process_probability =
      Rational(static_cast<long long>(report.process_successes),
               static_cast<long long>(report.process_configs));

  const auto orders = all_causal_orders(n);
  report.dco_orders = orders.size();
  report.all_orders_equal = true;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const Rational p = dco_success_probability(orders[i], n);
    if (i == 0)
      report.dco_probability = p;
    else if (!(p == report.dco_probability))
      report.all_orders_equal = false;
  }
  return report;
}

}  // namespace causalvote
