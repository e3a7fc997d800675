#pragma once

#include <vector>

#include <json.hpp>

#include "causalvote/process.hpp"
#include "causalvote/rational.hpp"

namespace causalvote {

/// One round of the communication game: the referee draws a sender, a
/// receiver and an input bit, broadcasts the sender label, and tells only
/// the sender who the receiver is. Non-senders get dummy receiver labels
/// and dummy input bits.
struct RefereeConfig {
  int q_send = 0;
  int q_rec = 1;
  int input_bit = 0;
  std::vector<int> dummy_rec;   // per party; sender's entry ignored
  std::vector<int> dummy_bits;  // per party; sender's entry ignored

  static RefereeConfig make(int n, int q_send, int q_rec, int input_bit);
};

/// A fixed total order over the parties: order[i] acts at step i.
using CausalOrder = std::vector<int>;

struct PlayResult {
  bool success = false;
  int guess = -1;
  ExecutionResult exec;
};

/// Runs the process-assisted strategy on one referee configuration: each
/// party plugs in its instrument, the receiver guesses its presidential
/// status. Success means the guess equals the sender's input bit.
PlayResult play_process_strategy(const RoutedGraph& g, const RefereeConfig& cfg);

/// Expected success of the forwarding strategy under a fixed order: 1 when
/// the sender acts before the receiver (the bit is forwarded down the
/// chain), 1/2 otherwise (a fair guess).
Rational play_dco_forwarding(const CausalOrder& order, const RefereeConfig& cfg);

/// Averages the forwarding expectation over the uniform referee draw
/// (all ordered sender/receiver pairs, both input bits).
Rational dco_success_probability(const CausalOrder& order, int n);

std::vector<CausalOrder> all_causal_orders(int n);

struct GameReport {
  std::size_t process_configs = 0;
  std::size_t process_successes = 0;
  Rational process_probability;
  std::size_t dco_orders = 0;
  Rational dco_probability;  // common to every order; audit asserts that
  bool all_orders_equal = false;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Runs the process strategy over every referee configuration and the
/// forwarding baseline over every fixed order. Optionally collects one
/// execution trace per configuration.
GameReport exhaustive_game_audit(const RoutedGraph& g,
                                 nlohmann::ordered_json* traces = nullptr);

}  // namespace causalvote
