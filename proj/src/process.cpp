#include "causalvote/process.hpp"

#include <stdexcept>

namespace causalvote {

namespace {

bool is_one_hot_at(const std::vector<std::uint8_t>& v, int pos) {
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (v[k] != (k == pos ? 1 : 0)) return false;
  return true;
}

bool all_zero(const std::vector<std::uint8_t>& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

}  // namespace

Instrument::Transition Instrument::apply(StatusBits status, int u) const {
  const Branch* b = nullptr;
  if (status == StatusBits{0, 0})
    b = &lost;
  else if (status == StatusBits{1, 0})
    b = &chancellor;
  else if (status == StatusBits{0, 1})
    b = &president;
  else
    throw std::domain_error("Instrument: status (1,1) is outside the route");
  return Transition{b->votes_ch, b->votes_pr, b->echo, u, b->outcome};
}

Instrument party_instrument(int q, const InstrumentSettings& s,
                            const ModelParams& p) {
  const int n = p.n;
  if (q < 0 || q >= n || s.q_send < 0 || s.q_send >= n || s.q_rec < 0 ||
      s.q_rec >= n)
    throw std::invalid_argument("party_instrument: label out of range");
  if (q == s.q_send && s.q_rec == s.q_send)
    throw std::invalid_argument("party_instrument: sender cannot receive");

  // Chancellor-ballot target of the lost branch: the sender. The sender's
  // own lost branch never occurs under the strategy; its target only has
  // to be a legal non-self label.
  int lost_target = s.q_send;
  if (lost_target == q) lost_target = (s.q_send + 1) % n;

  // President-ballot target of the chancellor branch: receiver label
  // shifted by the negated input bit, with self-votes shifted away.
  int ch_target = (s.q_rec + (1 - s.input_bit)) % n;
  if (q == s.q_send && ch_target == s.q_send) ch_target = (s.q_rec + 2) % n;
  if (ch_target == q) ch_target = (q + 1) % n;

  Instrument instr = instrument_from_choice(q, {lost_target, ch_target}, p);
  instr.settings = s;
  return instr;
}

Instrument instrument_from_choice(int q, const BifurcationChoice& c,
                                  const ModelParams& p) {
  const int n = p.n;
  if (c.lost_target < 0 || c.lost_target >= n || c.lost_target == q ||
      c.ch_target < 0 || c.ch_target >= n || c.ch_target == q)
    throw std::invalid_argument("instrument_from_choice: bad vote target");

  Instrument instr;
  instr.owner = q;
  instr.derived = c;
  const int lost_target = c.lost_target;
  const int ch_target = c.ch_target;

  instr.lost.votes_ch.assign(n, 0);
  instr.lost.votes_pr.assign(n, 0);
  instr.lost.votes_ch[lost_target] = 1;
  instr.lost.echo = {0, 0};
  instr.lost.outcome = 0;

  instr.chancellor.votes_ch.assign(n, 0);
  instr.chancellor.votes_pr.assign(n, 0);
  instr.chancellor.votes_pr[ch_target] = 1;
  instr.chancellor.echo = {1, 0};
  instr.chancellor.outcome = 0;

  instr.president.votes_ch.assign(n, 0);
  instr.president.votes_pr.assign(n, 0);
  instr.president.echo = {0, 1};
  instr.president.outcome = 1;

  return instr;
}

bool check_route_following(const Instrument& instr, const PartyAugRoute& route) {
  const int q = route.owner();
  const int n = route.parties();
  if (instr.owner != q) return false;
  const auto sized = [n](const std::vector<std::uint8_t>& v) {
    return static_cast<int>(v.size()) == n;
  };
  if (!sized(instr.lost.votes_ch) || !sized(instr.lost.votes_pr) ||
      !sized(instr.chancellor.votes_ch) || !sized(instr.chancellor.votes_pr) ||
      !sized(instr.president.votes_ch) || !sized(instr.president.votes_pr))
    return false;

  // Lost sector: one chancellor ballot for a party other than the owner,
  // nothing else, echo (0,0), outcome 0.
  bool ok = all_zero(instr.lost.votes_pr) && instr.lost.echo == StatusBits{0, 0} &&
            instr.lost.outcome == 0;
  bool hot = false;
  for (int k = 0; k < n && ok; ++k) {
    if (k == q) continue;
    if (is_one_hot_at(instr.lost.votes_ch, k)) hot = true;
  }
  if (!ok || !hot) return false;

  // Chancellor sector: one presidential ballot for a non-self party.
  ok = all_zero(instr.chancellor.votes_ch) &&
       instr.chancellor.echo == StatusBits{1, 0} && instr.chancellor.outcome == 0;
  hot = false;
  for (int k = 0; k < n && ok; ++k) {
    if (k == q) continue;
    if (is_one_hot_at(instr.chancellor.votes_pr, k)) hot = true;
  }
  if (!ok || !hot) return false;

  // President sector: no ballots, status echoed.
  return all_zero(instr.president.votes_ch) && all_zero(instr.president.votes_pr) &&
         instr.president.echo == StatusBits{0, 1} && instr.president.outcome == 1;
}

FixedChannels fixed_channels(const RoutedGraph& g) {
  return FixedChannels{g.dims.past_dim};
}

nlohmann::ordered_json ExecutionResult::to_json() const {
  nlohmann::ordered_json j;
  j["branches"] = nlohmann::ordered_json::array();
  for (const auto& b : branches)
    j["branches"].push_back({{"lost", b.lost != 0}, {"chancellor", b.ch != 0},
                             {"president", b.pr != 0}});
  j["assignment_id"] = assignment_id;
  j["outcomes"] = outcomes;
  j["probability"] = probability.str();
  return j;
}

ExecutionResult compose_superchannel(const RoutedGraph& g,
                                     const std::vector<Instrument>& instruments) {
  const int n = g.params.n;
  if (static_cast<int>(instruments.size()) != n)
    throw std::invalid_argument("compose_superchannel: one instrument per party");
  for (int q = 0; q < n; ++q) {
    const auto route = party_aug_route(q, g.params);
    if (!check_route_following(instruments[q], route))
      throw std::invalid_argument(
          "compose_superchannel: instrument at " + NodeId{NodeKind::party, q}.name() +
          " violates the node's route");
  }

  // With every channel diagonal, composition is relation composition: an
  // assignment is realized iff each party's branch transition emits
  // exactly the votes the assignment records for that party.
  std::vector<int> realized;
  for (int id = 0; id < static_cast<int>(g.allowed.size()); ++id) {
    const GlobalAssignment& a = g.allowed[id];
    bool ok = true;
    for (int q = 0; q < n && ok; ++q) {
      const Instrument::Branch* b = nullptr;
      switch (status_of(a, q)) {
        case PartyStatus::lost:
          b = &instruments[q].lost;
          break;
        case PartyStatus::chancellor:
          b = &instruments[q].chancellor;
          break;
        case PartyStatus::president:
          b = &instruments[q].president;
          break;
      }
      for (int k = 0; k < n && ok; ++k)
        ok = b->votes_ch[k] == a.vote_ch(q, k) && b->votes_pr[k] == a.vote_pr(q, k);
    }
    if (ok) realized.push_back(id);
  }
  if (realized.size() != 1)
    throw std::runtime_error(
        "compose_superchannel: composition realized " +
        std::to_string(realized.size()) + " assignments instead of one");

  ExecutionResult r;
  r.assignment_id = realized[0];
  r.assignment = g.allowed[r.assignment_id];
  r.branches.resize(n);
  r.outcomes.resize(n);
  for (int q = 0; q < n; ++q) {
    switch (status_of(r.assignment, q)) {
      case PartyStatus::lost:
        r.branches[q] = {1, 0, 0};
        r.outcomes[q] = instruments[q].lost.outcome;
        break;
      case PartyStatus::chancellor:
        r.branches[q] = {0, 1, 0};
        r.outcomes[q] = instruments[q].chancellor.outcome;
        break;
      case PartyStatus::president:
        r.branches[q] = {0, 0, 1};
        r.outcomes[q] = instruments[q].president.outcome;
        break;
    }
  }
  // The u labels are echoed through and discarded at F, so the single
  // realized outcome carries the full weight.
  r.probability = Rational(1);
  return r;
}

bool u_independent(const Instrument& instr, int past_dim) {
  for (const StatusBits status : {StatusBits{0, 0}, StatusBits{1, 0}, StatusBits{0, 1}}) {
    const auto ref = instr.apply(status, 0);
    for (int u = 1; u < past_dim; ++u) {
      const auto t = instr.apply(status, u);
      if (t.votes_ch != ref.votes_ch || t.votes_pr != ref.votes_pr ||
          t.echo != ref.echo || t.outcome != ref.outcome)
        return false;
    }
  }
  return true;
}

}  // namespace causalvote
