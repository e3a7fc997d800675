#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalvote/graph.hpp"
#include "causalvote/rational.hpp"
#include "causalvote/routes.hpp"
#include "causalvote/validity.hpp"

namespace causalvote {

/// A party's classical settings: its input bit, the broadcast sender
/// label, and its receiver label (a dummy for everyone but the sender).
struct InstrumentSettings {
  int input_bit = 0;
  int q_send = 0;
  int q_rec = 0;
  friend bool operator==(const InstrumentSettings&, const InstrumentSettings&) = default;
};

/// The classical instrument a party plugs into its slot. All transitions
/// are deterministic maps between preferred-basis labels; the u label from
/// the global past is echoed on the future leg.
class Instrument {
 public:
  struct Branch {
    std::vector<std::uint8_t> votes_ch, votes_pr;  // indexed by party
    StatusBits echo{0, 0};
    int outcome = 0;
  };

  int owner = -1;
  InstrumentSettings settings;
  BifurcationChoice derived;  // targets after self-vote remapping
  Branch lost, chancellor, president;

  struct Transition {
    std::vector<std::uint8_t> votes_ch, votes_pr;
    StatusBits echo;
    int u_out;
    int outcome;
  };
  /// Applies the instrument on an input basis label. Throws
  /// std::domain_error on the impossible (1,1) status pair.
  Transition apply(StatusBits status, int u) const;
};

/// Builds party q's instrument for the given settings. The vote targets
/// are derived from the settings: the lost branch votes chancellor for the
/// sender, the chancellor branch votes president for the receiver label
/// shifted by the negated input bit; targets that would land on the party
/// itself (or, for the sender's decoy, on the sender) are shifted further.
Instrument party_instrument(int q, const InstrumentSettings& s, const ModelParams& p);

/// An instrument realizing an arbitrary bifurcation choice directly:
/// lost branch votes chancellor for `c.lost_target`, chancellor branch
/// votes president for `c.ch_target`. Used to drive the composed
/// superchannel on raw choice vectors.
Instrument instrument_from_choice(int q, const BifurcationChoice& c,
                                  const ModelParams& p);

/// True iff every transition of the instrument stays inside its node's
/// branched route: per status sector, the emitted votes/echo/outcome shape
/// matches some bifurcation choice of the route.
bool check_route_following(const Instrument& instr, const PartyAugRoute& route);

/// The fixed channels at P, X and F: uniform randomization over u at P,
/// branch-wise identity at X, discard at F.
struct FixedChannels {
  int past_dim = 4;
  Rational past_weight() const { return Rational(1, past_dim); }
};
FixedChannels fixed_channels(const RoutedGraph& g);

/// One deterministic run of the composed superchannel on basis settings.
struct ExecutionResult {
  std::vector<BranchStatus> branches;  // per party
  int assignment_id = -1;
  GlobalAssignment assignment;
  std::vector<int> outcomes;  // O^q per party
  Rational probability;       // over the u randomness; exactly 1 here

  nlohmann::ordered_json to_json() const;
};

/// Composes the fixed channels with the parties' instruments and executes
/// on basis input. Every instrument is first checked against its node's
/// route (std::invalid_argument with the offending transition otherwise).
/// Throws std::runtime_error if the realized assignment is not unique.
ExecutionResult compose_superchannel(const RoutedGraph& g,
                                     const std::vector<Instrument>& instruments);

/// True iff the instrument's realized votes and outcomes are the same for
/// every value of the u label (checked exhaustively per branch).
bool u_independent(const Instrument& instr, int past_dim);

}  // namespace causalvote
