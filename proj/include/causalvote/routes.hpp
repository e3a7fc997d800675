#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "causalvote/model.hpp"

namespace causalvote {

/// A party's two bifurcation inputs: the chancellor-ballot target used in
/// the lost branch, and the president-ballot target used in the
/// chancellor branch. Both range over the parties other than the owner.
struct BifurcationChoice {
  int lost_target = -1;
  int ch_target = -1;
  friend bool operator==(const BifurcationChoice&, const BifurcationChoice&) = default;
};

/// Branch-occurrence flags of a party node.
struct BranchStatus {
  std::uint8_t lost = 0, ch = 0, pr = 0;
  friend bool operator==(const BranchStatus&, const BranchStatus&) = default;
};

using StatusBits = std::pair<int, int>;  // (l_ch, l_pr)

struct PartyRouteResult {
  StatusBits status_echo;
  std::vector<std::uint8_t> votes_ch;  // indexed by party, self always 0
  std::vector<std::uint8_t> votes_pr;
  BranchStatus branch;
};

/// The augmented branched route of a party node: a partial function from
/// (status bits, bifurcation choice) to (status echo, votes, branch flags).
/// Undefined on the impossible (1,1) status.
class PartyAugRoute {
 public:
  PartyAugRoute(int q, int n) : q_(q), n_(n) {}

  int owner() const { return q_; }
  int parties() const { return n_; }

  /// Applies the route; std::nullopt marks an undefined input, which
  /// downstream relation composition treats as a non-occurring branch.
  std::optional<PartyRouteResult> apply(StatusBits status,
                                        const BifurcationChoice& choice) const;

  /// Number of input combinations on which the route is defined.
  int defined_domain_size() const { return 3 * (n_ - 1) * (n_ - 1); }

 private:
  int q_, n_;
};

PartyAugRoute party_aug_route(int q, const ModelParams& p);

/// The counting station's route: the identity partial function on allowed
/// (v, l) tuples, augmented with a one-hot occurrence vector indexed by
/// the allowed tuple.
class StationAugRoute {
 public:
  explicit StationAugRoute(std::vector<GlobalAssignment> allowed);

  struct Result {
    const GlobalAssignment* echo;
    int branch;  // position of the one-hot occurrence bit
  };
  std::optional<Result> apply(const GlobalAssignment& input) const;

  int branch_count() const { return static_cast<int>(allowed_.size()); }
  const std::vector<GlobalAssignment>& allowed() const { return allowed_; }

 private:
  std::vector<GlobalAssignment> allowed_;
  std::map<GlobalAssignment, int> index_;
};

StationAugRoute station_aug_route(const std::vector<GlobalAssignment>& allowed);

/// The trivial route at the global past and the single-branch route at the
/// global future. In the reverse graph, F's unique branch carries one
/// bifurcation choice per allowed full index tuple.
struct TerminalRoutes {
  const std::vector<GlobalAssignment>* allowed;

  /// P: total trivial function on the empty tuple.
  std::tuple<> apply_past() const { return {}; }

  /// F: its single branch occurs for every allowed input combination.
  std::optional<int> apply_future(const GlobalAssignment& input) const;

  int future_reverse_bifurcation_count() const {
    return static_cast<int>(allowed->size());
  }
};

TerminalRoutes terminal_routes(const std::vector<GlobalAssignment>& allowed);

}  // namespace causalvote
