#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace causalvote {

/// Optional mutations of the constraint system, used as negative controls
/// to demonstrate that the downstream checkers can actually fail.
enum class Mutation {
  none,
  /// The president rule keeps a party's presidential status whenever they
  /// receive a presidential vote, without re-checking that the voter still
  /// holds a strict majority once the candidate's own ballot is excluded.
  drop_majority_recheck,
};

std::optional<Mutation> mutation_from_string(const std::string& name);
std::string to_string(Mutation m);

struct ModelParams {
  int n = 5;
  int threshold = 3;  // strict majority: ceil(n/2)
  Mutation mutation = Mutation::none;

  static ModelParams standard(int n = 5, Mutation mutation = Mutation::none);
};

/// A party's status, read off the (l_ch, l_pr) bit pair.
enum class PartyStatus { lost, chancellor, president };

/// Full valuation of all vote bits and status bits for n parties.
/// Vote tables are stored dense (n*n, diagonal always zero); parties are
/// 0-indexed internally, rendered 1-indexed in user-facing output.
struct GlobalAssignment {
  int n = 0;
  std::vector<std::uint8_t> v_ch;  // [q*n + k]: q votes k for chancellor
  std::vector<std::uint8_t> v_pr;  // [q*n + k]: q votes k for president
  std::vector<std::uint8_t> l_ch;  // [q]: q is chancellor
  std::vector<std::uint8_t> l_pr;  // [q]: q is president

  GlobalAssignment() = default;
  explicit GlobalAssignment(int n_parties);

  std::uint8_t vote_ch(int q, int k) const { return v_ch[q * n + k]; }
  std::uint8_t vote_pr(int q, int k) const { return v_pr[q * n + k]; }
  void set_vote_ch(int q, int k, std::uint8_t b) { v_ch[q * n + k] = b; }
  void set_vote_pr(int q, int k, std::uint8_t b) { v_pr[q * n + k] = b; }

  /// Number of chancellor votes received by q.
  int ch_votes_for(int q) const;
  /// Number of chancellor votes received by q, ignoring the one cast by
  /// `excluded` (if any).
  int ch_votes_for_excluding(int q, int excluded) const;
  int pr_votes_for(int q) const;

  /// The unique k voted for by q, if q cast exactly one vote of the family.
  std::optional<int> ch_vote_target(int q) const;
  std::optional<int> pr_vote_target(int q) const;

  auto operator<=>(const GlobalAssignment&) const = default;
};

/// The k-th party other than q, in increasing order (rank 0..n-2).
inline int unrank_party(int q, int rank) { return rank < q ? rank : rank + 1; }
inline int rank_party(int q, int k) { return k < q ? k : k - 1; }

/// True iff all four constraint equations hold for `a` (natural-number
/// sums, generalized majority threshold). Throws std::invalid_argument on
/// a dimension mismatch between `a` and `p.n`.
bool check_constraints(const GlobalAssignment& a, const ModelParams& p);

/// All assignments satisfying the constraints, generated by
/// branch-structured enumeration (each party picks lost-with-target,
/// chancellor-with-target, or president) and filtered. Sorted.
std::vector<GlobalAssignment> enumerate_allowed(const ModelParams& p);

/// Throws std::logic_error if q's status bits are the impossible (1,1).
PartyStatus status_of(const GlobalAssignment& a, int q);

struct LemmaCheck {
  std::string name;
  bool pass = false;
  std::optional<GlobalAssignment> counterexample;
};

struct LemmaReport {
  std::array<LemmaCheck, 4> lemmas;
  bool all_pass() const;
};

/// Structural lemmas over a set of assignments: no chancellor implies no
/// president; at most one chancellor; nobody is both; at most one president.
LemmaReport check_lemmas(const std::vector<GlobalAssignment>& assignments);

}  // namespace causalvote
