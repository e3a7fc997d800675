#include "causalvote/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace causalvote {

std::optional<Mutation> mutation_from_string(const std::string& name) {
  if (name.empty() || name == "none") return Mutation::none;
  if (name == "drop-majority-recheck") return Mutation::drop_majority_recheck;
  return std::nullopt;
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::none:
      return "none";
    case Mutation::drop_majority_recheck:
      return "drop-majority-recheck";
  }
  return "?";
}

ModelParams ModelParams::standard(int n, Mutation mutation) {
  if (n < 5) throw std::invalid_argument("ModelParams: n must be >= 5");
  return ModelParams{n, (n + 1) / 2, mutation};
}

GlobalAssignment::GlobalAssignment(int n_parties)
    : n(n_parties),
      v_ch(n_parties * n_parties, 0),
      v_pr(n_parties * n_parties, 0),
      l_ch(n_parties, 0),
      l_pr(n_parties, 0) {}

int GlobalAssignment::ch_votes_for(int q) const {
  int s = 0;
  for (int k = 0; k < n; ++k) s += vote_ch(k, q);
  return s;
}

int GlobalAssignment::ch_votes_for_excluding(int q, int excluded) const {
  return ch_votes_for(q) - vote_ch(excluded, q);
}

int GlobalAssignment::pr_votes_for(int q) const {
  int s = 0;
  for (int k = 0; k < n; ++k) s += vote_pr(k, q);
  return s;
}

std::optional<int> GlobalAssignment::ch_vote_target(int q) const {
  std::optional<int> t;
  for (int k = 0; k < n; ++k)
    if (vote_ch(q, k)) {
      if (t) return std::nullopt;
      t = k;
    }
  return t;
}

std::optional<int> GlobalAssignment::pr_vote_target(int q) const {
  std::optional<int> t;
  for (int k = 0; k < n; ++k)
    if (vote_pr(q, k)) {
      if (t) return std::nullopt;
      t = k;
    }
  return t;
}

bool check_constraints(const GlobalAssignment& a, const ModelParams& p) {
  const int n = p.n;
  if (a.n != n || static_cast<int>(a.v_ch.size()) != n * n ||
      static_cast<int>(a.v_pr.size()) != n * n ||
      static_cast<int>(a.l_ch.size()) != n ||
      static_cast<int>(a.l_pr.size()) != n)
    throw std::invalid_argument("check_constraints: dimension mismatch");

  for (int q = 0; q < n; ++q)
    if (a.vote_ch(q, q) || a.vote_pr(q, q)) return false;  // self-votes absent

  const int t = p.threshold;
  for (int q = 0; q < n; ++q) {
    // Chancellor rule: status iff at least a strict majority of votes.
    const int got = a.ch_votes_for(q);
    if (a.l_ch[q] != (got >= t ? 1 : 0)) return false;

    // President rule: a presidential vote from k counts only if k still
    // holds a strict majority without q's own ballot.
    int pr = 0;
    for (int k = 0; k < n; ++k) {
      if (k == q || !a.vote_pr(k, q)) continue;
      if (p.mutation == Mutation::drop_majority_recheck)
        pr += 1;
      else
        pr += (a.ch_votes_for_excluding(k, q) >= t) ? 1 : 0;
    }
    if (a.l_pr[q] != pr) return false;

    // Only losers vote for a chancellor, and cast exactly one ballot.
    int cast_ch = 0, cast_pr = 0;
    for (int k = 0; k < n; ++k) {
      cast_ch += a.vote_ch(q, k);
      cast_pr += a.vote_pr(q, k);
    }
    if (cast_ch != (a.l_ch[q] == 0 && a.l_pr[q] == 0 ? 1 : 0)) return false;
    // Only the chancellor votes for a president.
    if (cast_pr != a.l_ch[q]) return false;
  }
  return true;
}

namespace {

// Per-party branch in the structured enumeration: lost with a chancellor
// ballot, chancellor with a presidential ballot, or president (no ballot).
enum class BranchKind { lost, chancellor, president };

struct StatusPattern {
  std::vector<BranchKind> kind;  // per party
  int n_targets = 0;             // parties that carry a vote target
};

void apply_pattern(GlobalAssignment& a, const StatusPattern& pat,
                   const std::vector<int>& target_ranks) {
  const int n = a.n;
  std::fill(a.v_ch.begin(), a.v_ch.end(), 0);
  std::fill(a.v_pr.begin(), a.v_pr.end(), 0);
  int ti = 0;
  for (int q = 0; q < n; ++q) {
    switch (pat.kind[q]) {
      case BranchKind::lost:
        a.l_ch[q] = 0;
        a.l_pr[q] = 0;
        a.set_vote_ch(q, unrank_party(q, target_ranks[ti++]), 1);
        break;
      case BranchKind::chancellor:
        a.l_ch[q] = 1;
        a.l_pr[q] = 0;
        a.set_vote_pr(q, unrank_party(q, target_ranks[ti++]), 1);
        break;
      case BranchKind::president:
        a.l_ch[q] = 0;
        a.l_pr[q] = 1;
        break;
    }
  }
}

}  // namespace

std::vector<GlobalAssignment> enumerate_allowed(const ModelParams& p) {
  const int n = p.n;
  std::vector<GlobalAssignment> out;

  // Status patterns with two chancellors (or two presidents, or a president
  // without a chancellor) can never satisfy the constraints, so the sweep
  // covers: everyone lost, a single chancellor, and a chancellor+president
  // pair. Within a pattern, every combination of vote targets is tried.
  std::vector<StatusPattern> patterns;
  {
    StatusPattern all_lost{std::vector<BranchKind>(n, BranchKind::lost), n};
    patterns.push_back(all_lost);
    for (int c = 0; c < n; ++c) {
      StatusPattern one = all_lost;
      one.kind[c] = BranchKind::chancellor;
      patterns.push_back(one);
      for (int pr = 0; pr < n; ++pr) {
        if (pr == c) continue;
        StatusPattern two = one;
        two.kind[pr] = BranchKind::president;
        two.n_targets = n - 1;
        patterns.push_back(two);
      }
    }
  }

  GlobalAssignment a(n);
  for (const auto& pat : patterns) {
    std::vector<int> ranks(pat.n_targets, 0);
    while (true) {
      apply_pattern(a, pat, ranks);
      if (check_constraints(a, p)) out.push_back(a);
      // odometer over target ranks, base n-1
      int pos = 0;
      while (pos < pat.n_targets && ++ranks[pos] == n - 1) ranks[pos++] = 0;
      if (pos == pat.n_targets) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartyStatus status_of(const GlobalAssignment& a, int q) {
  const bool ch = a.l_ch[q], pr = a.l_pr[q];
  if (ch && pr)
    throw std::logic_error("status_of: party holds both statuses; assignment is not allowed");
  if (ch) return PartyStatus::chancellor;
  if (pr) return PartyStatus::president;
  return PartyStatus::lost;
}

bool LemmaReport::all_pass() const {
  return std::all_of(lemmas.begin(), lemmas.end(),
                     [](const LemmaCheck& c) { return c.pass; });
}

LemmaReport check_lemmas(const std::vector<GlobalAssignment>& assignments) {
  LemmaReport report;
  report.lemmas = {LemmaCheck{"no-chancellor-implies-no-president", true, {}},
                   LemmaCheck{"at-most-one-chancellor", true, {}},
                   LemmaCheck{"never-both-statuses", true, {}},
                   LemmaCheck{"at-most-one-president", true, {}}};
  for (const auto& a : assignments) {
    int n_ch = 0, n_pr = 0;
    bool both = false;
    for (int q = 0; q < a.n; ++q) {
      n_ch += a.l_ch[q];
      n_pr += a.l_pr[q];
      both = both || (a.l_ch[q] && a.l_pr[q]);
    }
    auto fail = [&](int i) {
      if (report.lemmas[i].pass) {
        report.lemmas[i].pass = false;
        report.lemmas[i].counterexample = a;
      }
    };
    if (n_ch == 0 && n_pr > 0) fail(0);
    if (n_ch > 1) fail(1);
    if (both) fail(2);
    if (n_pr > 1) fail(3);
  }
  return report;
}

}  // namespace causalvote
