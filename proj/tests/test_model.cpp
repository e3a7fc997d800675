#include <doctest.h>

#include <algorithm>
#include <vector>

#include "causalvote/model.hpp"

using namespace causalvote;

namespace {

// Independent brute-force oracle: every branch-structured candidate at
// n=5 (each party either casts one chancellor ballot, casts one president
// ballot, or casts none and is president), filtered by a from-scratch
// transcription of the four balance equations.
std::vector<GlobalAssignment> brute_force_allowed() {
  const int n = 5;
  std::vector<GlobalAssignment> out;
  // option 0..3: lost, chancellor ballot for the k-th other party
  // option 4..7: chancellor, president ballot for the k-th other party
  // option 8: president
  std::vector<int> opt(n, 0);
  while (true) {
    GlobalAssignment a(n);
    for (int q = 0; q < n; ++q) {
      if (opt[q] < 4) {
        a.set_vote_ch(q, unrank_party(q, opt[q]), 1);
      } else if (opt[q] < 8) {
        a.l_ch[q] = 1;
        a.set_vote_pr(q, unrank_party(q, opt[q] - 4), 1);
      } else {
        a.l_pr[q] = 1;
      }
    }
    bool ok = true;
    for (int q = 0; q < n && ok; ++q) {
      int recv_ch = 0;
      for (int k = 0; k < n; ++k)
        if (k != q) recv_ch += a.vote_ch(k, q);
      ok = (a.l_ch[q] ? 1 : 0) == (recv_ch >= 3 ? 1 : 0);
      if (!ok) break;
      int pres = 0;
      for (int k = 0; k < n; ++k) {
        if (k == q) continue;
        int recv_k = 0;
        for (int q2 = 0; q2 < n; ++q2)
          if (q2 != k && q2 != q) recv_k += a.vote_ch(q2, k);
        pres += a.vote_pr(k, q) * (recv_k >= 3 ? 1 : 0);
      }
      ok = (a.l_pr[q] ? 1 : 0) == pres;
      if (!ok) break;
      int cast_ch = 0, cast_pr = 0;
      for (int k = 0; k < n; ++k) {
        cast_ch += a.vote_ch(q, k);
        cast_pr += a.vote_pr(q, k);
      }
      ok = cast_ch == (1 - a.l_ch[q]) * (1 - a.l_pr[q]) && cast_pr == a.l_ch[q];
    }
    if (ok) out.push_back(std::move(a));
    int q = 0;
    while (q < n && ++opt[q] == 9) opt[q++] = 0;
    if (q == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("party rank helpers roundtrip") {
  for (int q = 0; q < 5; ++q)
    for (int r = 0; r < 4; ++r) {
      const int k = unrank_party(q, r);
      CHECK(k != q);
      CHECK(rank_party(q, k) == r);
    }
}

TEST_CASE("standard params") {
  const auto p = ModelParams::standard();
  CHECK(p.n == 5);
  CHECK(p.threshold == 3);
  CHECK(ModelParams::standard(7).threshold == 4);
  CHECK_THROWS_AS(ModelParams::standard(4), std::invalid_argument);
}

TEST_CASE("enumerate_allowed matches the unstructured brute-force oracle") {
  const auto fast = enumerate_allowed(ModelParams::standard());
  const auto slow = brute_force_allowed();
  CHECK(fast.size() == 964);
  CHECK(fast == slow);

  int all_lost = 0, ch_only = 0, ch_pr = 0;
  for (const auto& a : fast) {
    int chs = 0, prs = 0;
    for (int q = 0; q < a.n; ++q) {
      chs += a.l_ch[q];
      prs += a.l_pr[q];
    }
    if (chs == 0 && prs == 0) ++all_lost;
    if (chs == 1 && prs == 0) ++ch_only;
    if (chs == 1 && prs == 1) ++ch_pr;
  }
  CHECK(all_lost == 764);
  CHECK(ch_only == 180);
  CHECK(ch_pr == 20);
}

TEST_CASE("check_constraints rejects malformed input") {
  const auto p = ModelParams::standard();
  GlobalAssignment wrong(4);
  CHECK_THROWS_AS(check_constraints(wrong, p), std::invalid_argument);

  GlobalAssignment self(5);
  self.set_vote_ch(2, 2, 1);
  CHECK(!check_constraints(self, p));  // self-ballots are never allowed
}

TEST_CASE("status_of and the impossible bit pair") {
  GlobalAssignment a(5);
  CHECK(status_of(a, 0) == PartyStatus::lost);
  a.l_ch[0] = 1;
  CHECK(status_of(a, 0) == PartyStatus::chancellor);
  a.l_ch[0] = 0;
  a.l_pr[0] = 1;
  CHECK(status_of(a, 0) == PartyStatus::president);
  a.l_ch[0] = 1;
  CHECK_THROWS_AS(status_of(a, 0), std::logic_error);
}

TEST_CASE("structural lemmas hold on the allowed set") {
  const auto allowed = enumerate_allowed(ModelParams::standard());
  const auto report = check_lemmas(allowed);
  CHECK(report.all_pass());
  for (const auto& l : report.lemmas) {
    CHECK(l.pass);
    CHECK(!l.counterexample.has_value());
  }
}

TEST_CASE("lemma checks can fail and carry a counterexample") {
  GlobalAssignment two_chancellors(5);
  two_chancellors.l_ch[0] = 1;
  two_chancellors.l_ch[1] = 1;
  const auto report = check_lemmas({two_chancellors});
  CHECK(!report.all_pass());
  bool found = false;
  for (const auto& l : report.lemmas)
    if (!l.pass) {
      CHECK(l.counterexample.has_value());
      found = true;
    }
  CHECK(found);
}

TEST_CASE("mutation names roundtrip") {
  CHECK(mutation_from_string("drop-majority-recheck") == Mutation::drop_majority_recheck);
  CHECK(!mutation_from_string("nonsense").has_value());
  CHECK(to_string(Mutation::none) == "none");
  CHECK(to_string(Mutation::drop_majority_recheck) == "drop-majority-recheck");
}

TEST_CASE("mutated constraint system changes the allowed set") {
  const auto mutated =
      enumerate_allowed(ModelParams::standard(5, Mutation::drop_majority_recheck));
  CHECK(mutated.size() == 784);  // chancellor-without-president disappears
  for (const auto& a : mutated) {
    int chs = 0, prs = 0;
    for (int q = 0; q < a.n; ++q) {
      chs += a.l_ch[q];
      prs += a.l_pr[q];
    }
    CHECK(chs == prs);  // a chancellor's ballot now always elects
  }
}
