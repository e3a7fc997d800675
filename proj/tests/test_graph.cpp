#include <doctest.h>

#include "causalvote/graph.hpp"

using namespace causalvote;

TEST_CASE("graph shape at n=5") {
  const auto g = build_gamma(ModelParams::standard(), {});
  CHECK(g.nodes.size() == 8);  // P, A1..A5, X, F
  CHECK(g.arrows.size() == 21);
  CHECK(g.allowed.size() == 964);

  for (int q = 0; q < 5; ++q) {
    const auto& pa = g.past_to_party(q);
    CHECK(pa.indices.empty());
    CHECK(pa.sector_dims.at({}) == 4);

    const auto& ax = g.party_to_station(q);
    CHECK(ax.indices.size() == 9);  // 4+4 votes + presidential status
    for (const auto& [key, dim] : ax.sector_dims) CHECK(dim == 1);

    const auto& xa = g.station_to_party(q);
    CHECK(xa.sector_dims.size() == 3);  // (1,1) never occurs
    CHECK(xa.sector_dims.count({1, 1}) == 0);

    const auto& af = g.party_to_future(q);
    CHECK(af.sector_dims.at(SectorKey{0, 0}) == 1);
    CHECK(af.sector_dims.at(SectorKey{1, 0}) == 1);
    CHECK(af.sector_dims.at(SectorKey{0, 1}) == 4);
  }

  // one fully-pinned sector per allowed assignment
  CHECK(g.station_to_future().sector_dims.size() == g.allowed.size());
}

TEST_CASE("every allowed assignment lands in a declared sector") {
  const auto g = build_gamma(ModelParams::standard(), {});
  for (const auto& a : g.allowed)
    for (const auto& arrow : g.arrows)
      CHECK(arrow.sector_dims.count(arrow_sector_of(a, arrow)) == 1);
}

TEST_CASE("node and index names") {
  CHECK(NodeId{NodeKind::past}.name() == "P");
  CHECK(NodeId{NodeKind::party, 0}.name() == "A1");
  CHECK(NodeId{NodeKind::party, 4}.name() == "A5");
  CHECK(NodeId{NodeKind::station}.name() == "X");
  CHECK(NodeId{NodeKind::future}.name() == "F");
  CHECK(IndexVar{IndexVar::Kind::vote_ch, 0, 2}.name() == "v_ch[1->3]");
  CHECK(IndexVar{IndexVar::Kind::status_pr, 4, -1}.name() == "l_pr[5]");
}

TEST_CASE("invalid dimension choices are rejected") {
  CHECK_THROWS_AS(build_gamma(ModelParams::standard(), {0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(build_gamma(ModelParams::standard(), {4, 0}), std::invalid_argument);
}

TEST_CASE("describe emits the graph summary") {
  const auto g = build_gamma(ModelParams::standard(), {});
  const auto j = describe(g);
  CHECK(j["n"] == 5);
  CHECK(j["threshold"] == 3);
  CHECK(j["mutation"] == "none");
  CHECK(j["allowed_assignments"] == 964);
  CHECK(j["nodes"].size() == 8);
  CHECK(j["arrows"].size() == 21);
}

TEST_CASE("larger n keeps the generalized threshold") {
  const auto g = build_gamma(ModelParams::standard(7), {});
  CHECK(g.params.threshold == 4);
  CHECK(g.nodes.size() == 10);
  CHECK(!g.allowed.empty());
}
