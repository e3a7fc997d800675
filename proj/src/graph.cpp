#include "causalvote/graph.hpp"

#include <set>
#include <stdexcept>

namespace causalvote {

std::string NodeId::name() const {
  switch (kind) {
    case NodeKind::past:
      return "P";
    case NodeKind::party:
      return "A" + std::to_string(q + 1);
    case NodeKind::station:
      return "X";
    case NodeKind::future:
      return "F";
  }
  return "?";
}

std::string IndexVar::name() const {
  const std::string owner = std::to_string(q + 1);
  switch (kind) {
    case Kind::vote_ch:
      return "v_ch[" + owner + "->" + std::to_string(k + 1) + "]";
    case Kind::vote_pr:
      return "v_pr[" + owner + "->" + std::to_string(k + 1) + "]";
    case Kind::status_ch:
      return "l_ch[" + owner + "]";
    case Kind::status_pr:
      return "l_pr[" + owner + "]";
  }
  return "?";
}

int IndexVar::value_in(const GlobalAssignment& a) const {
  switch (kind) {
    case Kind::vote_ch:
      return a.vote_ch(q, k);
    case Kind::vote_pr:
      return a.vote_pr(q, k);
    case Kind::status_ch:
      return a.l_ch[q];
    case Kind::status_pr:
      return a.l_pr[q];
  }
  return 0;
}

SectorKey arrow_sector_of(const GlobalAssignment& a, const Arrow& arrow) {
  SectorKey key;
  key.reserve(arrow.indices.size());
  for (const auto& ix : arrow.indices) key.push_back(ix.value_in(a));
  return key;
}

namespace {

const Arrow& find_arrow(const RoutedGraph& g, const NodeId& s, const NodeId& t) {
  for (const auto& a : g.arrows)
    if (a.source == s && a.target == t) return a;
  throw std::logic_error("RoutedGraph: arrow not found");
}

// The per-party index block (votes then presidential status), as carried
// by the A^q -> X arrow.
std::vector<IndexVar> party_out_indices(int q, int n) {
  std::vector<IndexVar> ix;
  for (int k = 0; k < n; ++k)
    if (k != q) ix.push_back({IndexVar::Kind::vote_ch, q, k});
  for (int k = 0; k < n; ++k)
    if (k != q) ix.push_back({IndexVar::Kind::vote_pr, q, k});
  ix.push_back({IndexVar::Kind::status_pr, q, -1});
  return ix;
}

std::vector<IndexVar> status_indices(int q) {
  return {{IndexVar::Kind::status_ch, q, -1}, {IndexVar::Kind::status_pr, q, -1}};
}

}  // namespace

const Arrow& RoutedGraph::past_to_party(int q) const {
  return find_arrow(*this, {NodeKind::past}, {NodeKind::party, q});
}
const Arrow& RoutedGraph::party_to_station(int q) const {
  return find_arrow(*this, {NodeKind::party, q}, {NodeKind::station});
}
const Arrow& RoutedGraph::station_to_party(int q) const {
  return find_arrow(*this, {NodeKind::station}, {NodeKind::party, q});
}
const Arrow& RoutedGraph::party_to_future(int q) const {
  return find_arrow(*this, {NodeKind::party, q}, {NodeKind::future});
}
const Arrow& RoutedGraph::station_to_future() const {
  return find_arrow(*this, {NodeKind::station}, {NodeKind::future});
}

RoutedGraph build_gamma(const ModelParams& p, const DimensionChoice& dims) {
  if (dims.past_dim < 1 || dims.president_report_dim < 1)
    throw std::invalid_argument("build_gamma: sector dimensions must be >= 1");

  RoutedGraph g;
  g.params = p;
  g.dims = dims;
  g.allowed = enumerate_allowed(p);
  const int n = p.n;

  g.nodes.push_back({NodeKind::past});
  for (int q = 0; q < n; ++q) g.nodes.push_back({NodeKind::party, q});
  g.nodes.push_back({NodeKind::station});
  g.nodes.push_back({NodeKind::future});

  for (int q = 0; q < n; ++q) {
    // P -> A^q: no indices, one trivial sector.
    Arrow pa{{NodeKind::past}, {NodeKind::party, q}, {}, {}};
    pa.sector_dims[{}] = dims.past_dim;
    g.arrows.push_back(std::move(pa));

    // A^q -> X: the party's votes plus its presidential status. Every
    // sector value reachable in an allowed assignment has dimension 1.
    Arrow ax{{NodeKind::party, q}, {NodeKind::station}, party_out_indices(q, n), {}};
    for (const auto& a : g.allowed) ax.sector_dims[arrow_sector_of(a, ax)] = 1;
    g.arrows.push_back(std::move(ax));

    // X -> A^q: the party's status pair, each sector of dimension 1.
    Arrow xa{{NodeKind::station}, {NodeKind::party, q}, status_indices(q), {}};
    xa.sector_dims[{0, 0}] = 1;
    xa.sector_dims[{1, 0}] = 1;
    xa.sector_dims[{0, 1}] = 1;
    g.arrows.push_back(std::move(xa));

    // A^q -> F: the status pair again; the presidential sector is wide
    // enough to carry a message.
    Arrow af{{NodeKind::party, q}, {NodeKind::future}, status_indices(q), {}};
    af.sector_dims[{0, 0}] = 1;
    af.sector_dims[{1, 0}] = 1;
    af.sector_dims[{0, 1}] = dims.president_report_dim;
    g.arrows.push_back(std::move(af));
  }

  // X -> F: the full (v, l) tuple; one sector per allowed assignment.
  Arrow xf{{NodeKind::station}, {NodeKind::future}, {}, {}};
  for (int q = 0; q < n; ++q) {
    auto block = party_out_indices(q, n);
    xf.indices.insert(xf.indices.end(), block.begin(), block.end());
    xf.indices.push_back({IndexVar::Kind::status_ch, q, -1});
  }
  for (const auto& a : g.allowed) xf.sector_dims[arrow_sector_of(a, xf)] = 1;
  g.arrows.push_back(std::move(xf));

  return g;
}

nlohmann::ordered_json describe(const RoutedGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.params.n;
  j["threshold"] = g.params.threshold;
  j["mutation"] = to_string(g.params.mutation);
  j["allowed_assignments"] = g.allowed.size();

  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : g.nodes) j["nodes"].push_back(node.name());

  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : g.arrows) {
    nlohmann::ordered_json ja;
    ja["source"] = a.source.name();
    ja["target"] = a.target.name();
    ja["indices"] = nlohmann::ordered_json::array();
    for (const auto& ix : a.indices) ja["indices"].push_back(ix.name());
    ja["sector_count"] = a.sector_dims.size();
    // The big station arrows carry one sector per allowed assignment, all
    // one-dimensional; spelling those out would swamp the report.
    if (a.sector_dims.size() <= 16) {
      ja["sector_dims"] = nlohmann::ordered_json::array();
      for (const auto& [key, dim] : a.sector_dims)
        ja["sector_dims"].push_back({{"sector", key}, {"dim", dim}});
    } else {
      ja["uniform_dim"] = 1;
    }
    j["arrows"].push_back(std::move(ja));
  }
  return j;
}

}  // namespace causalvote
