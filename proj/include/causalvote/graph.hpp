#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalvote/model.hpp"

namespace causalvote {

enum class NodeKind { past, party, station, future };

struct NodeId {
  NodeKind kind = NodeKind::past;
  int q = -1;  // party index, only for NodeKind::party

  std::string name() const;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

/// One index variable carried by an arrow.
struct IndexVar {
  enum class Kind { vote_ch, vote_pr, status_ch, status_pr };
  Kind kind;
  int q = -1;  // owner
  int k = -1;  // vote target, for the vote kinds

  std::string name() const;
  int value_in(const GlobalAssignment& a) const;
};

using SectorKey = std::vector<int>;

struct Arrow {
  NodeId source, target;
  std::vector<IndexVar> indices;
  std::map<SectorKey, int> sector_dims;
};

/// Linear dimensions for the sectors of the graph's arrows. Defaults match
/// the minimal dimension choice: everything one-dimensional except the
/// unsectorised past legs and the presidential report sector.
struct DimensionChoice {
  int past_dim = 4;             // P -> A^q, unsectorised
  int president_report_dim = 4;  // l_pr = 1 sector of A^q -> F
};

struct RoutedGraph {
  ModelParams params;
  DimensionChoice dims;
  std::vector<NodeId> nodes;
  std::vector<Arrow> arrows;
  std::vector<GlobalAssignment> allowed;  // cached allowed assignments

  const Arrow& past_to_party(int q) const;
  const Arrow& party_to_station(int q) const;
  const Arrow& station_to_party(int q) const;
  const Arrow& party_to_future(int q) const;
  const Arrow& station_to_future() const;
};

/// Builds the graph for the given party count and dimension choice.
/// Throws std::invalid_argument when a dimension is below 1.
RoutedGraph build_gamma(const ModelParams& p, const DimensionChoice& dims = {});

/// Projects an assignment onto one arrow's index variables.
SectorKey arrow_sector_of(const GlobalAssignment& a, const Arrow& arrow);

/// JSON description of the graph (nodes, arrows, index names, sector dims).
nlohmann::ordered_json describe(const RoutedGraph& g);

}  // namespace causalvote
