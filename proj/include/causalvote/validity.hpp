#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalvote/graph.hpp"
#include "causalvote/routes.hpp"

namespace causalvote {

/// The bifurcation-choice vector fed to the choice relation.
struct ChoiceInput {
  std::vector<BifurcationChoice> choices;  // one per party
  friend bool operator==(const ChoiceInput&, const ChoiceInput&) = default;
};

struct ChoiceOutput {
  std::vector<BranchStatus> branches;  // one per party
  int z_index;                         // one-hot position over allowed tuples
  friend bool operator==(const ChoiceOutput&, const ChoiceOutput&) = default;
};

std::size_t input_space_size(const ModelParams& p);  // (n-1)^(2n)
std::size_t encode_input(const ChoiceInput& in);
ChoiceInput decode_input(std::size_t idx, int n);

/// The composed choice relation, tabulated over the full input space.
/// Built by sweeping the allowed assignments and expanding, for each, the
/// product set of compatible bifurcation vectors (a lost party pins its
/// lost component, a chancellor its chancellor component, everything else
/// is free) -- never by enumerating internal index valuations per input.
class ChoiceRelation {
 public:
  int n = 0;
  std::size_t space = 0;
  std::vector<std::uint32_t> multiplicity;  // compatible assignments per input
  std::vector<std::int32_t> assignment;     // a compatible assignment id, -1 if none
  std::vector<GlobalAssignment> allowed;
  std::vector<std::uint8_t> status_table;   // [id * n + q]: PartyStatus as int

  PartyStatus status(int id, int q) const {
    return static_cast<PartyStatus>(status_table[id * n + q]);
  }

  /// All outputs related to the given input (recomputed by scanning the
  /// allowed assignments; used for reporting, not for the bulk sweep).
  std::vector<ChoiceOutput> outputs(std::size_t idx) const;
  std::optional<ChoiceOutput> unique_output(std::size_t idx) const;

  ChoiceOutput output_of_assignment(int id) const;
  bool compatible(const GlobalAssignment& a, const ChoiceInput& in) const;
};

/// Tabulates the choice relation. Throws std::length_error when the input
/// space is too large to tabulate (beyond roughly 2^26 inputs).
ChoiceRelation choice_relation(const RoutedGraph& g, int num_threads = 1);
ChoiceRelation choice_relation_serial(const RoutedGraph& g);

struct VerdictReport {
  std::string check;
  bool pass = false;
  nlohmann::ordered_json details;
};

VerdictReport check_univocality(const ChoiceRelation& rel, int num_threads = 1);
VerdictReport check_univocality_serial(const ChoiceRelation& rel);

/// Scenario classes partitioning the input space.
enum class ScenarioKind { lost, chancellor, chancellor_and_president };
struct Scenario {
  ScenarioKind kind = ScenarioKind::lost;
  int chancellor = -1;
  int president = -1;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario classify_input(const ChoiceInput& in, const ModelParams& p);

/// Exhaustive sweep over the input space: class cardinalities, pairwise
/// disjointness / exhaustiveness of the class membership predicates, and
/// agreement between each input's class and the relation's output.
struct PartitionSweep {
  std::size_t total = 0;
  std::size_t lost = 0;
  std::vector<std::size_t> chancellor;            // per q
  std::vector<std::size_t> chancellor_president;  // per (q * n + q')
  std::size_t membership_violations = 0;  // inputs in != 1 classes
  std::size_t scenario_mismatches = 0;    // relation output disagrees with class
  std::size_t projection_mismatches = 0;  // j vs z disagreement

  std::size_t chancellor_total() const;
  std::size_t chancellor_president_total() const;
  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

PartitionSweep sweep_partition(const ChoiceRelation& rel, int num_threads = 1);
PartitionSweep sweep_partition_serial(const ChoiceRelation& rel);

/// Reverse-direction univocality: every allowed assignment (equivalently,
/// every reverse bifurcation choice at F) fixes one branch per node.
VerdictReport check_co_univocality(const RoutedGraph& g);

/// Branch graph over node-branches.
enum class ArrowColor { solid, green_dashed, red_dashed };

struct BranchNode {
  enum class Kind { past, party_lost, party_ch, party_pr, station, future };
  Kind kind = Kind::past;
  int q = -1;  // party, for the party kinds
  int z = -1;  // allowed-assignment id, for station branches

  std::string name() const;
  friend bool operator==(const BranchNode&, const BranchNode&) = default;
};

/// Fig-3 layer of a branch: past 0, lost/chancellor 1, station 2,
/// president 3, future 4.
int branch_layer(const BranchNode& b);

struct BranchGraph {
  struct Edge {
    int src, dst;
    ArrowColor color;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  std::vector<BranchNode> nodes;
  std::vector<Edge> edges;

  int index_of(const BranchNode& b) const;
};

BranchGraph build_branch_graph(const RoutedGraph& g, const ChoiceRelation& rel,
                               int num_threads = 1);
BranchGraph build_branch_graph_serial(const RoutedGraph& g, const ChoiceRelation& rel);

/// Component id per node (Tarjan). Components are numbered in reverse
/// topological order.
std::vector<int> strongly_connected_components(int n_nodes,
                                               const std::vector<BranchGraph::Edge>& edges);

/// Weak-loops check: every directed cycle consists of green dashed arrows
/// only, and the layer assignment strictly increases along solid and red
/// dashed arrows and never decreases along green ones.
VerdictReport check_weak_loops(const BranchGraph& bg);

}  // namespace causalvote
