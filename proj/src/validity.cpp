#include "causalvote/validity.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace causalvote {

namespace {

constexpr std::size_t kMaxTabulatedInputs = std::size_t{1} << 26;

// Component layout: component 2q is party q's lost bifurcation, 2q+1 its
// chancellor bifurcation; digits are target ranks in base n-1.
std::vector<std::size_t> component_strides(int n) {
  std::vector<std::size_t> strides(2 * n);
  std::size_t s = 1;
  for (int c = 0; c < 2 * n; ++c) {
    strides[c] = s;
    s *= static_cast<std::size_t>(n - 1);
  }
  return strides;
}

void decode_digits(std::size_t idx, int n, int* digits) {
  const auto base = static_cast<std::size_t>(n - 1);
  for (int c = 0; c < 2 * n; ++c) {
    digits[c] = static_cast<int>(idx % base);
    idx /= base;
  }
}

// Per-assignment compatibility pins: digit value per component, or -1 if
// the component is free (not constrained by the assignment's branches).
std::vector<int> assignment_pins(const GlobalAssignment& a) {
  std::vector<int> pins(2 * a.n, -1);
  for (int q = 0; q < a.n; ++q) {
    switch (status_of(a, q)) {
      case PartyStatus::lost:
        pins[2 * q] = rank_party(q, *a.ch_vote_target(q));
        break;
      case PartyStatus::chancellor:
        pins[2 * q + 1] = rank_party(q, *a.pr_vote_target(q));
        break;
      case PartyStatus::president:
        break;
    }
  }
  return pins;
}

// Visits every input index compatible with the given pins.
template <typename Visit>
void for_each_compatible(const std::vector<int>& pins,
                         const std::vector<std::size_t>& strides, int n,
                         Visit&& visit) {
  std::vector<int> free_pos;
  std::size_t base = 0;
  for (int c = 0; c < 2 * n; ++c) {
    if (pins[c] >= 0)
      base += static_cast<std::size_t>(pins[c]) * strides[c];
    else
      free_pos.push_back(c);
  }
  std::vector<int> vals(free_pos.size(), 0);
  std::size_t idx = base;
  while (true) {
    visit(idx);
    std::size_t j = 0;
    while (j < free_pos.size()) {
      if (++vals[j] < n - 1) {
        idx += strides[free_pos[j]];
        break;
      }
      idx -= static_cast<std::size_t>(n - 2) * strides[free_pos[j]];
      vals[j++] = 0;
    }
    if (j == free_pos.size()) break;
  }
}

ChoiceRelation make_relation_shell(const RoutedGraph& g) {
  ChoiceRelation rel;
  rel.n = g.params.n;
  rel.space = input_space_size(g.params);
  if (rel.space > kMaxTabulatedInputs)
    throw std::length_error("choice_relation: input space too large to tabulate");
  rel.allowed = g.allowed;
  rel.multiplicity.assign(rel.space, 0);
  rel.assignment.assign(rel.space, -1);
  rel.status_table.resize(rel.allowed.size() * rel.n);
  for (std::size_t id = 0; id < rel.allowed.size(); ++id)
    for (int q = 0; q < rel.n; ++q)
      rel.status_table[id * rel.n + q] =
          static_cast<std::uint8_t>(status_of(rel.allowed[id], q));
  return rel;
}

}  // namespace

std::size_t input_space_size(const ModelParams& p) {
  std::size_t s = 1;
  for (int c = 0; c < 2 * p.n; ++c) s *= static_cast<std::size_t>(p.n - 1);
  return s;
}

std::size_t encode_input(const ChoiceInput& in) {
  const int n = static_cast<int>(in.choices.size());
  const auto strides = component_strides(n);
  std::size_t idx = 0;
  for (int q = 0; q < n; ++q) {
    idx += static_cast<std::size_t>(rank_party(q, in.choices[q].lost_target)) *
           strides[2 * q];
    idx += static_cast<std::size_t>(rank_party(q, in.choices[q].ch_target)) *
           strides[2 * q + 1];
  }
  return idx;
}

ChoiceInput decode_input(std::size_t idx, int n) {
  std::vector<int> digits(2 * n);
  decode_digits(idx, n, digits.data());
  ChoiceInput in;
  in.choices.resize(n);
  for (int q = 0; q < n; ++q) {
    in.choices[q].lost_target = unrank_party(q, digits[2 * q]);
    in.choices[q].ch_target = unrank_party(q, digits[2 * q + 1]);
  }
  return in;
}

bool ChoiceRelation::compatible(const GlobalAssignment& a,
                                const ChoiceInput& in) const {
  for (int q = 0; q < a.n; ++q) {
    switch (status_of(a, q)) {
      case PartyStatus::lost:
        if (a.ch_vote_target(q) != in.choices[q].lost_target) return false;
        break;
      case PartyStatus::chancellor:
        if (a.pr_vote_target(q) != in.choices[q].ch_target) return false;
        break;
      case PartyStatus::president:
        break;
    }
  }
  return true;
}

ChoiceOutput ChoiceRelation::output_of_assignment(int id) const {
  ChoiceOutput out;
  out.z_index = id;
  out.branches.resize(n);
  for (int q = 0; q < n; ++q) {
    switch (status(id, q)) {
      case PartyStatus::lost:
        out.branches[q] = {1, 0, 0};
        break;
      case PartyStatus::chancellor:
        out.branches[q] = {0, 1, 0};
        break;
      case PartyStatus::president:
        out.branches[q] = {0, 0, 1};
        break;
    }
  }
  return out;
}

std::vector<ChoiceOutput> ChoiceRelation::outputs(std::size_t idx) const {
  const ChoiceInput in = decode_input(idx, n);
  std::vector<ChoiceOutput> outs;
  for (int id = 0; id < static_cast<int>(allowed.size()); ++id)
    if (compatible(allowed[id], in)) outs.push_back(output_of_assignment(id));
  return outs;
}

std::optional<ChoiceOutput> ChoiceRelation::unique_output(std::size_t idx) const {
  if (multiplicity[idx] != 1) return std::nullopt;
  return output_of_assignment(assignment[idx]);
}

ChoiceRelation choice_relation_serial(const RoutedGraph& g) {
  ChoiceRelation rel = make_relation_shell(g);
  const auto strides = component_strides(rel.n);
  for (int id = 0; id < static_cast<int>(rel.allowed.size()); ++id) {
    const auto pins = assignment_pins(rel.allowed[id]);
    for_each_compatible(pins, strides, rel.n, [&](std::size_t idx) {
      ++rel.multiplicity[idx];
      rel.assignment[idx] = id;
    });
  }
  return rel;
}

ChoiceRelation choice_relation(const RoutedGraph& g, int num_threads) {
  ChoiceRelation rel = make_relation_shell(g);
  const auto strides = component_strides(rel.n);
  const int n_assign = static_cast<int>(rel.allowed.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(num_threads)
#endif
  for (int id = 0; id < n_assign; ++id) {
    const auto pins = assignment_pins(rel.allowed[id]);
    for_each_compatible(pins, strides, rel.n, [&](std::size_t idx) {
#ifdef _OPENMP
#pragma omp atomic
#endif
      ++rel.multiplicity[idx];
      rel.assignment[idx] = id;
    });
  }
  return rel;
}

namespace {

VerdictReport univocality_report(const ChoiceRelation& rel, std::size_t zero,
                                 std::size_t multi) {
  VerdictReport v;
  v.check = "univocality";
  v.pass = (zero == 0 && multi == 0);
  v.details["inputs"] = rel.space;
  v.details["inputs_with_zero_outputs"] = zero;
  v.details["inputs_with_multiple_outputs"] = multi;
  if (!v.pass) {
    // Smallest offending input, with its full output set rescanned.
    for (std::size_t idx = 0; idx < rel.space; ++idx) {
      if (rel.multiplicity[idx] == 1) continue;
      const ChoiceInput in = decode_input(idx, rel.n);
      nlohmann::ordered_json cex;
      cex["input_index"] = idx;
      cex["output_count"] = rel.multiplicity[idx];
      cex["i_lost"] = nlohmann::ordered_json::array();
      cex["i_ch"] = nlohmann::ordered_json::array();
      for (const auto& c : in.choices) {
        cex["i_lost"].push_back(c.lost_target + 1);
        cex["i_ch"].push_back(c.ch_target + 1);
      }
      v.details["counterexample"] = std::move(cex);
      break;
    }
  }
  return v;
}

}  // namespace

VerdictReport check_univocality_serial(const ChoiceRelation& rel) {
  std::size_t zero = 0, multi = 0;
  for (std::size_t idx = 0; idx < rel.space; ++idx) {
    if (rel.multiplicity[idx] == 0) ++zero;
    if (rel.multiplicity[idx] > 1) ++multi;
  }
  return univocality_report(rel, zero, multi);
}

VerdictReport check_univocality(const ChoiceRelation& rel, int num_threads) {
  std::size_t zero = 0, multi = 0;
  const auto count = static_cast<std::int64_t>(rel.space);
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : zero, multi) num_threads(num_threads)
#endif
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (rel.multiplicity[idx] == 0) ++zero;
    if (rel.multiplicity[idx] > 1) ++multi;
  }
  return univocality_report(rel, zero, multi);
}

namespace {

// Class membership predicates over the decoded digit vector. Written
// against raw digits so the exhaustive sweep does not allocate.
struct InputView {
  const int* digits;
  int n, t;

  int lost_target(int q) const { return unrank_party(q, digits[2 * q]); }
  int ch_target(int q) const { return unrank_party(q, digits[2 * q + 1]); }

  int pointers_at(int q) const {
    int c = 0;
    for (int k = 0; k < n; ++k)
      if (k != q && lost_target(k) == q) ++c;
    return c;
  }

  bool in_lost() const {
    for (int q = 0; q < n; ++q)
      if (pointers_at(q) >= t) return false;
    return true;
  }
  bool in_chancellor(int q) const {
    return pointers_at(q) == t && lost_target(ch_target(q)) == q;
  }
  bool in_chancellor_president(int q, int qp) const {
    if (q == qp || ch_target(q) != qp) return false;
    const int excl = pointers_at(q) - (lost_target(qp) == q ? 1 : 0);
    return excl >= t;
  }
};

}  // namespace

Scenario classify_input(const ChoiceInput& in, const ModelParams& p) {
  const int n = p.n;
  std::vector<int> digits(2 * n);
  for (int q = 0; q < n; ++q) {
    digits[2 * q] = rank_party(q, in.choices[q].lost_target);
    digits[2 * q + 1] = rank_party(q, in.choices[q].ch_target);
  }
  const InputView view{digits.data(), n, p.threshold};
  for (int q = 0; q < n; ++q) {
    if (view.pointers_at(q) < p.threshold) continue;
    const int qp = view.ch_target(q);
    if (view.in_chancellor_president(q, qp))
      return {ScenarioKind::chancellor_and_president, q, qp};
    return {ScenarioKind::chancellor, q, -1};
  }
  return {ScenarioKind::lost, -1, -1};
}

std::size_t PartitionSweep::chancellor_total() const {
  std::size_t s = 0;
  for (auto c : chancellor) s += c;
  return s;
}

std::size_t PartitionSweep::chancellor_president_total() const {
  std::size_t s = 0;
  for (auto c : chancellor_president) s += c;
  return s;
}

bool PartitionSweep::pass() const {
  return membership_violations == 0 && scenario_mismatches == 0 &&
         projection_mismatches == 0 &&
         lost + chancellor_total() + chancellor_president_total() == total;
}

nlohmann::ordered_json PartitionSweep::to_json() const {
  nlohmann::ordered_json j;
  j["inputs"] = total;
  j["lost"] = lost;
  j["chancellor"] = chancellor_total();
  j["chancellor_president"] = chancellor_president_total();
  j["membership_violations"] = membership_violations;
  j["scenario_mismatches"] = scenario_mismatches;
  j["projection_mismatches"] = projection_mismatches;
  j["pass"] = pass();
  return j;
}

namespace {

void sweep_partition_range(const ChoiceRelation& rel, std::size_t lo,
                           std::size_t hi, PartitionSweep& acc) {
  const int n = rel.n;
  const int t = (n + 1) / 2;
  std::vector<int> digits(2 * n);
  for (std::size_t idx = lo; idx < hi; ++idx) {
    decode_digits(idx, n, digits.data());
    const InputView view{digits.data(), n, t};

    int members = view.in_lost() ? 1 : 0;
    Scenario sc{ScenarioKind::lost, -1, -1};
    if (members) acc.lost++;
    for (int q = 0; q < n; ++q) {
      if (view.in_chancellor(q)) {
        ++members;
        sc = {ScenarioKind::chancellor, q, -1};
        acc.chancellor[q]++;
      }
      for (int qp = 0; qp < n; ++qp) {
        if (qp == q) continue;
        if (view.in_chancellor_president(q, qp)) {
          ++members;
          sc = {ScenarioKind::chancellor_and_president, q, qp};
          acc.chancellor_president[q * n + qp]++;
        }
      }
    }
    if (members != 1) {
      acc.membership_violations++;
      continue;
    }

    // Agreement between the class and the relation's unique output.
    if (rel.multiplicity[idx] != 1) {
      acc.scenario_mismatches++;
      continue;
    }
    const int id = rel.assignment[idx];
    bool ok = true;
    switch (sc.kind) {
      case ScenarioKind::lost:
        for (int q = 0; q < n && ok; ++q)
          ok = rel.status(id, q) == PartyStatus::lost;
        break;
      case ScenarioKind::chancellor:
        ok = rel.status(id, sc.chancellor) == PartyStatus::chancellor;
        for (int q = 0; q < n && ok; ++q)
          ok = rel.status(id, q) != PartyStatus::president;
        break;
      case ScenarioKind::chancellor_and_president:
        ok = rel.status(id, sc.chancellor) == PartyStatus::chancellor;
        for (int q = 0; q < n && ok; ++q) {
          const bool is_pr = rel.status(id, q) == PartyStatus::president;
          ok = is_pr == (q == sc.president);
        }
        break;
    }
    if (!ok) acc.scenario_mismatches++;

    // Projection agreement: the assignment indicated by z must itself be
    // compatible with the input (its pinned bifurcations match).
    const GlobalAssignment& a = rel.allowed[id];
    bool proj = true;
    for (int q = 0; q < n && proj; ++q) {
      switch (rel.status(id, q)) {
        case PartyStatus::lost:
          proj = a.ch_vote_target(q) == view.lost_target(q);
          break;
        case PartyStatus::chancellor:
          proj = a.pr_vote_target(q) == view.ch_target(q);
          break;
        case PartyStatus::president:
          break;
      }
    }
    if (!proj) acc.projection_mismatches++;
  }
}

PartitionSweep make_sweep_shell(const ChoiceRelation& rel) {
  PartitionSweep s;
  s.total = rel.space;
  s.chancellor.assign(rel.n, 0);
  s.chancellor_president.assign(rel.n * rel.n, 0);
  return s;
}

void merge_sweep(PartitionSweep& into, const PartitionSweep& part) {
  into.lost += part.lost;
  for (std::size_t i = 0; i < into.chancellor.size(); ++i)
    into.chancellor[i] += part.chancellor[i];
  for (std::size_t i = 0; i < into.chancellor_president.size(); ++i)
    into.chancellor_president[i] += part.chancellor_president[i];
  into.membership_violations += part.membership_violations;
  into.scenario_mismatches += part.scenario_mismatches;
  into.projection_mismatches += part.projection_mismatches;
}

}  // namespace

PartitionSweep sweep_partition_serial(const ChoiceRelation& rel) {
  PartitionSweep s = make_sweep_shell(rel);
  sweep_partition_range(rel, 0, rel.space, s);
  return s;
}

PartitionSweep sweep_partition(const ChoiceRelation& rel, int num_threads) {
  PartitionSweep s = make_sweep_shell(rel);
#ifdef _OPENMP
#pragma omp parallel num_threads(num_threads)
  {
    PartitionSweep local = make_sweep_shell(rel);
    const int nt = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const std::size_t chunk = (rel.space + nt - 1) / nt;
    const std::size_t lo = std::min(rel.space, chunk * tid);
    const std::size_t hi = std::min(rel.space, lo + chunk);
    sweep_partition_range(rel, lo, hi, local);
#pragma omp critical
    merge_sweep(s, local);
  }
#else
  (void)num_threads;
  sweep_partition_range(rel, 0, rel.space, s);
#endif
  return s;
}

VerdictReport check_co_univocality(const RoutedGraph& g) {
  VerdictReport v;
  v.check = "co-univocality";
  v.pass = true;
  v.details["reverse_bifurcations"] = g.allowed.size();
  // Each reverse bifurcation choice at F is an allowed full index tuple;
  // it must fix one branch per node. The party branches are fixed by the
  // status bits (and must avoid the undefined (1,1) pair), the station
  // branch by the tuple itself, P and F by their single branches.
  std::size_t undetermined = 0;
  for (const auto& a : g.allowed) {
    for (int q = 0; q < g.params.n; ++q) {
      if (a.l_ch[q] && a.l_pr[q]) {
        ++undetermined;
        if (v.pass) {
          v.pass = false;
          v.details["counterexample_party"] = q + 1;
        }
      }
    }
  }
  v.details["tuples_with_undetermined_branches"] = undetermined;
  return v;
}

std::string BranchNode::name() const {
  switch (kind) {
    case Kind::past:
      return "P";
    case Kind::party_lost:
      return "A" + std::to_string(q + 1) + "_lost";
    case Kind::party_ch:
      return "A" + std::to_string(q + 1) + "_ch";
    case Kind::party_pr:
      return "A" + std::to_string(q + 1) + "_pr";
    case Kind::station:
      return "X_" + std::to_string(z);
    case Kind::future:
      return "F";
  }
  return "?";
}

int branch_layer(const BranchNode& b) {
  switch (b.kind) {
    case BranchNode::Kind::past:
      return 0;
    case BranchNode::Kind::party_lost:
    case BranchNode::Kind::party_ch:
      return 1;
    case BranchNode::Kind::station:
      return 2;
    case BranchNode::Kind::party_pr:
      return 3;
    case BranchNode::Kind::future:
      return 4;
  }
  return -1;
}

int BranchGraph::index_of(const BranchNode& b) const {
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (nodes[i] == b) return i;
  throw std::logic_error("BranchGraph: unknown node");
}

namespace {

struct BranchIndex {
  int n;
  int z_count;
  // layout: [0] past, [1 + 3q + s] party branches, [station_base + z], future
  int station_base() const { return 1 + 3 * n; }
  int future() const { return station_base() + z_count; }
  int total() const { return future() + 1; }
  int party(int q, PartyStatus s) const { return 1 + 3 * q + static_cast<int>(s); }
};

std::vector<BranchNode> make_branch_nodes(const BranchIndex& bi) {
  std::vector<BranchNode> nodes;
  nodes.push_back({BranchNode::Kind::past});
  for (int q = 0; q < bi.n; ++q) {
    nodes.push_back({BranchNode::Kind::party_lost, q});
    nodes.push_back({BranchNode::Kind::party_ch, q});
    nodes.push_back({BranchNode::Kind::party_pr, q});
  }
  for (int z = 0; z < bi.z_count; ++z)
    nodes.push_back({BranchNode::Kind::station, -1, z});
  nodes.push_back({BranchNode::Kind::future});
  return nodes;
}

// Solid arrows: for a routed-graph arrow N -> M and branches b of N and b'
// of M, the branch pair gets a solid arrow when some allowed assignment is
// compatible with both AND the arrow restricted to those assignments
// carries total dimension > 1 (several sector values, or one sector of
// dimension > 1).
void add_solid_edges(const RoutedGraph& g, const ChoiceRelation& rel,
                     const BranchIndex& bi, std::vector<BranchGraph::Edge>& edges) {
  const int n = g.params.n;
  const int z_count = bi.z_count;

  auto occurrence = [&](const BranchNode& b) {
    std::vector<int> ids;
    for (int id = 0; id < z_count; ++id) {
      switch (b.kind) {
        case BranchNode::Kind::past:
        case BranchNode::Kind::future:
          ids.push_back(id);
          break;
        case BranchNode::Kind::party_lost:
          if (rel.status(id, b.q) == PartyStatus::lost) ids.push_back(id);
          break;
        case BranchNode::Kind::party_ch:
          if (rel.status(id, b.q) == PartyStatus::chancellor) ids.push_back(id);
          break;
        case BranchNode::Kind::party_pr:
          if (rel.status(id, b.q) == PartyStatus::president) ids.push_back(id);
          break;
        case BranchNode::Kind::station:
          if (id == b.z) ids.push_back(id);
          break;
      }
    }
    return ids;
  };

  auto is_solid = [&](const Arrow& arrow, const std::vector<int>& compat) {
    if (compat.empty()) return false;
    SectorKey first = arrow_sector_of(rel.allowed[compat[0]], arrow);
    for (std::size_t i = 1; i < compat.size(); ++i)
      if (arrow_sector_of(rel.allowed[compat[i]], arrow) != first)
        return true;  // more than one sector value
    return arrow.sector_dims.at(first) > 1;
  };

  auto branch_nodes_of = [&](const NodeId& node) {
    std::vector<BranchNode> out;
    switch (node.kind) {
      case NodeKind::past:
        out.push_back({BranchNode::Kind::past});
        break;
      case NodeKind::future:
        out.push_back({BranchNode::Kind::future});
        break;
      case NodeKind::party:
        out.push_back({BranchNode::Kind::party_lost, node.q});
        out.push_back({BranchNode::Kind::party_ch, node.q});
        out.push_back({BranchNode::Kind::party_pr, node.q});
        break;
      case NodeKind::station:
        for (int z = 0; z < z_count; ++z)
          out.push_back({BranchNode::Kind::station, -1, z});
        break;
    }
    return out;
  };

  auto node_index = [&](const BranchNode& b) {
    switch (b.kind) {
      case BranchNode::Kind::past:
        return 0;
      case BranchNode::Kind::future:
        return bi.future();
      case BranchNode::Kind::station:
        return bi.station_base() + b.z;
      case BranchNode::Kind::party_lost:
        return bi.party(b.q, PartyStatus::lost);
      case BranchNode::Kind::party_ch:
        return bi.party(b.q, PartyStatus::chancellor);
      case BranchNode::Kind::party_pr:
        return bi.party(b.q, PartyStatus::president);
    }
    return -1;
  };

  for (const auto& arrow : g.arrows) {
    for (const auto& bsrc : branch_nodes_of(arrow.source)) {
      const auto src_ids = occurrence(bsrc);
      for (const auto& bdst : branch_nodes_of(arrow.target)) {
        std::vector<int> compat;
        if (bdst.kind == BranchNode::Kind::station) {
          if (std::binary_search(src_ids.begin(), src_ids.end(), bdst.z))
            compat.push_back(bdst.z);
        } else {
          const auto dst_ids = occurrence(bdst);
          std::set_intersection(src_ids.begin(), src_ids.end(), dst_ids.begin(),
                                dst_ids.end(), std::back_inserter(compat));
        }
        if (is_solid(arrow, compat))
          edges.push_back({node_index(bsrc), node_index(bdst), ArrowColor::solid});
      }
    }
  }
  (void)n;
}

// Green dashed arrows: source branch b owns a bifurcation, and two inputs
// differing only in that bifurcation -- with b occurring under both --
// disagree on whether the target branch occurs.
void green_sweep_range(const ChoiceRelation& rel, const BranchIndex& bi,
                       const std::vector<std::size_t>& strides, std::size_t lo,
                       std::size_t hi, std::vector<std::vector<char>>& mask) {
  const int n = rel.n;
  std::vector<int> digits(2 * n);
  for (std::size_t idx = lo; idx < hi; ++idx) {
    const int a1 = rel.assignment[idx];
    if (a1 < 0 || rel.multiplicity[idx] != 1) continue;
    decode_digits(idx, n, digits.data());
    for (int c = 0; c < 2 * n; ++c) {
      const int q = c / 2;
      const PartyStatus owner_status =
          (c % 2 == 0) ? PartyStatus::lost : PartyStatus::chancellor;
      if (rel.status(a1, q) != owner_status) continue;
      for (int v = digits[c] + 1; v < n - 1; ++v) {
        const std::size_t idx2 =
            idx + static_cast<std::size_t>(v - digits[c]) * strides[c];
        const int a2 = rel.assignment[idx2];
        if (a2 < 0 || rel.multiplicity[idx2] != 1) continue;
        if (rel.status(a2, q) != owner_status) continue;
        if (a1 == a2) continue;
        auto& row = mask[c];
        row[bi.station_base() + a1] = 1;
        row[bi.station_base() + a2] = 1;
        for (int r = 0; r < n; ++r) {
          const PartyStatus s1 = rel.status(a1, r), s2 = rel.status(a2, r);
          if (s1 != s2) {
            row[bi.party(r, s1)] = 1;
            row[bi.party(r, s2)] = 1;
          }
        }
      }
    }
  }
}

void add_green_edges(const ChoiceRelation& rel, const BranchIndex& bi,
                     int num_threads, std::vector<BranchGraph::Edge>& edges) {
  const int n = rel.n;
  const auto strides = component_strides(n);
  std::vector<std::vector<char>> mask(2 * n,
                                      std::vector<char>(bi.total(), 0));
#ifdef _OPENMP
#pragma omp parallel num_threads(num_threads)
  {
    std::vector<std::vector<char>> local(2 * n,
                                         std::vector<char>(bi.total(), 0));
    const int nt = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const std::size_t chunk = (rel.space + nt - 1) / nt;
    const std::size_t lo = std::min(rel.space, chunk * tid);
    const std::size_t hi = std::min(rel.space, lo + chunk);
    green_sweep_range(rel, bi, strides, lo, hi, local);
#pragma omp critical
    for (int c = 0; c < 2 * n; ++c)
      for (int i = 0; i < bi.total(); ++i)
        if (local[c][i]) mask[c][i] = 1;
  }
#else
  (void)num_threads;
  green_sweep_range(rel, bi, strides, 0, rel.space, mask);
#endif
  for (int c = 0; c < 2 * n; ++c) {
    const int q = c / 2;
    const int src = bi.party(
        q, c % 2 == 0 ? PartyStatus::lost : PartyStatus::chancellor);
    for (int i = 0; i < bi.total(); ++i)
      if (mask[c][i]) edges.push_back({src, i, ArrowColor::green_dashed});
  }
}

// Red dashed arrows: a branch whose occurrence depends on the reverse
// bifurcation choice at F points to the F branch. P's single branch and F
// itself occur always and get none.
void add_red_edges(const ChoiceRelation& rel, const BranchIndex& bi,
                   std::vector<BranchGraph::Edge>& edges) {
  const int z_count = bi.z_count;
  for (int q = 0; q < rel.n; ++q) {
    int occ[3] = {0, 0, 0};
    for (int id = 0; id < z_count; ++id)
      ++occ[static_cast<int>(rel.status(id, q))];
    for (int s = 0; s < 3; ++s)
      if (occ[s] > 0 && occ[s] < z_count)
        edges.push_back({bi.party(q, static_cast<PartyStatus>(s)), bi.future(),
                         ArrowColor::red_dashed});
  }
  if (z_count > 1)
    for (int z = 0; z < z_count; ++z)
      edges.push_back({bi.station_base() + z, bi.future(), ArrowColor::red_dashed});
}

BranchGraph assemble_branch_graph(const RoutedGraph& g, const ChoiceRelation& rel,
                                  int num_threads) {
  const BranchIndex bi{g.params.n, static_cast<int>(g.allowed.size())};
  BranchGraph bg;
  bg.nodes = make_branch_nodes(bi);
  add_solid_edges(g, rel, bi, bg.edges);
  add_green_edges(rel, bi, num_threads, bg.edges);
  add_red_edges(rel, bi, bg.edges);
  return bg;
}

}  // namespace

BranchGraph build_branch_graph(const RoutedGraph& g, const ChoiceRelation& rel,
                               int num_threads) {
  return assemble_branch_graph(g, rel, num_threads);
}

BranchGraph build_branch_graph_serial(const RoutedGraph& g,
                                      const ChoiceRelation& rel) {
  const BranchIndex bi{g.params.n, static_cast<int>(g.allowed.size())};
  BranchGraph bg;
  bg.nodes = make_branch_nodes(bi);
  add_solid_edges(g, rel, bi, bg.edges);
  const auto strides = component_strides(rel.n);
  std::vector<std::vector<char>> mask(2 * rel.n,
                                      std::vector<char>(bi.total(), 0));
  green_sweep_range(rel, bi, strides, 0, rel.space, mask);
  for (int c = 0; c < 2 * rel.n; ++c) {
    const int q = c / 2;
    const int src = bi.party(
        q, c % 2 == 0 ? PartyStatus::lost : PartyStatus::chancellor);
    for (int i = 0; i < bi.total(); ++i)
      if (mask[c][i]) bg.edges.push_back({src, i, ArrowColor::green_dashed});
  }
  add_red_edges(rel, bi, bg.edges);
  return bg;
}

std::vector<int> strongly_connected_components(
    int n_nodes, const std::vector<BranchGraph::Edge>& edges) {
  std::vector<std::vector<int>> adj(n_nodes);
  for (const auto& e : edges) adj[e.src].push_back(e.dst);

  std::vector<int> comp(n_nodes, -1), low(n_nodes, 0), disc(n_nodes, -1);
  std::vector<int> stack;
  std::vector<char> on_stack(n_nodes, 0);
  int timer = 0, n_comp = 0;

  // iterative Tarjan
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n_nodes; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child == 0) {
        disc[v] = low[v] = timer++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (child < adj[v].size()) {
        const int w = adj[v][child++];
        if (disc[w] == -1)
          call.push_back({w, 0});
        else if (on_stack[w])
          low[v] = std::min(low[v], disc[w]);
      } else {
        if (low[v] == disc[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = n_comp;
            if (w == v) break;
          }
          ++n_comp;
        }
        const int finished = v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[finished]);
      }
    }
  }
  return comp;
}

VerdictReport check_weak_loops(const BranchGraph& bg) {
  VerdictReport v;
  v.check = "weak-loops";
  v.pass = true;
  const int n_nodes = static_cast<int>(bg.nodes.size());
  const auto comp = strongly_connected_components(n_nodes, bg.edges);

  std::size_t n_solid = 0, n_green = 0, n_red = 0, cyclic_green = 0;
  for (const auto& e : bg.edges) {
    switch (e.color) {
      case ArrowColor::solid:
        ++n_solid;
        break;
      case ArrowColor::green_dashed:
        ++n_green;
        break;
      case ArrowColor::red_dashed:
        ++n_red;
        break;
    }
    if (comp[e.src] != comp[e.dst]) continue;
    // edge inside a strongly connected component: part of some cycle
    if (e.color == ArrowColor::green_dashed) {
      ++cyclic_green;
      continue;
    }
    if (v.pass) {
      v.pass = false;
      // reconstruct a cycle through the offending edge: path dst -> src
      // inside the component, then the edge closes it
      std::vector<int> prev(n_nodes, -1);
      std::queue<int> bfs;
      bfs.push(e.dst);
      prev[e.dst] = e.dst;
      while (!bfs.empty()) {
        const int u = bfs.front();
        bfs.pop();
        if (u == e.src) break;
        for (const auto& f : bg.edges) {
          if (f.src != u || comp[f.dst] != comp[e.src] || prev[f.dst] != -1)
            continue;
          prev[f.dst] = u;
          bfs.push(f.dst);
        }
      }
      std::vector<std::string> cycle;
      for (int u = e.src; u != e.dst; u = prev[u]) cycle.push_back(bg.nodes[u].name());
      cycle.push_back(bg.nodes[e.dst].name());
      std::reverse(cycle.begin(), cycle.end());
      v.details["offending_cycle"] = cycle;
      v.details["offending_edge_color"] =
          e.color == ArrowColor::solid ? "solid" : "red-dashed";
    }
  }

  // layer discipline
  std::size_t layer_violations = 0;
  for (const auto& e : bg.edges) {
    const int ls = branch_layer(bg.nodes[e.src]);
    const int ld = branch_layer(bg.nodes[e.dst]);
    const bool ok = e.color == ArrowColor::green_dashed ? ls <= ld : ls < ld;
    if (!ok) ++layer_violations;
  }
  if (layer_violations > 0) v.pass = false;

  v.details["solid_edges"] = n_solid;
  v.details["green_dashed_edges"] = n_green;
  v.details["red_dashed_edges"] = n_red;
  v.details["green_edges_on_cycles"] = cyclic_green;
  v.details["layer_violations"] = layer_violations;
  return v;
}

}  // namespace causalvote
