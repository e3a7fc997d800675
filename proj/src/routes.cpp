#include "causalvote/routes.hpp"

#include <algorithm>
#include <stdexcept>

namespace causalvote {

std::optional<PartyRouteResult> PartyAugRoute::apply(
    StatusBits status, const BifurcationChoice& choice) const {
  if (choice.lost_target == q_ || choice.ch_target == q_ ||
      choice.lost_target < 0 || choice.lost_target >= n_ ||
      choice.ch_target < 0 || choice.ch_target >= n_)
    throw std::invalid_argument("PartyAugRoute: bifurcation target out of range");

  PartyRouteResult r;
  r.votes_ch.assign(n_, 0);
  r.votes_pr.assign(n_, 0);
  if (status == StatusBits{0, 0}) {
    r.status_echo = {0, 0};
    r.votes_ch[choice.lost_target] = 1;
    r.branch = {1, 0, 0};
  } else if (status == StatusBits{1, 0}) {
    r.status_echo = {1, 0};
    r.votes_pr[choice.ch_target] = 1;
    r.branch = {0, 1, 0};
  } else if (status == StatusBits{0, 1}) {
    // The president casts no vote and the branch label is echoed as-is.
    r.status_echo = {0, 1};
    r.branch = {0, 0, 1};
  } else {
    return std::nullopt;  // (1,1) is outside the route's domain
  }
  return r;
}

PartyAugRoute party_aug_route(int q, const ModelParams& p) {
  if (q < 0 || q >= p.n) throw std::invalid_argument("party_aug_route: bad party");
  return PartyAugRoute(q, p.n);
}

StationAugRoute::StationAugRoute(std::vector<GlobalAssignment> allowed)
    : allowed_(std::move(allowed)) {
  for (int i = 0; i < static_cast<int>(allowed_.size()); ++i)
    index_.emplace(allowed_[i], i);
}

std::optional<StationAugRoute::Result> StationAugRoute::apply(
    const GlobalAssignment& input) const {
  auto it = index_.find(input);
  if (it == index_.end()) return std::nullopt;
  return Result{&allowed_[it->second], it->second};
}

StationAugRoute station_aug_route(const std::vector<GlobalAssignment>& allowed) {
  if (allowed.empty())
    throw std::invalid_argument("station_aug_route: empty branch set");
  return StationAugRoute(allowed);
}

std::optional<int> TerminalRoutes::apply_future(const GlobalAssignment& input) const {
  if (std::find(allowed->begin(), allowed->end(), input) == allowed->end())
    return std::nullopt;
  return 0;  // the unique branch
}

TerminalRoutes terminal_routes(const std::vector<GlobalAssignment>& allowed) {
  return TerminalRoutes{&allowed};
}

}  // namespace causalvote
