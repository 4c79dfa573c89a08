#include "delsynth/privatization.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "delsynth/update.hpp"

namespace delsynth {

namespace {

std::vector<ModalTreeNode> tree_children(const Formula& goal_conjunction) {
  std::vector<ModalTreeNode> out;
  for (const Formula& belief : conjuncts(goal_conjunction)) {
    if (is_propositional(belief)) continue;
    ModalTreeNode node;
    node.label = belief.agent();
    std::vector<Formula> modal;
    for (const Formula& part : conjuncts(belief.body()))
      if (!is_propositional(part)) modal.push_back(part);
    if (!modal.empty()) node.children = tree_children(conj_all(modal));
    out.push_back(std::move(node));
  }
  return out;
}

std::size_t count_nodes(const std::vector<ModalTreeNode>& nodes) {
  std::size_t n = 0;
  for (const ModalTreeNode& node : nodes) n += 1 + count_nodes(node.children);
  return n;
}

void collect_paths(const std::vector<ModalTreeNode>& nodes,
                   std::vector<AgentId>& prefix,
                   std::set<std::vector<AgentId>>& out) {
  for (const ModalTreeNode& node : nodes) {
    prefix.push_back(node.label);
    out.insert(prefix);
    collect_paths(node.children, prefix, out);
    prefix.pop_back();
  }
}

std::set<std::string> step(const Frame& frame,
                           const std::set<std::string>& frontier,
                           const AgentId& agent) {
  std::set<std::string> next;
  for (const std::string& node : frontier)
    for (const std::string& succ : frame.successors(agent, node))
      next.insert(succ);
  return next;
}

bool is_nsr(const std::vector<AgentId>& seq) {
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return false;
  return true;
}

void require_node(const Frame& frame, const std::string& node) {
  if (std::find(frame.nodes.begin(), frame.nodes.end(), node) ==
      frame.nodes.end())
    throw ModelError("unknown node: " + node);
}

}  // namespace

std::size_t ModalSyntacticTree::node_count() const {
  return 1 + count_nodes(roots);
}

ModalSyntacticTree syntactic_tree(const GoalFormula& goal) {
  return ModalSyntacticTree{tree_children(goal.formula())};
}

std::set<std::vector<AgentId>> root_paths(const GoalFormula& goal) {
  std::set<std::vector<AgentId>> out;
  out.insert(std::vector<AgentId>{});
  std::vector<AgentId> prefix;
  collect_paths(syntactic_tree(goal).roots, prefix, out);
  return out;
}

std::set<std::string> cluster(const Frame& frame, const std::string& from,
                              const std::vector<AgentId>& seq) {
  require_node(frame, from);
  std::set<std::string> frontier{from};
  for (const AgentId& agent : seq) {
    frontier = step(frame, frontier, agent);
    if (frontier.empty()) break;
  }
  return frontier;
}

std::vector<Walk> root_walks_nsr(const Frame& frame, const std::string& from,
                                 std::size_t max_len) {
  require_node(frame, from);
  std::vector<Walk> out;
  Walk current;
  current.nodes.push_back(from);
  auto extend = [&](auto&& self) -> void {
    out.push_back(current);
    if (current.agents.size() == max_len) return;
    for (const AgentId& agent : frame.agents) {
      if (!current.agents.empty() && current.agents.back() == agent) continue;
      for (const std::string& succ :
           frame.successors(agent, current.nodes.back())) {
        current.nodes.push_back(succ);
        current.agents.push_back(agent);
        self(self);
        current.nodes.pop_back();
        current.agents.pop_back();
      }
    }
  };
  extend(extend);
  return out;
}

namespace {

// Depth-first enumeration of all distinct alternating label sequences up
// to max_len, carrying the frontier of worlds each sequence reaches.
// Empty frontiers are pruned: their extensions stay empty.
template <typename Visit>
void for_each_sequence(const Frame& frame, const std::string& from,
                       std::size_t max_len, Visit&& visit) {
  std::vector<AgentId> seq;
  std::set<std::string> frontier{from};
  auto recurse = [&](auto&& self, const std::set<std::string>& current) -> void {
    visit(static_cast<const std::vector<AgentId>&>(seq), current);
    if (seq.size() == max_len) return;
    for (const AgentId& agent : frame.agents) {
      if (!seq.empty() && seq.back() == agent) continue;
      std::set<std::string> next = step(frame, current, agent);
      if (next.empty()) continue;
      seq.push_back(agent);
      self(self, next);
      seq.pop_back();
    }
  };
  recurse(recurse, frontier);
}

}  // namespace

std::set<std::vector<AgentId>> walk_accessibility(const Frame& frame,
                                                  const std::string& from,
                                                  const std::string& target,
                                                  std::size_t max_len) {
  require_node(frame, from);
  std::set<std::vector<AgentId>> out;
  for_each_sequence(frame, from, max_len,
                    [&](const std::vector<AgentId>& seq,
                        const std::set<std::string>& frontier) {
                      if (frontier.count(target)) out.insert(seq);
                    });
  return out;
}

namespace {

struct RootPathInfo {
  std::vector<AgentId> seq;
  std::set<std::string> members;
  bool nsr = false;
};

std::vector<RootPathInfo> root_path_clusters(const Frame& frame,
                                             const GoalFormula& goal,
                                             std::size_t max_len) {
  std::vector<RootPathInfo> out;
  for (const auto& seq : root_paths(goal)) {
    if (seq.size() > max_len)
      throw std::invalid_argument(
          "sequence bound is smaller than the longest root path");
    RootPathInfo info;
    info.seq = seq;
    info.members = cluster(frame, frame.point, seq);
    info.nsr = is_nsr(seq);
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace

PrivatizationResult privatized_by_clusters(const Frame& frame,
                                           const GoalFormula& goal,
                                           std::size_t max_len,
                                           bool require_nonempty) {
  auto paths = root_path_clusters(frame, goal, max_len);
  for (const RootPathInfo& info : paths) {
    if (require_nonempty && info.members.empty())
      return {false, PrivatizationWitness{info.seq, true, {}, {}}};
  }

  // Level-synchronized walk over the deterministic (frontier, last agent)
  // graph. Each alternating sequence maps to exactly one state per depth,
  // so a state seen with multiplicity >= 2, or any overlapping state other
  // than a root path's own, betrays a second sequence reaching the
  // cluster. Counts are capped at 2 and carry up to two representative
  // sequences for the violation witness.
  struct StateInfo {
    int count = 0;
    std::vector<std::vector<AgentId>> reps;  // distinct, at most two
  };
  auto offer = [](StateInfo& slot, std::vector<AgentId> seq) {
    for (const auto& r : slot.reps)
      if (r == seq) return;
    if (slot.reps.size() < 2) slot.reps.push_back(std::move(seq));
  };
  using StateKey = std::pair<std::set<std::string>, AgentId>;
  std::map<StateKey, StateInfo> level;
  {
    StateInfo start;
    start.count = 1;
    start.reps.push_back({});
    level.emplace(StateKey{std::set<std::string>{frame.point}, AgentId{}},
                  std::move(start));
  }

  for (std::size_t depth = 0; depth <= max_len; ++depth) {
    for (const auto& [key, info] : level) {
      const auto& [frontier, last] = key;
      for (const RootPathInfo& path : paths) {
        if (path.members.empty()) continue;
        bool overlaps = std::any_of(
            frontier.begin(), frontier.end(),
            [&](const std::string& n) { return path.members.count(n) > 0; });
        if (!overlaps) continue;
        bool is_star = path.nsr && depth == path.seq.size() &&
                       frontier == path.members &&
                       (path.seq.empty() ? last.empty()
                                         : last == path.seq.back());
        if (is_star && info.count < 2) continue;
        std::vector<AgentId> clash;
        for (const auto& r : info.reps)
          if (r != path.seq) {
            clash = r;
            break;
          }
        std::string shared;
        for (const std::string& n : frontier)
          if (path.members.count(n)) {
            shared = n;
            break;
          }
        return {false,
                PrivatizationWitness{path.seq, false, clash, shared}};
      }
    }
    if (depth == max_len) break;
    std::map<StateKey, StateInfo> next_level;
    for (const auto& [key, info] : level) {
      const auto& [frontier, last] = key;
      for (const AgentId& agent : frame.agents) {
        if (!last.empty() && last == agent) continue;
        std::set<std::string> next = step(frame, frontier, agent);
        if (next.empty()) continue;
        StateInfo& slot = next_level[StateKey{std::move(next), agent}];
        slot.count = std::min(2, slot.count + info.count);
        for (const auto& r : info.reps) {
          std::vector<AgentId> seq = r;
          seq.push_back(agent);
          offer(slot, std::move(seq));
        }
      }
    }
    level = std::move(next_level);
  }
  return {true, {}};
}

PrivatizationResult privatized_by_walks(const Frame& frame,
                                        const GoalFormula& goal,
                                        std::size_t max_len,
                                        bool require_nonempty) {
  auto paths = root_path_clusters(frame, goal, max_len);
  for (const RootPathInfo& info : paths) {
    if (!info.nsr)
      throw std::invalid_argument(
          "walk-accessibility route requires alternating root paths "
          "(normal goal formulas)");
    if (require_nonempty && info.members.empty())
      return {false, PrivatizationWitness{info.seq, true, {}, {}}};
  }

  // Distinct accessibility sequences per node, two are enough to refute.
  std::map<std::string, std::vector<std::vector<AgentId>>> acc;
  for_each_sequence(frame, frame.point, max_len,
                    [&](const std::vector<AgentId>& seq,
                        const std::set<std::string>& frontier) {
                      for (const std::string& node : frontier) {
                        auto& seqs = acc[node];
                        if (seqs.size() < 2) seqs.push_back(seq);
                      }
                    });
  for (const RootPathInfo& path : paths) {
    for (const std::string& member : path.members) {
      const auto& seqs = acc.at(member);
      if (seqs.size() == 1 && seqs.front() == path.seq) continue;
      std::vector<AgentId> clash =
          seqs.front() == path.seq ? seqs.back() : seqs.front();
      return {false, PrivatizationWitness{path.seq, false, clash, member}};
    }
  }
  return {true, {}};
}

namespace {

// Largest bound whose alternating-sequence count the enumerating walk
// route can afford; the cluster route works on frontier-set states and
// handles larger bounds.
std::size_t affordable_walk_bound(std::size_t agent_count,
                                  std::size_t longest_root_path) {
  constexpr double kBudget = 40000.0;
  if (agent_count < 2) return std::max<std::size_t>(longest_root_path, 8);
  double total = 1.0;
  std::size_t len = 0;
  double layer = static_cast<double>(agent_count);
  while (total + layer <= kBudget) {
    total += layer;
    layer *= static_cast<double>(agent_count - 1);
    ++len;
  }
  return std::max(len, longest_root_path);
}

PrivatizationResult cross_checked(const Frame& frame, const GoalFormula& goal,
                                  std::size_t max_len, bool require_nonempty) {
  PrivatizationResult by_clusters =
      privatized_by_clusters(frame, goal, max_len, require_nonempty);
  bool alternating = true;
  std::size_t longest = 0;
  for (const auto& seq : root_paths(goal)) {
    if (!is_nsr(seq)) alternating = false;
    longest = std::max(longest, seq.size());
  }
  if (alternating) {
    // Compare the two routes at a bound both can evaluate.
    std::size_t shared = std::min(
        max_len, affordable_walk_bound(frame.agents.size(), longest));
    PrivatizationResult clusters_ref =
        shared == max_len
            ? by_clusters
            : privatized_by_clusters(frame, goal, shared, require_nonempty);
    PrivatizationResult by_walks =
        privatized_by_walks(frame, goal, shared, require_nonempty);
    if (by_walks.holds != clusters_ref.holds)
      throw std::logic_error(
          "privatization routes disagree; this is a bug in one of them");
  }
  return by_clusters;
}

}  // namespace

PrivatizationResult is_privatized(const Frame& frame, const GoalFormula& goal,
                                  std::size_t max_len) {
  return cross_checked(frame, goal, max_len, true);
}

PrivatizationResult is_weakly_privatized(const Frame& frame,
                                         const GoalFormula& goal,
                                         std::size_t max_len) {
  return cross_checked(frame, goal, max_len, false);
}

std::size_t default_seq_bound(const Frame& frame) {
  return frame.nodes.size() + 2;
}

bool check_cluster_propagation(const KripkeModel& m, const ActionModel& u,
                               const std::vector<std::vector<AgentId>>& seqs) {
  UpdateResult updated = pointed_update(m, u);
  Frame fm = frame_of(m);
  Frame fu = frame_of(u);
  Frame fr = frame_of(updated.model);
  for (const auto& seq : seqs) {
    auto model_cluster = cluster(fm, m.point, seq);
    auto action_cluster = cluster(fu, u.point, seq);
    auto result_cluster = cluster(fr, updated.model.point, seq);
    for (const std::string& id : result_cluster) {
      const auto& [world, event] = updated.origin.at(id);
      if (!model_cluster.count(world) || !action_cluster.count(event))
        return false;
    }
  }
  return true;
}

}  // namespace delsynth
