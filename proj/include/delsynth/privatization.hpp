#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delsynth/goal.hpp"
#include "delsynth/model.hpp"

namespace delsynth {

/// Out-tree mirroring the nesting of belief operators in a goal formula;
/// the (unlabeled) root's children carry the outermost operators' agents.
struct ModalTreeNode {
  AgentId label;
  std::vector<ModalTreeNode> children;
};

struct ModalSyntacticTree {
  std::vector<ModalTreeNode> roots;  // children of the unlabeled root

  std::size_t node_count() const;  // including the root
};

ModalSyntacticTree syntactic_tree(const GoalFormula& goal);

/// Agent sequences of all root-anchored paths of the modal syntactic
/// tree, including the empty one.
std::set<std::vector<AgentId>> root_paths(const GoalFormula& goal);

/// Worlds reachable from `from` along the fixed agent sequence (the empty
/// sequence yields {from}). An empty result is valid.
std::set<std::string> cluster(const Frame& frame, const std::string& from,
                              const std::vector<AgentId>& seq);

/// A walk: nodes.size() == agents.size() + 1, consecutive nodes joined by
/// edges of the recorded agents.
struct Walk {
  std::vector<std::string> nodes;
  std::vector<AgentId> agents;
};

/// All agent-alternating walks (no two successive edges by the same
/// agent) from `from` with at most max_len edges, including the empty
/// walk. Intended for small frames: the number of walks can grow
/// exponentially with max_len on dense frames.
std::vector<Walk> root_walks_nsr(const Frame& frame, const std::string& from,
                                 std::size_t max_len);

/// Agent sequences of the alternating walks from `from` that end in
/// `target`, up to max_len edges. Enumerates label sequences (not raw
/// walks), so dense frames stay manageable for moderate bounds.
std::set<std::vector<AgentId>> walk_accessibility(const Frame& frame,
                                                  const std::string& from,
                                                  const std::string& target,
                                                  std::size_t max_len);

struct PrivatizationWitness {
  std::vector<AgentId> root_path;
  bool empty_cluster = false;
  std::optional<std::vector<AgentId>> clashing_seq;
  std::optional<std::string> shared_node;
};

struct PrivatizationResult {
  bool holds = false;
  std::optional<PrivatizationWitness> witness;
};

/// A pointed frame is privatized w.r.t. a goal formula when for every
/// root path of the goal's modal syntactic tree the corresponding cluster
/// is non-empty and disjoint from the cluster of every *other*
/// alternating agent sequence; weakly privatized drops the non-emptiness.
///
/// The quantification over arbitrarily long sequences is cut off at
/// max_len; the default bound below is stable on the frames this library
/// targets (making a too-long alternating walk shorter by excising a
/// repeated (node, last-agent) state keeps it alternating, so fresh
/// clashes need no more steps than there are such states; tests compare
/// bounds empirically). max_len must be at least the longest root path.
///
/// Both checks run two independently implemented routes and compare:
/// cluster disjointness checked on the deterministic (frontier set, last
/// agent) graph, and the per-world count of distinct walk-accessibility
/// sequences, which must be exactly one for cluster members. A
/// disagreement throws std::logic_error.
PrivatizationResult is_privatized(const Frame& frame, const GoalFormula& goal,
                                  std::size_t max_len);
PrivatizationResult is_weakly_privatized(const Frame& frame,
                                         const GoalFormula& goal,
                                         std::size_t max_len);

/// The individual routes, exposed for cross-validation.
PrivatizationResult privatized_by_clusters(const Frame& frame,
                                           const GoalFormula& goal,
                                           std::size_t max_len,
                                           bool require_nonempty);
PrivatizationResult privatized_by_walks(const Frame& frame,
                                        const GoalFormula& goal,
                                        std::size_t max_len,
                                        bool require_nonempty);

/// Default sequence-length cutoff for a frame.
std::size_t default_seq_bound(const Frame& frame);

/// For every sampled agent sequence and every world (x, e) in the pointed
/// update's cluster, checks that e lies in the action model's cluster and
/// x in the original model's cluster for the same sequence.
bool check_cluster_propagation(const KripkeModel& m, const ActionModel& u,
                               const std::vector<std::vector<AgentId>>& seqs);

}  // namespace delsynth
