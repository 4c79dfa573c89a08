#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delsynth/model.hpp"

namespace delsynth {

/// A witness relation between two structures: every contained pair agrees
/// on atoms (Kripke models) or preconditions (action models) and satisfies
/// the forth/back closure conditions.
struct BisimRelation {
  enum class Kind { Full, Group };
  Kind kind = Kind::Full;
  std::set<AgentId> group;  // meaningful for Kind::Group
  std::set<std::pair<std::string, std::string>> pairs;

  bool relates(const std::string& left, const std::string& right) const {
    return pairs.count({left, right}) > 0;
  }
};

/// How event preconditions are compared by the Pre clause.
/// Syntactic: structural equality of desugared formulas (the default).
/// Semantic: propositional preconditions compare by truth table; any
/// non-propositional precondition falls back to syntactic comparison.
enum class PreComparison { Syntactic, Semantic };

/// Greatest bisimulation between two Kripke models, computed by
/// signature-based partition refinement on the disjoint union. Atom
/// agreement is judged over the union of both vocabularies. Requires
/// equal declared agent sets.
BisimRelation max_bisimulation(const KripkeModel& a, const KripkeModel& b);

/// Greatest bisimulation between two action models; the Pre clause
/// compares preconditions per `cmp`.
BisimRelation max_bisimulation(const ActionModel& a, const ActionModel& b,
                               PreComparison cmp = PreComparison::Syntactic);

/// True iff the greatest bisimulation relates the two designated points.
bool bisimilar(const KripkeModel& a, const std::string& pa,
               const KripkeModel& b, const std::string& pb);
bool bisimilar(const ActionModel& a, const std::string& pa,
               const ActionModel& b, const std::string& pb,
               PreComparison cmp = PreComparison::Syntactic);

/// Group bisimilarity: for every agent in `group`, each successor of one
/// point is matched by a successor of the other that is fully bisimilar
/// (and vice versa). No condition is imposed at the points themselves.
bool g_bisimilar(const KripkeModel& a, const std::string& pa,
                 const KripkeModel& b, const std::string& pb,
                 const std::set<AgentId>& group);
bool g_bisimilar(const ActionModel& a, const std::string& pa,
                 const ActionModel& b, const std::string& pb,
                 const std::set<AgentId>& group,
                 PreComparison cmp = PreComparison::Syntactic);

struct EquivalenceVerdict {
  bool equivalent;
  std::string method;
};

/// Modal equivalence of two pointed finite models, decided through
/// bisimilarity: on finite (hence image-finite) models, bisimilarity and
/// agreement on all modal formulas coincide, so the decision is sound and
/// complete. With a group, agreement on all B_a-prefixed formulas for
/// agents a in the group is decided through group bisimilarity.
EquivalenceVerdict modally_equivalent(
    const KripkeModel& a, const std::string& pa, const KripkeModel& b,
    const std::string& pb,
    const std::optional<std::set<AgentId>>& group = std::nullopt);

struct IsomorphismResult {
  bool isomorphic = false;
  std::map<std::string, std::string> witness;  // left id -> right id
};

/// Point-preserving isomorphism of pointed models: a bijection preserving
/// the point, every relation in both directions and the valuation
/// (respectively the preconditions, compared syntactically). The search
/// refines node colors first and then backtracks within color classes.
IsomorphismResult isomorphic_pointed(const KripkeModel& a,
                                     const std::string& pa,
                                     const KripkeModel& b,
                                     const std::string& pb);
IsomorphismResult isomorphic_pointed(const ActionModel& a,
                                     const std::string& pa,
                                     const ActionModel& b,
                                     const std::string& pb);

}  // namespace delsynth
