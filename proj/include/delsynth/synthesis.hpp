#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delsynth/bisim.hpp"
#include "delsynth/goal.hpp"
#include "delsynth/model.hpp"

namespace delsynth {

/// Action model produced from a normal goal formula, together with its
/// structural bookkeeping. Event ids are decimal integers: 0 is the root
/// (the actual event, with no incoming edges), -1 the sink (status quo,
/// only reflexive loops), and the positive ids carry the goal's belief
/// operators, one per operator, each guarded by the propositional part of
/// its body (top when there is none).
///
/// Every event has exactly one outgoing edge per agent; `successor_map`
/// caches that function.
struct SynthesizedModel {
  ActionModel action;
  int root = 0;
  int sink = -1;
  std::set<int> goal_events;  // the positive ids
  Formula source;             // the normal goal formula
  std::map<int, Formula> event_formula;  // goal event -> its belief subformula
  std::map<AgentId, std::map<std::string, std::string>> successor_map;
};

/// Builds the action model for a normal goal formula over the given agent
/// set (which must include every agent occurring in the formula). Event
/// numbering follows the construction order: within a belief operator the
/// nested goal is built first, and the right conjunct of a conjunction is
/// built before the left, so ids increase from the innermost rightmost
/// operator outwards. Throws std::invalid_argument on a non-normal goal
/// or an insufficient agent set.
SynthesizedModel synthesize(const GoalFormula& goal,
                            const std::vector<AgentId>& agents);

/// The unique successor of `event` for `agent`.
const std::string& successor(const SynthesizedModel& u,
                             const std::string& event, const AgentId& agent);

/// Folds `successor` from the root along the agent sequence.
std::vector<std::string> event_sequence_for(
    const SynthesizedModel& u, const std::vector<AgentId>& modal_seq);

/// Per modal-operator sequence of the analyzed formula: the induced event
/// sequence and, when some event on it has a non-trivial precondition,
/// the first such event with its precondition.
struct TopShapeWitness {
  std::vector<AgentId> modal_seq;
  std::vector<std::string> event_seq;
  std::optional<std::pair<std::string, Formula>> blocking;
};

struct TopShapeReport {
  Formula theta;
  bool independent = false;
  std::vector<TopShapeWitness> witnesses;
};

/// A formula is independent of the goal when every one of its modal
/// prefix sequences (including the empty one) traverses only events whose
/// precondition is literally top. Truth of independent formulas is
/// unaffected by updating with u.
TopShapeReport analyze_independence(const Formula& theta,
                                    const SynthesizedModel& u);

struct IdempotenceCheck {
  bool idempotent = false;
  std::map<std::string, std::string> witness;  // once-updated -> twice-updated
  // For synthesized models: whether every world of the twice-updated model
  // repeats the event of its once-updated origin.
  std::optional<bool> projection_ok;
};

/// Applies the pointed update once and twice and decides whether the two
/// results are isomorphic as pointed models. Update errors propagate.
IdempotenceCheck verify_idempotent(const ActionModel& u, const KripkeModel& m);

/// As above, and additionally validates the event-repetition projection
/// that synthesized models satisfy.
IdempotenceCheck verify_idempotent(const SynthesizedModel& u,
                                   const KripkeModel& m);

}  // namespace delsynth
