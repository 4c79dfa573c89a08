#pragma once

#include <string>

#include "delsynth/model.hpp"
#include "delsynth/privatization.hpp"

namespace delsynth {

/// Deterministic DOT rendering: worlds as circles labeled with their true
/// atoms, events as boxes labeled with their preconditions, the point
/// filled; edges between the same endpoints share one arrow labeled with
/// the sorted agent list. Output is byte-stable for identical input.
std::string to_dot(const KripkeModel& m);
std::string to_dot(const ActionModel& u);

/// The modal syntactic tree of a goal formula, root filled.
std::string to_dot(const ModalSyntacticTree& tree);

}  // namespace delsynth
