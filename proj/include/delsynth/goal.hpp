#pragma once

#include <string>
#include <variant>

#include "delsynth/formula.hpp"

namespace delsynth {

/// Why a formula was rejected as a goal formula, with the offending subterm.
struct GoalRejection {
  Formula violating;
  std::string reason;
};

/// A goal formula describes a deterministic belief increase: a non-empty
/// conjunction of belief operators whose bodies mix a propositional part
/// with further goal formulas,
///
///   g := B_i x | B_i (x & g) | (g & g) | B_i g
///
/// for propositional x. Conjunctions are matched up to associativity and
/// the position of the propositional part within a body.
///
/// A goal formula is *normal* when no agent repeats across the conjuncts
/// of any level and no belief operator directly prescribes a belief of
/// its own agent: B_i x is normal; B_i g and B_i (x & g) are normal iff
/// g is normal and i is not a target agent of g; g & h is normal iff both
/// are normal with disjoint target agents.
class GoalFormula {
 public:
  /// Certifies f (after desugaring) as a goal formula or rejects it with
  /// the violating subterm.
  static std::variant<GoalFormula, GoalRejection> classify(const Formula& f);

  const Formula& formula() const { return formula_; }
  bool is_normal() const { return normal_; }

 private:
  GoalFormula(Formula f, bool normal)
      : formula_(std::move(f)), normal_(normal) {}

  Formula formula_;
  bool normal_;

  friend GoalFormula normal_form(const GoalFormula& g);
};

/// Rewrites a goal formula into an equivalent normal one by exhaustively
/// applying, bottom-up, the equivalences valid on transitive euclidean
/// frames:
///
///   B_i B_i f == B_i f
///   B_i (x & B_i f) == B_i (x & f)
///   B_i f & B_i g == B_i (f & g)
///
/// Within each body the propositional conjuncts come first, in source
/// order, followed by the merged belief conjuncts in order of first
/// occurrence of their agent. The result is deterministic; uniqueness of
/// normal forms is not claimed, only semantic equivalence on transitive
/// euclidean models.
GoalFormula normal_form(const GoalFormula& g);

}  // namespace delsynth
