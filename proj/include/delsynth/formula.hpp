#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace delsynth {

using AgentId = std::string;

/// Atom and agent names are non-empty words over [A-Za-z0-9_], excluding
/// the reserved words of the concrete syntax (B, top, bot); anything else
/// could not round-trip through printing and parsing.
bool is_name_token(const std::string& name);

enum class FormulaKind {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Implies,
  Believes,
  Possible,
};

/// Immutable modal-logic formula over atoms, Boolean connectives and
/// per-agent belief operators. Values are cheap to copy (shared subtrees).
///
/// The core connectives are Atom, Top, Bot, Not, And and Believes.
/// Or, Implies and Possible (the dual of Believes) are definable sugar
/// and are rewritten into the core by desugar().
class Formula {
 public:
  Formula() : Formula(top()) {}  // defaults to Top

  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula impl(Formula lhs, Formula rhs);
  static Formula believes(AgentId agent, Formula body);
  static Formula possible(AgentId agent, Formula body);

  FormulaKind kind() const { return node_->kind; }

  const std::string& atom_name() const;  // Atom
  const AgentId& agent() const;          // Believes / Possible
  const Formula& lhs() const;            // And / Or / Implies
  const Formula& rhs() const;            // And / Or / Implies
  const Formula& body() const;           // Not / Believes / Possible

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const;

 private:
  struct Node {
    FormulaKind kind;
    std::string label;  // atom name or agent id
    std::vector<Formula> kids;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula make(FormulaKind kind, std::string label,
                      std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

/// Three-way structural comparison; total order usable for map keys.
int compare(const Formula& a, const Formula& b);

/// Rewrites Or, Implies and Possible into the Atom/Top/Bot/Not/And/Believes
/// core. Identity on formulas that are already in the core.
Formula desugar(const Formula& f);

/// Concrete syntax. Parentheses are inserted so that parsing the result
/// of to_string(f) yields desugar(f). Possible has no concrete operator
/// and prints as its ~B..~ expansion.
std::string to_string(const Formula& f);

/// Agents whose beliefs the outermost modalities of f prescribe:
/// ta(p) = {}, ta(~f) = ta(f), ta(f & g) = ta(f) u ta(g), ta(B_i f) = {i}.
std::set<AgentId> target_agents(const Formula& f);

/// True iff f contains no belief or possibility operator.
bool is_propositional(const Formula& f);

/// Maximum nesting depth of belief operators (0 for propositional formulas).
int modal_depth(const Formula& f);

/// All atom names occurring in f.
std::set<std::string> atoms_of(const Formula& f);

/// All agent ids occurring in f, at any depth.
std::set<AgentId> agents_of(const Formula& f);

/// Flattens nested conjunctions into the list of non-And leaves,
/// left to right. A non-And formula yields a singleton list.
std::vector<Formula> conjuncts(const Formula& f);

/// Right fold of parts into binary Ands; empty input yields Top.
Formula conj_all(const std::vector<Formula>& parts);

/// Every sequence of belief agents along a root-to-node path of the
/// (desugared) syntax tree, including the empty sequence.
std::set<std::vector<AgentId>> modal_prefixes(const Formula& f);

}  // namespace delsynth
