#include "delsynth/goal.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace delsynth {

namespace {

std::optional<GoalRejection> reject_of(const Formula& f) {
  for (const Formula& c : conjuncts(f)) {
    if (c.kind() != FormulaKind::Believes)
      return GoalRejection{c, "goal conjuncts must be belief operators"};
    for (const Formula& part : conjuncts(c.body())) {
      if (is_propositional(part)) continue;
      if (auto r = reject_of(part)) return r;
    }
  }
  return std::nullopt;
}

// f must already be certified as a goal formula.
bool normal_goal(const Formula& f);

bool normal_believes(const Formula& b) {
  const AgentId& agent = b.agent();
  std::vector<Formula> modal;
  for (const Formula& part : conjuncts(b.body()))
    if (!is_propositional(part)) modal.push_back(part);
  if (modal.empty()) return true;
  std::set<AgentId> inner_targets;
  for (const Formula& m : modal) {
    if (!inner_targets.insert(m.agent()).second) return false;
    if (!normal_believes(m)) return false;
  }
  return inner_targets.count(agent) == 0;
}

bool normal_goal(const Formula& f) {
  std::set<AgentId> tops;
  for (const Formula& c : conjuncts(f)) {
    if (!tops.insert(c.agent()).second) return false;
    if (!normal_believes(c)) return false;
  }
  return true;
}

Formula normalize_believes(const AgentId& agent, std::vector<Formula> body);

// Normalizes a list of belief conjuncts: each conjunct is normalized and
// same-agent conjuncts are merged, keeping first-occurrence order.
std::vector<Formula> normalize_conjunction(const std::vector<Formula>& parts) {
  std::vector<AgentId> order;
  std::map<AgentId, std::vector<Formula>> bodies;
  for (const Formula& c : parts) {
    const AgentId& i = c.agent();
    if (bodies.find(i) == bodies.end()) order.push_back(i);
    auto inner = conjuncts(c.body());
    auto& acc = bodies[i];
    acc.insert(acc.end(), inner.begin(), inner.end());
  }
  std::vector<Formula> out;
  for (const AgentId& i : order)
    out.push_back(normalize_believes(i, std::move(bodies[i])));
  return out;
}

Formula normalize_believes(const AgentId& agent, std::vector<Formula> body) {
  // Splice same-agent belief conjuncts into the body until none remain:
  // B_i (x & B_i f) == B_i (x & f).
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Formula> next;
    for (const Formula& part : body) {
      if (!is_propositional(part) && part.agent() == agent) {
        auto inner = conjuncts(part.body());
        next.insert(next.end(), inner.begin(), inner.end());
        changed = true;
      } else {
        next.push_back(part);
      }
    }
    body = std::move(next);
  }
  std::vector<Formula> props;
  std::vector<Formula> modal;
  for (const Formula& part : body) {
    if (is_propositional(part))
      props.push_back(part);
    else
      modal.push_back(part);
  }
  std::vector<Formula> merged = normalize_conjunction(modal);
  props.insert(props.end(), merged.begin(), merged.end());
  return Formula::believes(agent, conj_all(props));
}

}  // namespace

std::variant<GoalFormula, GoalRejection> GoalFormula::classify(
    const Formula& f) {
  Formula core = desugar(f);
  if (auto r = reject_of(core)) return *r;
  return GoalFormula(core, normal_goal(core));
}

GoalFormula normal_form(const GoalFormula& g) {
  if (g.is_normal()) return g;
  Formula result = conj_all(normalize_conjunction(conjuncts(g.formula())));
  auto check = GoalFormula::classify(result);
  auto* certified = std::get_if<GoalFormula>(&check);
  if (certified == nullptr || !certified->is_normal())
    throw std::logic_error("normalization produced a non-normal goal: " +
                           to_string(result));
  return *certified;
}

}  // namespace delsynth
