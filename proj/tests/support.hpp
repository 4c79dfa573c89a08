#pragma once

#include <set>
#include <string>
#include <vector>

#include "delsynth/bisim.hpp"
#include "delsynth/goal.hpp"
#include "delsynth/model.hpp"
#include "delsynth/parser.hpp"
#include "delsynth/synthesis.hpp"

namespace delsynth::testing {

inline Formula f(const std::string& text) { return parse(text); }

inline GoalFormula goal(const std::string& text) {
  auto result = GoalFormula::classify(parse(text));
  return std::get<GoalFormula>(result);
}

inline GoalFormula normal_goal(const std::string& text) {
  return normal_form(goal(text));
}

// Direct forth/back/atoms(/pre) checker, independent of the partition
// refinement that computes relations. Used as the oracle for witness
// relations.
inline bool valid_bisimulation(const KripkeModel& a, const KripkeModel& b,
                               const BisimRelation& rel) {
  std::set<std::string> atoms;
  for (const auto& [atom, where] : a.valuation) atoms.insert(atom);
  for (const auto& [atom, where] : b.valuation) atoms.insert(atom);
  for (const auto& [x, y] : rel.pairs) {
    for (const std::string& atom : atoms)
      if (a.atom_true(atom, x) != b.atom_true(atom, y)) return false;
    for (const AgentId& agent : a.agents) {
      for (const std::string& x2 : a.successors(agent, x)) {
        bool matched = false;
        for (const std::string& y2 : b.successors(agent, y))
          if (rel.relates(x2, y2)) matched = true;
        if (!matched) return false;
      }
      for (const std::string& y2 : b.successors(agent, y)) {
        bool matched = false;
        for (const std::string& x2 : a.successors(agent, x))
          if (rel.relates(x2, y2)) matched = true;
        if (!matched) return false;
      }
    }
  }
  return true;
}

inline bool valid_bisimulation(const ActionModel& a, const ActionModel& b,
                               const BisimRelation& rel) {
  for (const auto& [x, y] : rel.pairs) {
    if (!(desugar(a.precondition(x)) == desugar(b.precondition(y))))
      return false;
    for (const AgentId& agent : a.agents) {
      for (const std::string& x2 : a.successors(agent, x)) {
        bool matched = false;
        for (const std::string& y2 : b.successors(agent, y))
          if (rel.relates(x2, y2)) matched = true;
        if (!matched) return false;
      }
      for (const std::string& y2 : b.successors(agent, y)) {
        bool matched = false;
        for (const std::string& x2 : a.successors(agent, x))
          if (rel.relates(x2, y2)) matched = true;
        if (!matched) return false;
      }
    }
  }
  return true;
}

// All formulas over one atom list and agent list up to the given belief
// depth, with a small Boolean layer; used to cross-check equivalence
// decisions by brute force.
inline std::vector<Formula> enumerate_formulas(
    const std::vector<AgentId>& agents, const std::vector<std::string>& atoms,
    int depth) {
  std::vector<Formula> layer;
  for (const std::string& atom : atoms) layer.push_back(Formula::atom(atom));
  layer.push_back(Formula::bot());
  if (depth == 0) return layer;
  std::vector<Formula> inner = enumerate_formulas(agents, atoms, depth - 1);
  for (const Formula& g : inner) {
    layer.push_back(Formula::neg(g));
    for (const AgentId& agent : agents)
      layer.push_back(Formula::believes(agent, g));
  }
  std::size_t inner_count = inner.size();
  for (std::size_t i = 0; i < inner_count; ++i)
    for (std::size_t j = i + 1; j < inner_count && j < i + 4; ++j)
      layer.push_back(Formula::conj(inner[i], inner[j]));
  return layer;
}

// The nested possibility statement whose truth before an update decides
// whether the agent chain stays consistent after it: each agent in turn
// must consider the precondition of the event their step selects
// possible, together with the rest of the chain.
inline Formula consistency_probe(const SynthesizedModel& u,
                                 const std::vector<AgentId>& seq) {
  std::vector<std::string> events = event_sequence_for(u, seq);
  Formula lhs = u.action.precondition(events.back());
  for (std::size_t i = seq.size(); i-- > 0;) {
    Formula guarded = Formula::possible(seq[i], std::move(lhs));
    lhs = i == 0 ? std::move(guarded)
                 : Formula::conj(u.action.precondition(events[i - 1]),
                                 std::move(guarded));
  }
  return lhs;
}

inline KripkeModel one_world_model(const std::vector<AgentId>& agents,
                                   const std::vector<std::string>& true_atoms,
                                   bool reflexive) {
  KripkeModel m;
  m.agents = agents;
  m.worlds = {"w"};
  for (const AgentId& a : m.agents) {
    std::set<Edge> edges;
    if (reflexive) edges.insert({"w", "w"});
    m.relations.emplace(a, std::move(edges));
  }
  for (const std::string& atom : true_atoms) m.valuation[atom] = {"w"};
  m.point = "w";
  return m;
}

}  // namespace delsynth::testing
