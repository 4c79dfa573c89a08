#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "delsynth/formula.hpp"

namespace delsynth {

/// Raised for references to undeclared worlds, events or agents and for
/// documents failing validation.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Edge = std::pair<std::string, std::string>;

/// Finite pointed Kripke model: worlds with per-agent accessibility
/// relations, an atomic valuation and a designated actual world.
///
/// Canonical shape: agents and worlds sorted and unique, a relation entry
/// (possibly empty) for every declared agent, no empty valuation entries.
/// Instances are plain data so that invalid documents can be loaded and
/// inspected; validate() reports violations without throwing. Queries
/// assume a valid model.
struct KripkeModel {
  std::vector<AgentId> agents;
  std::vector<std::string> worlds;
  std::map<AgentId, std::set<Edge>> relations;
  std::map<std::string, std::set<std::string>> valuation;  // atom -> worlds
  std::string point;

  bool has_world(const std::string& w) const;
  bool atom_true(const std::string& atom, const std::string& w) const;
  std::vector<std::string> successors(const AgentId& agent,
                                      const std::string& w) const;
};

/// Finite pointed action model: events guarded by formula preconditions,
/// per-agent accessibility relations and a designated actual event.
/// Event ids must not contain '@' (reserved for composed world ids).
struct ActionModel {
  std::vector<AgentId> agents;
  std::vector<std::string> events;
  std::map<AgentId, std::set<Edge>> relations;
  std::map<std::string, Formula> pre;
  std::string point;

  bool has_event(const std::string& e) const;
  const Formula& precondition(const std::string& e) const;
  std::vector<std::string> successors(const AgentId& agent,
                                      const std::string& e) const;
};

/// The frame of a model: nodes, labeled edges and the point, with the
/// valuation or preconditions forgotten.
struct Frame {
  std::vector<AgentId> agents;
  std::vector<std::string> nodes;
  std::map<AgentId, std::set<Edge>> relations;
  std::string point;

  std::vector<std::string> successors(const AgentId& agent,
                                      const std::string& node) const;
};

Frame frame_of(const KripkeModel& m);
Frame frame_of(const ActionModel& u);

/// Frame-class predicates; no class is enforced at the type level, these
/// inspect every agent's relation.
bool is_transitive(const Frame& f);
bool is_euclidean(const Frame& f);
bool is_serial(const Frame& f);

/// Invariant violations as human-readable messages; empty means valid.
std::vector<std::string> validate(const KripkeModel& m);
std::vector<std::string> validate(const ActionModel& u);

/// Standard Kripke semantics. Atoms are true where the valuation says so,
/// Boolean connectives are classical and B_i quantifies universally over
/// the i-successors, so B_i bot holds at a world with no i-successor.
/// Throws ModelError for an unknown world or an agent not declared in m.
bool model_check(const KripkeModel& m, const std::string& world,
                 const Formula& f);

/// Checks B_{i1}..B_{ik} bot at the given world; the empty sequence checks
/// bot itself. Convenience wrapper for consistency audits.
bool believes_bottom(const KripkeModel& m, const std::string& world,
                     const std::vector<AgentId>& agent_seq);

/// The built-in example models: a three-agent exam scenario where every
/// agent initially considers both answers possible, a two-agent variant
/// of the same uncertainty, and the action model of a private message
/// that only agent "a" notices.
struct FixtureSet {
  KripkeModel blt_initial;
  KripkeModel two_agent_m;
  ActionModel priv_msg_u;
};

FixtureSet builtin_fixtures();

}  // namespace delsynth
