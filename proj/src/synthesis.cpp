#include "delsynth/synthesis.hpp"

#include <algorithm>

#include "delsynth/update.hpp"

namespace delsynth {

namespace {

using IntEdge = std::pair<int, int>;

// Construction state over integer event ids; 0 and -1 are implicit until
// assembly. `q` holds the full relations including root and sink edges.
struct Build {
  std::set<int> events;
  std::map<int, Formula> pre;
  std::map<AgentId, std::set<IntEdge>> q;
  std::map<int, Formula> event_formula;
};

// Relation restricted away from the root.
std::set<IntEdge> underline(const std::set<IntEdge>& q) {
  std::set<IntEdge> out;
  for (const IntEdge& e : q)
    if (e.first != 0 && e.second != 0) out.insert(e);
  return out;
}

struct Builder {
  const std::vector<AgentId>& agents;
  int counter = 0;

  Build conjunction(const std::vector<Formula>& parts);

  Build believes(const Formula& belief) {
    const AgentId& agent = belief.agent();
    std::vector<Formula> props;
    std::vector<Formula> modal;
    for (const Formula& part : conjuncts(belief.body())) {
      if (is_propositional(part))
        props.push_back(part);
      else
        modal.push_back(part);
    }
    Build out;
    if (modal.empty()) {
      int m = ++counter;
      out.events.insert(m);
      out.pre.emplace(m, conj_all(props));
      out.event_formula.emplace(m, belief);
      for (const AgentId& j : agents) {
        if (j == agent)
          out.q[j] = {{0, m}, {m, m}, {-1, -1}};
        else
          out.q[j] = {{0, -1}, {m, -1}, {-1, -1}};
      }
      return out;
    }
    Build inner = conjunction(modal);
    int m = ++counter;
    out.events = std::move(inner.events);
    out.events.insert(m);
    out.pre = std::move(inner.pre);
    out.pre.emplace(m, props.empty() ? Formula::top() : conj_all(props));
    out.event_formula = std::move(inner.event_formula);
    out.event_formula.emplace(m, belief);
    for (const AgentId& j : agents) {
      const std::set<IntEdge>& qj = inner.q.at(j);
      std::set<IntEdge> edges = underline(qj);
      if (j == agent) {
        edges.insert({0, m});
        edges.insert({m, m});
      } else {
        edges.insert({0, -1});
        for (const IntEdge& e : qj)
          if (e.first == 0) edges.insert({m, e.second});
      }
      out.q[j] = std::move(edges);
    }
    return out;
  }
};

Build Builder::conjunction(const std::vector<Formula>& parts) {
  if (parts.size() == 1) return believes(parts.front());
  // right conjunct first, so event numbers grow right to left
  std::vector<Build> built(parts.size());
  for (std::size_t i = parts.size(); i-- > 0;) built[i] = believes(parts[i]);
  Build out;
  for (const Build& b : built) {
    out.events.insert(b.events.begin(), b.events.end());
    out.pre.insert(b.pre.begin(), b.pre.end());
    out.event_formula.insert(b.event_formula.begin(), b.event_formula.end());
  }
  for (const AgentId& j : agents) {
    std::set<IntEdge> edges;
    std::set<int> root_targets;
    for (const Build& b : built) {
      const std::set<IntEdge>& qj = b.q.at(j);
      std::set<IntEdge> rest = underline(qj);
      edges.insert(rest.begin(), rest.end());
      for (const IntEdge& e : qj)
        if (e.first == 0 && b.events.count(e.second))
          root_targets.insert(e.second);
    }
    if (root_targets.size() > 1)
      throw std::logic_error(
          "conjunction offers two root successors for agent " + j);
    if (root_targets.empty())
      edges.insert({0, -1});
    else
      edges.insert({0, *root_targets.begin()});
    out.q[j] = std::move(edges);
  }
  return out;
}

// Derives the per-agent successor function and checks it is total and
// single-valued.
std::map<AgentId, std::map<std::string, std::string>> successor_map_of(
    const ActionModel& action) {
  std::map<AgentId, std::map<std::string, std::string>> out;
  for (const AgentId& a : action.agents) {
    auto& per_event = out[a];
    for (const std::string& e : action.events) {
      auto succ = action.successors(a, e);
      if (succ.size() != 1)
        throw std::logic_error("event " + e + " has " +
                               std::to_string(succ.size()) +
                               " successors for agent " + a);
      per_event.emplace(e, succ.front());
    }
  }
  return out;
}

}  // namespace

SynthesizedModel synthesize(const GoalFormula& goal,
                            const std::vector<AgentId>& agents) {
  if (!goal.is_normal())
    throw std::invalid_argument("goal formula must be in normal form");
  std::set<AgentId> declared(agents.begin(), agents.end());
  if (declared.size() != agents.size())
    throw std::invalid_argument("duplicate agent ids");
  for (const AgentId& a : agents_of(goal.formula()))
    if (!declared.count(a))
      throw std::invalid_argument("agent set misses formula agent " + a);

  Builder builder{agents};
  Build build = builder.conjunction(conjuncts(goal.formula()));

  SynthesizedModel out;
  out.source = goal.formula();
  out.goal_events = build.events;
  out.event_formula = std::move(build.event_formula);

  ActionModel& action = out.action;
  action.agents = agents;
  std::sort(action.agents.begin(), action.agents.end());
  action.events = {"0", "-1"};
  action.pre.emplace("0", Formula::top());
  action.pre.emplace("-1", Formula::top());
  for (int e : build.events) {
    action.events.push_back(std::to_string(e));
    action.pre.emplace(std::to_string(e), build.pre.at(e));
  }
  std::sort(action.events.begin(), action.events.end());
  for (const AgentId& a : action.agents) {
    std::set<Edge> edges;
    for (const IntEdge& e : build.q.at(a)) {
      if (e.second == 0)
        throw std::logic_error("construction gave the root an incoming edge");
      edges.insert({std::to_string(e.first), std::to_string(e.second)});
    }
    action.relations.emplace(a, std::move(edges));
  }
  action.point = "0";

  out.successor_map = successor_map_of(action);
  // sink absorbs: its only successors are itself
  for (const AgentId& a : action.agents)
    if (out.successor_map.at(a).at("-1") != "-1")
      throw std::logic_error("sink has a non-reflexive edge");
  return out;
}

const std::string& successor(const SynthesizedModel& u,
                             const std::string& event, const AgentId& agent) {
  auto agent_it = u.successor_map.find(agent);
  if (agent_it == u.successor_map.end())
    throw ModelError("unknown agent: " + agent);
  auto event_it = agent_it->second.find(event);
  if (event_it == agent_it->second.end())
    throw ModelError("unknown event: " + event);
  return event_it->second;
}

std::vector<std::string> event_sequence_for(
    const SynthesizedModel& u, const std::vector<AgentId>& modal_seq) {
  std::vector<std::string> out;
  std::string current = std::to_string(u.root);
  for (const AgentId& a : modal_seq) {
    current = successor(u, current, a);
    out.push_back(current);
  }
  return out;
}

TopShapeReport analyze_independence(const Formula& theta,
                                    const SynthesizedModel& u) {
  TopShapeReport report;
  report.theta = desugar(theta);
  report.independent = true;
  const Formula top = Formula::top();
  for (const auto& prefix : modal_prefixes(report.theta)) {
    TopShapeWitness witness;
    witness.modal_seq = prefix;
    witness.event_seq = event_sequence_for(u, prefix);
    for (const std::string& e : witness.event_seq) {
      const Formula pre = desugar(u.action.precondition(e));
      if (!(pre == top)) {
        witness.blocking = {e, pre};
        report.independent = false;
        break;
      }
    }
    report.witnesses.push_back(std::move(witness));
  }
  return report;
}

IdempotenceCheck verify_idempotent(const ActionModel& u,
                                   const KripkeModel& m) {
  UpdateResult once = pointed_update(m, u);
  UpdateResult twice = pointed_update(once.model, u);
  IsomorphismResult iso = isomorphic_pointed(
      once.model, once.model.point, twice.model, twice.model.point);
  IdempotenceCheck out;
  out.idempotent = iso.isomorphic;
  out.witness = std::move(iso.witness);
  return out;
}

IdempotenceCheck verify_idempotent(const SynthesizedModel& u,
                                   const KripkeModel& m) {
  UpdateResult once = pointed_update(m, u.action);
  UpdateResult twice = pointed_update(once.model, u.action);
  IsomorphismResult iso = isomorphic_pointed(
      once.model, once.model.point, twice.model, twice.model.point);
  IdempotenceCheck out;
  out.idempotent = iso.isomorphic;
  out.witness = std::move(iso.witness);
  bool projection = true;
  for (const auto& [world, pair] : twice.origin) {
    const auto& [once_world, repeat_event] = pair;
    if (once.origin.at(once_world).second != repeat_event) {
      projection = false;
      break;
    }
  }
  out.projection_ok = projection;
  return out;
}

}  // namespace delsynth
