#include "delsynth/model.hpp"

#include <algorithm>

namespace delsynth {

namespace {

std::vector<std::string> edge_targets(const std::map<AgentId, std::set<Edge>>& rel,
                                      const AgentId& agent,
                                      const std::string& from) {
  std::vector<std::string> out;
  auto it = rel.find(agent);
  if (it == rel.end()) return out;
  for (auto e = it->second.lower_bound({from, std::string()});
       e != it->second.end() && e->first == from; ++e)
    out.push_back(e->second);
  return out;
}

template <typename T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

void validate_frame_part(const std::vector<AgentId>& agents,
                         const std::vector<std::string>& nodes,
                         const std::map<AgentId, std::set<Edge>>& relations,
                         const std::string& point, const char* node_word,
                         std::vector<std::string>& out) {
  if (nodes.empty()) out.push_back(std::string(node_word) + " set is empty");
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  if (node_set.size() != nodes.size())
    out.push_back(std::string("duplicate ") + node_word + " ids");
  std::set<AgentId> agent_set(agents.begin(), agents.end());
  if (agent_set.size() != agents.size()) out.push_back("duplicate agent ids");
  for (const AgentId& a : agents)
    if (!is_name_token(a)) out.push_back("invalid agent id: \"" + a + "\"");
  if (!node_set.count(point))
    out.push_back("point not in domain: \"" + point + "\"");
  for (const AgentId& a : agents)
    if (!relations.count(a))
      out.push_back("missing relation entry for agent " + a);
  for (const auto& [agent, edges] : relations) {
    if (!agent_set.count(agent))
      out.push_back("relation for undeclared agent " + agent);
    for (const Edge& e : edges) {
      if (!node_set.count(e.first) || !node_set.count(e.second))
        out.push_back("relation endpoint not in domain: " + agent + ": " +
                      e.first + " -> " + e.second);
    }
  }
}

}  // namespace

bool KripkeModel::has_world(const std::string& w) const {
  return contains(worlds, w);
}

bool KripkeModel::atom_true(const std::string& atom,
                            const std::string& w) const {
  auto it = valuation.find(atom);
  return it != valuation.end() && it->second.count(w) > 0;
}

std::vector<std::string> KripkeModel::successors(const AgentId& agent,
                                                 const std::string& w) const {
  return edge_targets(relations, agent, w);
}

bool ActionModel::has_event(const std::string& e) const {
  return contains(events, e);
}

const Formula& ActionModel::precondition(const std::string& e) const {
  auto it = pre.find(e);
  if (it == pre.end()) throw ModelError("no precondition for event " + e);
  return it->second;
}

std::vector<std::string> ActionModel::successors(const AgentId& agent,
                                                 const std::string& e) const {
  return edge_targets(relations, agent, e);
}

std::vector<std::string> Frame::successors(const AgentId& agent,
                                           const std::string& node) const {
  return edge_targets(relations, agent, node);
}

Frame frame_of(const KripkeModel& m) {
  return Frame{m.agents, m.worlds, m.relations, m.point};
}

Frame frame_of(const ActionModel& u) {
  return Frame{u.agents, u.events, u.relations, u.point};
}

bool is_transitive(const Frame& f) {
  for (const auto& [agent, edges] : f.relations)
    for (const Edge& ab : edges)
      for (const Edge& bc : edges)
        if (ab.second == bc.first && !edges.count({ab.first, bc.second}))
          return false;
  return true;
}

bool is_euclidean(const Frame& f) {
  for (const auto& [agent, edges] : f.relations)
    for (const Edge& ab : edges)
      for (const Edge& ac : edges)
        if (ab.first == ac.first && !edges.count({ab.second, ac.second}))
          return false;
  return true;
}

bool is_serial(const Frame& f) {
  for (const AgentId& agent : f.agents)
    for (const std::string& node : f.nodes)
      if (f.successors(agent, node).empty()) return false;
  return true;
}

std::vector<std::string> validate(const KripkeModel& m) {
  std::vector<std::string> out;
  validate_frame_part(m.agents, m.worlds, m.relations, m.point, "world", out);
  std::set<std::string> world_set(m.worlds.begin(), m.worlds.end());
  for (const auto& [atom, where] : m.valuation) {
    if (!is_name_token(atom))
      out.push_back("invalid atom name in valuation: \"" + atom + "\"");
    for (const std::string& w : where)
      if (!world_set.count(w))
        out.push_back("valuation world not in domain: " + atom + " at " + w);
  }
  return out;
}

std::vector<std::string> validate(const ActionModel& u) {
  std::vector<std::string> out;
  validate_frame_part(u.agents, u.events, u.relations, u.point, "event", out);
  std::set<AgentId> agent_set(u.agents.begin(), u.agents.end());
  for (const std::string& e : u.events) {
    if (e.find('@') != std::string::npos)
      out.push_back("event id contains '@': " + e);
    if (!u.pre.count(e)) out.push_back("pre not total: missing event " + e);
  }
  std::set<std::string> event_set(u.events.begin(), u.events.end());
  for (const auto& [e, f] : u.pre) {
    if (!event_set.count(e))
      out.push_back("precondition for undeclared event " + e);
    for (const AgentId& a : agents_of(f))
      if (!agent_set.count(a))
        out.push_back("precondition of " + e + " uses undeclared agent " + a);
  }
  return out;
}

namespace {

bool check(const KripkeModel& m, const std::string& w, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return m.atom_true(f.atom_name(), w);
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return !check(m, w, f.body());
    case FormulaKind::And:
      return check(m, w, f.lhs()) && check(m, w, f.rhs());
    case FormulaKind::Or:
      return check(m, w, f.lhs()) || check(m, w, f.rhs());
    case FormulaKind::Implies:
      return !check(m, w, f.lhs()) || check(m, w, f.rhs());
    case FormulaKind::Believes: {
      for (const std::string& v : m.successors(f.agent(), w))
        if (!check(m, v, f.body())) return false;
      return true;
    }
    case FormulaKind::Possible: {
      for (const std::string& v : m.successors(f.agent(), w))
        if (check(m, v, f.body())) return true;
      return false;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool model_check(const KripkeModel& m, const std::string& world,
                 const Formula& f) {
  if (!m.has_world(world)) throw ModelError("unknown world: " + world);
  std::set<AgentId> declared(m.agents.begin(), m.agents.end());
  for (const AgentId& a : agents_of(f))
    if (!declared.count(a)) throw ModelError("unknown agent: " + a);
  return check(m, world, f);
}

bool believes_bottom(const KripkeModel& m, const std::string& world,
                     const std::vector<AgentId>& agent_seq) {
  Formula f = Formula::bot();
  for (auto it = agent_seq.rbegin(); it != agent_seq.rend(); ++it)
    f = Formula::believes(*it, std::move(f));
  return model_check(m, world, f);
}

namespace {

std::set<Edge> total_relation(const std::vector<std::string>& nodes) {
  std::set<Edge> out;
  for (const std::string& a : nodes)
    for (const std::string& b : nodes) out.insert({a, b});
  return out;
}

}  // namespace

FixtureSet builtin_fixtures() {
  FixtureSet fx;

  // Three brothers b, l, t; the exam answer is not-p (world v) and nobody
  // can tell the two answers apart.
  fx.blt_initial.agents = {"b", "l", "t"};
  fx.blt_initial.worlds = {"u", "v"};
  for (const AgentId& a : fx.blt_initial.agents)
    fx.blt_initial.relations[a] = total_relation(fx.blt_initial.worlds);
  fx.blt_initial.valuation["p"] = {"u"};
  fx.blt_initial.point = "v";

  // Agents a and b uncertain between p (actual, world u) and not-p.
  fx.two_agent_m.agents = {"a", "b"};
  fx.two_agent_m.worlds = {"u", "v"};
  for (const AgentId& a : fx.two_agent_m.agents)
    fx.two_agent_m.relations[a] = total_relation(fx.two_agent_m.worlds);
  fx.two_agent_m.valuation["p"] = {"u"};
  fx.two_agent_m.point = "u";

  // A private message p to agent a: a learns p (event m), while b believes
  // nothing happened (event n).
  fx.priv_msg_u.agents = {"a", "b"};
  fx.priv_msg_u.events = {"m", "n"};
  fx.priv_msg_u.relations["a"] = {{"m", "m"}, {"n", "n"}};
  fx.priv_msg_u.relations["b"] = {{"m", "n"}, {"n", "n"}};
  fx.priv_msg_u.pre.emplace("m", Formula::atom("p"));
  fx.priv_msg_u.pre.emplace("n", Formula::top());
  fx.priv_msg_u.point = "m";

  return fx;
}

}  // namespace delsynth
