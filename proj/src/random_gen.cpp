#include "delsynth/random_gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace delsynth {

int Rng::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

bool Rng::chance(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
}

namespace {

Formula leaf(Rng& rng, const std::vector<std::string>& atoms) {
  int roll = rng.uniform(0, 9);
  if (roll == 0) return Formula::top();
  if (roll == 1) return Formula::bot();
  if (atoms.empty()) return roll % 2 ? Formula::top() : Formula::bot();
  return Formula::atom(rng.pick(atoms));
}

Formula gen_formula(Rng& rng, const std::vector<AgentId>& agents,
                    const std::vector<std::string>& atoms, int modal_left,
                    int height_left) {
  if (height_left <= 0) return leaf(rng, atoms);
  int roll = rng.uniform(0, 99);
  if (roll < 25) return leaf(rng, atoms);
  if (roll < 40)
    return Formula::neg(
        gen_formula(rng, agents, atoms, modal_left, height_left - 1));
  if (roll < 60)
    return Formula::conj(
        gen_formula(rng, agents, atoms, modal_left, height_left - 1),
        gen_formula(rng, agents, atoms, modal_left, height_left - 1));
  if (roll < 70)
    return Formula::disj(
        gen_formula(rng, agents, atoms, modal_left, height_left - 1),
        gen_formula(rng, agents, atoms, modal_left, height_left - 1));
  if (roll < 75)
    return Formula::impl(
        gen_formula(rng, agents, atoms, modal_left, height_left - 1),
        gen_formula(rng, agents, atoms, modal_left, height_left - 1));
  if (modal_left > 0 && !agents.empty()) {
    AgentId agent = rng.pick(agents);
    Formula body =
        gen_formula(rng, agents, atoms, modal_left - 1, height_left - 1);
    return roll < 95 ? Formula::believes(agent, std::move(body))
                     : Formula::possible(agent, std::move(body));
  }
  return leaf(rng, atoms);
}

}  // namespace

Formula random_formula(Rng& rng, const std::vector<AgentId>& agents,
                       const std::vector<std::string>& atoms, int depth) {
  return gen_formula(rng, agents, atoms, depth, depth + 2);
}

Formula random_propositional(Rng& rng, const std::vector<std::string>& atoms,
                             int depth) {
  return gen_formula(rng, {}, atoms, 0, depth);
}

namespace {

std::vector<AgentId> pick_distinct(Rng& rng, std::vector<AgentId> pool,
                                   int count) {
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

Formula gen_normal_goal(Rng& rng, const std::vector<AgentId>& agents,
                        const AgentId& exclude_top,
                        const std::vector<std::string>& atoms, int depth) {
  std::vector<AgentId> pool;
  for (const AgentId& a : agents)
    if (a != exclude_top) pool.push_back(a);
  int k = rng.uniform(1, std::min<int>(2, static_cast<int>(pool.size())));
  std::vector<Formula> parts;
  for (const AgentId& agent : pick_distinct(rng, pool, k)) {
    bool nested = depth > 1 && agents.size() > 1 && rng.chance(0.6);
    bool with_prop = !nested || rng.chance(0.5);
    std::vector<Formula> body;
    if (with_prop) body.push_back(random_propositional(rng, atoms, 2));
    if (nested)
      body.push_back(gen_normal_goal(rng, agents, agent, atoms, depth - 1));
    parts.push_back(Formula::believes(agent, conj_all(body)));
  }
  return conj_all(parts);
}

Formula gen_loose_goal(Rng& rng, const std::vector<AgentId>& agents,
                       const std::vector<std::string>& atoms, int depth) {
  int k = rng.uniform(1, 2);
  std::vector<Formula> parts;
  for (int i = 0; i < k; ++i) {
    AgentId agent = rng.pick(agents);
    bool nested = depth > 1 && rng.chance(0.7);
    bool with_prop = !nested || rng.chance(0.5);
    std::vector<Formula> body;
    if (with_prop) body.push_back(random_propositional(rng, atoms, 2));
    if (nested) body.push_back(gen_loose_goal(rng, agents, atoms, depth - 1));
    parts.push_back(Formula::believes(agent, conj_all(body)));
  }
  return conj_all(parts);
}

GoalFormula certify(const Formula& f, bool want_normal) {
  auto result = GoalFormula::classify(f);
  auto* goal = std::get_if<GoalFormula>(&result);
  if (goal == nullptr)
    throw std::logic_error("generator produced a non-goal formula: " +
                           to_string(f));
  if (want_normal && !goal->is_normal())
    throw std::logic_error("generator produced a non-normal goal: " +
                           to_string(f));
  return *goal;
}

}  // namespace

GoalFormula random_normal_goal(Rng& rng, const std::vector<AgentId>& agents,
                               const std::vector<std::string>& atoms,
                               int depth) {
  if (agents.empty()) throw std::invalid_argument("need at least one agent");
  return certify(gen_normal_goal(rng, agents, AgentId{}, atoms, depth), true);
}

GoalFormula random_goal(Rng& rng, const std::vector<AgentId>& agents,
                        const std::vector<std::string>& atoms, int depth) {
  if (agents.empty()) throw std::invalid_argument("need at least one agent");
  return certify(gen_loose_goal(rng, agents, atoms, depth), false);
}

KripkeModel random_model(Rng& rng, const std::vector<AgentId>& agents,
                         const std::vector<std::string>& atoms,
                         int max_worlds) {
  KripkeModel m;
  m.agents = agents;
  std::sort(m.agents.begin(), m.agents.end());
  int n = rng.uniform(1, max_worlds);
  for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (const AgentId& a : m.agents) {
    std::set<Edge> edges;
    for (const std::string& x : m.worlds)
      for (const std::string& y : m.worlds)
        if (rng.chance(0.35)) edges.insert({x, y});
    m.relations.emplace(a, std::move(edges));
  }
  for (const std::string& atom : atoms) {
    std::set<std::string> where;
    for (const std::string& w : m.worlds)
      if (rng.chance(0.5)) where.insert(w);
    if (!where.empty()) m.valuation.emplace(atom, std::move(where));
  }
  m.point = m.worlds[static_cast<std::size_t>(rng.uniform(0, n - 1))];
  return m;
}

KripkeModel random_k45_model(Rng& rng, const std::vector<AgentId>& agents,
                             const std::vector<std::string>& atoms,
                             int max_worlds) {
  KripkeModel m = random_model(rng, agents, atoms, max_worlds);
  for (auto& [agent, edges] : m.relations) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::set<Edge> add;
      for (const Edge& ab : edges) {
        for (const Edge& cd : edges) {
          if (ab.second == cd.first && !edges.count({ab.first, cd.second}))
            add.insert({ab.first, cd.second});  // transitivity
          if (ab.first == cd.first && !edges.count({ab.second, cd.second}))
            add.insert({ab.second, cd.second});  // euclideanness
        }
      }
      if (!add.empty()) {
        edges.insert(add.begin(), add.end());
        grew = true;
      }
    }
  }
  return m;
}

ActionModel random_action_model(Rng& rng, const std::vector<AgentId>& agents,
                                const std::vector<std::string>& atoms,
                                int max_events) {
  ActionModel u;
  u.agents = agents;
  std::sort(u.agents.begin(), u.agents.end());
  int n = rng.uniform(1, max_events);
  for (int i = 0; i < n; ++i) u.events.push_back("e" + std::to_string(i));
  for (const AgentId& a : u.agents) {
    std::set<Edge> edges;
    for (const std::string& x : u.events)
      for (const std::string& y : u.events)
        if (rng.chance(0.35)) edges.insert({x, y});
    u.relations.emplace(a, std::move(edges));
  }
  for (const std::string& e : u.events) {
    Formula pre = rng.chance(0.3) ? Formula::top()
                                  : random_propositional(rng, atoms, 2);
    u.pre.emplace(e, std::move(pre));
  }
  u.point = u.events[static_cast<std::size_t>(rng.uniform(0, n - 1))];
  return u;
}

namespace {

// Splits each node into copies that jointly inherit all edges; the copy
// relation is a bisimulation, with the point mapped to its first copy.
struct Split {
  std::vector<std::string> nodes;
  std::map<std::string, std::vector<std::string>> copies;
  std::map<AgentId, std::set<Edge>> relations;
  std::string point;
};

Split split_frame(Rng& rng, const std::vector<std::string>& nodes,
                  const std::map<AgentId, std::set<Edge>>& relations,
                  const std::string& point, int max_copies) {
  Split out;
  for (const std::string& x : nodes) {
    int count = rng.uniform(1, max_copies);
    auto& list = out.copies[x];
    for (int i = 0; i < count; ++i) {
      std::string id = x + "#" + std::to_string(i);
      list.push_back(id);
      out.nodes.push_back(std::move(id));
    }
  }
  for (const auto& [agent, edges] : relations) {
    std::set<Edge> grown;
    for (const Edge& e : edges)
      for (const std::string& x : out.copies.at(e.first))
        for (const std::string& y : out.copies.at(e.second))
          grown.insert({x, y});
    out.relations.emplace(agent, std::move(grown));
  }
  out.point = out.copies.at(point).front();
  return out;
}

}  // namespace

KripkeModel split_worlds(Rng& rng, const KripkeModel& m, int max_copies) {
  Split split = split_frame(rng, m.worlds, m.relations, m.point, max_copies);
  KripkeModel out;
  out.agents = m.agents;
  out.worlds = std::move(split.nodes);
  std::sort(out.worlds.begin(), out.worlds.end());
  out.relations = std::move(split.relations);
  for (const auto& [atom, where] : m.valuation) {
    std::set<std::string> grown;
    for (const std::string& w : where)
      for (const std::string& copy : split.copies.at(w)) grown.insert(copy);
    if (!grown.empty()) out.valuation.emplace(atom, std::move(grown));
  }
  out.point = split.point;
  return out;
}

ActionModel split_events(Rng& rng, const ActionModel& u, int max_copies) {
  Split split = split_frame(rng, u.events, u.relations, u.point, max_copies);
  ActionModel out;
  out.agents = u.agents;
  out.events = std::move(split.nodes);
  std::sort(out.events.begin(), out.events.end());
  out.relations = std::move(split.relations);
  for (const auto& [e, pre] : u.pre)
    for (const std::string& copy : split.copies.at(e)) out.pre.emplace(copy, pre);
  out.point = split.point;
  return out;
}

}  // namespace delsynth
