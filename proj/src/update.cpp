#include "delsynth/update.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace delsynth {

std::string compose_id(const std::string& world, const std::string& event) {
  return world + "@" + event;
}

namespace {

void require_same_agents(const KripkeModel& m, const ActionModel& u) {
  if (m.agents != u.agents)
    throw ModelError("model and action model declare different agent sets");
}

// Worlds satisfying each event's precondition; each precondition is
// evaluated once per world.
std::map<std::string, std::set<std::string>> satisfying_worlds(
    const KripkeModel& m, const ActionModel& u) {
  std::map<std::string, std::set<std::string>> sat;
  for (const std::string& e : u.events) {
    const Formula& pre = u.precondition(e);
    std::set<std::string> where;
    for (const std::string& w : m.worlds)
      if (model_check(m, w, pre)) where.insert(w);
    sat.emplace(e, std::move(where));
  }
  return sat;
}

// Assembles the result model over the kept pairs, restricting relations
// and valuation component-wise.
UpdateResult assemble(const KripkeModel& m, const ActionModel& u,
                      const std::set<std::pair<std::string, std::string>>& kept,
                      std::size_t candidates) {
  UpdateResult result;
  result.candidate_pairs = candidates;
  result.kept_pairs = kept.size();
  KripkeModel& out = result.model;
  out.agents = m.agents;
  for (const auto& [w, e] : kept) {
    std::string id = compose_id(w, e);
    out.worlds.push_back(id);
    result.origin.emplace(id, std::make_pair(w, e));
  }
  std::sort(out.worlds.begin(), out.worlds.end());
  for (const AgentId& a : m.agents) {
    std::set<Edge> edges;
    const std::set<Edge>& rm = m.relations.at(a);
    const std::set<Edge>& ru = u.relations.at(a);
    for (const auto& [w, e] : kept)
      for (const auto& [w2, e2] : kept)
        if (rm.count({w, w2}) && ru.count({e, e2}))
          edges.insert({compose_id(w, e), compose_id(w2, e2)});
    out.relations.emplace(a, std::move(edges));
  }
  for (const auto& [atom, where] : m.valuation) {
    std::set<std::string> now;
    for (const auto& [w, e] : kept)
      if (where.count(w)) now.insert(compose_id(w, e));
    if (!now.empty()) out.valuation.emplace(atom, std::move(now));
  }
  return result;
}

}  // namespace

UpdateResult product_update(const KripkeModel& m, const ActionModel& u) {
  require_same_agents(m, u);
  auto sat = satisfying_worlds(m, u);
  std::set<std::pair<std::string, std::string>> kept;
  for (const std::string& e : u.events)
    for (const std::string& w : sat.at(e)) kept.insert({w, e});
  if (kept.empty()) throw UpdateUndefined("update undefined: empty domain");
  UpdateResult result = assemble(m, u, kept, kept.size());
  if (kept.count({m.point, u.point})) {
    result.model.point = compose_id(m.point, u.point);
    result.point_defined = true;
  }
  return result;
}

UpdateResult pointed_update(const KripkeModel& m, const ActionModel& u) {
  require_same_agents(m, u);
  auto sat = satisfying_worlds(m, u);
  std::size_t candidates = 0;
  for (const auto& [e, where] : sat) candidates += where.size();
  if (!sat.at(u.point).count(m.point))
    throw PreconditionFailed(
        "precondition of actual event fails at actual world");

  std::set<std::pair<std::string, std::string>> kept;
  std::deque<std::pair<std::string, std::string>> queue;
  kept.insert({m.point, u.point});
  queue.push_back({m.point, u.point});
  while (!queue.empty()) {
    auto [w, e] = queue.front();
    queue.pop_front();
    for (const AgentId& a : m.agents) {
      for (const std::string& w2 : m.successors(a, w)) {
        for (const std::string& e2 : u.successors(a, e)) {
          if (!sat.at(e2).count(w2)) continue;
          if (kept.insert({w2, e2}).second) queue.push_back({w2, e2});
        }
      }
    }
  }
  UpdateResult result = assemble(m, u, kept, candidates);
  result.model.point = compose_id(m.point, u.point);
  result.point_defined = true;
  return result;
}

bool dynamic_check(const KripkeModel& m, const std::string& world,
                   const ActionModel& u, const std::string& event,
                   const Formula& f) {
  if (!u.has_event(event)) throw ModelError("unknown event: " + event);
  if (!model_check(m, world, u.precondition(event))) return true;
  UpdateResult product = product_update(m, u);
  return model_check(product.model, compose_id(world, event), f);
}

std::vector<std::size_t> blowup_series(const KripkeModel& m,
                                       const ActionModel& u,
                                       std::size_t iterations,
                                       UpdateMode mode) {
  std::vector<std::size_t> counts;
  KripkeModel current = m;
  for (std::size_t i = 0; i < iterations; ++i) {
    UpdateResult step = mode == UpdateMode::Product ? product_update(current, u)
                                                    : pointed_update(current, u);
    counts.push_back(step.model.worlds.size());
    current = std::move(step.model);
  }
  return counts;
}

std::string blowup_csv(const KripkeModel& m, const ActionModel& u,
                       std::size_t iterations,
                       const std::vector<UpdateMode>& modes) {
  std::ostringstream out;
  out << "iteration,mode,world_count\n";
  for (UpdateMode mode : modes) {
    auto counts = blowup_series(m, u, iterations, mode);
    const char* name = mode == UpdateMode::Product ? "product" : "pointed";
    for (std::size_t i = 0; i < counts.size(); ++i)
      out << (i + 1) << ',' << name << ',' << counts[i] << '\n';
  }
  return out.str();
}

}  // namespace delsynth
