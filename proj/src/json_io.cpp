#include "delsynth/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "delsynth/parser.hpp"

namespace delsynth {

namespace {

nlohmann::json relations_to_json(const std::map<AgentId, std::set<Edge>>& rel) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [agent, edges] : rel)
    for (const Edge& e : edges)
      out.push_back({{"agent", agent}, {"from", e.first}, {"to", e.second}});
  return out;
}

}  // namespace

nlohmann::json to_json(const KripkeModel& m) {
  nlohmann::json j;
  j["kind"] = "kripke";
  j["agents"] = m.agents;
  nlohmann::json worlds = nlohmann::json::array();
  std::vector<std::string> sorted_worlds = m.worlds;
  std::sort(sorted_worlds.begin(), sorted_worlds.end());
  for (const std::string& w : sorted_worlds) {
    std::vector<std::string> atoms;
    for (const auto& [atom, where] : m.valuation)
      if (where.count(w)) atoms.push_back(atom);
    worlds.push_back({{"atoms", atoms}, {"id", w}});
  }
  j["worlds"] = std::move(worlds);
  j["relations"] = relations_to_json(m.relations);
  j["point"] = m.point;
  return j;
}

nlohmann::json to_json(const ActionModel& u) {
  nlohmann::json j;
  j["kind"] = "action";
  j["agents"] = u.agents;
  nlohmann::json events = nlohmann::json::array();
  std::vector<std::string> sorted_events = u.events;
  std::sort(sorted_events.begin(), sorted_events.end());
  // preconditions are stored desugared so that loading reproduces the
  // document byte for byte
  for (const std::string& e : sorted_events)
    events.push_back({{"id", e}, {"pre", to_string(desugar(u.precondition(e)))}});
  j["events"] = std::move(events);
  j["relations"] = relations_to_json(u.relations);
  j["point"] = u.point;
  return j;
}

nlohmann::json to_json(const SynthesizedModel& u) {
  nlohmann::json j = to_json(u.action);
  nlohmann::json meta;
  meta["root"] = std::to_string(u.root);
  meta["sink"] = std::to_string(u.sink);
  meta["source"] = to_string(u.source);
  nlohmann::json formulas;
  for (const auto& [event, f] : u.event_formula)
    formulas[std::to_string(event)] = to_string(f);
  meta["event_formulas"] = std::move(formulas);
  j["synthesis"] = std::move(meta);
  return j;
}

nlohmann::json to_json(const BisimRelation& rel) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [left, right] : rel.pairs)
    out.push_back({{"left", left}, {"right", right}});
  return out;
}

namespace {

void fail_if_invalid(const std::vector<std::string>& problems) {
  if (problems.empty()) return;
  std::ostringstream out;
  out << "invalid document:";
  for (const std::string& p : problems) out << "\n  - " << p;
  throw ModelError(out.str());
}

std::map<AgentId, std::set<Edge>> relations_from_json(
    const nlohmann::json& j, const std::vector<AgentId>& agents) {
  std::map<AgentId, std::set<Edge>> rel;
  for (const AgentId& a : agents) rel[a];
  for (const auto& entry : j) {
    rel[entry.at("agent").get<std::string>()].insert(
        {entry.at("from").get<std::string>(), entry.at("to").get<std::string>()});
  }
  return rel;
}

}  // namespace

Document document_from_json(const nlohmann::json& j) {
  Document doc;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "kripke") {
    KripkeModel m;
    m.agents = j.at("agents").get<std::vector<std::string>>();
    std::sort(m.agents.begin(), m.agents.end());
    for (const auto& world : j.at("worlds")) {
      std::string id = world.at("id").get<std::string>();
      for (const auto& atom : world.at("atoms"))
        m.valuation[atom.get<std::string>()].insert(id);
      m.worlds.push_back(std::move(id));
    }
    std::sort(m.worlds.begin(), m.worlds.end());
    m.relations = relations_from_json(j.at("relations"), m.agents);
    m.point = j.at("point").get<std::string>();
    fail_if_invalid(validate(m));
    doc.value = std::move(m);
    return doc;
  }
  if (kind == "action") {
    ActionModel u;
    u.agents = j.at("agents").get<std::vector<std::string>>();
    std::sort(u.agents.begin(), u.agents.end());
    for (const auto& event : j.at("events")) {
      std::string id = event.at("id").get<std::string>();
      u.pre.emplace(id, parse(event.at("pre").get<std::string>()));
      u.events.push_back(std::move(id));
    }
    std::sort(u.events.begin(), u.events.end());
    u.relations = relations_from_json(j.at("relations"), u.agents);
    u.point = j.at("point").get<std::string>();
    fail_if_invalid(validate(u));
    if (j.contains("synthesis")) {
      const auto& meta = j.at("synthesis");
      doc.synthesized = synthesized_from(u, meta.at("source").get<std::string>(),
                                         meta.at("root").get<std::string>(),
                                         meta.at("sink").get<std::string>());
    }
    doc.value = std::move(u);
    return doc;
  }
  throw ModelError("unknown document kind: " + kind);
}

SynthesizedModel synthesized_from(const ActionModel& action,
                                  const std::string& source,
                                  const std::string& root,
                                  const std::string& sink) {
  auto classified = GoalFormula::classify(parse(source));
  auto* goal = std::get_if<GoalFormula>(&classified);
  if (goal == nullptr || !goal->is_normal())
    throw ModelError("synthesis metadata source is not a normal goal: " +
                     source);
  std::vector<AgentId> agents = action.agents;
  SynthesizedModel rebuilt = synthesize(*goal, agents);
  if (root != "0" || sink != "-1")
    throw ModelError("synthesis metadata must use root 0 and sink -1");
  // The metadata is trustworthy only if it reproduces the stored model.
  auto canonical = [](const ActionModel& u) {
    ActionModel copy = u;
    for (auto& [e, f] : copy.pre) f = desugar(f);
    return to_canonical_text(to_json(copy));
  };
  if (canonical(rebuilt.action) != canonical(action))
    throw ModelError(
        "synthesis metadata does not reproduce the stored action model");
  return rebuilt;
}

std::string to_canonical_text(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

Document load_document(const std::string& path) {
  return document_from_json(nlohmann::json::parse(read_file(path)));
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace delsynth
