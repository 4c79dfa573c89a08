#include "delsynth/bisim.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace delsynth {

namespace {

// One side of a comparison, indexed for refinement: node ids, an initial
// partition label per node and per-agent successor lists.
struct Structure {
  std::vector<std::string> ids;
  std::map<std::string, int> index;
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<int>>> succ;  // [agent][node]
};

std::vector<AgentId> common_agents(const std::vector<AgentId>& a,
                                   const std::vector<AgentId>& b) {
  if (a != b) throw ModelError("structures declare different agent sets");
  return a;
}

void index_nodes(Structure& s, const std::vector<std::string>& nodes) {
  s.ids = nodes;
  for (std::size_t i = 0; i < s.ids.size(); ++i)
    s.index.emplace(s.ids[i], static_cast<int>(i));
}

void build_succ(Structure& s, const std::vector<AgentId>& agents,
                const std::map<AgentId, std::set<Edge>>& relations) {
  s.succ.assign(agents.size(), {});
  for (std::size_t ai = 0; ai < agents.size(); ++ai) {
    auto& per_node = s.succ[ai];
    per_node.assign(s.ids.size(), {});
    auto it = relations.find(agents[ai]);
    if (it == relations.end()) continue;
    for (const Edge& e : it->second) {
      auto from = s.index.find(e.first);
      auto to = s.index.find(e.second);
      if (from == s.index.end() || to == s.index.end())
        throw ModelError("relation endpoint not in domain: " + e.first +
                         " -> " + e.second);
      per_node[from->second].push_back(to->second);
    }
    for (auto& v : per_node) std::sort(v.begin(), v.end());
  }
}

std::string atom_profile(const KripkeModel& m, const std::string& world,
                         const std::set<std::string>& vocabulary) {
  std::string out;
  for (const std::string& atom : vocabulary) {
    if (m.atom_true(atom, world)) {
      out += atom;
      out += ';';
    }
  }
  return out;
}

Structure structure_of(const KripkeModel& m,
                       const std::vector<AgentId>& agents,
                       const std::set<std::string>& vocabulary) {
  Structure s;
  index_nodes(s, m.worlds);
  s.labels.reserve(m.worlds.size());
  for (const std::string& w : m.worlds)
    s.labels.push_back(atom_profile(m, w, vocabulary));
  build_succ(s, agents, m.relations);
  return s;
}

bool eval_propositional(const Formula& f, const std::set<std::string>& truth) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return truth.count(f.atom_name()) > 0;
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return !eval_propositional(f.body(), truth);
    case FormulaKind::And:
      return eval_propositional(f.lhs(), truth) &&
             eval_propositional(f.rhs(), truth);
    case FormulaKind::Or:
      return eval_propositional(f.lhs(), truth) ||
             eval_propositional(f.rhs(), truth);
    case FormulaKind::Implies:
      return !eval_propositional(f.lhs(), truth) ||
             eval_propositional(f.rhs(), truth);
    default:
      throw std::logic_error("not propositional");
  }
}

constexpr std::size_t kMaxTruthTableAtoms = 16;

// Label for a precondition. Semantic mode canonicalizes propositional
// preconditions by their truth table over `atoms`; non-propositional
// preconditions and oversized vocabularies compare syntactically on the
// desugared form.
std::string pre_label(const Formula& pre, PreComparison cmp,
                      const std::vector<std::string>& atoms) {
  Formula core = desugar(pre);
  if (cmp == PreComparison::Semantic && is_propositional(core) &&
      atoms.size() <= kMaxTruthTableAtoms) {
    std::string bits = "tt:";
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size());
         ++mask) {
      std::set<std::string> truth;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (mask & (std::size_t{1} << i)) truth.insert(atoms[i]);
      bits += eval_propositional(core, truth) ? '1' : '0';
    }
    return bits;
  }
  return "pre:" + to_string(core);
}

Structure structure_of(const ActionModel& u,
                       const std::vector<AgentId>& agents, PreComparison cmp,
                       const std::vector<std::string>& atoms) {
  Structure s;
  index_nodes(s, u.events);
  s.labels.reserve(u.events.size());
  for (const std::string& e : u.events)
    s.labels.push_back(pre_label(u.precondition(e), cmp, atoms));
  build_succ(s, agents, u.relations);
  return s;
}

// Signature-based partition refinement on the disjoint union of the two
// structures. b's successor lists must already use union numbering.
BisimRelation max_bisim_generic(Structure a, Structure b,
                                std::size_t agent_count) {
  const int na = static_cast<int>(a.ids.size());
  const int nb = static_cast<int>(b.ids.size());
  for (auto& per_agent : b.succ)
    for (auto& list : per_agent)
      for (int& y : list) y += na;
  const int n = na + nb;
  auto succ_of = [&](std::size_t agent, int node) -> const std::vector<int>& {
    return node < na ? a.succ[agent][node] : b.succ[agent][node - na];
  };
  std::vector<int> block(n);
  {
    std::map<std::string, int> by_label;
    for (int x = 0; x < n; ++x) {
      const std::string& label = x < na ? a.labels[x] : b.labels[x - na];
      auto [it, inserted] =
          by_label.emplace(label, static_cast<int>(by_label.size()));
      block[x] = it->second;
    }
  }
  while (true) {
    using Signature = std::pair<int, std::vector<std::vector<int>>>;
    std::map<Signature, int> by_sig;
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      Signature sig;
      sig.first = block[x];
      sig.second.resize(agent_count);
      for (std::size_t agent = 0; agent < agent_count; ++agent) {
        std::set<int> seen;
        for (int y : succ_of(agent, x)) seen.insert(block[y]);
        sig.second[agent].assign(seen.begin(), seen.end());
      }
      auto [it, inserted] =
          by_sig.emplace(std::move(sig), static_cast<int>(by_sig.size()));
      next[x] = it->second;
    }
    if (next == block) break;
    block = std::move(next);
  }
  BisimRelation out;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      if (block[x] == block[na + y]) out.pairs.insert({a.ids[x], b.ids[y]});
  return out;
}

std::set<std::string> united_vocabulary(const KripkeModel& a,
                                        const KripkeModel& b) {
  std::set<std::string> vocab;
  for (const auto& [atom, where] : a.valuation)
    if (!where.empty()) vocab.insert(atom);
  for (const auto& [atom, where] : b.valuation)
    if (!where.empty()) vocab.insert(atom);
  return vocab;
}

std::vector<std::string> united_pre_atoms(const ActionModel& a,
                                          const ActionModel& b) {
  std::set<std::string> atoms;
  for (const auto& [e, f] : a.pre) {
    auto more = atoms_of(f);
    atoms.insert(more.begin(), more.end());
  }
  for (const auto& [e, f] : b.pre) {
    auto more = atoms_of(f);
    atoms.insert(more.begin(), more.end());
  }
  return {atoms.begin(), atoms.end()};
}

}  // namespace

BisimRelation max_bisimulation(const KripkeModel& a, const KripkeModel& b) {
  auto agents = common_agents(a.agents, b.agents);
  auto vocab = united_vocabulary(a, b);
  return max_bisim_generic(structure_of(a, agents, vocab),
                           structure_of(b, agents, vocab), agents.size());
}

BisimRelation max_bisimulation(const ActionModel& a, const ActionModel& b,
                               PreComparison cmp) {
  auto agents = common_agents(a.agents, b.agents);
  auto atoms = united_pre_atoms(a, b);
  return max_bisim_generic(structure_of(a, agents, cmp, atoms),
                           structure_of(b, agents, cmp, atoms),
                           agents.size());
}

bool bisimilar(const KripkeModel& a, const std::string& pa,
               const KripkeModel& b, const std::string& pb) {
  if (!a.has_world(pa)) throw ModelError("unknown world: " + pa);
  if (!b.has_world(pb)) throw ModelError("unknown world: " + pb);
  return max_bisimulation(a, b).relates(pa, pb);
}

bool bisimilar(const ActionModel& a, const std::string& pa,
               const ActionModel& b, const std::string& pb,
               PreComparison cmp) {
  if (!a.has_event(pa)) throw ModelError("unknown event: " + pa);
  if (!b.has_event(pb)) throw ModelError("unknown event: " + pb);
  return max_bisimulation(a, b, cmp).relates(pa, pb);
}

namespace {

template <typename ModelT>
bool g_bisimilar_generic(const ModelT& a, const std::string& pa,
                         const ModelT& b, const std::string& pb,
                         const std::set<AgentId>& group,
                         const BisimRelation& full) {
  for (const AgentId& agent : group) {
    for (const std::string& ua : a.successors(agent, pa)) {
      bool matched = false;
      for (const std::string& ub : b.successors(agent, pb))
        if (full.relates(ua, ub)) {
          matched = true;
          break;
        }
      if (!matched) return false;
    }
    for (const std::string& ub : b.successors(agent, pb)) {
      bool matched = false;
      for (const std::string& ua : a.successors(agent, pa))
        if (full.relates(ua, ub)) {
          matched = true;
          break;
        }
      if (!matched) return false;
    }
  }
  return true;
}

void require_group(const std::vector<AgentId>& agents,
                   const std::set<AgentId>& group) {
  std::set<AgentId> declared(agents.begin(), agents.end());
  for (const AgentId& g : group)
    if (!declared.count(g)) throw ModelError("unknown agent: " + g);
}

}  // namespace

bool g_bisimilar(const KripkeModel& a, const std::string& pa,
                 const KripkeModel& b, const std::string& pb,
                 const std::set<AgentId>& group) {
  require_group(common_agents(a.agents, b.agents), group);
  if (!a.has_world(pa)) throw ModelError("unknown world: " + pa);
  if (!b.has_world(pb)) throw ModelError("unknown world: " + pb);
  return g_bisimilar_generic(a, pa, b, pb, group, max_bisimulation(a, b));
}

bool g_bisimilar(const ActionModel& a, const std::string& pa,
                 const ActionModel& b, const std::string& pb,
                 const std::set<AgentId>& group, PreComparison cmp) {
  require_group(common_agents(a.agents, b.agents), group);
  if (!a.has_event(pa)) throw ModelError("unknown event: " + pa);
  if (!b.has_event(pb)) throw ModelError("unknown event: " + pb);
  return g_bisimilar_generic(a, pa, b, pb, group, max_bisimulation(a, b, cmp));
}

EquivalenceVerdict modally_equivalent(
    const KripkeModel& a, const std::string& pa, const KripkeModel& b,
    const std::string& pb, const std::optional<std::set<AgentId>>& group) {
  if (group)
    return {g_bisimilar(a, pa, b, pb, *group),
            "group bisimilarity at the points with fully bisimilar successors"};
  return {bisimilar(a, pa, b, pb),
          "bisimilarity (coincides with modal equivalence on finite models)"};
}

namespace {

// Iterated color refinement over both structures at once, with exact
// successor and predecessor color multisets; nodes related by an
// isomorphism always receive equal colors.
struct ColoredPair {
  Structure a, b;
  std::vector<int> color_a, color_b;
};

void refine_colors(ColoredPair& cp, std::size_t agent_count) {
  const int na = static_cast<int>(cp.a.ids.size());
  const int nb = static_cast<int>(cp.b.ids.size());
  std::vector<std::vector<std::vector<int>>> pred_a(agent_count),
      pred_b(agent_count);
  for (std::size_t agent = 0; agent < agent_count; ++agent) {
    pred_a[agent].assign(na, {});
    pred_b[agent].assign(nb, {});
    for (int x = 0; x < na; ++x)
      for (int y : cp.a.succ[agent][x]) pred_a[agent][y].push_back(x);
    for (int x = 0; x < nb; ++x)
      for (int y : cp.b.succ[agent][x]) pred_b[agent][y].push_back(x);
  }
  {
    std::map<std::string, int> by_label;
    cp.color_a.resize(na);
    cp.color_b.resize(nb);
    for (int x = 0; x < na; ++x) {
      auto [it, inserted] = by_label.emplace(
          cp.a.labels[x], static_cast<int>(by_label.size()));
      cp.color_a[x] = it->second;
    }
    for (int x = 0; x < nb; ++x) {
      auto [it, inserted] = by_label.emplace(
          cp.b.labels[x], static_cast<int>(by_label.size()));
      cp.color_b[x] = it->second;
    }
  }
  while (true) {
    using Key = std::tuple<int, std::vector<std::vector<int>>,
                           std::vector<std::vector<int>>>;
    std::map<Key, int> by_key;
    auto key_of = [&](const Structure& s, const std::vector<int>& colors,
                      const std::vector<std::vector<std::vector<int>>>& preds,
                      int x) {
      Key key;
      std::get<0>(key) = colors[x];
      auto& succ_part = std::get<1>(key);
      auto& pred_part = std::get<2>(key);
      succ_part.resize(agent_count);
      pred_part.resize(agent_count);
      for (std::size_t agent = 0; agent < agent_count; ++agent) {
        for (int y : s.succ[agent][x]) succ_part[agent].push_back(colors[y]);
        std::sort(succ_part[agent].begin(), succ_part[agent].end());
        for (int y : preds[agent][x]) pred_part[agent].push_back(colors[y]);
        std::sort(pred_part[agent].begin(), pred_part[agent].end());
      }
      return key;
    };
    std::vector<int> next_a(na), next_b(nb);
    for (int x = 0; x < na; ++x) {
      auto [it, inserted] = by_key.emplace(
          key_of(cp.a, cp.color_a, pred_a, x), static_cast<int>(by_key.size()));
      next_a[x] = it->second;
    }
    for (int x = 0; x < nb; ++x) {
      auto [it, inserted] = by_key.emplace(
          key_of(cp.b, cp.color_b, pred_b, x), static_cast<int>(by_key.size()));
      next_b[x] = it->second;
    }
    if (next_a == cp.color_a && next_b == cp.color_b) break;
    cp.color_a = std::move(next_a);
    cp.color_b = std::move(next_b);
  }
}

IsomorphismResult isomorphic_generic(Structure a, const std::string& pa,
                                     Structure b, const std::string& pb,
                                     std::size_t agent_count) {
  IsomorphismResult result;
  auto pa_it = a.index.find(pa);
  auto pb_it = b.index.find(pb);
  if (pa_it == a.index.end() || pb_it == b.index.end())
    throw ModelError("unknown point: " + pa + " / " + pb);
  if (a.ids.size() != b.ids.size()) return result;
  const int point_a = pa_it->second;
  const int point_b = pb_it->second;
  const int n = static_cast<int>(a.ids.size());

  ColoredPair cp{std::move(a), std::move(b), {}, {}};
  refine_colors(cp, agent_count);
  {
    std::map<int, int> hist_a, hist_b;
    for (int c : cp.color_a) hist_a[c]++;
    for (int c : cp.color_b) hist_b[c]++;
    if (hist_a != hist_b) return result;
  }
  if (cp.color_a[point_a] != cp.color_b[point_b]) return result;

  // assignment order: point first, then rarest colors first
  std::vector<int> order;
  order.push_back(point_a);
  {
    std::map<int, int> freq;
    for (int c : cp.color_a) freq[c]++;
    std::vector<int> rest;
    for (int x = 0; x < n; ++x)
      if (x != point_a) rest.push_back(x);
    std::sort(rest.begin(), rest.end(), [&](int x, int y) {
      int fx = freq[cp.color_a[x]], fy = freq[cp.color_a[y]];
      if (fx != fy) return fx < fy;
      return x < y;
    });
    order.insert(order.end(), rest.begin(), rest.end());
  }

  std::vector<int> mapping(n, -1);
  std::vector<bool> used(n, false);
  auto edge = [&](const Structure& s, std::size_t agent, int x, int y) {
    const auto& list = s.succ[agent][x];
    return std::binary_search(list.begin(), list.end(), y);
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    int x = order[k];
    for (int y = 0; y < n; ++y) {
      if (used[y] || cp.color_b[y] != cp.color_a[x]) continue;
      if (x == point_a && y != point_b) continue;
      bool consistent = true;
      for (std::size_t agent = 0; agent < agent_count && consistent; ++agent) {
        if (edge(cp.a, agent, x, x) != edge(cp.b, agent, y, y))
          consistent = false;
        for (std::size_t j = 0; j < k && consistent; ++j) {
          int x2 = order[j];
          int y2 = mapping[x2];
          if (edge(cp.a, agent, x, x2) != edge(cp.b, agent, y, y2) ||
              edge(cp.a, agent, x2, x) != edge(cp.b, agent, y2, y))
            consistent = false;
        }
      }
      if (!consistent) continue;
      mapping[x] = y;
      used[y] = true;
      if (assign(k + 1)) return true;
      mapping[x] = -1;
      used[y] = false;
    }
    return false;
  };
  if (!assign(0)) return result;
  result.isomorphic = true;
  for (int x = 0; x < n; ++x)
    result.witness.emplace(cp.a.ids[x], cp.b.ids[mapping[x]]);
  return result;
}

}  // namespace

IsomorphismResult isomorphic_pointed(const KripkeModel& a,
                                     const std::string& pa,
                                     const KripkeModel& b,
                                     const std::string& pb) {
  auto agents = common_agents(a.agents, b.agents);
  auto vocab = united_vocabulary(a, b);
  return isomorphic_generic(structure_of(a, agents, vocab), pa,
                            structure_of(b, agents, vocab), pb,
                            agents.size());
}

IsomorphismResult isomorphic_pointed(const ActionModel& a,
                                     const std::string& pa,
                                     const ActionModel& b,
                                     const std::string& pb) {
  auto agents = common_agents(a.agents, b.agents);
  auto atoms = united_pre_atoms(a, b);
  return isomorphic_generic(
      structure_of(a, agents, PreComparison::Syntactic, atoms), pa,
      structure_of(b, agents, PreComparison::Syntactic, atoms), pb,
      agents.size());
}

}  // namespace delsynth
