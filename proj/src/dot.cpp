#include "delsynth/dot.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace delsynth {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void emit_edges(std::ostringstream& out,
                const std::map<AgentId, std::set<Edge>>& relations) {
  std::map<Edge, std::vector<AgentId>> grouped;
  for (const auto& [agent, edges] : relations)
    for (const Edge& e : edges) grouped[e].push_back(agent);
  for (const auto& [e, agents] : grouped) {
    std::string label;
    for (const AgentId& a : agents) {
      if (!label.empty()) label += ',';
      label += a;
    }
    out << "  \"" << escape(e.first) << "\" -> \"" << escape(e.second)
        << "\" [label=\"" << escape(label) << "\"];\n";
  }
}

}  // namespace

std::string to_dot(const KripkeModel& m) {
  std::ostringstream out;
  out << "digraph kripke {\n  rankdir=LR;\n  node [shape=circle];\n";
  std::vector<std::string> worlds = m.worlds;
  std::sort(worlds.begin(), worlds.end());
  for (const std::string& w : worlds) {
    std::string atoms;
    for (const auto& [atom, where] : m.valuation) {
      if (!where.count(w)) continue;
      if (!atoms.empty()) atoms += ',';
      atoms += atom;
    }
    out << "  \"" << escape(w) << "\" [label=\"" << escape(w);
    if (!atoms.empty()) out << "\\n" << escape(atoms);
    out << "\"";
    if (w == m.point) out << ", style=filled, fillcolor=lightgray";
    out << "];\n";
  }
  emit_edges(out, m.relations);
  out << "}\n";
  return out.str();
}

std::string to_dot(const ModalSyntacticTree& tree) {
  std::ostringstream out;
  out << "digraph modal_tree {\n  node [shape=circle];\n"
      << "  \"n0\" [label=\"\", style=filled, fillcolor=black];\n";
  int next = 1;
  auto emit = [&](auto&& self, const std::string& parent,
                  const std::vector<ModalTreeNode>& nodes) -> void {
    for (const ModalTreeNode& node : nodes) {
      std::string id = "n" + std::to_string(next++);
      out << "  \"" << id << "\" [label=\"B " << escape(node.label)
          << "\"];\n";
      out << "  \"" << parent << "\" -> \"" << id << "\";\n";
      self(self, id, node.children);
    }
  };
  emit(emit, "n0", tree.roots);
  out << "}\n";
  return out.str();
}

std::string to_dot(const ActionModel& u) {
  std::ostringstream out;
  out << "digraph action {\n  rankdir=LR;\n  node [shape=box];\n";
  std::vector<std::string> events = u.events;
  std::sort(events.begin(), events.end());
  for (const std::string& e : events) {
    out << "  \"" << escape(e) << "\" [label=\"" << escape(e) << "\\n"
        << escape(to_string(u.precondition(e))) << "\"";
    if (e == u.point) out << ", style=filled, fillcolor=lightgray";
    out << "];\n";
  }
  emit_edges(out, u.relations);
  out << "}\n";
  return out.str();
}

}  // namespace delsynth
