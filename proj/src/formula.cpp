#include "delsynth/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace delsynth {

bool is_name_token(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return name != "B" && name != "top" && name != "bot";
}

Formula Formula::make(FormulaKind kind, std::string label,
                      std::vector<Formula> kids) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->label = std::move(label);
  node->kids = std::move(kids);
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) {
  if (!is_name_token(name))
    throw std::invalid_argument("invalid atom name: \"" + name + "\"");
  return make(FormulaKind::Atom, std::move(name), {});
}

Formula Formula::top() { return make(FormulaKind::Top, "", {}); }

Formula Formula::bot() { return make(FormulaKind::Bot, "", {}); }

Formula Formula::neg(Formula f) {
  return make(FormulaKind::Not, "", {std::move(f)});
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return make(FormulaKind::And, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return make(FormulaKind::Or, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  return make(FormulaKind::Implies, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::believes(AgentId agent, Formula body) {
  if (!is_name_token(agent))
    throw std::invalid_argument("invalid agent id: \"" + agent + "\"");
  return make(FormulaKind::Believes, std::move(agent), {std::move(body)});
}

Formula Formula::possible(AgentId agent, Formula body) {
  if (!is_name_token(agent))
    throw std::invalid_argument("invalid agent id: \"" + agent + "\"");
  return make(FormulaKind::Possible, std::move(agent), {std::move(body)});
}

const std::string& Formula::atom_name() const {
  if (kind() != FormulaKind::Atom) throw std::logic_error("not an atom");
  return node_->label;
}

const AgentId& Formula::agent() const {
  if (kind() != FormulaKind::Believes && kind() != FormulaKind::Possible)
    throw std::logic_error("not a modal operator");
  return node_->label;
}

const Formula& Formula::lhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("not a binary connective");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("not a binary connective");
  return node_->kids[1];
}

const Formula& Formula::body() const {
  if (node_->kids.size() != 1) throw std::logic_error("not a unary connective");
  return node_->kids[0];
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Atom:
      return a.atom_name().compare(b.atom_name());
    case FormulaKind::Not: {
      return compare(a.body(), b.body());
    }
    case FormulaKind::Believes:
    case FormulaKind::Possible: {
      if (int c = a.agent().compare(b.agent()); c != 0) return c;
      return compare(a.body(), b.body());
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
  return 0;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  return compare(*this, other) == 0;
}

bool Formula::operator<(const Formula& other) const {
  return compare(*this, other) < 0;
}

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Not:
      return Formula::neg(desugar(f.body()));
    case FormulaKind::And:
      return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case FormulaKind::Or:
      // a | b  ==  ~(~a & ~b)
      return Formula::neg(Formula::conj(Formula::neg(desugar(f.lhs())),
                                        Formula::neg(desugar(f.rhs()))));
    case FormulaKind::Implies:
      // a -> b  ==  ~(a & ~b)
      return Formula::neg(
          Formula::conj(desugar(f.lhs()), Formula::neg(desugar(f.rhs()))));
    case FormulaKind::Believes:
      return Formula::believes(f.agent(), desugar(f.body()));
    case FormulaKind::Possible:
      // <B_i> a  ==  ~B_i ~a
      return Formula::neg(
          Formula::believes(f.agent(), Formula::neg(desugar(f.body()))));
  }
  throw std::logic_error("unreachable");
}

namespace {

// Binding strength; larger binds tighter.
int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Implies:
      return 1;
    case FormulaKind::Or:
      return 2;
    case FormulaKind::And:
      return 3;
    case FormulaKind::Not:
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      return 4;
    default:
      return 5;
  }
}

void print(const Formula& f, std::ostringstream& out) {
  auto child = [&out](const Formula& sub, int min_prec) {
    if (precedence(sub.kind()) < min_prec) {
      out << '(';
      print(sub, out);
      out << ')';
    } else {
      print(sub, out);
    }
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
      out << f.atom_name();
      break;
    case FormulaKind::Top:
      out << "top";
      break;
    case FormulaKind::Bot:
      out << "bot";
      break;
    case FormulaKind::Not:
      out << '~';
      child(f.body(), precedence(FormulaKind::Not));
      break;
    case FormulaKind::Believes:
      out << "B " << f.agent() << ' ';
      child(f.body(), precedence(FormulaKind::Believes));
      break;
    case FormulaKind::Possible:
      // no concrete operator; print the ~B..~ expansion
      out << "~B " << f.agent() << " ~";
      child(f.body(), precedence(FormulaKind::Not));
      break;
    case FormulaKind::And:
      // parenthesize a nested And on the left so that re-parsing, which
      // folds conjunct lists to the right, reproduces the tree exactly
      child(f.lhs(), precedence(FormulaKind::And) + 1);
      out << " & ";
      child(f.rhs(), precedence(FormulaKind::And));
      break;
    case FormulaKind::Or:
      child(f.lhs(), precedence(FormulaKind::Or) + 1);
      out << " | ";
      child(f.rhs(), precedence(FormulaKind::Or));
      break;
    case FormulaKind::Implies:
      child(f.lhs(), precedence(FormulaKind::Implies) + 1);
      out << " -> ";
      child(f.rhs(), precedence(FormulaKind::Implies));
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print(f, out);
  return out.str();
}

std::set<AgentId> target_agents(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return {};
    case FormulaKind::Not:
      return target_agents(f.body());
    case FormulaKind::And: {
      auto left = target_agents(f.lhs());
      auto right = target_agents(f.rhs());
      left.insert(right.begin(), right.end());
      return left;
    }
    case FormulaKind::Believes:
      return {f.agent()};
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Possible:
      return target_agents(desugar(f));
  }
  throw std::logic_error("unreachable");
}

bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Not:
      return is_propositional(f.body());
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return is_propositional(f.lhs()) && is_propositional(f.rhs());
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      return false;
  }
  throw std::logic_error("unreachable");
}

int modal_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Not:
      return modal_depth(f.body());
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      return 1 + modal_depth(f.body());
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out.insert(f.atom_name());
      return;
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return;
    case FormulaKind::Not:
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      collect_atoms(f.body(), out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

void collect_agents(const Formula& f, std::set<AgentId>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return;
    case FormulaKind::Not:
      collect_agents(f.body(), out);
      return;
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      out.insert(f.agent());
      collect_agents(f.body(), out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_agents(f.lhs(), out);
      collect_agents(f.rhs(), out);
      return;
  }
}

void collect_prefixes(const Formula& f, std::vector<AgentId>& prefix,
                      std::set<std::vector<AgentId>>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return;
    case FormulaKind::Not:
      collect_prefixes(f.body(), prefix, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_prefixes(f.lhs(), prefix, out);
      collect_prefixes(f.rhs(), prefix, out);
      return;
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      prefix.push_back(f.agent());
      out.insert(prefix);
      collect_prefixes(f.body(), prefix, out);
      prefix.pop_back();
      return;
  }
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<AgentId> agents_of(const Formula& f) {
  std::set<AgentId> out;
  collect_agents(f, out);
  return out;
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  if (f.kind() == FormulaKind::And) {
    auto left = conjuncts(f.lhs());
    auto right = conjuncts(f.rhs());
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
  } else {
    out.push_back(f);
  }
  return out;
}

Formula conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return Formula::top();
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
    acc = Formula::conj(*it, acc);
  return acc;
}

std::set<std::vector<AgentId>> modal_prefixes(const Formula& f) {
  std::set<std::vector<AgentId>> out;
  out.insert(std::vector<AgentId>{});
  std::vector<AgentId> prefix;
  collect_prefixes(f, prefix, out);
  return out;
}

}  // namespace delsynth
