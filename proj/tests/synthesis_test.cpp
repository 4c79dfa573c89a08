#include <doctest.h>

#include "delsynth/bisim.hpp"
#include "delsynth/parser.hpp"
#include "delsynth/random_gen.hpp"
#include "delsynth/synthesis.hpp"
#include "delsynth/update.hpp"
#include "support.hpp"

using namespace delsynth;
using testing::f;

TEST_SUITE_BEGIN("synthesis");

namespace {

const std::vector<AgentId> kBlt{"b", "l", "t"};

SynthesizedModel blt_goal_model() {
  return synthesize(testing::normal_goal("B b (B t p & B l B t p & B l p)"),
                    kBlt);
}

// The action model for the exam goal, written out edge by edge.
ActionModel expected_blt_action() {
  ActionModel u;
  u.agents = kBlt;
  u.events = {"-1", "0", "1", "2", "3", "4"};
  u.pre.emplace("0", Formula::top());
  u.pre.emplace("-1", Formula::top());
  u.pre.emplace("4", Formula::top());
  u.pre.emplace("3", Formula::atom("p"));
  u.pre.emplace("2", Formula::atom("p"));
  u.pre.emplace("1", Formula::atom("p"));
  u.relations["b"] = {{"0", "4"}, {"4", "4"}, {"3", "-1"}, {"2", "-1"},
                      {"1", "-1"}, {"-1", "-1"}};
  u.relations["t"] = {{"0", "-1"}, {"4", "3"}, {"3", "3"}, {"2", "1"},
                      {"1", "1"}, {"-1", "-1"}};
  u.relations["l"] = {{"0", "-1"}, {"4", "2"}, {"2", "2"}, {"3", "-1"},
                      {"1", "-1"}, {"-1", "-1"}};
  u.point = "0";
  return u;
}

int count_modal_operators(const Formula& g) {
  switch (g.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Not:
      return count_modal_operators(g.body());
    case FormulaKind::Believes:
    case FormulaKind::Possible:
      return 1 + count_modal_operators(g.body());
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return count_modal_operators(g.lhs()) + count_modal_operators(g.rhs());
  }
  return 0;
}

void check_structural_invariants(const SynthesizedModel& u) {
  const ActionModel& action = u.action;
  const Formula top = Formula::top();
  CHECK(desugar(action.precondition("0")) == top);
  CHECK(desugar(action.precondition("-1")) == top);
  for (const std::string& e : action.events)
    CHECK(is_propositional(action.precondition(e)));
  // root unreachable, sink absorbing
  for (const AgentId& agent : action.agents) {
    for (const Edge& edge : action.relations.at(agent)) {
      CHECK(edge.second != "0");
      if (edge.first == "-1") CHECK(edge.second == "-1");
    }
    // one successor per event (already enforced at construction)
    for (const std::string& e : action.events)
      CHECK(action.successors(agent, e).size() == 1);
  }
  // event count: one per belief operator plus root and sink
  CHECK(action.events.size() ==
        static_cast<std::size_t>(count_modal_operators(u.source)) + 2);
  // ignoring self loops, every goal event has exactly one parent and the
  // goal events hang below the root as a tree with the sink absorbing
  std::set<std::string> goal_events;
  for (int e : u.goal_events) goal_events.insert(std::to_string(e));
  CHECK(goal_events.size() == action.events.size() - 2);
  for (const std::string& e : goal_events) {
    int parents = 0;
    for (const AgentId& agent : action.agents)
      for (const Edge& edge : action.relations.at(agent))
        if (edge.second == e && edge.first != e) ++parents;
    CHECK(parents == 1);
  }
}

}  // namespace

TEST_CASE("a single belief gives the three event model") {
  SynthesizedModel u = synthesize(testing::normal_goal("B i p"), {"i", "j"});
  CHECK(u.action.events == std::vector<std::string>{"-1", "0", "1"});
  CHECK(u.action.precondition("1") == Formula::atom("p"));
  CHECK(u.action.relations.at("i") ==
        std::set<Edge>{{"0", "1"}, {"1", "1"}, {"-1", "-1"}});
  CHECK(u.action.relations.at("j") ==
        std::set<Edge>{{"0", "-1"}, {"1", "-1"}, {"-1", "-1"}});
  CHECK(u.action.point == "0");
  check_structural_invariants(u);
}

TEST_CASE("the intermediate conjunction numbers right before left") {
  SynthesizedModel u =
      synthesize(testing::normal_goal("B t p & B l (p & B t p)"), kBlt);
  CHECK(u.action.events ==
        std::vector<std::string>{"-1", "0", "1", "2", "3"});
  CHECK(u.action.precondition("1") == Formula::atom("p"));
  CHECK(u.action.precondition("2") == Formula::atom("p"));
  CHECK(u.action.precondition("3") == Formula::atom("p"));
  // 3 carries the left conjunct's belief, 2 the nested one, 1 its inner
  CHECK(u.event_formula.at(3) == f("B t p"));
  CHECK(u.event_formula.at(2) == f("B l (p & B t p)"));
  CHECK(u.event_formula.at(1) == f("B t p"));
  CHECK(u.action.relations.at("t") ==
        std::set<Edge>{{"0", "3"}, {"3", "3"}, {"2", "1"}, {"1", "1"},
                       {"-1", "-1"}});
  CHECK(u.action.relations.at("l") ==
        std::set<Edge>{{"0", "2"}, {"2", "2"}, {"3", "-1"}, {"1", "-1"},
                       {"-1", "-1"}});
  CHECK(u.action.relations.at("b") ==
        std::set<Edge>{{"0", "-1"}, {"3", "-1"}, {"2", "-1"}, {"1", "-1"},
                       {"-1", "-1"}});
  check_structural_invariants(u);
}

TEST_CASE("the exam goal reproduces the six event model exactly") {
  SynthesizedModel u = blt_goal_model();
  ActionModel expected = expected_blt_action();
  CHECK(u.action.events == expected.events);
  for (const std::string& e : expected.events)
    CHECK(desugar(u.action.precondition(e)) ==
          desugar(expected.precondition(e)));
  for (const AgentId& agent : kBlt)
    CHECK(u.action.relations.at(agent) == expected.relations.at(agent));
  CHECK(bisimilar(u.action, "0", expected, "0"));
  CHECK(isomorphic_pointed(u.action, "0", expected, "0").isomorphic);
  check_structural_invariants(u);
}

TEST_CASE("synthesize rejects unusable input") {
  GoalFormula not_normal =
      testing::goal("B b (B t p & B l B t p & B l p)");
  CHECK_THROWS_AS(synthesize(not_normal, kBlt), std::invalid_argument);
  GoalFormula normal = testing::normal_goal("B b B t p");
  CHECK_THROWS_AS(synthesize(normal, {"b"}), std::invalid_argument);
}

TEST_CASE("successors and event sequences") {
  SynthesizedModel u = blt_goal_model();
  CHECK(successor(u, "0", "b") == "4");
  CHECK(successor(u, "0", "t") == "-1");
  CHECK(successor(u, "-1", "b") == "-1");
  CHECK(successor(u, "-1", "l") == "-1");
  CHECK(successor(u, "4", "t") == "3");
  CHECK(successor(u, "4", "l") == "2");
  CHECK(successor(u, "2", "t") == "1");

  CHECK(event_sequence_for(u, {"b", "t"}) ==
        std::vector<std::string>{"4", "3"});
  CHECK(event_sequence_for(u, {"t", "l"}) ==
        std::vector<std::string>{"-1", "-1"});
  CHECK(event_sequence_for(u, {}).empty());
}

TEST_CASE("independence analysis") {
  SynthesizedModel u = blt_goal_model();

  TopShapeReport independent =
      analyze_independence(f("~B b B b p | B t B l p"), u);
  CHECK(independent.independent);

  TopShapeReport dependent = analyze_independence(f("~B b B t p"), u);
  CHECK_FALSE(dependent.independent);
  bool found = false;
  for (const TopShapeWitness& w : dependent.witnesses) {
    if (!w.blocking) continue;
    found = true;
    CHECK(w.blocking->first == "3");
    CHECK(w.blocking->second == Formula::atom("p"));
    CHECK(w.modal_seq == std::vector<AgentId>{"b", "t"});
  }
  CHECK(found);

  CHECK(analyze_independence(f("p & ~q"), u).independent);

  // both example formulas start true; only the independent one survives
  FixtureSet fx = builtin_fixtures();
  KripkeModel updated = pointed_update(fx.blt_initial, u.action).model;
  CHECK(model_check(fx.blt_initial, "v", f("~B b B b p | B t B l p")));
  CHECK(model_check(updated, "v@0", f("~B b B b p | B t B l p")));
  CHECK(model_check(fx.blt_initial, "v", f("~B b B t p")));
  CHECK_FALSE(model_check(updated, "v@0", f("~B b B t p")));
}

TEST_CASE("idempotence of the exam and private message updates") {
  FixtureSet fx = builtin_fixtures();
  SynthesizedModel u = blt_goal_model();
  IdempotenceCheck synth_check = verify_idempotent(u, fx.blt_initial);
  CHECK(synth_check.idempotent);
  REQUIRE(synth_check.projection_ok);
  CHECK(*synth_check.projection_ok);

  IdempotenceCheck plain = verify_idempotent(fx.priv_msg_u, fx.two_agent_m);
  CHECK(plain.idempotent);
  CHECK_FALSE(plain.projection_ok.has_value());
}

TEST_CASE("update synthesis succeeds on random instances") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(53);
  for (int i = 0; i < 300; ++i) {
    GoalFormula goal = random_normal_goal(rng, agents, atoms, 3);
    KripkeModel m = random_model(rng, agents, atoms, 5);
    SynthesizedModel u = synthesize(goal, agents);
    check_structural_invariants(u);
    UpdateResult updated = pointed_update(m, u.action);  // always defined
    CHECK(model_check(updated.model, updated.model.point, goal.formula()));
  }
}

TEST_CASE("independent formulas keep their truth value") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(59);
  int independent_seen = 0;
  for (int i = 0; i < 400; ++i) {
    GoalFormula goal = random_normal_goal(rng, agents, atoms, 2);
    SynthesizedModel u = synthesize(goal, agents);
    Formula theta = random_formula(rng, agents, atoms, 3);
    if (!analyze_independence(theta, u).independent) continue;
    ++independent_seen;
    KripkeModel m = random_model(rng, agents, atoms, 5);
    UpdateResult updated = pointed_update(m, u.action);
    CHECK(model_check(m, m.point, theta) ==
          model_check(updated.model, updated.model.point, theta));
  }
  CHECK(independent_seen > 50);
}

TEST_CASE("agents outside the goal keep all their beliefs") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    // goals over a and b only; c is a bystander
    GoalFormula goal = random_normal_goal(rng, {"a", "b"}, atoms, 2);
    SynthesizedModel u = synthesize(goal, agents);
    KripkeModel m = random_model(rng, agents, atoms, 4);
    UpdateResult updated = pointed_update(m, u.action);
    Formula sigma = random_formula(rng, agents, atoms, 2);
    Formula probe = Formula::believes("c", sigma);
    CHECK(model_check(m, m.point, probe) ==
          model_check(updated.model, updated.model.point, probe));
  }
}

TEST_CASE("purely modal goals keep propositional beliefs intact") {
  std::vector<AgentId> agents{"a", "b"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(67);
  for (int i = 0; i < 200; ++i) {
    // a's body has no propositional part
    GoalFormula inner = random_normal_goal(rng, {"b"}, atoms, 1);
    auto classified = GoalFormula::classify(
        Formula::believes("a", inner.formula()));
    GoalFormula goal = std::get<GoalFormula>(classified);
    REQUIRE(goal.is_normal());
    SynthesizedModel u = synthesize(goal, agents);
    KripkeModel m = random_model(rng, agents, atoms, 4);
    UpdateResult updated = pointed_update(m, u.action);
    Formula chi = random_propositional(rng, atoms, 2);
    Formula probe = Formula::believes("a", chi);
    CHECK(model_check(m, m.point, probe) ==
          model_check(updated.model, updated.model.point, probe));
  }
}

TEST_CASE("consistency is preserved exactly when preconditions were possible") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(71);
  for (int i = 0; i < 150; ++i) {
    GoalFormula goal = random_normal_goal(rng, agents, atoms, 3);
    SynthesizedModel u = synthesize(goal, agents);
    KripkeModel m = random_model(rng, agents, atoms, 5);
    UpdateResult updated = pointed_update(m, u.action);
    // every alternating agent chain up to length 4
    std::vector<std::vector<AgentId>> seqs;
    std::vector<AgentId> current;
    auto extend = [&](auto&& self) -> void {
      if (!current.empty()) seqs.push_back(current);
      if (current.size() == 4) return;
      for (const AgentId& a : agents) {
        if (!current.empty() && current.back() == a) continue;
        current.push_back(a);
        self(self);
        current.pop_back();
      }
    };
    extend(extend);
    for (const auto& seq : seqs) {
      Formula lhs = testing::consistency_probe(u, seq);
      bool before = model_check(m, m.point, lhs);
      bool after = !believes_bottom(updated.model, updated.model.point, seq);
      CAPTURE(to_string(goal.formula()));
      CHECK(before == after);
    }
  }
}

TEST_CASE("a fresh propositional demand breaks consistency iff unexpected") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(73);
  for (int i = 0; i < 200; ++i) {
    // B a (xi & B c pi) & B b omega, with a not in the second conjunct
    Formula xi = random_propositional(rng, atoms, 2);
    Formula pi = random_propositional(rng, atoms, 1);
    Formula omega = random_propositional(rng, atoms, 1);
    Formula goal_formula = Formula::conj(
        Formula::believes(
            "a", Formula::conj(xi, Formula::believes("c", pi))),
        Formula::believes("b", omega));
    GoalFormula goal =
        std::get<GoalFormula>(GoalFormula::classify(goal_formula));
    REQUIRE(goal.is_normal());
    SynthesizedModel u = synthesize(goal, agents);
    KripkeModel m = random_model(rng, agents, atoms, 5);
    UpdateResult updated = pointed_update(m, u.action);
    bool considers_possible =
        model_check(m, m.point, Formula::possible("a", xi));
    bool consistent_after =
        !believes_bottom(updated.model, updated.model.point, {"a"});
    CHECK(considers_possible == consistent_after);
  }
}

TEST_CASE("synthesized updates are idempotent on random instances") {
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(79);
  for (int i = 0; i < 200; ++i) {
    GoalFormula goal = random_normal_goal(rng, agents, atoms, 3);
    SynthesizedModel u = synthesize(goal, agents);
    KripkeModel m = random_model(rng, agents, atoms, 5);
    IdempotenceCheck check = verify_idempotent(u, m);
    CAPTURE(to_string(goal.formula()));
    CHECK(check.idempotent);
    REQUIRE(check.projection_ok);
    CHECK(*check.projection_ok);
  }
}

TEST_CASE("stage models match the expected shapes up to renaming") {
  // the two building stages of the exam goal, with the labels used when
  // they are built as part of the full model
  SynthesizedModel stage1 = synthesize(testing::normal_goal("B t p"), kBlt);
  ActionModel expected1;
  expected1.agents = kBlt;
  expected1.events = {"-1", "0", "3"};
  expected1.pre.emplace("0", Formula::top());
  expected1.pre.emplace("-1", Formula::top());
  expected1.pre.emplace("3", Formula::atom("p"));
  expected1.relations["t"] = {{"0", "3"}, {"3", "3"}, {"-1", "-1"}};
  expected1.relations["b"] = {{"0", "-1"}, {"3", "-1"}, {"-1", "-1"}};
  expected1.relations["l"] = {{"0", "-1"}, {"3", "-1"}, {"-1", "-1"}};
  expected1.point = "0";
  CHECK(bisimilar(stage1.action, "0", expected1, "0"));
  CHECK(isomorphic_pointed(stage1.action, "0", expected1, "0").isomorphic);

  SynthesizedModel stage2 =
      synthesize(testing::normal_goal("B l (p & B t p)"), kBlt);
  ActionModel expected2;
  expected2.agents = kBlt;
  expected2.events = {"-1", "0", "1", "2"};
  expected2.pre.emplace("0", Formula::top());
  expected2.pre.emplace("-1", Formula::top());
  expected2.pre.emplace("2", Formula::atom("p"));
  expected2.pre.emplace("1", Formula::atom("p"));
  expected2.relations["l"] = {{"0", "2"}, {"2", "2"}, {"1", "-1"},
                              {"-1", "-1"}};
  expected2.relations["t"] = {{"0", "-1"}, {"2", "1"}, {"1", "1"},
                              {"-1", "-1"}};
  expected2.relations["b"] = {{"0", "-1"}, {"2", "-1"}, {"1", "-1"},
                              {"-1", "-1"}};
  expected2.point = "0";
  CHECK(bisimilar(stage2.action, "0", expected2, "0"));
  CHECK(isomorphic_pointed(stage2.action, "0", expected2, "0").isomorphic);
}

TEST_SUITE_END();
