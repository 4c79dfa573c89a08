#include <doctest.h>

#include "delsynth/model.hpp"
#include "delsynth/parser.hpp"
#include "delsynth/random_gen.hpp"
#include "delsynth/synthesis.hpp"
#include "delsynth/update.hpp"
#include "support.hpp"

using namespace delsynth;
using testing::f;

TEST_SUITE_BEGIN("model");

namespace {

// The exam scenario after the trick.
KripkeModel updated_blt() {
  FixtureSet fx = builtin_fixtures();
  SynthesizedModel u =
      synthesize(testing::normal_goal("B b (B t p & B l B t p & B l p)"),
                 fx.blt_initial.agents);
  return pointed_update(fx.blt_initial, u.action).model;
}

}  // namespace

TEST_CASE("fixtures are well formed") {
  FixtureSet fx = builtin_fixtures();
  CHECK(validate(fx.blt_initial).empty());
  CHECK(validate(fx.two_agent_m).empty());
  CHECK(validate(fx.priv_msg_u).empty());

  CHECK(fx.blt_initial.worlds.size() == 2);
  CHECK(fx.blt_initial.agents.size() == 3);
  for (const AgentId& a : fx.blt_initial.agents)
    CHECK(fx.blt_initial.relations.at(a).size() == 4);

  CHECK(fx.priv_msg_u.events == std::vector<std::string>{"m", "n"});
  CHECK(fx.priv_msg_u.pre.at("m") == Formula::atom("p"));
  CHECK(fx.priv_msg_u.pre.at("n") == Formula::top());
  CHECK(fx.priv_msg_u.relations.at("a") ==
        std::set<Edge>{{"m", "m"}, {"n", "n"}});
  CHECK(fx.priv_msg_u.relations.at("b") ==
        std::set<Edge>{{"m", "n"}, {"n", "n"}});
  CHECK(fx.priv_msg_u.point == "m");

  CHECK(fx.two_agent_m.valuation.at("p") == std::set<std::string>{"u"});
  CHECK(fx.two_agent_m.point == "u");
}

TEST_CASE("model_check basics") {
  FixtureSet fx = builtin_fixtures();
  CHECK_FALSE(model_check(fx.blt_initial, "v", f("p")));
  CHECK(model_check(fx.blt_initial, "u", f("p")));
  CHECK(model_check(fx.blt_initial, "v", f("top")));
  CHECK(model_check(fx.blt_initial, "v", f("~(B b p | B b ~p)")));

  CHECK_THROWS_AS(model_check(fx.blt_initial, "nowhere", f("p")), ModelError);
  CHECK_THROWS_AS(model_check(fx.blt_initial, "v", f("B z p")), ModelError);
}

TEST_CASE("the updated exam model satisfies the narrated beliefs") {
  KripkeModel m = updated_blt();
  const std::string at = m.point;
  CHECK(m.worlds.size() == 8);

  CHECK_FALSE(model_check(m, at, f("B b p | B b ~p")));
  CHECK(model_check(m, at, f("B b B t p")));
  CHECK(model_check(m, at, f("B b B l p")));
  CHECK(model_check(m, at, f("B b B l B t p")));
  CHECK(model_check(m, at, f("B b (B t p & B l B t p & B l p)")));
  CHECK(model_check(m, at, f("B b B l (~B b p & ~B b ~p)")));
  CHECK_FALSE(model_check(m, at, f("B b p")));
  // nobody's beliefs became inconsistent, anywhere
  for (const std::string& w : m.worlds)
    CHECK(model_check(m, w, f("~B b bot & ~B l bot & ~B t bot")));
  // the correct answer is still not-p at the point
  CHECK(model_check(m, at, f("~p")));
}

TEST_CASE("believes_bottom") {
  FixtureSet fx = builtin_fixtures();
  KripkeModel m = updated_blt();
  CHECK_FALSE(believes_bottom(m, m.point, {"b"}));
  CHECK_FALSE(believes_bottom(fx.blt_initial, "v", {"b", "l", "t"}));

  KripkeModel lonely = testing::one_world_model({"i"}, {}, false);
  CHECK(believes_bottom(lonely, "w", {"i"}));
  KripkeModel serial = testing::one_world_model({"i"}, {}, true);
  CHECK_FALSE(believes_bottom(serial, "w", {"i"}));
  CHECK_FALSE(believes_bottom(serial, "w", {}));
}

TEST_CASE("validate reports violations") {
  FixtureSet fx = builtin_fixtures();

  KripkeModel bad = fx.blt_initial;
  bad.point = "z";
  auto problems = validate(bad);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("point not in domain") != std::string::npos);

  ActionModel incomplete = fx.priv_msg_u;
  incomplete.pre.erase("n");
  problems = validate(incomplete);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("pre not total") != std::string::npos);

  KripkeModel stray = fx.blt_initial;
  stray.relations["b"].insert({"u", "z"});
  CHECK_FALSE(validate(stray).empty());

  ActionModel at_sign = fx.priv_msg_u;
  at_sign.events.push_back("e@1");
  at_sign.pre.emplace("e@1", Formula::top());
  CHECK_FALSE(validate(at_sign).empty());

  KripkeModel reserved = fx.blt_initial;
  reserved.agents.push_back("top");
  reserved.relations["top"] = {};
  CHECK_FALSE(validate(reserved).empty());
}

TEST_CASE("frame class predicates") {
  FixtureSet fx = builtin_fixtures();
  Frame total = frame_of(fx.blt_initial);
  CHECK(is_transitive(total));
  CHECK(is_euclidean(total));
  CHECK(is_serial(total));

  Frame chain;
  chain.agents = {"i"};
  chain.nodes = {"x", "y", "z"};
  chain.relations["i"] = {{"x", "y"}, {"y", "z"}};
  chain.point = "x";
  CHECK_FALSE(is_transitive(chain));
  CHECK_FALSE(is_serial(chain));

  std::vector<AgentId> agents{"a", "b"};
  std::vector<std::string> atoms{"p"};
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    KripkeModel m = random_k45_model(rng, agents, atoms, 5);
    CHECK(is_transitive(frame_of(m)));
    CHECK(is_euclidean(frame_of(m)));
  }
}

TEST_CASE("dual and conjunction semantics on random models") {
  std::vector<AgentId> agents{"a", "b"};
  std::vector<std::string> atoms{"p", "q"};
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    KripkeModel m = random_model(rng, agents, atoms, 5);
    Formula body = random_formula(rng, agents, atoms, 2);
    AgentId agent = agents[static_cast<std::size_t>(i % 2)];
    Formula dual = Formula::possible(agent, body);
    Formula expanded =
        Formula::neg(Formula::believes(agent, Formula::neg(body)));
    Formula lhs = random_formula(rng, agents, atoms, 2);
    for (const std::string& w : m.worlds) {
      CHECK(model_check(m, w, dual) == model_check(m, w, expanded));
      CHECK(model_check(m, w, Formula::conj(lhs, body)) ==
            (model_check(m, w, lhs) && model_check(m, w, body)));
    }
  }
}

TEST_SUITE_END();
