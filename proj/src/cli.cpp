#include "delsynth/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "delsynth/bisim.hpp"
#include "delsynth/dot.hpp"
#include "delsynth/json_io.hpp"
#include "delsynth/parser.hpp"
#include "delsynth/privatization.hpp"
#include "delsynth/random_gen.hpp"
#include "delsynth/synthesis.hpp"
#include "delsynth/update.hpp"

namespace delsynth {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndefined = 3;

constexpr std::uint64_t kDefaultSeed = 271828;

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("DELSYNTH_SEED"))
    return std::strtoull(env, nullptr, 10);
  return kDefaultSeed;
}

GoalFormula classify_or_fail(const Formula& f) {
  auto result = GoalFormula::classify(f);
  if (auto* rejection = std::get_if<GoalRejection>(&result))
    throw ModelError("not a goal formula; offending subterm: " +
                     to_string(rejection->violating) + " (" +
                     rejection->reason + ")");
  return std::get<GoalFormula>(result);
}

std::vector<AgentId> agents_for_goal(const GoalFormula& goal,
                                     const std::vector<AgentId>& extra) {
  std::set<AgentId> agents = agents_of(goal.formula());
  agents.insert(extra.begin(), extra.end());
  return {agents.begin(), agents.end()};
}

// Normalizes with a notice when the goal was not already normal.
GoalFormula normalized_goal(const Formula& f, std::ostream& err) {
  GoalFormula goal = classify_or_fail(f);
  if (!goal.is_normal()) {
    GoalFormula normal = normal_form(goal);
    err << "note: goal normalized to " << to_string(normal.formula()) << "\n";
    return normal;
  }
  return goal;
}

struct RunReport {
  nlohmann::json j;

  explicit RunReport(const std::string& command) {
    j["command"] = command;
    j["inputs"] = nlohmann::json::object();
    j["outputs"] = nlohmann::json::array();
    j["stats"] = nlohmann::json::object();
    j["verdicts"] = nlohmann::json::array();
  }
  void input(const std::string& path, const std::string& bytes) {
    j["inputs"][path] = content_hash(bytes);
  }
  void inline_input(const std::string& name, const std::string& text) {
    j["inputs"][name] = content_hash(text);
  }
  void output(const std::string& path) { j["outputs"].push_back(path); }
  void verdict(const std::string& check, const std::string& property,
               bool pass, nlohmann::json details) {
    j["verdicts"].push_back({{"check", check},
                             {"property", property},
                             {"pass", pass},
                             {"details", std::move(details)}});
  }
  bool all_pass() const {
    for (const auto& v : j["verdicts"])
      if (!v["pass"].get<bool>()) return false;
    return true;
  }
};

Document load_input(const std::string& path, RunReport* report) {
  std::string bytes = read_file(path);
  if (report) report->input(path, bytes);
  return document_from_json(nlohmann::json::parse(bytes));
}

KripkeModel load_kripke(const std::string& path, RunReport* report) {
  Document doc = load_input(path, report);
  if (!doc.is_kripke())
    throw ModelError(path + " does not hold a Kripke model document");
  return doc.kripke();
}

struct LoadedAction {
  ActionModel action;
  std::optional<SynthesizedModel> synthesized;
};

LoadedAction load_action(const std::string& path, RunReport* report) {
  Document doc = load_input(path, report);
  if (doc.is_kripke())
    throw ModelError(path + " does not hold an action model document");
  return {doc.action(), doc.synthesized};
}

int cmd_parse(const std::string& text, std::ostream& out) {
  Formula f = parse(text);
  out << to_string(f) << "\n";
  return kExitOk;
}

int cmd_normalize(const std::string& text, std::ostream& out,
                  std::ostream& err) {
  GoalFormula goal = classify_or_fail(parse(text));
  GoalFormula normal = goal.is_normal() ? goal : normal_form(goal);
  if (!goal.is_normal())
    err << "note: input was not normal\n";
  out << to_string(normal.formula()) << "\n";
  return kExitOk;
}

int cmd_synthesize(const std::string& text,
                   const std::vector<AgentId>& extra_agents,
                   const std::string& out_path, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  RunReport report("synthesize");
  report.inline_input("goal", text);
  GoalFormula goal = normalized_goal(parse(text), err);
  SynthesizedModel model = synthesize(goal, agents_for_goal(goal, extra_agents));
  std::string rendered = format == "dot"
                             ? to_dot(model.action)
                             : to_canonical_text(to_json(model));
  if (out_path.empty()) {
    out << rendered;
    return kExitOk;
  }
  save_text(out_path, rendered);
  report.output(out_path);
  report.j["stats"]["events"] = model.action.events.size();
  out << to_canonical_text(report.j);
  return kExitOk;
}

int cmd_update(const std::string& model_path, const std::string& action_path,
               const std::string& mode, const std::string& out_path,
               const std::string& format, std::ostream& out) {
  RunReport report("update");
  KripkeModel m = load_kripke(model_path, &report);
  LoadedAction action = load_action(action_path, &report);
  UpdateResult result = mode == "product" ? product_update(m, action.action)
                                          : pointed_update(m, action.action);
  if (!result.point_defined)
    throw UpdateUndefined(
        "the actual pair fails its precondition, so the result has no "
        "point to write");
  std::string rendered = format == "dot"
                             ? to_dot(result.model)
                             : to_canonical_text(to_json(result.model));
  if (!out_path.empty()) {
    save_text(out_path, rendered);
    report.output(out_path);
  } else {
    out << rendered;
  }
  report.j["stats"]["mode"] = mode;
  report.j["stats"]["world_count"] = result.model.worlds.size();
  report.j["stats"]["candidate_pairs"] = result.candidate_pairs;
  report.j["stats"]["kept_pairs"] = result.kept_pairs;
  report.j["stats"]["point_defined"] = result.point_defined;
  if (mode == "pointed")
    report.j["stats"]["kept_ratio"] =
        static_cast<double>(result.kept_pairs) /
        static_cast<double>(result.candidate_pairs);
  if (!out_path.empty()) out << to_canonical_text(report.j);
  return kExitOk;
}

int cmd_check(const std::string& model_path, const std::string& formula_text,
              const std::string& world, std::ostream& out) {
  KripkeModel m = load_kripke(model_path, nullptr);
  Formula f = parse(formula_text);
  std::string at = world.empty() ? m.point : world;
  bool verdict = model_check(m, at, f);
  out << (verdict ? "true" : "false") << "\n";
  return verdict ? kExitOk : kExitFalse;
}

int cmd_export_dot(const std::string& path, const std::string& goal_text,
                   const std::string& out_path, std::ostream& out) {
  std::string dot;
  if (!goal_text.empty()) {
    dot = to_dot(syntactic_tree(classify_or_fail(parse(goal_text))));
  } else {
    Document doc = load_input(path, nullptr);
    dot = doc.is_kripke() ? to_dot(doc.kripke()) : to_dot(doc.action());
  }
  if (out_path.empty())
    out << dot;
  else
    save_text(out_path, dot);
  return kExitOk;
}

int cmd_bench_blowup(std::size_t iterations, std::ostream& out) {
  FixtureSet fx = builtin_fixtures();
  out << blowup_csv(fx.two_agent_m, fx.priv_msg_u, iterations,
                    {UpdateMode::Product, UpdateMode::Pointed});
  return kExitOk;
}

int cmd_fixtures(const std::string& out_dir, std::ostream& out,
                 std::ostream& err) {
  std::filesystem::create_directories(out_dir);
  FixtureSet fx = builtin_fixtures();
  std::map<std::string, std::string> files;
  files["blt_initial.json"] = to_canonical_text(to_json(fx.blt_initial));
  files["two_agent_m.json"] = to_canonical_text(to_json(fx.two_agent_m));
  files["priv_msg_u.json"] = to_canonical_text(to_json(fx.priv_msg_u));

  const std::vector<AgentId> blt_agents{"b", "l", "t"};
  auto synth = [&](const std::string& text) {
    GoalFormula goal = normalized_goal(parse(text), err);
    return synthesize(goal, blt_agents);
  };
  files["blt_stage1_u.json"] =
      to_canonical_text(to_json(synth("B t p")));
  files["blt_stage2_u.json"] =
      to_canonical_text(to_json(synth("B l (p & B t p)")));
  files["blt_stage3_u.json"] =
      to_canonical_text(to_json(synth("B t p & B l (p & B t p)")));
  SynthesizedModel goal_model = synth("B b (B t p & B l B t p & B l p)");
  files["blt_goal_u.json"] = to_canonical_text(to_json(goal_model));
  UpdateResult updated = pointed_update(fx.blt_initial, goal_model.action);
  files["blt_updated.json"] = to_canonical_text(to_json(updated.model));

  for (const auto& [name, text] : files) {
    std::string path = (std::filesystem::path(out_dir) / name).string();
    save_text(path, text);
    out << path << "\n";
  }
  return kExitOk;
}

// ---- verify ----

struct VerifyContext {
  KripkeModel model;
  ActionModel action;
  std::optional<SynthesizedModel> synthesized;
  std::optional<GoalFormula> goal;
  std::size_t max_seq_len = 0;  // 0: per-check default
  int samples = 40;
  std::uint64_t seed = kDefaultSeed;
};

std::vector<std::string> atoms_pool(const VerifyContext& ctx) {
  std::set<std::string> atoms;
  for (const auto& [atom, where] : ctx.model.valuation) atoms.insert(atom);
  for (const auto& [e, f] : ctx.action.pre) {
    auto more = atoms_of(f);
    atoms.insert(more.begin(), more.end());
  }
  if (atoms.empty()) atoms.insert("p");
  return {atoms.begin(), atoms.end()};
}

const SynthesizedModel& need_synthesized(const VerifyContext& ctx,
                                         const char* check) {
  if (!ctx.synthesized)
    throw ModelError(std::string(check) +
                     " needs a synthesized action model (give a goal or a "
                     "document with synthesis metadata)");
  return *ctx.synthesized;
}

const GoalFormula& need_goal(const VerifyContext& ctx, const char* check) {
  if (!ctx.goal)
    throw ModelError(std::string(check) + " needs a goal formula");
  return *ctx.goal;
}

void check_success(const VerifyContext& ctx, RunReport& report) {
  const GoalFormula& goal = need_goal(ctx, "success");
  UpdateResult updated = pointed_update(ctx.model, ctx.action);
  bool pass = model_check(updated.model, updated.model.point, goal.formula());
  report.verdict("success",
                 "the pointed update makes the goal formula true at the "
                 "actual world",
                 pass,
                 {{"world_count", updated.model.worlds.size()},
                  {"goal", to_string(goal.formula())}});
}

void check_privatized(const VerifyContext& ctx, RunReport& report) {
  const GoalFormula& goal = need_goal(ctx, "privatized");
  Frame frame = frame_of(ctx.action);
  std::size_t bound =
      ctx.max_seq_len > 0 ? ctx.max_seq_len : default_seq_bound(frame);
  PrivatizationResult result = is_privatized(frame, goal, bound);
  nlohmann::json details{{"max_seq_len", bound}};
  if (result.witness) {
    details["root_path"] = result.witness->root_path;
    details["empty_cluster"] = result.witness->empty_cluster;
    if (result.witness->clashing_seq)
      details["clashing_seq"] = *result.witness->clashing_seq;
    if (result.witness->shared_node)
      details["shared_node"] = *result.witness->shared_node;
  }
  report.verdict("privatized",
                 "every root-path cluster of the action model is non-empty "
                 "and disjoint from all other alternating-sequence clusters",
                 result.holds, std::move(details));
}

void check_weakly_privatized(const VerifyContext& ctx, RunReport& report) {
  const GoalFormula& goal = need_goal(ctx, "weakly-privatized");
  UpdateResult updated = pointed_update(ctx.model, ctx.action);
  Frame frame = frame_of(updated.model);
  std::size_t bound =
      ctx.max_seq_len > 0 ? ctx.max_seq_len : default_seq_bound(frame);
  PrivatizationResult result = is_weakly_privatized(frame, goal, bound);
  nlohmann::json details{{"max_seq_len", bound}};
  if (result.witness) {
    details["root_path"] = result.witness->root_path;
    if (result.witness->clashing_seq)
      details["clashing_seq"] = *result.witness->clashing_seq;
    if (result.witness->shared_node)
      details["shared_node"] = *result.witness->shared_node;
  }
  report.verdict("weakly-privatized",
                 "every root-path cluster of the updated model is disjoint "
                 "from all other alternating-sequence clusters",
                 result.holds, std::move(details));
}

void check_idempotent(const VerifyContext& ctx, RunReport& report) {
  IdempotenceCheck result =
      ctx.synthesized ? verify_idempotent(*ctx.synthesized, ctx.model)
                      : verify_idempotent(ctx.action, ctx.model);
  nlohmann::json details;
  if (result.projection_ok)
    details["projection_ok"] = *result.projection_ok;
  report.verdict("idempotent",
                 "updating once and twice yields isomorphic pointed models",
                 result.idempotent &&
                     result.projection_ok.value_or(true),
                 std::move(details));
}

void check_consistency(const VerifyContext& ctx, RunReport& report) {
  const SynthesizedModel& u = need_synthesized(ctx, "consistency");
  UpdateResult updated = pointed_update(ctx.model, u.action);
  std::size_t bound = ctx.max_seq_len > 0 ? ctx.max_seq_len : 4;
  std::vector<std::vector<AgentId>> seqs;
  std::vector<AgentId> current;
  auto extend = [&](auto&& self) -> void {
    if (current.size() >= 1) seqs.push_back(current);
    if (current.size() == bound) return;
    for (const AgentId& a : ctx.model.agents) {
      if (!current.empty() && current.back() == a) continue;
      current.push_back(a);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  std::size_t checked = 0;
  for (const auto& seq : seqs) {
    std::vector<std::string> events = event_sequence_for(u, seq);
    Formula lhs = u.action.precondition(events.back());
    for (std::size_t i = seq.size(); i-- > 0;) {
      Formula guarded = Formula::possible(seq[i], std::move(lhs));
      lhs = i == 0 ? std::move(guarded)
                   : Formula::conj(u.action.precondition(events[i - 1]),
                                   std::move(guarded));
    }
    bool before = model_check(ctx.model, ctx.model.point, lhs);
    bool after =
        !believes_bottom(updated.model, updated.model.point, seq);
    if (before != after) {
      report.verdict("consistency",
                     "after the update an agent chain holds inconsistent "
                     "beliefs exactly when the chained preconditions were "
                     "originally considered impossible",
                     false,
                     {{"sequence", seq},
                      {"before", before},
                      {"after_not_bottom", after}});
      return;
    }
    ++checked;
  }
  report.verdict("consistency",
                 "after the update an agent chain holds inconsistent "
                 "beliefs exactly when the chained preconditions were "
                 "originally considered impossible",
                 true, {{"sequences_checked", checked}});
}

void check_minimality_sample(const VerifyContext& ctx, RunReport& report) {
  const SynthesizedModel& u = need_synthesized(ctx, "minimality-sample");
  UpdateResult updated = pointed_update(ctx.model, u.action);
  Rng rng(ctx.seed);
  std::vector<std::string> atoms = atoms_pool(ctx);
  int independent = 0;
  for (int i = 0; i < ctx.samples; ++i) {
    Formula theta = random_formula(rng, ctx.model.agents, atoms, 3);
    TopShapeReport shape = analyze_independence(theta, u);
    if (!shape.independent) continue;
    ++independent;
    bool before = model_check(ctx.model, ctx.model.point, theta);
    bool after = model_check(updated.model, updated.model.point, theta);
    if (before != after) {
      report.verdict("minimality-sample",
                     "sampled formulas independent of the goal keep their "
                     "truth value across the update",
                     false, {{"theta", to_string(theta)}});
      return;
    }
  }
  report.verdict("minimality-sample",
                 "sampled formulas independent of the goal keep their truth "
                 "value across the update",
                 true,
                 {{"samples", ctx.samples}, {"independent", independent}});
}

void check_bisim_product(const VerifyContext& ctx, RunReport& report) {
  UpdateResult pointed = pointed_update(ctx.model, ctx.action);
  UpdateResult product = product_update(ctx.model, ctx.action);
  BisimRelation witness = max_bisimulation(pointed.model, product.model);
  bool pass = product.point_defined &&
              witness.relates(pointed.model.point, product.model.point);
  report.verdict("bisim-product",
                 "the pointed update is bisimilar to the product update at "
                 "the actual pair",
                 pass,
                 {{"pointed_worlds", pointed.model.worlds.size()},
                  {"product_worlds", product.model.worlds.size()},
                  {"witness_pairs", to_json(witness)}});
}

int cmd_verify(const std::string& model_path, const std::string& action_path,
               const std::string& goal_text,
               std::vector<std::string> checks, std::size_t max_seq_len,
               int samples, std::ostream& out, std::ostream& err) {
  RunReport report("verify");
  VerifyContext ctx;
  ctx.model = load_kripke(model_path, &report);
  ctx.max_seq_len = max_seq_len;
  ctx.samples = samples;
  ctx.seed = seed_from_env();

  if (!goal_text.empty()) {
    report.inline_input("goal", goal_text);
    ctx.goal = normalized_goal(parse(goal_text), err);
  }
  if (!action_path.empty()) {
    LoadedAction loaded = load_action(action_path, &report);
    ctx.action = std::move(loaded.action);
    ctx.synthesized = std::move(loaded.synthesized);
  } else if (ctx.goal) {
    ctx.synthesized = synthesize(
        *ctx.goal, agents_for_goal(*ctx.goal, ctx.model.agents));
    ctx.action = ctx.synthesized->action;
  } else {
    throw ModelError("verify needs --action or --goal");
  }

  if (checks.empty())
    checks = {"success", "privatized", "weakly-privatized", "idempotent",
              "consistency", "minimality-sample", "bisim-product"};
  for (const std::string& check : checks) {
    try {
      if (check == "success")
        check_success(ctx, report);
      else if (check == "privatized")
        check_privatized(ctx, report);
      else if (check == "weakly-privatized")
        check_weakly_privatized(ctx, report);
      else if (check == "idempotent")
        check_idempotent(ctx, report);
      else if (check == "consistency")
        check_consistency(ctx, report);
      else if (check == "minimality-sample")
        check_minimality_sample(ctx, report);
      else if (check == "bisim-product")
        check_bisim_product(ctx, report);
      else
        throw ModelError("unknown check: " + check);
    } catch (const std::exception& e) {
      report.verdict(check, "check could not run", false,
                     {{"error", e.what()}});
    }
  }
  out << to_canonical_text(report.j);
  return report.all_pass() ? kExitOk : kExitFalse;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"synthesis and verification of private belief updates"};
  app.require_subcommand(1);

  std::string formula_text, model_path, action_path, out_path, world, goal;
  std::string mode = "pointed";
  std::string format = "json";
  std::string out_dir = "fixtures";
  std::vector<std::string> agents, checks;
  std::size_t iterations = 4;
  std::size_t max_seq_len = 0;
  int samples = 40;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse a formula");
  parse_cmd->add_option("formula", formula_text)->required();

  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "normalize a goal formula");
  normalize_cmd->add_option("formula", formula_text)->required();

  CLI::App* synth_cmd = app.add_subcommand(
      "synthesize", "build the action model for a goal formula");
  synth_cmd->add_option("goal", formula_text)->required();
  synth_cmd->add_option("--agents", agents, "extra agents")->delimiter(',');
  synth_cmd->add_option("--out", out_path);
  synth_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* update_cmd =
      app.add_subcommand("update", "apply an action model to a model");
  update_cmd->add_option("model", model_path)->required();
  update_cmd->add_option("action", action_path)->required();
  update_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"product", "pointed"}));
  update_cmd->add_option("--out", out_path);
  update_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "dot"}));

  CLI::App* check_cmd =
      app.add_subcommand("check", "evaluate a formula in a model");
  check_cmd->add_option("model", model_path)->required();
  check_cmd->add_option("formula", formula_text)->required();
  check_cmd->add_option("--world", world);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run verification checks");
  verify_cmd->add_option("--model", model_path)->required();
  verify_cmd->add_option("--action", action_path);
  verify_cmd->add_option("--goal", goal);
  verify_cmd->add_option("--checks", checks)->delimiter(',');
  verify_cmd->add_option("--max-seq-len", max_seq_len);
  verify_cmd->add_option("--samples", samples);

  CLI::App* dot_cmd = app.add_subcommand(
      "export-dot", "render a document, or a goal's modal tree, as DOT");
  dot_cmd->add_option("document", model_path);
  dot_cmd->add_option("--goal", goal, "render this goal's modal tree");
  dot_cmd->add_option("--out", out_path);

  CLI::App* bench_cmd = app.add_subcommand(
      "bench-blowup", "world counts of iterated updates (CSV)");
  bench_cmd->add_option("-k,--iterations", iterations)
      ->check(CLI::PositiveNumber);

  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "write the bundled example documents");
  fixtures_cmd->add_option("--out-dir", out_dir);

  std::vector<const char*> argv;
  argv.push_back("delsynth");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(formula_text, out);
    if (normalize_cmd->parsed()) return cmd_normalize(formula_text, out, err);
    if (synth_cmd->parsed())
      return cmd_synthesize(formula_text, agents, out_path, format, out, err);
    if (update_cmd->parsed())
      return cmd_update(model_path, action_path, mode, out_path, format, out);
    if (check_cmd->parsed())
      return cmd_check(model_path, formula_text, world, out);
    if (verify_cmd->parsed())
      return cmd_verify(model_path, action_path, goal, checks, max_seq_len,
                        samples, out, err);
    if (dot_cmd->parsed()) {
      if (model_path.empty() && goal.empty())
        throw ModelError("export-dot needs a document or --goal");
      return cmd_export_dot(model_path, goal, out_path, out);
    }
    if (bench_cmd->parsed()) return cmd_bench_blowup(iterations, out);
    if (fixtures_cmd->parsed()) return cmd_fixtures(out_dir, out, err);
  } catch (const UpdateUndefined& e) {
    err << "error: " << e.what() << "\n";
    return kExitUndefined;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitUndefined;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "no command\n";
  return kExitInput;
}

}  // namespace delsynth
