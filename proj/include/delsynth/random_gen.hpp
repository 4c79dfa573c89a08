#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "delsynth/goal.hpp"
#include "delsynth/model.hpp"

namespace delsynth {

/// Seeded generator for fuzzing models and formulas; all draws are
/// deterministic per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi);  // inclusive bounds
  bool chance(double p);
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Arbitrary modal formula over the vocabulary, belief depth <= depth.
Formula random_formula(Rng& rng, const std::vector<AgentId>& agents,
                       const std::vector<std::string>& atoms, int depth);

/// Purely propositional formula.
Formula random_propositional(Rng& rng, const std::vector<std::string>& atoms,
                             int depth);

/// Goal formula in normal form, belief depth <= depth (>= 1).
GoalFormula random_normal_goal(Rng& rng, const std::vector<AgentId>& agents,
                               const std::vector<std::string>& atoms,
                               int depth);

/// Goal formula that may violate the normal-form restrictions (repeated
/// agents across conjuncts, directly nested same-agent beliefs).
GoalFormula random_goal(Rng& rng, const std::vector<AgentId>& agents,
                        const std::vector<std::string>& atoms, int depth);

/// Model with 1..max_worlds worlds, random relations and valuation.
KripkeModel random_model(Rng& rng, const std::vector<AgentId>& agents,
                         const std::vector<std::string>& atoms,
                         int max_worlds);

/// As random_model, with every relation closed under transitivity and
/// euclideanness.
KripkeModel random_k45_model(Rng& rng, const std::vector<AgentId>& agents,
                             const std::vector<std::string>& atoms,
                             int max_worlds);

/// Action model with 1..max_events events and propositional preconditions.
ActionModel random_action_model(Rng& rng, const std::vector<AgentId>& agents,
                                const std::vector<std::string>& atoms,
                                int max_events);

/// A model bisimilar to m, produced by splitting worlds into copies that
/// inherit all edges jointly.
KripkeModel split_worlds(Rng& rng, const KripkeModel& m, int max_copies);

/// The same construction for action models (copies share preconditions).
ActionModel split_events(Rng& rng, const ActionModel& u, int max_copies);

}  // namespace delsynth
