#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "delsynth/model.hpp"

namespace delsynth {

/// The product update has an empty domain (no world satisfies any event
/// precondition).
class UpdateUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The precondition of the actual event fails at the actual world, so the
/// pointed update is undefined.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of a product or pointed update. Worlds of the result are the
/// kept (world, event) pairs, rendered as "w@e"; `origin` maps each result
/// world back to its components. `candidate_pairs` counts all pairs whose
/// precondition holds, `kept_pairs` the pairs present in the result.
///
/// For a product update the point of a model is defined only when the
/// (point, point) pair survives its precondition; `point_defined` makes
/// that a queryable status instead of an error, since the updated model
/// itself does not depend on the point. Pointed updates always have
/// point_defined == true.
struct UpdateResult {
  KripkeModel model;
  bool point_defined = false;
  std::size_t candidate_pairs = 0;
  std::size_t kept_pairs = 0;
  std::map<std::string, std::pair<std::string, std::string>> origin;
};

std::string compose_id(const std::string& world, const std::string& event);

/// Classical product update: keeps every (world, event) pair whose
/// precondition holds, with component-wise relations and the valuation
/// inherited from the world component. Throws UpdateUndefined when no
/// pair survives. Requires equal declared agent sets.
UpdateResult product_update(const KripkeModel& m, const ActionModel& u);

/// Pointed update: like the product update but restricted to the pairs
/// reachable from (point, point) through simultaneous model and action
/// steps of the same agent. Requires the actual world to satisfy the
/// precondition of the actual event (throws PreconditionFailed otherwise).
UpdateResult pointed_update(const KripkeModel& m, const ActionModel& u);

/// Truth of f after the communication (u, event) at (m, world): true when
/// the pair (world, event) is not part of the product update, otherwise
/// the value of f at that pair in the product update.
bool dynamic_check(const KripkeModel& m, const std::string& world,
                   const ActionModel& u, const std::string& event,
                   const Formula& f);

enum class UpdateMode { Product, Pointed };

/// World counts after each of `iterations` successive updates of m with
/// the same action model. Errors from the underlying update propagate.
std::vector<std::size_t> blowup_series(const KripkeModel& m,
                                       const ActionModel& u,
                                       std::size_t iterations,
                                       UpdateMode mode);

/// CSV rendering of blowup_series runs: "iteration,mode,world_count".
std::string blowup_csv(const KripkeModel& m, const ActionModel& u,
                       std::size_t iterations,
                       const std::vector<UpdateMode>& modes);

}  // namespace delsynth
