#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "delsynth/bisim.hpp"
#include "delsynth/model.hpp"
#include "delsynth/synthesis.hpp"

namespace delsynth {

/// JSON document layout (canonical: object keys and id lists sorted):
///
///   {"kind": "kripke", "agents": [...],
///    "worlds": [{"atoms": [...], "id": "u"}, ...],
///    "relations": [{"agent": "b", "from": "u", "to": "v"}, ...],
///    "point": "v"}
///
///   {"kind": "action", "agents": [...],
///    "events": [{"id": "0", "pre": "top"}, ...],
///    "relations": [...], "point": "0",
///    "synthesis": {"root": "0", "sink": "-1", "source": "...",
///                  "event_formulas": {"1": "B t p", ...}}}   (optional)
///
/// Formulas are embedded as concrete-syntax strings.
nlohmann::json to_json(const KripkeModel& m);
nlohmann::json to_json(const ActionModel& u);
nlohmann::json to_json(const SynthesizedModel& u);

/// Witness pair list for audit: [{"left": ..., "right": ...}, ...].
nlohmann::json to_json(const BisimRelation& rel);

/// A parsed document: a Kripke or action model, the latter possibly with
/// synthesis metadata.
struct Document {
  std::variant<KripkeModel, ActionModel> value;
  std::optional<SynthesizedModel> synthesized;

  bool is_kripke() const { return std::holds_alternative<KripkeModel>(value); }
  const KripkeModel& kripke() const { return std::get<KripkeModel>(value); }
  const ActionModel& action() const { return std::get<ActionModel>(value); }
};

/// Parses and validates a document; throws ModelError with the collected
/// violations on invalid input and ParseError on bad formula strings.
Document document_from_json(const nlohmann::json& j);

/// Rebuilds the synthesis bookkeeping of an action model from its
/// metadata, revalidating the structural invariants.
SynthesizedModel synthesized_from(const ActionModel& action,
                                  const std::string& source,
                                  const std::string& root,
                                  const std::string& sink);

/// Canonical text rendering: two-space indentation, sorted keys, trailing
/// newline. save/load round-trip bytes exactly.
std::string to_canonical_text(const nlohmann::json& j);

Document load_document(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

/// FNV-1a content hash, hex-encoded; used in run reports.
std::string content_hash(const std::string& bytes);

}  // namespace delsynth
