#pragma once

#include <optional>
#include <string>

#include "strata/enumerate.hpp"

namespace strata {

/// Parsed input document: an action and, optionally, a multicurve.
struct InputDocument {
    ActionPtr action;
    std::optional<DecoratedDualGraph> multicurve;
};

/// Parses the versioned JSON input document. Unknown schema versions,
/// malformed JSON, and out-of-range references throw ParseError with a
/// field diagnostic.
InputDocument parse_input(const std::string& text,
                          std::int64_t max_group_order = AbelianGroup::kDefaultOrderBound);

InputDocument load_input(const std::string& path,
                         std::int64_t max_group_order = AbelianGroup::kDefaultOrderBound);

std::string format_element(const Group& group, std::int64_t index);

/// Serialization of a lifted stable graph. Deterministic: re-emitting a
/// parsed document reproduces it byte for byte.
std::string stable_graph_to_json(const StableGraph& graph);
StableGraph stable_graph_from_json(const std::string& text);

std::string stable_graph_to_dot(const StableGraph& graph, const std::string& name = "lift");

std::string catalog_to_json(const StrataCatalog& catalog, const OrbifoldAction& action);
std::string catalog_to_dot_bundle(const StrataCatalog& catalog);

std::string validation_report_text(const ValidationReport& report);

std::string family_report_text(const SingleCurveFamily& family, const StableGraph& lifted);

} // namespace strata
