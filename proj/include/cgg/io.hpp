// The canonical game-document text format: versioned JSON with exact
// rational literals.
#pragma once

#include "cgg/coarse_game.hpp"
#include "cgg/repeated.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cgg {

// Role labels parsed from a document's optional "roles" block, per player.
struct ParsedDocument {
    CoarseGame game;
    std::optional<std::vector<RoleLabels>> roles;
};

// Parses a version-1 game document. Rational literals accept "p/q", integers
// and finite decimals. Errors carry a path into the document:
// Error{ParseError} for malformed JSON or literals, Error{ValidationError}
// for documents violating game or partition invariants.
ParsedDocument parse_game(const std::string& text);

// Canonical serialization: deterministic field order, exact rational strings,
// partitions wrapped as {"coverage", "grains"}. parse_game(serialize_game(x))
// is structurally equal to x.
std::string serialize_game(const CoarseGame& cg,
                           const std::optional<std::vector<RoleLabels>>& roles = std::nullopt);

} // namespace cgg
