// Ready-made coarse games for the library's worked examples, each carrying
// self-checking fixtures: expected equilibria, differentials, thresholds and
// prices, all recomputed through the general solvers (never bypassed).
#pragma once

#include "cgg/coarse_game.hpp"
#include "cgg/repeated.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cgg {

struct Fixture {
    std::string description;
    // Runs the relevant general-purpose operations and compares against the
    // scenario's frozen expected values. On mismatch returns false and fills
    // detail with what differed.
    std::function<bool(std::string& detail)> check;
};

struct Scenario {
    std::string name;
    std::string summary;
    CoarseGame game;
    std::optional<std::vector<RoleLabels>> roles;
    std::vector<Fixture> fixtures;
};

// Prisoner's dilemma where player 1's resolution reproduces the base matrix
// and player 2's coarser one collapses most cells, creating extra equilibria
// and the worked gain-loss differentials.
Scenario scenario_coarse_pd();

// One payoff crossing a grain boundary shifts the opponent's equilibrium mix
// while the perceiving player's own mix stays put.
Scenario scenario_mixed_shift();

// A two-grain resolution that flattens the opponent's payoffs to a constant,
// making one strategy weakly dominant for the perceiver.
Scenario scenario_uniform_reduction();

// Companion game where the flattened side leaves the opponent's mix pinned
// but the flattened player's own mix free (an equilibrium continuum).
Scenario scenario_uniform_reduction_remark();

// Perception-dependent patience thresholds: the same stage game reads as
// easier to sustain through one player's lens than the other's.
Scenario scenario_discount_misalignment();

// Product-line games where a minor upgrade is invisible at the buyer's
// resolution (models = 2) or only the larger upgrade is visible (models = 3).
// Throws Error{ValidationError} for other model counts.
Scenario scenario_minor_model_change(int models);

// Quality-blind buyer facing a seller who knows the difference: price forms at
// the buyer's perceived value, making the low-quality sale the seller's
// strict preference. Bounds must satisfy lo <= lemon < peach <= hi
// (Error{InvalidBounds} otherwise).
Scenario scenario_lemon_market(const Rational& peach_value, const Rational& lemon_value,
                               const Rational& perception_lo, const Rational& perception_hi);
Scenario scenario_lemon_market(); // defaults: 20000, 10000, 10000, 20000

// Sharp-eyed buyer variant: price forms at the high-quality value and the
// low-quality sale stops being an equilibrium.
Scenario scenario_lemon_market_finest(const Rational& peach_value, const Rational& lemon_value);
Scenario scenario_lemon_market_finest(); // defaults: 20000, 10000

// All scenarios under their CLI names, in deterministic order.
std::vector<std::pair<std::string, std::function<Scenario()>>> scenario_registry();
Scenario scenario_by_name(const std::string& name); // Error{ValidationError} if unknown

} // namespace cgg
