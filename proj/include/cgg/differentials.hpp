// Realized-outcome assembly from the players' own perceived-game solutions,
// and the two gain-loss differentials: the one a player can read off some
// perceived matrix, and the one only the unfiltered base matrix reveals.
#pragma once

#include "cgg/coarse_game.hpp"
#include "cgg/equilibrium.hpp"

#include <optional>
#include <vector>

namespace cgg {

struct RealizedOutcome {
    PureProfile profile;          // the joint profile actually played
    std::vector<bool> overridden; // per player: explicit override vs own equilibrium
};

// Builds the joint profile where player k plays their own component of their
// selected perceived-game equilibrium. A player with a unique pure equilibrium
// needs no selection; otherwise the selection indexes that player's
// pure-equilibrium list. Throws Error{AmbiguousSelection} naming the player
// when a selection is required but missing, and Error{ValidationError} for an
// out-of-range selection or a perceived game with no pure equilibrium.
RealizedOutcome realized_profile(const CoarseGame& cg,
                                 const std::vector<std::optional<std::size_t>>& selections);

// Explicitly supplied joint profile; every component marked overridden.
RealizedOutcome realized_override(const CoarseGame& cg, PureProfile profile);

// Subject's payoff in the lens player's perceived matrix at the realized
// profile, minus the same at the lens's expected profile. The expectation must
// be a pure equilibrium of the lens's perceived game (Error{ValidationError}
// otherwise).
Rational incidental_differential(const CoarseGame& cg, int lens, int subject,
                                 const PureProfile& expectation,
                                 const RealizedOutcome& realized);

// Subject's base-matrix payoff at the realized profile minus at the base
// equilibrium. When no expectation is given the base game must have exactly
// one pure equilibrium: several throw Error{MultipleBaseEquilibria}, none
// throws Error{ValidationError}.
Rational unrecognized_differential(const CoarseGame& cg, int subject,
                                   const std::optional<PureProfile>& base_expectation,
                                   const RealizedOutcome& realized);

// Mixed-strategy version of the incidental differential: two expected-payoff
// evaluations in the lens's perceived game.
Rational mixed_incidental_differential(const CoarseGame& cg, int lens, int subject,
                                       const MixedProfile& expectation,
                                       const MixedProfile& realized);

// Expected-vs-actual pair backing one differential; delta is always
// actual - expected.
struct DifferentialEntry {
    Rational expected;
    Rational actual;
    Rational delta;
};

struct DifferentialReport {
    PureProfile realized;
    std::vector<PureProfile> lens_expectations;            // per lens player
    std::optional<PureProfile> base_expectation;
    std::vector<std::vector<DifferentialEntry>> incidental; // [lens][subject]
    std::vector<DifferentialEntry> unrecognized;            // [subject]
};

// Full analyst table: every lens against every subject plus the base-matrix
// row. Expectations per lens and for the base default to that matrix's unique
// pure equilibrium, with the same errors as the single-value operations.
DifferentialReport differential_report(
    const CoarseGame& cg, const RealizedOutcome& realized,
    const std::vector<std::optional<PureProfile>>& lens_expectations,
    const std::optional<PureProfile>& base_expectation);

} // namespace cgg
