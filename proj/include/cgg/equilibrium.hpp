// Equilibrium computation: exhaustive pure enumeration for any player count,
// support-enumeration mixed solving for two players with exact linear algebra,
// n-player profile verification, best responses, pure minmax, and the
// uniformity / competitiveness diagnostics on coarse views.
#pragma once

#include "cgg/coarse_game.hpp"
#include "cgg/game.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cgg {

// All cells where no player has a strictly improving unilateral deviation,
// in lexicographic strategy-index order.
std::vector<PureProfile> pure_equilibria(const Game& g);

// A support pair whose indifference system is singular: a continuum of
// equilibria lives there, so the support is reported instead of enumerated.
struct DegenerateSupport {
    std::array<std::vector<int>, 2> support; // strategy indices per player
    // Per player: whether that player's vector is uniquely pinned by the
    // opponent's indifference system. A pinned vector is stored full-length
    // (zeros off support); a free one is empty.
    std::array<bool, 2> pinned{};
    std::array<std::vector<Rational>, 2> pinned_vector;
    // Player whose uniform payoffs across the support cells cause the
    // singularity, when that is the cause; -1 otherwise.
    int uniform_player = -1;
    // One representative equilibrium on this support; always passes
    // verify_mixed.
    MixedProfile witness;
    std::string note;
};

struct MixedSolution {
    std::vector<MixedProfile> equilibria;      // isolated, deduplicated, by support order
    std::vector<DegenerateSupport> degenerate; // continua, flagged not enumerated
};

// Support enumeration over all nonempty support pairs, solving each exact
// indifference-plus-normalization system. Includes pure equilibria as
// singleton supports. Deterministic order: supports enumerated
// lexicographically (player 1's support, then player 2's).
// Throws Error{DimensionMismatch} unless g has exactly two players.
MixedSolution mixed_equilibria_2p(const Game& g);

// True iff every player's every pure strategy earns at most the profile's
// expected payoff, with equality on the support. Works for any player count.
bool verify_mixed(const Game& g, const MixedProfile& profile);

// Argmax set of player k's pure strategies against the opponents' mixed
// vectors (profile entry k is ignored). Exact ties are all included; sorted.
std::vector<int> best_responses(const Game& g, int player, const MixedProfile& opponents);

// Pure minmax: min over opponents' joint pure strategies of max over the
// player's pure replies.
Rational minmax(const Game& g, int player);

// True iff every payoff of the subject, across all cells, lies in a single
// grain of the perceiver's partition.
bool diagnose_uniformity(const CoarseGame& cg, int perceiver, int subject);

struct CompetitivenessReport {
    std::vector<bool> uniform_for; // indexed by subject player
    bool non_competitive = false;  // all subjects uniform through this lens
};

CompetitivenessReport diagnose_competitiveness(const CoarseGame& cg, int perceiver);

// Aggregate used by the CLI solve/diagnose commands.
struct SolveDiagnostics {
    bool multiple_pure = false;
    std::vector<int> uniform_for; // subjects uniform through the solved lens
    bool non_competitive = false;
};

struct EquilibriumSet {
    std::vector<PureProfile> pure;
    std::vector<MixedProfile> mixed;           // two-player games only
    std::vector<DegenerateSupport> degenerate; // two-player games only
    SolveDiagnostics diagnostics;
};

// Solves the base matrix (perspective = nullopt) or one player's perceived
// matrix. Mixed solving runs only for two-player games. Uniformity
// diagnostics are filled only for player perspectives.
EquilibriumSet solve_equilibria(const CoarseGame& cg, std::optional<int> perspective);

} // namespace cgg
