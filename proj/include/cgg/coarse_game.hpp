// A game bundled with one perception partition per player, and the two-stage
// transform: payoffs to grains (the player's resolution), then grains back to
// numbers via the midpoint reduction.
#pragma once

#include "cgg/game.hpp"
#include "cgg/partition.hpp"

#include <vector>

namespace cgg {

enum class Preprocessing { Emp, Ignore };

struct CoarseGame {
    Game base;
    std::vector<Partition> partitions;        // one per player
    std::vector<Preprocessing> preprocessing; // one per player

    // Throws Error{ValidationError} unless both vectors match the player count.
    CoarseGame(Game base_game, std::vector<Partition> parts,
               std::vector<Preprocessing> prep);
    // All players with the given partitions and Emp preprocessing.
    CoarseGame(Game base_game, std::vector<Partition> parts);

    bool operator==(const CoarseGame& other) const;
    bool operator!=(const CoarseGame& other) const { return !(*this == other); }
};

// Stage one of the transform: every payoff coordinate of every cell replaced
// by the grain containing it under one player's partition. Shape matches the
// base game.
struct GrainMatrix {
    int perceiver;
    std::vector<std::vector<Grain>> cells; // same indexing as Game cells
};

// Applies the perceiver's partition to all coordinates of all cells (not just
// the perceiver's own payoffs). Propagates Error{Uncovered} under Strict.
GrainMatrix coarse_view(const CoarseGame& cg, int perceiver);

// Stage two: the numeric matrix the perceiver actually plays by.
struct PerceivedGame {
    Game game;
    int perceiver;
    Partition partition;
};

// emp applied to every grain of coarse_view. Throws Error{IgnorePreprocessing}
// when the perceiver's preprocessing is Ignore, and Error{UnboundedGrain} when
// a payoff lands in an unbounded grain.
PerceivedGame perceived_game(const CoarseGame& cg, int perceiver);

} // namespace cgg
