// Normal-form games with exact rational payoffs, plus pure and mixed
// strategy profiles. Payoff storage is a dense row-major tensor over the
// players' strategy indices.
#pragma once

#include "cgg/rational.hpp"

#include <string>
#include <vector>

namespace cgg {

// One strategy index per player.
using PureProfile = std::vector<int>;

struct MixedProfile {
    // One probability vector per player; each sums to exactly 1 with entries
    // in [0,1] (validate() enforces this).
    std::vector<std::vector<Rational>> probs;

    bool operator==(const MixedProfile& other) const { return probs == other.probs; }
    bool operator!=(const MixedProfile& other) const { return !(*this == other); }
};

// Point mass on a pure profile.
MixedProfile point_mass(const std::vector<int>& strategy_counts, const PureProfile& profile);

class Game {
public:
    // cells are indexed row-major over strategy indices in player order; each
    // cell holds one payoff per player. Throws Error{ValidationError} on shape
    // or naming violations (n >= 2, unique names, full dense tensor).
    Game(std::vector<std::string> players,
         std::vector<std::vector<std::string>> strategies,
         std::vector<std::vector<Rational>> cells);

    int num_players() const { return static_cast<int>(players_.size()); }
    const std::vector<std::string>& players() const { return players_; }
    const std::vector<std::string>& strategies(int player) const;
    std::vector<int> strategy_counts() const;

    std::size_t num_cells() const { return cells_.size(); }
    std::size_t cell_index(const PureProfile& profile) const;
    PureProfile profile_at(std::size_t cell) const;
    const std::vector<Rational>& cell(std::size_t index) const { return cells_[index]; }
    const Rational& payoff(const PureProfile& profile, int player) const;

    int player_index(const std::string& name) const;      // -1 when absent
    int strategy_index(int player, const std::string& name) const; // -1 when absent

    bool operator==(const Game& other) const;
    bool operator!=(const Game& other) const { return !(*this == other); }

private:
    std::vector<std::string> players_;
    std::vector<std::vector<std::string>> strategies_;
    std::vector<std::vector<Rational>> cells_;
};

// Throws Error{DimensionMismatch} unless the profile has one correctly sized,
// nonnegative vector per player, each summing to one.
void validate_profile(const Game& g, const MixedProfile& profile);

// Exact expected payoff of one player under independent mixing: the sum over
// all cells of the product of chosen probabilities times the player's payoff.
// Throws Error{DimensionMismatch} on shape violations.
Rational expected_payoff(const Game& g, const MixedProfile& profile, int player);

} // namespace cgg
