#include "cgg/game.hpp"

#include "cgg/errors.hpp"

#include <algorithm>
#include <set>

namespace cgg {

Game::Game(std::vector<std::string> players,
           std::vector<std::vector<std::string>> strategies,
           std::vector<std::vector<Rational>> cells)
    : players_(std::move(players)), strategies_(std::move(strategies)), cells_(std::move(cells)) {
    if (players_.size() < 2) {
        throw Error(ErrorCode::ValidationError, "a game needs at least two players");
    }
    if (strategies_.size() != players_.size()) {
        throw Error(ErrorCode::ValidationError, "one strategy list required per player");
    }
    std::set<std::string> seen_players(players_.begin(), players_.end());
    if (seen_players.size() != players_.size()) {
        throw Error(ErrorCode::ValidationError, "player names must be unique");
    }
    std::size_t expected_cells = 1;
    for (std::size_t p = 0; p < strategies_.size(); ++p) {
        if (strategies_[p].empty()) {
            throw Error(ErrorCode::ValidationError,
                        "player " + players_[p] + " has no strategies");
        }
        std::set<std::string> names(strategies_[p].begin(), strategies_[p].end());
        if (names.size() != strategies_[p].size()) {
            throw Error(ErrorCode::ValidationError,
                        "duplicate strategy name for player " + players_[p]);
        }
        expected_cells *= strategies_[p].size();
    }
    if (cells_.size() != expected_cells) {
        throw Error(ErrorCode::ValidationError,
                    "payoff tensor has " + std::to_string(cells_.size()) + " cells, expected " +
                        std::to_string(expected_cells));
    }
    for (const auto& cell : cells_) {
        if (cell.size() != players_.size()) {
            throw Error(ErrorCode::ValidationError,
                        "every cell needs exactly one payoff per player");
        }
    }
}

const std::vector<std::string>& Game::strategies(int player) const {
    return strategies_.at(static_cast<std::size_t>(player));
}

std::vector<int> Game::strategy_counts() const {
    std::vector<int> counts;
    counts.reserve(strategies_.size());
    for (const auto& s : strategies_) counts.push_back(static_cast<int>(s.size()));
    return counts;
}

std::size_t Game::cell_index(const PureProfile& profile) const {
    if (profile.size() != players_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "profile length does not match player count");
    }
    std::size_t index = 0;
    for (std::size_t p = 0; p < profile.size(); ++p) {
        const int count = static_cast<int>(strategies_[p].size());
        if (profile[p] < 0 || profile[p] >= count) {
            throw Error(ErrorCode::DimensionMismatch,
                        "strategy index out of range for player " + players_[p]);
        }
        index = index * static_cast<std::size_t>(count) + static_cast<std::size_t>(profile[p]);
    }
    return index;
}

PureProfile Game::profile_at(std::size_t cell) const {
    PureProfile profile(players_.size(), 0);
    for (std::size_t p = players_.size(); p-- > 0;) {
        const std::size_t count = strategies_[p].size();
        profile[p] = static_cast<int>(cell % count);
        cell /= count;
    }
    return profile;
}

const Rational& Game::payoff(const PureProfile& profile, int player) const {
    return cells_[cell_index(profile)][static_cast<std::size_t>(player)];
}

int Game::player_index(const std::string& name) const {
    auto it = std::find(players_.begin(), players_.end(), name);
    return it == players_.end() ? -1 : static_cast<int>(it - players_.begin());
}

int Game::strategy_index(int player, const std::string& name) const {
    const auto& list = strategies_.at(static_cast<std::size_t>(player));
    auto it = std::find(list.begin(), list.end(), name);
    return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

bool Game::operator==(const Game& other) const {
    return players_ == other.players_ && strategies_ == other.strategies_ &&
           cells_ == other.cells_;
}

MixedProfile point_mass(const std::vector<int>& strategy_counts, const PureProfile& profile) {
    MixedProfile mp;
    mp.probs.resize(strategy_counts.size());
    for (std::size_t p = 0; p < strategy_counts.size(); ++p) {
        mp.probs[p].assign(static_cast<std::size_t>(strategy_counts[p]), Rational(0));
        mp.probs[p].at(static_cast<std::size_t>(profile.at(p))) = 1;
    }
    return mp;
}

void validate_profile(const Game& g, const MixedProfile& profile) {
    if (profile.probs.size() != static_cast<std::size_t>(g.num_players())) {
        throw Error(ErrorCode::DimensionMismatch,
                    "profile has " + std::to_string(profile.probs.size()) +
                        " vectors for " + std::to_string(g.num_players()) + " players");
    }
    for (int p = 0; p < g.num_players(); ++p) {
        const auto& vec = profile.probs[static_cast<std::size_t>(p)];
        if (vec.size() != g.strategies(p).size()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "probability vector length mismatch for player " + g.players()[p]);
        }
        Rational sum = 0;
        for (const Rational& v : vec) {
            if (v < 0 || v > 1) {
                throw Error(ErrorCode::DimensionMismatch,
                            "probability outside [0,1] for player " + g.players()[p]);
            }
            sum += v;
        }
        if (sum != 1) {
            throw Error(ErrorCode::DimensionMismatch,
                        "probabilities of player " + g.players()[p] + " sum to " +
                            format_rational(sum));
        }
    }
}

Rational expected_payoff(const Game& g, const MixedProfile& profile, int player) {
    validate_profile(g, profile);
    Rational total = 0;
    const std::size_t cells = g.num_cells();
    for (std::size_t c = 0; c < cells; ++c) {
        const PureProfile cell_profile = g.profile_at(c);
        Rational weight = 1;
        for (std::size_t p = 0; p < cell_profile.size(); ++p) {
            weight *= profile.probs[p][static_cast<std::size_t>(cell_profile[p])];
            if (weight == 0) break;
        }
        if (weight != 0) {
            total += weight * g.cell(c)[static_cast<std::size_t>(player)];
        }
    }
    return total;
}

} // namespace cgg
