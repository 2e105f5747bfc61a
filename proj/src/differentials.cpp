#include "cgg/differentials.hpp"

#include "cgg/errors.hpp"

#include <algorithm>

namespace cgg {

namespace {

bool is_pure_equilibrium_of(const Game& g, const PureProfile& profile) {
    const auto all = pure_equilibria(g);
    return std::find(all.begin(), all.end(), profile) != all.end();
}

} // namespace

RealizedOutcome realized_profile(const CoarseGame& cg,
                                 const std::vector<std::optional<std::size_t>>& selections) {
    const int n = cg.base.num_players();
    if (selections.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::ValidationError, "one (possibly empty) selection per player");
    }
    RealizedOutcome outcome;
    outcome.profile.resize(static_cast<std::size_t>(n));
    outcome.overridden.assign(static_cast<std::size_t>(n), false);
    for (int k = 0; k < n; ++k) {
        const PerceivedGame pg = perceived_game(cg, k);
        const auto equilibria = pure_equilibria(pg.game);
        const auto& selection = selections[static_cast<std::size_t>(k)];
        std::size_t index = 0;
        if (selection) {
            if (*selection >= equilibria.size()) {
                throw Error(ErrorCode::ValidationError,
                            "selection out of range for player " + cg.base.players()[k]);
            }
            index = *selection;
        } else if (equilibria.empty()) {
            throw Error(ErrorCode::ValidationError,
                        "perceived game of player " + cg.base.players()[k] +
                            " has no pure equilibrium; none can be selected");
        } else if (equilibria.size() > 1) {
            throw Error(ErrorCode::AmbiguousSelection,
                        "player " + cg.base.players()[k] + " has " +
                            std::to_string(equilibria.size()) +
                            " perceived equilibria and no selection was given");
        }
        // Each player contributes only their own coordinate of their chosen
        // equilibrium; the joint result may match nobody's prediction.
        outcome.profile[static_cast<std::size_t>(k)] =
            equilibria[index][static_cast<std::size_t>(k)];
    }
    return outcome;
}

RealizedOutcome realized_override(const CoarseGame& cg, PureProfile profile) {
    cg.base.cell_index(profile); // bounds check
    RealizedOutcome outcome;
    outcome.profile = std::move(profile);
    outcome.overridden.assign(static_cast<std::size_t>(cg.base.num_players()), true);
    return outcome;
}

Rational incidental_differential(const CoarseGame& cg, int lens, int subject,
                                 const PureProfile& expectation,
                                 const RealizedOutcome& realized) {
    const PerceivedGame pg = perceived_game(cg, lens);
    if (!is_pure_equilibrium_of(pg.game, expectation)) {
        throw Error(ErrorCode::ValidationError,
                    "expectation is not an equilibrium of the lens player's perceived game");
    }
    return pg.game.payoff(realized.profile, subject) - pg.game.payoff(expectation, subject);
}

Rational unrecognized_differential(const CoarseGame& cg, int subject,
                                   const std::optional<PureProfile>& base_expectation,
                                   const RealizedOutcome& realized) {
    PureProfile expectation;
    if (base_expectation) {
        if (!is_pure_equilibrium_of(cg.base, *base_expectation)) {
            throw Error(ErrorCode::ValidationError,
                        "expectation is not an equilibrium of the base game");
        }
        expectation = *base_expectation;
    } else {
        const auto all = pure_equilibria(cg.base);
        if (all.empty()) {
            throw Error(ErrorCode::ValidationError,
                        "base game has no pure equilibrium; supply an expectation");
        }
        if (all.size() > 1) {
            throw Error(ErrorCode::MultipleBaseEquilibria,
                        "base game has " + std::to_string(all.size()) +
                            " pure equilibria; specify which one was expected");
        }
        expectation = all.front();
    }
    return cg.base.payoff(realized.profile, subject) - cg.base.payoff(expectation, subject);
}

Rational mixed_incidental_differential(const CoarseGame& cg, int lens, int subject,
                                       const MixedProfile& expectation,
                                       const MixedProfile& realized) {
    const PerceivedGame pg = perceived_game(cg, lens);
    return expected_payoff(pg.game, realized, subject) -
           expected_payoff(pg.game, expectation, subject);
}

DifferentialReport differential_report(
    const CoarseGame& cg, const RealizedOutcome& realized,
    const std::vector<std::optional<PureProfile>>& lens_expectations,
    const std::optional<PureProfile>& base_expectation) {
    const int n = cg.base.num_players();
    if (lens_expectations.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::ValidationError, "one (possibly empty) expectation per lens");
    }
    DifferentialReport report;
    report.realized = realized.profile;

    for (int lens = 0; lens < n; ++lens) {
        const PerceivedGame pg = perceived_game(cg, lens);
        PureProfile expectation;
        if (lens_expectations[static_cast<std::size_t>(lens)]) {
            expectation = *lens_expectations[static_cast<std::size_t>(lens)];
            if (!is_pure_equilibrium_of(pg.game, expectation)) {
                throw Error(ErrorCode::ValidationError,
                            "expectation for lens " + cg.base.players()[lens] +
                                " is not an equilibrium of that perceived game");
            }
        } else {
            const auto all = pure_equilibria(pg.game);
            if (all.empty()) {
                throw Error(ErrorCode::ValidationError,
                            "perceived game of player " + cg.base.players()[lens] +
                                " has no pure equilibrium; supply an expectation");
            }
            if (all.size() > 1) {
                throw Error(ErrorCode::AmbiguousSelection,
                            "player " + cg.base.players()[lens] + " has " +
                                std::to_string(all.size()) +
                                " perceived equilibria; supply an expectation");
            }
            expectation = all.front();
        }
        report.lens_expectations.push_back(expectation);

        std::vector<DifferentialEntry> row;
        for (int subject = 0; subject < n; ++subject) {
            DifferentialEntry entry;
            entry.expected = pg.game.payoff(expectation, subject);
            entry.actual = pg.game.payoff(realized.profile, subject);
            entry.delta = entry.actual - entry.expected;
            row.push_back(std::move(entry));
        }
        report.incidental.push_back(std::move(row));
    }

    // Base-matrix row reuses the single-value operation's selection rules.
    PureProfile base_eq;
    if (base_expectation) {
        base_eq = *base_expectation;
        if (!is_pure_equilibrium_of(cg.base, base_eq)) {
            throw Error(ErrorCode::ValidationError,
                        "expectation is not an equilibrium of the base game");
        }
    } else {
        const auto all = pure_equilibria(cg.base);
        if (all.empty()) {
            throw Error(ErrorCode::ValidationError,
                        "base game has no pure equilibrium; supply an expectation");
        }
        if (all.size() > 1) {
            throw Error(ErrorCode::MultipleBaseEquilibria,
                        "base game has " + std::to_string(all.size()) +
                            " pure equilibria; specify which one was expected");
        }
        base_eq = all.front();
    }
    report.base_expectation = base_eq;
    for (int subject = 0; subject < n; ++subject) {
        DifferentialEntry entry;
        entry.expected = cg.base.payoff(base_eq, subject);
        entry.actual = cg.base.payoff(realized.profile, subject);
        entry.delta = entry.actual - entry.expected;
        report.unrecognized.push_back(std::move(entry));
    }
    return report;
}

} // namespace cgg
