#include "cgg/equilibrium.hpp"

#include "cgg/errors.hpp"

#include <algorithm>
#include <set>

namespace cgg {

std::vector<PureProfile> pure_equilibria(const Game& g) {
    std::vector<PureProfile> result;
    const int n = g.num_players();
    for (std::size_t c = 0; c < g.num_cells(); ++c) {
        const PureProfile profile = g.profile_at(c);
        bool stable = true;
        for (int p = 0; p < n && stable; ++p) {
            const Rational& here = g.cell(c)[static_cast<std::size_t>(p)];
            PureProfile deviation = profile;
            const int count = static_cast<int>(g.strategies(p).size());
            for (int alt = 0; alt < count; ++alt) {
                if (alt == profile[static_cast<std::size_t>(p)]) continue;
                deviation[static_cast<std::size_t>(p)] = alt;
                if (g.payoff(deviation, p) > here) {
                    stable = false;
                    break;
                }
            }
            deviation[static_cast<std::size_t>(p)] = profile[static_cast<std::size_t>(p)];
        }
        if (stable) result.push_back(profile);
    }
    // Cells are visited in row-major order, which is exactly lexicographic.
    return result;
}

namespace {

// Exact Gauss-Jordan reduction of an augmented system. The particular
// solution sets every free variable to zero.
struct SolveOutcome {
    enum class Kind { Inconsistent, Unique, Underdetermined } kind;
    std::vector<Rational> particular;
    std::vector<int> free_cols;
};

SolveOutcome solve_system(std::vector<std::vector<Rational>> aug, int unknowns) {
    const int rows = static_cast<int>(aug.size());
    std::vector<int> pivot_col_of_row(static_cast<std::size_t>(rows), -1);
    int rank = 0;
    for (int col = 0; col < unknowns && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(aug[static_cast<std::size_t>(rank)], aug[static_cast<std::size_t>(pivot)]);
        auto& prow = aug[static_cast<std::size_t>(rank)];
        const Rational lead = prow[static_cast<std::size_t>(col)];
        for (auto& v : prow) v /= lead;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            auto& row = aug[static_cast<std::size_t>(r)];
            const Rational factor = row[static_cast<std::size_t>(col)];
            if (factor == 0) continue;
            for (int c2 = 0; c2 <= unknowns; ++c2) {
                row[static_cast<std::size_t>(c2)] -= factor * prow[static_cast<std::size_t>(c2)];
            }
        }
        pivot_col_of_row[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }
    SolveOutcome out;
    for (int r = rank; r < rows; ++r) {
        if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(unknowns)] != 0) {
            out.kind = SolveOutcome::Kind::Inconsistent;
            return out;
        }
    }
    out.particular.assign(static_cast<std::size_t>(unknowns), Rational(0));
    std::vector<bool> is_pivot(static_cast<std::size_t>(unknowns), false);
    for (int r = 0; r < rank; ++r) {
        const int col = pivot_col_of_row[static_cast<std::size_t>(r)];
        is_pivot[static_cast<std::size_t>(col)] = true;
        out.particular[static_cast<std::size_t>(col)] =
            aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(unknowns)];
    }
    for (int c = 0; c < unknowns; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) out.free_cols.push_back(c);
    }
    out.kind = out.free_cols.empty() ? SolveOutcome::Kind::Unique
                                     : SolveOutcome::Kind::Underdetermined;
    return out;
}

// The indifference system pinning `solver`'s mixed vector over their support:
// the opponent must be indifferent across the opponent's support. Unknowns are
// the solver's support probabilities; rows are consecutive-strategy payoff
// differences for the opponent plus the normalization row.
//
// For player index conventions: vector 0 mixes over rows, vector 1 over
// columns; the system for vector v is driven by the payoffs of player 1-v.
std::vector<std::vector<Rational>> indifference_system(const Game& g, int vector_player,
                                                       const std::vector<int>& own_support,
                                                       const std::vector<int>& other_support) {
    const int opponent = 1 - vector_player;
    const int unknowns = static_cast<int>(own_support.size());
    std::vector<std::vector<Rational>> aug;
    for (std::size_t s = 0; s + 1 < other_support.size(); ++s) {
        std::vector<Rational> row(static_cast<std::size_t>(unknowns) + 1, Rational(0));
        for (int u = 0; u < unknowns; ++u) {
            PureProfile a(2), b(2);
            a[static_cast<std::size_t>(vector_player)] = own_support[static_cast<std::size_t>(u)];
            b[static_cast<std::size_t>(vector_player)] = own_support[static_cast<std::size_t>(u)];
            a[static_cast<std::size_t>(opponent)] = other_support[s];
            b[static_cast<std::size_t>(opponent)] = other_support[s + 1];
            row[static_cast<std::size_t>(u)] = g.payoff(a, opponent) - g.payoff(b, opponent);
        }
        aug.push_back(std::move(row));
    }
    std::vector<Rational> norm(static_cast<std::size_t>(unknowns) + 1, Rational(1));
    aug.push_back(std::move(norm)); // sum of probabilities = 1
    return aug;
}

bool nonnegative(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

bool strictly_positive(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; });
}

std::vector<Rational> expand_to_full(const std::vector<Rational>& on_support,
                                     const std::vector<int>& support, int total) {
    std::vector<Rational> full(static_cast<std::size_t>(total), Rational(0));
    for (std::size_t i = 0; i < support.size(); ++i) {
        full[static_cast<std::size_t>(support[i])] = on_support[i];
    }
    return full;
}

// Candidate support-space vectors solving a (possibly singular) system, all
// nonnegative and summing to one. For singular systems this enumerates the
// vertices of the solution polytope by pinning subsets of coordinates to zero,
// and also offers the uniform distribution when it solves the system (a nicer
// interior witness for fully indifferent opponents).
std::vector<std::vector<Rational>> candidate_support_vectors(
    const std::vector<std::vector<Rational>>& aug, int unknowns) {
    std::vector<std::vector<Rational>> found;
    auto consider = [&](const std::vector<Rational>& v) {
        if (!nonnegative(v)) return;
        if (std::find(found.begin(), found.end(), v) == found.end()) found.push_back(v);
    };
    auto satisfies = [&](const std::vector<Rational>& v) {
        for (const auto& row : aug) {
            Rational acc = 0;
            for (int c = 0; c < unknowns; ++c) {
                acc += row[static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(c)];
            }
            if (acc != row[static_cast<std::size_t>(unknowns)]) return false;
        }
        return true;
    };

    const std::vector<Rational> uniform(static_cast<std::size_t>(unknowns),
                                        Rational(1, unknowns));
    if (satisfies(uniform)) consider(uniform);

    // Every vertex of {x >= 0, aug holds} has enough zero coordinates to make
    // the pinned system determined, so subset enumeration is exhaustive here.
    const int subsets = 1 << unknowns;
    for (int mask = 0; mask < subsets - 1; ++mask) {
        auto pinned = aug;
        for (int c = 0; c < unknowns; ++c) {
            if (!(mask & (1 << c))) continue;
            std::vector<Rational> zero_row(static_cast<std::size_t>(unknowns) + 1, Rational(0));
            zero_row[static_cast<std::size_t>(c)] = 1;
            pinned.push_back(std::move(zero_row));
        }
        const SolveOutcome outcome = solve_system(pinned, unknowns);
        if (outcome.kind == SolveOutcome::Kind::Unique) consider(outcome.particular);
    }
    return found;
}

// True iff the opponent of `vector_player` has one constant payoff across the
// whole support block (which is what makes that side's system singular in the
// common case).
bool opponent_uniform_on_block(const Game& g, int vector_player,
                               const std::vector<int>& own_support,
                               const std::vector<int>& other_support) {
    const int opponent = 1 - vector_player;
    std::optional<Rational> seen;
    for (int own : own_support) {
        for (int other : other_support) {
            PureProfile profile(2);
            profile[static_cast<std::size_t>(vector_player)] = own;
            profile[static_cast<std::size_t>(opponent)] = other;
            const Rational& v = g.payoff(profile, opponent);
            if (!seen) {
                seen = v;
            } else if (*seen != v) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<int>> nonempty_subsets_lex(int count) {
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << count); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < count; ++i) {
            if (mask & (1 << i)) subset.push_back(i);
        }
        subsets.push_back(std::move(subset));
    }
    std::sort(subsets.begin(), subsets.end());
    return subsets;
}

} // namespace

MixedSolution mixed_equilibria_2p(const Game& g) {
    if (g.num_players() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "mixed solving is implemented for two players");
    }
    const std::vector<int> counts = g.strategy_counts();
    MixedSolution out;

    const auto row_supports = nonempty_subsets_lex(counts[0]);
    const auto col_supports = nonempty_subsets_lex(counts[1]);

    for (const auto& s1 : row_supports) {
        for (const auto& s2 : col_supports) {
            // p is pinned by player 2's indifference over s2, q by player 1's
            // indifference over s1.
            const auto p_aug = indifference_system(g, 0, s1, s2);
            const auto q_aug = indifference_system(g, 1, s2, s1);
            const SolveOutcome p_out = solve_system(p_aug, static_cast<int>(s1.size()));
            const SolveOutcome q_out = solve_system(q_aug, static_cast<int>(s2.size()));
            if (p_out.kind == SolveOutcome::Kind::Inconsistent ||
                q_out.kind == SolveOutcome::Kind::Inconsistent) {
                continue;
            }

            const bool p_unique = p_out.kind == SolveOutcome::Kind::Unique;
            const bool q_unique = q_out.kind == SolveOutcome::Kind::Unique;

            if (p_unique && q_unique) {
                // Strict positivity keeps each equilibrium attached to its own
                // exact support; boundary solutions surface at the smaller
                // support instead.
                if (!strictly_positive(p_out.particular) ||
                    !strictly_positive(q_out.particular)) {
                    continue;
                }
                MixedProfile profile;
                profile.probs = {expand_to_full(p_out.particular, s1, counts[0]),
                                 expand_to_full(q_out.particular, s2, counts[1])};
                if (!verify_mixed(g, profile)) continue;
                if (std::find(out.equilibria.begin(), out.equilibria.end(), profile) ==
                    out.equilibria.end()) {
                    out.equilibria.push_back(std::move(profile));
                }
                continue;
            }

            // At least one side is a continuum candidate. Build a witness from
            // exact solutions of both systems and keep the support only if the
            // witness verifies.
            const auto p_candidates = candidate_support_vectors(p_aug, static_cast<int>(s1.size()));
            const auto q_candidates = candidate_support_vectors(q_aug, static_cast<int>(s2.size()));
            MixedProfile witness;
            bool found = false;
            for (const auto& pc : p_candidates) {
                for (const auto& qc : q_candidates) {
                    MixedProfile trial;
                    trial.probs = {expand_to_full(pc, s1, counts[0]),
                                   expand_to_full(qc, s2, counts[1])};
                    if (verify_mixed(g, trial)) {
                        witness = std::move(trial);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (!found) continue;

            DegenerateSupport record;
            record.support = {s1, s2};
            record.pinned = {p_unique, q_unique};
            if (p_unique) record.pinned_vector[0] = expand_to_full(p_out.particular, s1, counts[0]);
            if (q_unique) record.pinned_vector[1] = expand_to_full(q_out.particular, s2, counts[1]);
            if (!p_unique && opponent_uniform_on_block(g, 0, s1, s2)) {
                record.uniform_player = 1;
            } else if (!q_unique && opponent_uniform_on_block(g, 1, s2, s1)) {
                record.uniform_player = 0;
            }
            record.witness = std::move(witness);
            {
                std::string note = "continuum of equilibria on this support; ";
                if (record.uniform_player >= 0) {
                    note += "player " + g.players()[static_cast<std::size_t>(record.uniform_player)] +
                            " has uniform payoffs here, leaving the opponent's mix free";
                } else {
                    note += "the indifference system is rank-deficient";
                }
                record.note = std::move(note);
            }
            out.degenerate.push_back(std::move(record));
        }
    }
    return out;
}

bool verify_mixed(const Game& g, const MixedProfile& profile) {
    validate_profile(g, profile);
    for (int p = 0; p < g.num_players(); ++p) {
        const Rational value = expected_payoff(g, profile, p);
        const int count = static_cast<int>(g.strategies(p).size());
        for (int alt = 0; alt < count; ++alt) {
            MixedProfile deviation = profile;
            auto& vec = deviation.probs[static_cast<std::size_t>(p)];
            std::fill(vec.begin(), vec.end(), Rational(0));
            vec[static_cast<std::size_t>(alt)] = 1;
            const Rational dev_value = expected_payoff(g, deviation, p);
            if (dev_value > value) return false;
            const bool in_support = profile.probs[static_cast<std::size_t>(p)]
                                                 [static_cast<std::size_t>(alt)] > 0;
            if (in_support && dev_value != value) return false;
        }
    }
    return true;
}

std::vector<int> best_responses(const Game& g, int player, const MixedProfile& opponents) {
    const int count = static_cast<int>(g.strategies(player).size());
    std::vector<int> best;
    std::optional<Rational> best_value;
    for (int s = 0; s < count; ++s) {
        MixedProfile trial = opponents;
        if (trial.probs.size() != static_cast<std::size_t>(g.num_players())) {
            trial.probs.resize(static_cast<std::size_t>(g.num_players()));
        }
        auto& own = trial.probs[static_cast<std::size_t>(player)];
        own.assign(static_cast<std::size_t>(count), Rational(0));
        own[static_cast<std::size_t>(s)] = 1;
        const Rational value = expected_payoff(g, trial, player);
        if (!best_value || value > *best_value) {
            best_value = value;
            best = {s};
        } else if (value == *best_value) {
            best.push_back(s);
        }
    }
    return best;
}

Rational minmax(const Game& g, int player) {
    const int n = g.num_players();
    std::vector<int> counts = g.strategy_counts();
    // Enumerate opponents' joint pure strategies with an odometer.
    std::vector<int> opp(static_cast<std::size_t>(n), 0);
    std::optional<Rational> worst_best;
    while (true) {
        Rational best_reply = 0;
        bool first = true;
        PureProfile profile = opp;
        for (int s = 0; s < counts[static_cast<std::size_t>(player)]; ++s) {
            profile[static_cast<std::size_t>(player)] = s;
            const Rational& v = g.payoff(profile, player);
            if (first || v > best_reply) {
                best_reply = v;
                first = false;
            }
        }
        if (!worst_best || best_reply < *worst_best) worst_best = best_reply;

        // Advance the odometer over every coordinate except the player's own.
        int pos = n - 1;
        while (pos >= 0) {
            if (pos == player) {
                --pos;
                continue;
            }
            if (++opp[static_cast<std::size_t>(pos)] < counts[static_cast<std::size_t>(pos)]) break;
            opp[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return *worst_best;
}

bool diagnose_uniformity(const CoarseGame& cg, int perceiver, int subject) {
    if (perceiver < 0 || perceiver >= cg.base.num_players() || subject < 0 ||
        subject >= cg.base.num_players()) {
        throw Error(ErrorCode::ValidationError, "player index out of range");
    }
    const Partition& partition = cg.partitions[static_cast<std::size_t>(perceiver)];
    std::optional<Grain> seen;
    for (std::size_t c = 0; c < cg.base.num_cells(); ++c) {
        const Grain here = partition.coarsen(cg.base.cell(c)[static_cast<std::size_t>(subject)]);
        if (!seen) {
            seen = here;
        } else if (*seen != here) {
            return false;
        }
    }
    return true;
}

CompetitivenessReport diagnose_competitiveness(const CoarseGame& cg, int perceiver) {
    CompetitivenessReport report;
    report.non_competitive = true;
    for (int subject = 0; subject < cg.base.num_players(); ++subject) {
        const bool uniform = diagnose_uniformity(cg, perceiver, subject);
        report.uniform_for.push_back(uniform);
        if (!uniform) report.non_competitive = false;
    }
    return report;
}

EquilibriumSet solve_equilibria(const CoarseGame& cg, std::optional<int> perspective) {
    EquilibriumSet set;
    const Game* game = &cg.base;
    std::optional<PerceivedGame> perceived;
    if (perspective) {
        perceived = perceived_game(cg, *perspective);
        game = &perceived->game;
    }
    set.pure = pure_equilibria(*game);
    if (game->num_players() == 2) {
        MixedSolution mixed = mixed_equilibria_2p(*game);
        set.mixed = std::move(mixed.equilibria);
        set.degenerate = std::move(mixed.degenerate);
    }
    set.diagnostics.multiple_pure = set.pure.size() > 1;
    if (perspective) {
        const CompetitivenessReport comp = diagnose_competitiveness(cg, *perspective);
        for (int subject = 0; subject < cg.base.num_players(); ++subject) {
            if (comp.uniform_for[static_cast<std::size_t>(subject)]) {
                set.diagnostics.uniform_for.push_back(subject);
            }
        }
        set.diagnostics.non_competitive = comp.non_competitive;
    }
    return set;
}

} // namespace cgg
