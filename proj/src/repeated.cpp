#include "cgg/repeated.hpp"

#include "cgg/errors.hpp"

namespace cgg {

StageRoles stage_roles(const Game& g, int player, const std::vector<RoleLabels>& labels) {
    if (g.num_players() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "role payoffs are defined for two-player games");
    }
    if (labels.size() != 2) {
        throw Error(ErrorCode::RoleLabelMissing, "cooperate/defect labels required for both players");
    }
    int coop[2], defect[2];
    for (int p = 0; p < 2; ++p) {
        coop[p] = g.strategy_index(p, labels[static_cast<std::size_t>(p)].cooperate);
        defect[p] = g.strategy_index(p, labels[static_cast<std::size_t>(p)].defect);
        if (coop[p] < 0) {
            throw Error(ErrorCode::RoleLabelMissing,
                        "'" + labels[static_cast<std::size_t>(p)].cooperate +
                            "' is not a strategy of player " + g.players()[p]);
        }
        if (defect[p] < 0) {
            throw Error(ErrorCode::RoleLabelMissing,
                        "'" + labels[static_cast<std::size_t>(p)].defect +
                            "' is not a strategy of player " + g.players()[p]);
        }
    }
    const int other = 1 - player;
    PureProfile both_coop(2), both_defect(2), unilateral(2);
    both_coop[static_cast<std::size_t>(player)] = coop[player];
    both_coop[static_cast<std::size_t>(other)] = coop[other];
    both_defect[static_cast<std::size_t>(player)] = defect[player];
    both_defect[static_cast<std::size_t>(other)] = defect[other];
    // Temptation payoff: this player defects while the opponent still cooperates.
    unilateral[static_cast<std::size_t>(player)] = defect[player];
    unilateral[static_cast<std::size_t>(other)] = coop[other];

    StageRoles roles;
    roles.t_c = g.payoff(both_coop, player);
    roles.t_d = g.payoff(unilateral, player);
    roles.t_b = g.payoff(both_defect, player);
    return roles;
}

Rational discounted_value(const Rational& t0, const Rational& t, const Rational& delta) {
    if (delta < 0 || delta >= 1) {
        throw Error(ErrorCode::InvalidDiscount,
                    "discount factor " + format_rational(delta) + " outside [0, 1)");
    }
    return t0 + delta * t / (1 - delta);
}

CriticalDelta critical_delta(const StageRoles& roles) {
    if (roles.t_d == roles.t_b) {
        throw Error(ErrorCode::DegenerateRoles,
                    "defection and punishment payoffs coincide at " +
                        format_rational(roles.t_d));
    }
    if (roles.t_d < roles.t_b) {
        throw Error(ErrorCode::DegenerateRoles,
                    "punishment payoff exceeds the defection payoff (roles inverted)");
    }
    CriticalDelta result;
    result.value = (roles.t_d - roles.t_c) / (roles.t_d - roles.t_b);
    if (result.value <= 0) {
        result.classification = ThresholdClass::AlwaysSustains;
    } else if (result.value >= 1) {
        result.classification = ThresholdClass::NeverSustains;
    } else {
        result.classification = ThresholdClass::Interior;
    }
    return result;
}

namespace {

PerspectiveThresholds thresholds_for(const Game& matrix, const std::string& label,
                                     const std::vector<RoleLabels>& labels) {
    PerspectiveThresholds entry;
    entry.perspective = label;
    for (int p = 0; p < 2; ++p) {
        PerspectiveThresholds::PerPlayer per;
        per.roles = stage_roles(matrix, p, labels);
        try {
            per.threshold = critical_delta(per.roles);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateRoles) throw;
            per.threshold = std::nullopt;
            per.degenerate_reason = e.what();
        }
        entry.players.push_back(std::move(per));
    }
    return entry;
}

} // namespace

const PerspectiveThresholds* DiscountAnalysis::find(const std::string& perspective) const {
    for (const auto& entry : perspectives) {
        if (entry.perspective == perspective) return &entry;
    }
    return nullptr;
}

DiscountAnalysis perspective_thresholds(const CoarseGame& cg,
                                        const std::vector<RoleLabels>& labels) {
    if (cg.base.num_players() != 2) {
        throw Error(ErrorCode::DimensionMismatch,
                    "perspective thresholds are defined for two-player stage games");
    }
    DiscountAnalysis analysis;
    analysis.perspectives.push_back(thresholds_for(cg.base, "base", labels));
    for (int p = 0; p < 2; ++p) {
        const PerceivedGame pg = perceived_game(cg, p);
        analysis.perspectives.push_back(thresholds_for(pg.game, cg.base.players()[p], labels));
    }
    return analysis;
}

std::optional<std::pair<Rational, Rational>> misalignment(const DiscountAnalysis& analysis,
                                                          const std::string& perspective_a,
                                                          const std::string& perspective_b,
                                                          int player) {
    const PerspectiveThresholds* a = analysis.find(perspective_a);
    const PerspectiveThresholds* b = analysis.find(perspective_b);
    if (!a || !b) {
        throw Error(ErrorCode::ValidationError, "unknown perspective in misalignment query");
    }
    const auto& pa = a->players.at(static_cast<std::size_t>(player));
    const auto& pb = b->players.at(static_cast<std::size_t>(player));
    if (!pa.threshold || !pb.threshold) return std::nullopt;
    if (pa.threshold->value < pb.threshold->value) {
        return std::make_pair(pa.threshold->value, pb.threshold->value);
    }
    return std::nullopt;
}

bool cooperation_verdict(const Rational& threshold, const Rational& delta) {
    if (delta < 0 || delta >= 1) {
        throw Error(ErrorCode::InvalidDiscount,
                    "discount factor " + format_rational(delta) + " outside [0, 1)");
    }
    return delta >= threshold;
}

} // namespace cgg
