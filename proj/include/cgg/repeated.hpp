// Repeated-game analysis under the grim trigger: discounted values, the
// critical discount factor per perspective matrix, misalignment intervals
// between perspectives, and cooperation verdicts at a given discount factor.
#pragma once

#include "cgg/coarse_game.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cgg {

// Stage payoffs for one player under cooperate/defect role labels:
// t_c mutual cooperation, t_d unilateral defection against a cooperator,
// t_b mutual defection.
struct StageRoles {
    Rational t_c;
    Rational t_d;
    Rational t_b;

    // Interior thresholds need t_d > t_c > t_b; violations are reported by
    // callers, never silently accepted.
    bool meaningful() const { return t_d > t_c && t_c > t_b; }
};

struct RoleLabels {
    std::string cooperate;
    std::string defect;
};

// Reads one player's role payoffs from a two-player matrix under per-player
// labels. Throws Error{RoleLabelMissing} when a label is not a strategy of
// the player it applies to, and Error{DimensionMismatch} for non-2-player
// games.
StageRoles stage_roles(const Game& g, int player, const std::vector<RoleLabels>& labels);

// First-period payoff t0 followed by a constant stream t discounted by delta:
// t0 + delta*t/(1-delta). Throws Error{InvalidDiscount} unless 0 <= delta < 1.
Rational discounted_value(const Rational& t0, const Rational& t, const Rational& delta);

enum class ThresholdClass {
    Interior,         // in (0,1): patience genuinely decides
    AlwaysSustains,   // <= 0: cooperation preferred at every discount factor
    NeverSustains,    // >= 1: no discount factor in [0,1) sustains cooperation
};

struct CriticalDelta {
    Rational value;
    ThresholdClass classification;
};

// (t_d - t_c) / (t_d - t_b), exact, classified rather than clamped when it
// falls outside [0,1). Throws Error{DegenerateRoles} when t_d = t_b or the
// denominator is negative (roles inverted).
CriticalDelta critical_delta(const StageRoles& roles);

// One perspective matrix's thresholds: the base game or one player's
// perceived game. A degenerate perspective records the failure instead of
// aborting the whole analysis.
struct PerspectiveThresholds {
    std::string perspective; // "base" or the perceiving player's name
    struct PerPlayer {
        StageRoles roles;
        std::optional<CriticalDelta> threshold; // nullopt when degenerate
        std::string degenerate_reason;          // empty when threshold present
    };
    std::vector<PerPlayer> players;
};

struct DiscountAnalysis {
    std::vector<PerspectiveThresholds> perspectives; // base first, then each player

    const PerspectiveThresholds* find(const std::string& perspective) const;
};

// Computes critical_delta on the base matrix and on every perceived matrix,
// for each player. Throws Error{RoleLabelMissing} / Error{DimensionMismatch}
// for malformed requests; DegenerateRoles is recorded per perspective.
DiscountAnalysis perspective_thresholds(const CoarseGame& cg,
                                        const std::vector<RoleLabels>& labels);

// Discount factors where perspective a predicts cooperation but perspective b
// does not: [threshold_a, threshold_b) when threshold_a < threshold_b, else
// nothing. Perspectives with recorded degeneracies yield nothing.
std::optional<std::pair<Rational, Rational>> misalignment(const DiscountAnalysis& analysis,
                                                          const std::string& perspective_a,
                                                          const std::string& perspective_b,
                                                          int player);

// True iff delta >= threshold. Throws Error{InvalidDiscount} unless
// 0 <= delta < 1.
bool cooperation_verdict(const Rational& threshold, const Rational& delta);

} // namespace cgg
