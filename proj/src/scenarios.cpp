#include "cgg/scenarios.hpp"

#include "cgg/differentials.hpp"
#include "cgg/equilibrium.hpp"
#include "cgg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cgg {

namespace {

using Cells = std::vector<std::vector<Rational>>;

Game two_by_two(const std::string& p1, const std::string& p2,
                const std::vector<std::string>& s1, const std::vector<std::string>& s2,
                Cells cells) {
    return Game({p1, p2}, {s1, s2}, std::move(cells));
}

std::string describe_profile(const PureProfile& profile) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (i) os << ",";
        os << profile[i];
    }
    os << ")";
    return os.str();
}

std::string describe_profiles(const std::vector<PureProfile>& profiles) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (i) os << " ";
        os << describe_profile(profiles[i]);
    }
    os << "]";
    return os.str();
}

std::string describe_vector(const std::vector<Rational>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << format_rational(v[i]);
    }
    os << ")";
    return os.str();
}

std::string describe_mixed(const MixedProfile& m) {
    std::ostringstream os;
    for (std::size_t p = 0; p < m.probs.size(); ++p) {
        if (p) os << " x ";
        os << describe_vector(m.probs[p]);
    }
    return os.str();
}

bool check_game_cells(std::string& detail, const std::string& label, const Game& actual,
                      const Cells& expected) {
    for (std::size_t c = 0; c < actual.num_cells(); ++c) {
        if (actual.cell(c) != expected.at(c)) {
            detail = label + ": cell " + describe_profile(actual.profile_at(c)) + " is " +
                     describe_vector(actual.cell(c)) + ", expected " +
                     describe_vector(expected.at(c));
            return false;
        }
    }
    return true;
}

bool check_pure(std::string& detail, const std::string& label, const Game& g,
                const std::vector<PureProfile>& expected) {
    const auto actual = pure_equilibria(g);
    if (actual != expected) {
        detail = label + ": pure equilibria " + describe_profiles(actual) + ", expected " +
                 describe_profiles(expected);
        return false;
    }
    return true;
}

bool check_rational(std::string& detail, const std::string& label, const Rational& actual,
                    const Rational& expected) {
    if (actual != expected) {
        detail = label + ": got " + format_rational(actual) + ", expected " +
                 format_rational(expected);
        return false;
    }
    return true;
}

MixedProfile mixed2(std::vector<Rational> p, std::vector<Rational> q) {
    MixedProfile m;
    m.probs = {std::move(p), std::move(q)};
    return m;
}

} // namespace

Scenario scenario_coarse_pd() {
    Game base = two_by_two("player1", "player2", {"Silent", "Confess"}, {"Silent", "Confess"},
                           {{-1, -1}, {-5, 0}, {0, -5}, {-3, -3}});
    // Player 1 resolves in width-2 steps around zero, player 2 in width-6.
    Partition g1 = Partition::validated({closed_open(-8, -6), closed_open(-6, -4),
                                         closed_open(-4, -2), closed_open(-2, 0),
                                         Grain::singleton(0), open_closed(0, 2)});
    Partition g2 = Partition::validated({closed_open(-6, 0), Grain::singleton(0),
                                         open_closed(0, 6)});
    CoarseGame cg(base, {g1, g2});

    Scenario s{"coarse-pd",
               "Prisoner's dilemma where player 1's fine resolution reproduces the base "
               "matrix while player 2's coarse one collapses most cells, creating extra "
               "equilibria and the worked gain-loss differentials.",
               cg,
               std::vector<RoleLabels>{{"Silent", "Confess"}, {"Silent", "Confess"}},
               {}};

    s.fixtures.push_back({"player 1's perceived matrix equals the base matrix",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player1",
                                                      perceived_game(cg, 0).game,
                                                      {{-1, -1}, {-5, 0}, {0, -5}, {-3, -3}});
                          }});
    s.fixtures.push_back({"player 2's perceived matrix collapses to the coarse table",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player2",
                                                      perceived_game(cg, 1).game,
                                                      {{-3, -3}, {-3, 0}, {0, -3}, {-3, -3}});
                          }});
    s.fixtures.push_back({"grain stage maps the mutual-silence cell into [-6,0) twice",
                          [cg](std::string& detail) {
                              const GrainMatrix gm = coarse_view(cg, 1);
                              const Grain expected = closed_open(-6, 0);
                              if (gm.cells[0][0] != expected || gm.cells[0][1] != expected) {
                                  detail = "cell (0,0) grains are " + gm.cells[0][0].to_string() +
                                           ", " + gm.cells[0][1].to_string();
                                  return false;
                              }
                              return true;
                          }});
    s.fixtures.push_back({"base game has the lone mutual-confession equilibrium",
                          [cg](std::string& detail) {
                              return check_pure(detail, "base", cg.base, {{1, 1}});
                          }});
    s.fixtures.push_back({"player 1's perceived game keeps that lone equilibrium",
                          [cg](std::string& detail) {
                              return check_pure(detail, "perceived player1",
                                                perceived_game(cg, 0).game, {{1, 1}});
                          }});
    s.fixtures.push_back({"player 2's perceived game gains two more equilibria",
                          [cg](std::string& detail) {
                              return check_pure(detail, "perceived player2",
                                                perceived_game(cg, 1).game,
                                                {{0, 1}, {1, 0}, {1, 1}});
                          }});
    s.fixtures.push_back(
        {"differentials for realized (Confess, Silent) match the worked values",
         [cg](std::string& detail) {
             const RealizedOutcome realized = realized_override(cg, {1, 0});
             const PureProfile lens1_expect = {1, 1};
             const PureProfile lens2_expect = {1, 0};
             return check_rational(detail, "incidental lens player1 subject player1",
                                   incidental_differential(cg, 0, 0, lens1_expect, realized),
                                   3) &&
                    check_rational(detail, "incidental lens player1 subject player2",
                                   incidental_differential(cg, 0, 1, lens1_expect, realized),
                                   -2) &&
                    check_rational(detail, "incidental lens player2 subject player1",
                                   incidental_differential(cg, 1, 0, lens2_expect, realized),
                                   0) &&
                    check_rational(detail, "incidental lens player2 subject player2",
                                   incidental_differential(cg, 1, 1, lens2_expect, realized),
                                   0) &&
                    check_rational(detail, "base differential player1",
                                   unrecognized_differential(cg, 0, std::nullopt, realized),
                                   3) &&
                    check_rational(detail, "base differential player2",
                                   unrecognized_differential(cg, 1, std::nullopt, realized),
                                   -2);
         }});
    return s;
}

Scenario scenario_mixed_shift() {
    Game base = two_by_two("player1", "player2", {"Coop", "Defect"}, {"Coop", "Defect"},
                           {{5, 3}, {1, 4}, {2, 1}, {3, 0}});
    // Only the payoff 5 crosses a grain boundary; everything else is untouched.
    Partition g1 = Partition::validated({open_closed(4, 8)});
    CoarseGame cg(base, {g1, Partition::finest()});

    Scenario s{"mixed-shift",
               "One payoff crossing a grain boundary shifts the opponent's equilibrium mix "
               "while the perceiving player's own mix stays put.",
               cg, std::nullopt, {}};

    s.fixtures.push_back({"player 1's perceived matrix lifts only the boundary-crossing payoff",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player1",
                                                      perceived_game(cg, 0).game,
                                                      {{6, 3}, {1, 4}, {2, 1}, {3, 0}});
                          }});
    s.fixtures.push_back(
        {"base game has the lone mixed equilibrium ((1/2,1/2),(2/5,3/5))",
         [cg](std::string& detail) {
             const MixedSolution sol = mixed_equilibria_2p(cg.base);
             const MixedProfile expected =
                 mixed2({Rational(1, 2), Rational(1, 2)}, {Rational(2, 5), Rational(3, 5)});
             if (sol.equilibria.size() != 1 || sol.equilibria[0] != expected ||
                 !sol.degenerate.empty()) {
                 detail = "got " + std::to_string(sol.equilibria.size()) + " equilibria";
                 for (const auto& e : sol.equilibria) detail += " " + describe_mixed(e);
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back(
        {"perceived game shifts the opponent's mix to (1/3,2/3)",
         [cg](std::string& detail) {
             const MixedSolution sol = mixed_equilibria_2p(perceived_game(cg, 0).game);
             const MixedProfile expected =
                 mixed2({Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)});
             if (sol.equilibria.size() != 1 || sol.equilibria[0] != expected) {
                 detail = "got";
                 for (const auto& e : sol.equilibria) detail += " " + describe_mixed(e);
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back(
        {"player 1's own mix is unchanged by the resolution change",
         [cg](std::string& detail) {
             const MixedSolution base_sol = mixed_equilibria_2p(cg.base);
             const MixedSolution coarse_sol = mixed_equilibria_2p(perceived_game(cg, 0).game);
             if (base_sol.equilibria.size() != 1 || coarse_sol.equilibria.size() != 1 ||
                 base_sol.equilibria[0].probs[0] != coarse_sol.equilibria[0].probs[0]) {
                 detail = "row-player vectors differ";
                 return false;
             }
             return true;
         }});
    return s;
}

Scenario scenario_uniform_reduction() {
    Game base = two_by_two("player1", "player2", {"Coop", "Defect"}, {"Coop", "Defect"},
                           {{5, 3}, {1, 4}, {2, 1}, {3, 0}});
    // Two grains swallow every payoff; the opponent's side flattens to 2.
    Partition g1 = Partition::validated({closed_closed(0, 4), open_closed(4, 8)});
    CoarseGame cg(base, {g1, Partition::finest()});

    Scenario s{"uniform-reduction",
               "A two-grain resolution that flattens the opponent's payoffs to a constant, "
               "making one strategy weakly dominant for the perceiver.",
               cg, std::nullopt, {}};

    s.fixtures.push_back({"player 2 is uniform through player 1's lens",
                          [cg](std::string& detail) {
                              if (!diagnose_uniformity(cg, 0, 1)) {
                                  detail = "expected uniformity for subject player2";
                                  return false;
                              }
                              return true;
                          }});
    s.fixtures.push_back({"player 1 is not uniform through their own lens",
                          [cg](std::string& detail) {
                              if (diagnose_uniformity(cg, 0, 0)) {
                                  detail = "subject player1 reported uniform";
                                  return false;
                              }
                              return true;
                          }});
    s.fixtures.push_back({"perceived matrix flattens the opponent to the constant 2",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player1",
                                                      perceived_game(cg, 0).game,
                                                      {{6, 2}, {2, 2}, {2, 2}, {2, 2}});
                          }});
    s.fixtures.push_back(
        {"cooperation is the perceiver's only best response while the opponent cooperates",
         [cg](std::string& detail) {
             const Game m1 = perceived_game(cg, 0).game;
             MixedProfile vs_coop = mixed2({0, 0}, {1, 0});
             MixedProfile vs_defect = mixed2({0, 0}, {0, 1});
             const auto br_coop = best_responses(m1, 0, vs_coop);
             const auto br_defect = best_responses(m1, 0, vs_defect);
             if (br_coop != std::vector<int>{0}) {
                 detail = "best response against Coop is not uniquely Coop";
                 return false;
             }
             if (br_defect != std::vector<int>{0, 1}) {
                 detail = "expected a tie against Defect (weak dominance)";
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back(
        {"one-sided flattening is not full competitive collapse",
         [cg](std::string& detail) {
             const CompetitivenessReport report = diagnose_competitiveness(cg, 0);
             if (report.uniform_for != std::vector<bool>{false, true} || report.non_competitive) {
                 detail = "competitiveness flags off";
                 return false;
             }
             return true;
         }});
    return s;
}

Scenario scenario_uniform_reduction_remark() {
    Game base = two_by_two("player1", "player2", {"Coop", "Defect"}, {"Coop", "Defect"},
                           {{10, 4}, {8, 5}, {0, 6}, {11, 4}});
    Partition g1 = Partition::validated({Grain::singleton(0), closed_closed(4, 6),
                                         Grain::singleton(8), Grain::singleton(10),
                                         Grain::singleton(11)});
    CoarseGame cg(base, {g1, Partition::finest()});

    Scenario s{"uniform-reduction-remark",
               "Companion game where flattening the opponent's payoffs leaves the opponent's "
               "mix pinned but the perceiver faces an equilibrium continuum.",
               cg, std::nullopt, {}};

    s.fixtures.push_back(
        {"base game has the lone mixed equilibrium ((2/3,1/3),(3/13,10/13))",
         [cg](std::string& detail) {
             const MixedSolution sol = mixed_equilibria_2p(cg.base);
             const MixedProfile expected =
                 mixed2({Rational(2, 3), Rational(1, 3)}, {Rational(3, 13), Rational(10, 13)});
             if (!pure_equilibria(cg.base).empty()) {
                 detail = "unexpected pure equilibrium in the base game";
                 return false;
             }
             if (sol.equilibria.size() != 1 || sol.equilibria[0] != expected) {
                 detail = "got";
                 for (const auto& e : sol.equilibria) detail += " " + describe_mixed(e);
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back({"perceived matrix flattens player 2's payoffs to 5",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player1",
                                                      perceived_game(cg, 0).game,
                                                      {{10, 5}, {8, 5}, {0, 5}, {11, 5}});
                          }});
    s.fixtures.push_back(
        {"full-support continuum is flagged with player 2's mix pinned at (3/13,10/13)",
         [cg](std::string& detail) {
             const MixedSolution sol = mixed_equilibria_2p(perceived_game(cg, 0).game);
             const std::vector<int> full = {0, 1};
             for (const auto& record : sol.degenerate) {
                 if (record.support[0] != full || record.support[1] != full) continue;
                 if (record.pinned[0] || !record.pinned[1]) {
                     detail = "wrong pinned sides on the full support";
                     return false;
                 }
                 const std::vector<Rational> expected = {Rational(3, 13), Rational(10, 13)};
                 if (record.pinned_vector[1] != expected) {
                     detail = "pinned vector is " + describe_vector(record.pinned_vector[1]);
                     return false;
                 }
                 if (record.uniform_player != 1) {
                     detail = "degeneracy not attributed to player2";
                     return false;
                 }
                 return true;
             }
             detail = "no degenerate record on the full support";
             return false;
         }});
    s.fixtures.push_back(
        {"every degeneracy witness verifies as an equilibrium",
         [cg](std::string& detail) {
             const Game m1 = perceived_game(cg, 0).game;
             const MixedSolution sol = mixed_equilibria_2p(m1);
             if (sol.degenerate.empty()) {
                 detail = "expected at least one degenerate support";
                 return false;
             }
             for (const auto& record : sol.degenerate) {
                 if (!verify_mixed(m1, record.witness)) {
                     detail = "witness fails for a flagged support";
                     return false;
                 }
             }
             return true;
         }});
    return s;
}

Scenario scenario_discount_misalignment() {
    Game base = two_by_two("player1", "player2", {"Silent", "Confess"}, {"Silent", "Confess"},
                           {{-1, -1}, {-5, 0}, {0, -5}, {-3, -3}});
    // Player 1's grains squeeze the punishment cell upward; player 2's leave
    // every payoff where it was. Grain lists are inferred from the transformed
    // matrices they must produce.
    Partition g1 = Partition::validated({closed_open(-6, -4), closed_open(-4, -1),
                                         closed_open(-1, 0), Grain::singleton(0)});
    Partition g2 = Partition::validated({closed_open(-6, -4), closed_open(-4, -2),
                                         closed_open(-2, 0), Grain::singleton(0)});
    CoarseGame cg(base, {g1, g2});

    Scenario s{"discount-misalignment",
               "Perception-dependent patience thresholds: the same stage game reads as "
               "easier to sustain through one player's lens than the other's.",
               cg,
               std::vector<RoleLabels>{{"Silent", "Confess"}, {"Silent", "Confess"}},
               {}};
    const std::vector<RoleLabels> labels = *s.roles;

    s.fixtures.push_back({"player 1's perceived matrix softens both symmetric cells",
                          [cg](std::string& detail) {
                              return check_game_cells(
                                  detail, "perceived player1", perceived_game(cg, 0).game,
                                  {{Rational(-1, 2), Rational(-1, 2)},
                                   {-5, 0},
                                   {0, -5},
                                   {Rational(-5, 2), Rational(-5, 2)}});
                          }});
    s.fixtures.push_back({"player 2's perceived matrix reproduces the base numbers",
                          [cg](std::string& detail) {
                              return check_game_cells(detail, "perceived player2",
                                                      perceived_game(cg, 1).game,
                                                      {{-1, -1}, {-5, 0}, {0, -5}, {-3, -3}});
                          }});
    s.fixtures.push_back(
        {"thresholds: base 1/3, player 1's lens 1/5, player 2's lens 1/3",
         [cg, labels](std::string& detail) {
             const DiscountAnalysis analysis = perspective_thresholds(cg, labels);
             struct Expectation {
                 const char* perspective;
                 Rational value;
             } expectations[] = {{"base", Rational(1, 3)},
                                 {"player1", Rational(1, 5)},
                                 {"player2", Rational(1, 3)}};
             for (const auto& e : expectations) {
                 const PerspectiveThresholds* entry = analysis.find(e.perspective);
                 if (!entry) {
                     detail = std::string("missing perspective ") + e.perspective;
                     return false;
                 }
                 for (const auto& per : entry->players) {
                     if (!per.threshold || per.threshold->value != e.value) {
                         detail = std::string(e.perspective) + " threshold is not " +
                                  format_rational(e.value);
                         return false;
                     }
                 }
             }
             return true;
         }});
    s.fixtures.push_back(
        {"misalignment interval between the lenses is [1/5, 1/3) and contains 1/4",
         [cg, labels](std::string& detail) {
             const DiscountAnalysis analysis = perspective_thresholds(cg, labels);
             const auto interval = misalignment(analysis, "player1", "player2", 1);
             if (!interval || interval->first != Rational(1, 5) ||
                 interval->second != Rational(1, 3)) {
                 detail = "interval missing or wrong";
                 return false;
             }
             const Rational probe(1, 4);
             if (!(interval->first <= probe && probe < interval->second)) {
                 detail = "1/4 not inside the interval";
                 return false;
             }
             if (misalignment(analysis, "base", "player2", 1)) {
                 detail = "base vs player2 should have no misalignment";
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back(
        {"at discount 1/4 the lenses disagree about cooperation",
         [cg, labels](std::string& detail) {
             const Rational probe(1, 4);
             if (!cooperation_verdict(Rational(1, 5), probe)) {
                 detail = "player 1's lens should predict cooperation";
                 return false;
             }
             if (cooperation_verdict(Rational(1, 3), probe)) {
                 detail = "player 2's lens should predict defection";
                 return false;
             }
             return true;
         }});
    s.fixtures.push_back(
        {"closed-form discounted values match the worked numbers",
         [](std::string& detail) {
             return check_rational(detail, "constant stream -1 at delta 1/2",
                                   discounted_value(-1, -1, Rational(1, 2)), -2) &&
                    check_rational(detail, "defect stream at delta 1/3",
                                   discounted_value(0, -3, Rational(1, 3)), Rational(-3, 2));
         }});
    return s;
}

Scenario scenario_minor_model_change(int models) {
    if (models != 2 && models != 3) {
        throw Error(ErrorCode::ValidationError, "model count must be 2 or 3");
    }
    std::vector<std::string> buys, sells;
    for (int m = 1; m <= models; ++m) {
        buys.push_back("Buy m" + std::to_string(m));
        sells.push_back("Sell m" + std::to_string(m));
    }
    // Diagonal cells carry each model's (buyer, seller) value; a mismatch
    // means no transaction.
    const std::vector<std::vector<Rational>> model_values = {
        {5, 6}, {Rational(11, 2), Rational(13, 2)}, {6, 7}};
    Cells cells;
    for (int r = 0; r < models; ++r) {
        for (int c = 0; c < models; ++c) {
            if (r == c) {
                cells.push_back(model_values[static_cast<std::size_t>(r)]);
            } else {
                cells.push_back({0, 0});
            }
        }
    }
    Game base({"consumer", "dealer"}, {buys, sells}, std::move(cells));
    Partition consumer = Partition::validated({closed_open(5, 6), closed_open(6, 7),
                                               closed_open(7, 8)});
    CoarseGame cg(base, {consumer, Partition::finest()});

    Scenario s{"minor-model-change-" + std::to_string(models),
               models == 2
                   ? "Product pair where a minor upgrade is invisible at the buyer's "
                     "resolution, so the upgraded and original models read identically."
                   : "Product trio where only the larger upgrade crosses the buyer's grain "
                     "boundary and stands out.",
               cg, std::nullopt, {}};

    std::vector<PureProfile> diagonal;
    for (int m = 0; m < models; ++m) diagonal.push_back({m, m});

    s.fixtures.push_back({"base game's equilibria are exactly the matched transactions",
                          [cg, diagonal](std::string& detail) {
                              return check_pure(detail, "base", cg.base, diagonal);
                          }});
    s.fixtures.push_back({"perceived game keeps exactly the matched-transaction equilibria",
                          [cg, diagonal](std::string& detail) {
                              return check_pure(detail, "perceived consumer",
                                                perceived_game(cg, 0).game, diagonal);
                          }});
    if (models == 2) {
        s.fixtures.push_back(
            {"the two matched cells become payoff-identical at the buyer's resolution",
             [cg](std::string& detail) {
                 const Game m = perceived_game(cg, 0).game;
                 const Cells expected = {{Rational(11, 2), Rational(13, 2)},
                                         {0, 0},
                                         {0, 0},
                                         {Rational(11, 2), Rational(13, 2)}};
                 return check_game_cells(detail, "perceived consumer", m, expected);
             }});
    } else {
        s.fixtures.push_back(
            {"only the third model stands out after coarsening, at (13/2, 15/2)",
             [cg](std::string& detail) {
                 const Game m = perceived_game(cg, 0).game;
                 const std::vector<Rational> first = {Rational(11, 2), Rational(13, 2)};
                 const std::vector<Rational> third = {Rational(13, 2), Rational(15, 2)};
                 if (m.cell(m.cell_index({0, 0})) != first ||
                     m.cell(m.cell_index({1, 1})) != first) {
                     detail = "first two matched cells not identical";
                     return false;
                 }
                 if (m.cell(m.cell_index({2, 2})) != third) {
                     detail = "third matched cell is " +
                              describe_vector(m.cell(m.cell_index({2, 2})));
                     return false;
                 }
                 return true;
             }});
        s.fixtures.push_back(
            {"the third matched equilibrium dominates the other two for both sides",
             [cg](std::string& detail) {
                 const Game m = perceived_game(cg, 0).game;
                 const auto& top = m.cell(m.cell_index({2, 2}));
                 for (int d = 0; d < 2; ++d) {
                     const auto& other = m.cell(m.cell_index({d, d}));
                     if (!(top[0] > other[0] && top[1] > other[1])) {
                         detail = "matched cell " + std::to_string(d + 1) + " not dominated";
                         return false;
                     }
                 }
                 return true;
             }});
    }
    return s;
}

namespace {

Scenario build_lemon_market(const Rational& peach_value, const Rational& lemon_value,
                            const std::optional<std::pair<Rational, Rational>>& bounds) {
    if (!(lemon_value < peach_value)) {
        throw Error(ErrorCode::InvalidBounds, "need lemon value strictly below peach value");
    }

    // The buyer's valuation passes through their perception grain; the sale
    // price equals the buyer's perceived value of the cars on offer. Payment
    // itself is never coarse-grained.
    Partition valuation = Partition::finest();
    if (bounds) {
        const auto& [lo, hi] = *bounds;
        if (!(lo <= lemon_value && peach_value <= hi)) {
            throw Error(ErrorCode::InvalidBounds,
                        "need lo <= lemon < peach <= hi, got lo=" + format_rational(lo) +
                            " hi=" + format_rational(hi));
        }
        valuation = Partition::validated({closed_closed(lo, hi)});
    }
    const Rational perceived_peach = emp(valuation.coarsen(peach_value));
    const Rational perceived_lemon = emp(valuation.coarsen(lemon_value));
    // Both cars sit in one grain in the coarse variant, so either perceived
    // value is "the" willingness to pay; the peach anchors the finest variant.
    const Rational price = perceived_peach;

    Cells cells = {
        {perceived_peach - price, price - peach_value}, // matched peach sale
        {0, 0},
        {0, 0},
        {perceived_lemon - price, price - lemon_value}, // matched lemon sale
    };
    Game base({"consumer", "dealer"}, {{"Buy m1", "Buy m2"}, {"Sell m1", "Sell m2"}},
              std::move(cells));
    CoarseGame cg(base, {Partition::finest(), Partition::finest()});
    Scenario s{"", "", cg, std::nullopt, {}};

    const bool coarse = bounds.has_value();
    if (coarse) {
        s.fixtures.push_back(
            {"the buyer prices both cars at the grain midpoint",
             [valuation, peach_value, lemon_value, price](std::string& detail) {
                 const Rational p1 = emp(valuation.coarsen(peach_value));
                 const Rational p2 = emp(valuation.coarsen(lemon_value));
                 return check_rational(detail, "perceived peach value", p1, price) &&
                        check_rational(detail, "perceived lemon value", p2, price);
             }});
        s.fixtures.push_back(
            {"the matched lemon sale pays the dealer the value gap",
             [cg, price, lemon_value, peach_value](std::string& detail) {
                 return check_rational(detail, "dealer payoff at the lemon sale",
                                       cg.base.payoff({1, 1}, 1), price - lemon_value) &&
                        check_rational(detail, "dealer payoff at the peach sale",
                                       cg.base.payoff({0, 0}, 1), price - peach_value);
             }});
        s.fixtures.push_back(
            {"selling the lemon is the dealer's unique best response either way",
             [cg](std::string& detail) {
                 const auto vs_peach = best_responses(cg.base, 1, mixed2({1, 0}, {0, 0}));
                 const auto vs_lemon = best_responses(cg.base, 1, mixed2({0, 1}, {0, 0}));
                 if (vs_peach != std::vector<int>{1} || vs_lemon != std::vector<int>{1}) {
                     detail = "dealer best responses are not uniquely the lemon";
                     return false;
                 }
                 return true;
             }});
        s.fixtures.push_back({"equilibria all involve the dealer offering the lemon",
                              [cg](std::string& detail) {
                                  return check_pure(detail, "base", cg.base,
                                                    {{0, 1}, {1, 1}});
                              }});
    } else {
        s.fixtures.push_back(
            {"at the peach price the dealer is indifferent about the peach sale",
             [cg](std::string& detail) {
                 return check_rational(detail, "dealer payoff at the peach sale",
                                       cg.base.payoff({0, 0}, 1), 0);
             }});
        s.fixtures.push_back(
            {"the lemon sale stops being an equilibrium at the peach price",
             [cg](std::string& detail) {
                 const auto all = pure_equilibria(cg.base);
                 const PureProfile lemon_sale = {1, 1};
                 if (std::find(all.begin(), all.end(), lemon_sale) != all.end()) {
                     detail = "lemon sale still an equilibrium";
                     return false;
                 }
                 return check_pure(detail, "base", cg.base, {{0, 0}, {0, 1}});
             }});
    }
    return s;
}

} // namespace

Scenario scenario_lemon_market(const Rational& peach_value, const Rational& lemon_value,
                               const Rational& perception_lo, const Rational& perception_hi) {
    Scenario s = build_lemon_market(peach_value, lemon_value,
                                    std::make_pair(perception_lo, perception_hi));
    s.name = "lemon-market";
    s.summary =
        "Quality-blind buyer facing a seller who knows the difference: price forms at the "
        "buyer's perceived value, so the seller strictly prefers moving the lemon.";
    return s;
}

Scenario scenario_lemon_market() {
    return scenario_lemon_market(20000, 10000, 10000, 20000);
}

Scenario scenario_lemon_market_finest(const Rational& peach_value, const Rational& lemon_value) {
    Scenario s = build_lemon_market(peach_value, lemon_value, std::nullopt);
    s.name = "lemon-market-finest";
    s.summary =
        "Sharp-eyed buyer variant: price forms at the high-quality value and the "
        "low-quality sale stops being an equilibrium.";
    return s;
}

Scenario scenario_lemon_market_finest() {
    return scenario_lemon_market_finest(20000, 10000);
}

std::vector<std::pair<std::string, std::function<Scenario()>>> scenario_registry() {
    return {
        {"coarse-pd", [] { return scenario_coarse_pd(); }},
        {"mixed-shift", [] { return scenario_mixed_shift(); }},
        {"uniform-reduction", [] { return scenario_uniform_reduction(); }},
        {"uniform-reduction-remark", [] { return scenario_uniform_reduction_remark(); }},
        {"discount-misalignment", [] { return scenario_discount_misalignment(); }},
        {"minor-model-change-2", [] { return scenario_minor_model_change(2); }},
        {"minor-model-change-3", [] { return scenario_minor_model_change(3); }},
        {"lemon-market", [] { return scenario_lemon_market(); }},
        {"lemon-market-finest", [] { return scenario_lemon_market_finest(); }},
    };
}

Scenario scenario_by_name(const std::string& name) {
    for (auto& [known, make] : scenario_registry()) {
        if (known == name) return make();
    }
    std::string names;
    for (auto& [known, make] : scenario_registry()) {
        if (!names.empty()) names += ", ";
        names += known;
    }
    throw Error(ErrorCode::ValidationError, "unknown scenario '" + name + "'; known: " + names);
}

} // namespace cgg
