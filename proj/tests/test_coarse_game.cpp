#include "cgg/coarse_game.hpp"
#include "cgg/errors.hpp"

#include "helpers.hpp"

#include "doctest.h"

#include <vector>

using cgg::CoarseGame;
using cgg::closed_open;
using cgg::Coverage;
using cgg::Error;
using cgg::ErrorCode;
using cgg::Game;
using cgg::Grain;
using cgg::open_closed;
using cgg::Partition;
using cgg::Preprocessing;
using cgg::Rational;

namespace {

Game pd_base() {
    return Game({"player1", "player2"}, {{"Silent", "Confess"}, {"Silent", "Confess"}},
                {{-1, -1}, {-5, 0}, {0, -5}, {-3, -3}});
}

Partition pd_g1() {
    return Partition::validated({closed_open(-8, -6), closed_open(-6, -4), closed_open(-4, -2),
                                 closed_open(-2, 0), Grain::singleton(0), open_closed(0, 2)});
}

Partition pd_g2() {
    return Partition::validated(
        {closed_open(-6, 0), Grain::singleton(0), open_closed(0, 6)});
}

} // namespace

TEST_SUITE("coarse_game") {

TEST_CASE("construction demands one partition and preprocessing entry per player") {
    const Game base = pd_base();
    CHECK_THROWS_AS(CoarseGame(base, {pd_g1()}), Error);
    CHECK_THROWS_AS(CoarseGame(base, {pd_g1(), pd_g2()}, {Preprocessing::Emp}), Error);
    const CoarseGame ok(base, {pd_g1(), pd_g2()});
    CHECK(ok.preprocessing ==
          std::vector<Preprocessing>{Preprocessing::Emp, Preprocessing::Emp});
}

TEST_CASE("grain stage replaces every payoff coordinate with its covering grain") {
    const CoarseGame cg(pd_base(), {pd_g1(), pd_g2()});

    const cgg::GrainMatrix fine = cgg::coarse_view(cg, 0);
    CHECK(fine.perceiver == 0);
    CHECK(fine.cells[0][0] == closed_open(-2, 0));
    CHECK(fine.cells[0][1] == closed_open(-2, 0));

    const cgg::GrainMatrix coarse = cgg::coarse_view(cg, 1);
    CHECK(coarse.cells[0][0] == closed_open(-6, 0));
    CHECK(coarse.cells[0][1] == closed_open(-6, 0));
    // Both coordinates of a cell pass through the same lens, so player 1's
    // payoff of -5 also lands in [-6, 0) when player 2 looks.
    CHECK(coarse.cells[cg.base.cell_index({1, 0})][0] == Grain::singleton(0));
    CHECK(coarse.cells[cg.base.cell_index({1, 0})][1] == closed_open(-6, 0));
}

TEST_CASE("the finest partition leaves every value in its own singleton") {
    cggtest::Rng rng(42);
    const Game g = cggtest::random_game(rng);
    std::vector<Partition> finest(static_cast<std::size_t>(g.num_players()),
                                  Partition::finest());
    const CoarseGame cg(g, finest);
    for (int k = 0; k < g.num_players(); ++k) {
        const cgg::GrainMatrix gm = cgg::coarse_view(cg, k);
        for (std::size_t c = 0; c < g.num_cells(); ++c) {
            for (int p = 0; p < g.num_players(); ++p) {
                CHECK(gm.cells[c][static_cast<std::size_t>(p)] ==
                      Grain::singleton(g.cell(c)[static_cast<std::size_t>(p)]));
            }
        }
    }
}

TEST_CASE("perceived game reduces grains to midpoints") {
    const CoarseGame cg(pd_base(), {pd_g1(), pd_g2()});

    const cgg::PerceivedGame m1 = cgg::perceived_game(cg, 0);
    CHECK(m1.perceiver == 0);
    CHECK(m1.game == pd_base());

    const cgg::PerceivedGame m2 = cgg::perceived_game(cg, 1);
    const Game expected({"player1", "player2"}, {{"Silent", "Confess"}, {"Silent", "Confess"}},
                        {{-3, -3}, {-3, 0}, {0, -3}, {-3, -3}});
    CHECK(m2.game == expected);
}

TEST_CASE("the two-model buyer sees both models as the same product") {
    const Game base({"consumer", "dealer"}, {{"Buy m1", "Buy m2"}, {"Sell m1", "Sell m2"}},
                    {{5, 6}, {0, 0}, {0, 0}, {Rational(11, 2), Rational(13, 2)}});
    const Partition consumer =
        Partition::validated({closed_open(5, 6), closed_open(6, 7), closed_open(7, 8)});
    const CoarseGame cg(base, {consumer, Partition::finest()});
    const Game perceived = cgg::perceived_game(cg, 0).game;
    const std::vector<Rational> matched = {Rational(11, 2), Rational(13, 2)};
    CHECK(perceived.cell(perceived.cell_index({0, 0})) == matched);
    CHECK(perceived.cell(perceived.cell_index({1, 1})) == matched);
    CHECK(perceived.cell(perceived.cell_index({0, 1})) == std::vector<Rational>{0, 0});
}

TEST_CASE("ignore preprocessing refuses to produce a numeric matrix") {
    const CoarseGame cg(pd_base(), {pd_g1(), pd_g2()},
                        {Preprocessing::Ignore, Preprocessing::Emp});
    try {
        cgg::perceived_game(cg, 0);
        FAIL("no error raised");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IgnorePreprocessing);
    }
    CHECK_NOTHROW(cgg::perceived_game(cg, 1));
}

TEST_CASE("strict coverage surfaces uncovered payoffs") {
    const Partition strict =
        Partition::validated({closed_open(-6, 0)}, Coverage::Strict);
    const CoarseGame cg(pd_base(), {strict, Partition::finest()});
    try {
        cgg::coarse_view(cg, 0);
        FAIL("no error raised");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Uncovered);
    }
}

TEST_CASE("payoffs landing in unbounded grains cannot be reduced") {
    const Partition below_zero = Partition::validated(
        {Grain::interval(std::nullopt, false, Rational(0), false)});
    const CoarseGame cg(pd_base(), {below_zero, Partition::finest()});
    CHECK_NOTHROW(cgg::coarse_view(cg, 0)); // the grain stage itself is fine
    try {
        cgg::perceived_game(cg, 0);
        FAIL("no error raised");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnboundedGrain);
    }
}

TEST_CASE("perceived games keep the base game's shape and names") {
    cggtest::Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const CoarseGame cg = cggtest::random_coarse_game(rng);
        for (int k = 0; k < cg.base.num_players(); ++k) {
            const Game perceived = cgg::perceived_game(cg, k).game;
            CHECK(perceived.players() == cg.base.players());
            CHECK(perceived.strategy_counts() == cg.base.strategy_counts());
            for (int p = 0; p < cg.base.num_players(); ++p) {
                CHECK(perceived.strategies(p) == cg.base.strategies(p));
            }
        }
    }
}

TEST_CASE("coarse game equality is structural") {
    const CoarseGame a(pd_base(), {pd_g1(), pd_g2()});
    const CoarseGame b(pd_base(), {pd_g1(), pd_g2()});
    const CoarseGame c(pd_base(), {pd_g2(), pd_g1()});
    CHECK(a == b);
    CHECK(a != c);
}

} // TEST_SUITE
