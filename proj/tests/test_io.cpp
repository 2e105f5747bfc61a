#include "cgg/io.hpp"
#include "cgg/errors.hpp"
#include "cgg/scenarios.hpp"

#include "helpers.hpp"

#include "json.hpp"

#include "doctest.h"

#include <string>
#include <vector>

using cgg::CoarseGame;
using cgg::closed_open;
using cgg::Coverage;
using cgg::Error;
using cgg::ErrorCode;
using cgg::Grain;
using cgg::ParsedDocument;
using cgg::Partition;
using cgg::Preprocessing;
using cgg::Rational;

using Json = nlohmann::ordered_json;

namespace {

Json valid_doc() {
    return Json::parse(R"({
        "version": 1,
        "players": ["player1", "player2"],
        "strategies": {
            "player1": ["Silent", "Confess"],
            "player2": ["Silent", "Confess"]
        },
        "payoffs": [[[-1, -1], [-5, 0]], [[0, -5], [-3, -3]]],
        "partitions": {
            "player1": [
                {"lo": "-6", "lo_closed": true, "hi": "0", "hi_closed": false},
                {"point": "0"}
            ]
        },
        "preprocessing": {"player1": "emp"}
    })");
}

Error parse_failure(const std::string& text) {
    try {
        cgg::parse_game(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("parse unexpectedly succeeded");
    return Error(ErrorCode::ParseError, "unreachable");
}

void check_failure(const Json& doc, ErrorCode code, const std::string& fragment) {
    const Error e = parse_failure(doc.dump());
    CHECK(e.code() == code);
    INFO("message: " << e.what());
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("a plain document parses with sensible defaults") {
    const ParsedDocument parsed = cgg::parse_game(valid_doc().dump());
    const cgg::Game& base = parsed.game.base;
    CHECK(base.players() == std::vector<std::string>{"player1", "player2"});
    CHECK(base.strategies(0) == std::vector<std::string>{"Silent", "Confess"});
    CHECK(base.payoff({0, 0}, 0) == Rational(-1));
    CHECK(base.payoff({0, 1}, 1) == Rational(0));
    CHECK(base.payoff({1, 1}, 0) == Rational(-3));

    const Partition expected =
        Partition::validated({closed_open(-6, 0), Grain::singleton(0)});
    CHECK(parsed.game.partitions[0] == expected);
    CHECK(parsed.game.partitions[1] == Partition::finest()); // unlisted player
    CHECK(parsed.game.preprocessing ==
          std::vector<Preprocessing>{Preprocessing::Emp, Preprocessing::Emp});
    CHECK_FALSE(parsed.roles.has_value());
}

TEST_CASE("rational literals: quoted strings exact, bare integers accepted") {
    Json doc = valid_doc();
    doc["payoffs"][0][0] = {"11/2", "5.5"};
    doc["payoffs"][0][1] = {-7, "0.125"};
    const ParsedDocument parsed = cgg::parse_game(doc.dump());
    CHECK(parsed.game.base.payoff({0, 0}, 0) == Rational(11, 2));
    CHECK(parsed.game.base.payoff({0, 0}, 1) == Rational(11, 2));
    CHECK(parsed.game.base.payoff({0, 1}, 0) == Rational(-7));
    CHECK(parsed.game.base.payoff({0, 1}, 1) == Rational(1, 8));
}

TEST_CASE("unquoted decimals are refused, with the exact position named") {
    Json doc = valid_doc();
    doc["payoffs"][0][1][1] = 0.5;
    const Error e = parse_failure(doc.dump());
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("payoffs[0][1][1]") != std::string::npos);
    CHECK(std::string(e.what()).find("must be quoted") != std::string::npos);

    Json grain = valid_doc();
    grain["partitions"]["player1"][0]["hi"] = 1.25;
    check_failure(grain, ErrorCode::ParseError, "must be quoted");
}

TEST_CASE("malformed rational strings point at their document path") {
    Json doc = valid_doc();
    doc["payoffs"][1][0][0] = "three";
    const Error e = parse_failure(doc.dump());
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("payoffs[1][0][0]") != std::string::npos);
    CHECK(std::string(e.what()).find("invalid rational literal") != std::string::npos);

    Json zero = valid_doc();
    zero["payoffs"][1][0][0] = "1/0";
    check_failure(zero, ErrorCode::ParseError, "zero denominator");
}

TEST_CASE("document-level structure errors") {
    CHECK(parse_failure("{").code() == ErrorCode::ParseError);
    CHECK(parse_failure("[]").code() == ErrorCode::ParseError);
    CHECK(std::string(parse_failure("[]").what()).find("document") != std::string::npos);

    Json extra = valid_doc();
    extra["flavor"] = "sour";
    check_failure(extra, ErrorCode::ParseError, "unknown field 'flavor'");

    Json no_version = valid_doc();
    no_version.erase("version");
    check_failure(no_version, ErrorCode::ParseError, "missing required field 'version'");

    Json wrong_version = valid_doc();
    wrong_version["version"] = 2;
    check_failure(wrong_version, ErrorCode::ParseError, "expected the integer 1");
    wrong_version["version"] = "1";
    check_failure(wrong_version, ErrorCode::ParseError, "expected the integer 1");

    Json solo = valid_doc();
    solo["players"] = Json::array({"loner"});
    check_failure(solo, ErrorCode::ParseError, "at least two player names");
}

TEST_CASE("strategy table errors") {
    Json ghost = valid_doc();
    ghost["strategies"]["ghost"] = Json::array({"Boo"});
    check_failure(ghost, ErrorCode::ParseError, "strategies.ghost: unknown player");

    Json missing = valid_doc();
    missing["strategies"].erase("player2");
    check_failure(missing, ErrorCode::ParseError, "strategies.player2: missing strategy list");

    Json empty = valid_doc();
    empty["strategies"]["player2"] = Json::array();
    check_failure(empty, ErrorCode::ParseError, "non-empty array");

    Json duplicate = valid_doc();
    duplicate["strategies"]["player2"] = Json::array({"Same", "Same"});
    check_failure(duplicate, ErrorCode::ValidationError, "document");
}

TEST_CASE("payoff tensor shape errors carry index paths") {
    Json wide = valid_doc();
    wide["payoffs"][0].push_back(Json::array({Json(1), Json(1)}));
    const Error e = parse_failure(wide.dump());
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("payoffs[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("expected 2 entries, got 3") != std::string::npos);

    Json fat_tuple = valid_doc();
    fat_tuple["payoffs"][0][1] = Json::array({Json(1), Json(2), Json(3)});
    check_failure(fat_tuple, ErrorCode::ParseError, "payoffs[0][1]: expected a tuple of 2");

    Json not_array = valid_doc();
    not_array["payoffs"] = "flat";
    check_failure(not_array, ErrorCode::ParseError, "payoffs: expected an array");
}

TEST_CASE("partition records are strict about their fields") {
    Json stray = valid_doc();
    stray["partitions"]["player1"][0]["width"] = 2;
    check_failure(stray, ErrorCode::ParseError, "partitions.player1[0]: unknown field 'width'");

    Json point_plus = valid_doc();
    point_plus["partitions"]["player1"][1]["hi"] = "1";
    check_failure(point_plus, ErrorCode::ParseError, "unknown field 'hi'");

    Json missing_lo = valid_doc();
    missing_lo["partitions"]["player1"][0].erase("lo");
    check_failure(missing_lo, ErrorCode::ParseError, "missing required field 'lo'");

    Json unknown_player = valid_doc();
    unknown_player["partitions"]["visitor"] = Json::array();
    check_failure(unknown_player, ErrorCode::ParseError, "partitions.visitor: unknown player");

    Json bad_coverage = valid_doc();
    bad_coverage["partitions"]["player1"] =
        Json{{"coverage", "lenient"}, {"grains", Json::array()}};
    check_failure(bad_coverage, ErrorCode::ParseError, "'implicit-finest' or 'strict'");

    Json inverted = valid_doc();
    inverted["partitions"]["player1"][0]["lo"] = "4";
    inverted["partitions"]["player1"][0]["hi"] = "2";
    check_failure(inverted, ErrorCode::ValidationError, "partitions.player1[0]");

    Json overlapping = valid_doc();
    overlapping["partitions"]["player1"] = Json::parse(R"([
        {"lo": "0", "lo_closed": true, "hi": "2", "hi_closed": false},
        {"lo": "1", "lo_closed": true, "hi": "3", "hi_closed": false}
    ])");
    const Error e = parse_failure(overlapping.dump());
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("partitions.player1") != std::string::npos);
    CHECK(std::string(e.what()).find("positions 0 and 1") != std::string::npos);
}

TEST_CASE("infinite endpoints use the signed sentinels only") {
    Json doc = valid_doc();
    doc["partitions"]["player1"] = Json::parse(R"([
        {"lo": "-inf", "lo_closed": false, "hi": "0", "hi_closed": false}
    ])");
    const ParsedDocument parsed = cgg::parse_game(doc.dump());
    CHECK_FALSE(parsed.game.partitions[0].grains()[0].lo().has_value());
    CHECK(parsed.game.partitions[0].grains()[0].hi() == Rational(0));

    Json wrong_side = valid_doc();
    wrong_side["partitions"]["player1"] = Json::parse(R"([
        {"lo": "+inf", "lo_closed": false, "hi": "0", "hi_closed": false}
    ])");
    check_failure(wrong_side, ErrorCode::ParseError, "invalid rational literal");

    Json closed_infinite = valid_doc();
    closed_infinite["partitions"]["player1"] = Json::parse(R"([
        {"lo": "-inf", "lo_closed": true, "hi": "0", "hi_closed": false}
    ])");
    check_failure(closed_infinite, ErrorCode::ValidationError, "partitions.player1[0]");
}

TEST_CASE("partitions accept the bare-array shorthand and the wrapped form") {
    Json bare = valid_doc();
    const ParsedDocument from_bare = cgg::parse_game(bare.dump());
    CHECK(from_bare.game.partitions[0].coverage() == Coverage::ImplicitFinest);

    Json wrapped = valid_doc();
    wrapped["partitions"]["player1"] =
        Json{{"coverage", "strict"}, {"grains", bare["partitions"]["player1"]}};
    const ParsedDocument from_wrapped = cgg::parse_game(wrapped.dump());
    CHECK(from_wrapped.game.partitions[0].coverage() == Coverage::Strict);
    CHECK(from_wrapped.game.partitions[0].grains() == from_bare.game.partitions[0].grains());

    // Serialization always writes the wrapped form, and it parses back equal.
    const std::string text = cgg::serialize_game(from_wrapped.game);
    CHECK(text.find("\"coverage\": \"strict\"") != std::string::npos);
    CHECK(cgg::parse_game(text).game == from_wrapped.game);
}

TEST_CASE("preprocessing modes parse and round-trip") {
    Json doc = valid_doc();
    doc["preprocessing"]["player1"] = "ignore";
    const ParsedDocument parsed = cgg::parse_game(doc.dump());
    CHECK(parsed.game.preprocessing ==
          std::vector<Preprocessing>{Preprocessing::Ignore, Preprocessing::Emp});
    const std::string text = cgg::serialize_game(parsed.game);
    CHECK(cgg::parse_game(text).game == parsed.game);

    Json bad = valid_doc();
    bad["preprocessing"]["player1"] = "average";
    check_failure(bad, ErrorCode::ParseError, "expected 'emp' or 'ignore'");

    Json stranger = valid_doc();
    stranger["preprocessing"]["someone"] = "emp";
    check_failure(stranger, ErrorCode::ParseError, "preprocessing.someone: unknown player");
}

TEST_CASE("roles require labels for every player when present") {
    Json doc = valid_doc();
    doc["roles"] = Json::parse(R"({
        "player1": {"cooperate": "Silent", "defect": "Confess"},
        "player2": {"cooperate": "Silent", "defect": "Confess"}
    })");
    const ParsedDocument parsed = cgg::parse_game(doc.dump());
    REQUIRE(parsed.roles.has_value());
    CHECK((*parsed.roles)[0].cooperate == "Silent");
    CHECK((*parsed.roles)[1].defect == "Confess");

    Json partial = doc;
    partial["roles"].erase("player2");
    check_failure(partial, ErrorCode::ParseError, "roles.player2: missing role labels");

    Json extra = doc;
    extra["roles"]["player1"]["referee"] = "Silent";
    check_failure(extra, ErrorCode::ParseError, "unknown field 'referee'");

    Json incomplete = doc;
    incomplete["roles"]["player1"].erase("defect");
    check_failure(incomplete, ErrorCode::ParseError, "missing required field 'defect'");
}

TEST_CASE("three-player payoff tensors nest one level per player") {
    const Json doc = Json::parse(R"({
        "version": 1,
        "players": ["a", "b", "c"],
        "strategies": {"a": ["x", "y"], "b": ["x", "y"], "c": ["x", "y"]},
        "payoffs": [
            [[[1, 2, 3], [4, 5, 6]], [[7, 8, 9], ["10/3", 11, 12]]],
            [[[0, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 1]]]
        ]
    })");
    const ParsedDocument parsed = cgg::parse_game(doc.dump());
    CHECK(parsed.game.base.payoff({0, 0, 0}, 2) == Rational(3));
    CHECK(parsed.game.base.payoff({0, 1, 1}, 0) == Rational(10, 3));
    CHECK(parsed.game.base.payoff({1, 1, 1}, 2) == Rational(1));
    CHECK(cgg::parse_game(cgg::serialize_game(parsed.game)).game == parsed.game);

    Json shallow = doc;
    shallow["payoffs"] = Json::parse(R"([[[1, 2, 3], [4, 5, 6]], [[7, 8, 9], [10, 11, 12]]])");
    const Error e = parse_failure(shallow.dump());
    CHECK(e.code() == ErrorCode::ParseError);
}

TEST_CASE("serialization is deterministic and newline-terminated") {
    const cgg::Scenario s = cgg::scenario_by_name("coarse-pd");
    const std::string once = cgg::serialize_game(s.game, s.roles);
    const std::string twice = cgg::serialize_game(s.game, s.roles);
    CHECK(once == twice);
    CHECK(once.back() == '\n');
    CHECK(once.find("\"version\": 1") != std::string::npos);
}

TEST_CASE("every bundled scenario round-trips through the document format") {
    for (const auto& [name, make] : cgg::scenario_registry()) {
        const cgg::Scenario s = make();
        const std::string text = cgg::serialize_game(s.game, s.roles);
        const ParsedDocument parsed = cgg::parse_game(text);
        INFO(name);
        CHECK(parsed.game == s.game);
        CHECK(parsed.roles.has_value() == s.roles.has_value());
        if (parsed.roles && s.roles) {
            REQUIRE(parsed.roles->size() == s.roles->size());
            for (std::size_t p = 0; p < s.roles->size(); ++p) {
                CHECK((*parsed.roles)[p].cooperate == (*s.roles)[p].cooperate);
                CHECK((*parsed.roles)[p].defect == (*s.roles)[p].defect);
            }
        }
        // Byte-identical the second time around.
        CHECK(cgg::serialize_game(parsed.game, parsed.roles) == text);
    }
}

TEST_CASE("random coarse games survive the round trip unchanged") {
    cggtest::Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const CoarseGame cg = cggtest::random_coarse_game(rng);
        const std::string text = cgg::serialize_game(cg);
        const ParsedDocument parsed = cgg::parse_game(text);
        CHECK(parsed.game == cg);
        CHECK(cgg::serialize_game(parsed.game) == text);
    }
}

} // TEST_SUITE
