#include "cgg/io.hpp"

#include "cgg/errors.hpp"

#include "json.hpp"

#include <cstdint>
#include <utility>

namespace cgg {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail_parse(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::ParseError, path + ": " + message);
}

[[noreturn]] void fail_validation(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::ValidationError, path + ": " + message);
}

std::string element(const std::string& path, std::size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

std::string member(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

Rational rational_at(const Json& node, const std::string& path) {
    if (node.is_string()) {
        try {
            return parse_rational(node.get<std::string>());
        } catch (const Error& e) {
            fail_parse(path, e.what());
        }
    }
    if (node.is_number_unsigned()) return Rational(node.get<std::uint64_t>());
    if (node.is_number_integer()) return Rational(node.get<std::int64_t>());
    if (node.is_number_float()) {
        fail_parse(path, "decimal values must be quoted strings so they stay exact");
    }
    fail_parse(path, "expected a rational literal (string or integer)");
}

std::string string_at(const Json& node, const std::string& path) {
    if (!node.is_string()) fail_parse(path, "expected a string");
    return node.get<std::string>();
}

bool bool_at(const Json& node, const std::string& path) {
    if (!node.is_boolean()) fail_parse(path, "expected a boolean");
    return node.get<bool>();
}

const Json& require_member(const Json& object, const std::string& key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) fail_parse(path, "missing required field '" + key + "'");
    return *it;
}

void reject_unknown_keys(const Json& object, std::initializer_list<const char*> known,
                         const std::string& path) {
    for (const auto& item : object.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail_parse(path, "unknown field '" + item.key() + "'");
    }
}

Grain grain_from_json(const Json& node, const std::string& path) {
    if (!node.is_object()) fail_parse(path, "expected a grain record object");
    if (node.contains("point")) {
        reject_unknown_keys(node, {"point"}, path);
        return Grain::singleton(rational_at(node.at("point"), member(path, "point")));
    }
    reject_unknown_keys(node, {"lo", "lo_closed", "hi", "hi_closed"}, path);
    const Json& lo_node = require_member(node, "lo", path);
    const Json& hi_node = require_member(node, "hi", path);
    std::optional<Rational> lo, hi;
    if (!(lo_node.is_string() && lo_node.get<std::string>() == "-inf")) {
        lo = rational_at(lo_node, member(path, "lo"));
    }
    if (!(hi_node.is_string() && hi_node.get<std::string>() == "+inf")) {
        hi = rational_at(hi_node, member(path, "hi"));
    }
    const bool lo_closed = bool_at(require_member(node, "lo_closed", path),
                                   member(path, "lo_closed"));
    const bool hi_closed = bool_at(require_member(node, "hi_closed", path),
                                   member(path, "hi_closed"));
    try {
        return Grain::interval(lo, lo_closed, hi, hi_closed);
    } catch (const Error& e) {
        fail_validation(path, e.what());
    }
}

Partition partition_from_json(const Json& node, const std::string& path) {
    const Json* grains_node = &node;
    Coverage coverage = Coverage::ImplicitFinest;
    if (node.is_object()) {
        reject_unknown_keys(node, {"coverage", "grains"}, path);
        grains_node = &require_member(node, "grains", path);
        if (node.contains("coverage")) {
            const std::string name = string_at(node.at("coverage"), member(path, "coverage"));
            if (name == "implicit-finest") {
                coverage = Coverage::ImplicitFinest;
            } else if (name == "strict") {
                coverage = Coverage::Strict;
            } else {
                fail_parse(member(path, "coverage"),
                           "expected 'implicit-finest' or 'strict', got '" + name + "'");
            }
        }
    }
    if (!grains_node->is_array()) fail_parse(path, "expected a list of grain records");
    std::vector<Grain> grains;
    grains.reserve(grains_node->size());
    for (std::size_t i = 0; i < grains_node->size(); ++i) {
        grains.push_back(grain_from_json((*grains_node)[i], element(path, i)));
    }
    try {
        return Partition::validated(std::move(grains), coverage);
    } catch (const Error& e) {
        // The underlying message names the offending input positions.
        fail_validation(path, e.what());
    }
}

void read_payoffs(const Json& node, const std::vector<int>& counts, std::size_t depth,
                  const std::string& path, std::vector<std::vector<Rational>>& out) {
    if (!node.is_array()) fail_parse(path, "expected an array");
    const std::size_t expected = static_cast<std::size_t>(counts[depth]);
    if (node.size() != expected) {
        fail_parse(path, "expected " + std::to_string(expected) + " entries, got " +
                             std::to_string(node.size()));
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
        const Json& child = node[i];
        const std::string child_path = element(path, i);
        if (depth + 1 == counts.size()) {
            if (!child.is_array()) fail_parse(child_path, "expected a payoff tuple");
            if (child.size() != counts.size()) {
                fail_parse(child_path, "expected a tuple of " + std::to_string(counts.size()) +
                                           " payoffs, got " + std::to_string(child.size()));
            }
            std::vector<Rational> tuple;
            tuple.reserve(child.size());
            for (std::size_t k = 0; k < child.size(); ++k) {
                tuple.push_back(rational_at(child[k], element(child_path, k)));
            }
            out.push_back(std::move(tuple));
        } else {
            read_payoffs(child, counts, depth + 1, child_path, out);
        }
    }
}

Json literal(const Rational& r) { return Json(format_rational(r)); }

Json grain_to_json(const Grain& g) {
    Json record = Json::object();
    if (g.kind() == Grain::Kind::Singleton) {
        record["point"] = literal(g.point());
        return record;
    }
    record["lo"] = g.lo() ? literal(*g.lo()) : Json("-inf");
    record["lo_closed"] = g.lo_closed();
    record["hi"] = g.hi() ? literal(*g.hi()) : Json("+inf");
    record["hi_closed"] = g.hi_closed();
    return record;
}

Json payoffs_to_json(const Game& g, const std::vector<int>& counts, std::vector<int>& prefix,
                     std::size_t depth) {
    Json node = Json::array();
    if (depth == counts.size()) {
        for (int k = 0; k < g.num_players(); ++k) {
            node.push_back(literal(g.payoff(prefix, k)));
        }
        return node;
    }
    for (int i = 0; i < counts[depth]; ++i) {
        prefix.push_back(i);
        node.push_back(payoffs_to_json(g, counts, prefix, depth + 1));
        prefix.pop_back();
    }
    return node;
}

} // namespace

ParsedDocument parse_game(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail_parse("document", e.what());
    }
    if (!doc.is_object()) fail_parse("document", "expected a JSON object");
    reject_unknown_keys(doc, {"version", "players", "strategies", "payoffs", "partitions",
                              "preprocessing", "roles"},
                        "document");

    const Json& version = require_member(doc, "version", "document");
    if (!version.is_number_integer() || version.get<std::int64_t>() != 1) {
        fail_parse("version", "expected the integer 1");
    }

    const Json& players_node = require_member(doc, "players", "document");
    if (!players_node.is_array() || players_node.size() < 2) {
        fail_parse("players", "expected an array of at least two player names");
    }
    std::vector<std::string> players;
    players.reserve(players_node.size());
    for (std::size_t i = 0; i < players_node.size(); ++i) {
        players.push_back(string_at(players_node[i], element("players", i)));
    }
    const auto known_player = [&players](const std::string& name) {
        for (const auto& p : players) {
            if (p == name) return true;
        }
        return false;
    };

    const Json& strategies_node = require_member(doc, "strategies", "document");
    if (!strategies_node.is_object()) fail_parse("strategies", "expected a player-keyed object");
    for (const auto& item : strategies_node.items()) {
        if (!known_player(item.key())) {
            fail_parse(member("strategies", item.key()), "unknown player");
        }
    }
    std::vector<std::vector<std::string>> strategies;
    std::vector<int> counts;
    for (const auto& player : players) {
        const std::string path = member("strategies", player);
        const auto it = strategies_node.find(player);
        if (it == strategies_node.end()) fail_parse(path, "missing strategy list");
        if (!it->is_array() || it->empty()) {
            fail_parse(path, "expected a non-empty array of strategy names");
        }
        std::vector<std::string> names;
        names.reserve(it->size());
        for (std::size_t i = 0; i < it->size(); ++i) {
            names.push_back(string_at((*it)[i], element(path, i)));
        }
        counts.push_back(static_cast<int>(names.size()));
        strategies.push_back(std::move(names));
    }

    const Json& payoffs_node = require_member(doc, "payoffs", "document");
    std::vector<std::vector<Rational>> cells;
    read_payoffs(payoffs_node, counts, 0, "payoffs", cells);

    std::optional<Game> base;
    try {
        base.emplace(players, strategies, std::move(cells));
    } catch (const Error& e) {
        fail_validation("document", e.what());
    }

    std::vector<Partition> partitions(players.size(), Partition::finest());
    if (doc.contains("partitions")) {
        const Json& node = doc.at("partitions");
        if (!node.is_object()) fail_parse("partitions", "expected a player-keyed object");
        for (const auto& item : node.items()) {
            if (!known_player(item.key())) {
                fail_parse(member("partitions", item.key()), "unknown player");
            }
        }
        for (std::size_t p = 0; p < players.size(); ++p) {
            const auto it = node.find(players[p]);
            if (it == node.end()) continue; // absent players keep the finest partition
            partitions[p] = partition_from_json(*it, member("partitions", players[p]));
        }
    }

    std::vector<Preprocessing> preprocessing(players.size(), Preprocessing::Emp);
    if (doc.contains("preprocessing")) {
        const Json& node = doc.at("preprocessing");
        if (!node.is_object()) fail_parse("preprocessing", "expected a player-keyed object");
        for (const auto& item : node.items()) {
            if (!known_player(item.key())) {
                fail_parse(member("preprocessing", item.key()), "unknown player");
            }
        }
        for (std::size_t p = 0; p < players.size(); ++p) {
            const auto it = node.find(players[p]);
            if (it == node.end()) continue;
            const std::string path = member("preprocessing", players[p]);
            const std::string mode = string_at(*it, path);
            if (mode == "emp") {
                preprocessing[p] = Preprocessing::Emp;
            } else if (mode == "ignore") {
                preprocessing[p] = Preprocessing::Ignore;
            } else {
                fail_parse(path, "expected 'emp' or 'ignore', got '" + mode + "'");
            }
        }
    }

    ParsedDocument parsed{CoarseGame(std::move(*base), std::move(partitions),
                                     std::move(preprocessing)),
                          std::nullopt};

    if (doc.contains("roles")) {
        const Json& node = doc.at("roles");
        if (!node.is_object()) fail_parse("roles", "expected a player-keyed object");
        for (const auto& item : node.items()) {
            if (!known_player(item.key())) {
                fail_parse(member("roles", item.key()), "unknown player");
            }
        }
        std::vector<RoleLabels> roles;
        for (std::size_t p = 0; p < players.size(); ++p) {
            const std::string path = member("roles", players[p]);
            const auto it = node.find(players[p]);
            if (it == node.end()) fail_parse(path, "missing role labels");
            if (!it->is_object()) fail_parse(path, "expected {cooperate, defect}");
            reject_unknown_keys(*it, {"cooperate", "defect"}, path);
            RoleLabels labels;
            labels.cooperate = string_at(require_member(*it, "cooperate", path),
                                         member(path, "cooperate"));
            labels.defect = string_at(require_member(*it, "defect", path),
                                      member(path, "defect"));
            roles.push_back(std::move(labels));
        }
        parsed.roles = std::move(roles);
    }

    return parsed;
}

std::string serialize_game(const CoarseGame& cg,
                           const std::optional<std::vector<RoleLabels>>& roles) {
    Json doc = Json::object();
    doc["version"] = 1;
    doc["players"] = cg.base.players();

    Json strategies = Json::object();
    for (int p = 0; p < cg.base.num_players(); ++p) {
        strategies[cg.base.players()[p]] = cg.base.strategies(p);
    }
    doc["strategies"] = std::move(strategies);

    const std::vector<int> counts = cg.base.strategy_counts();
    std::vector<int> prefix;
    doc["payoffs"] = payoffs_to_json(cg.base, counts, prefix, 0);

    Json partitions = Json::object();
    for (int p = 0; p < cg.base.num_players(); ++p) {
        const Partition& part = cg.partitions[static_cast<std::size_t>(p)];
        Json wrapped = Json::object();
        wrapped["coverage"] =
            part.coverage() == Coverage::Strict ? "strict" : "implicit-finest";
        Json grains = Json::array();
        for (const Grain& g : part.grains()) grains.push_back(grain_to_json(g));
        wrapped["grains"] = std::move(grains);
        partitions[cg.base.players()[p]] = std::move(wrapped);
    }
    doc["partitions"] = std::move(partitions);

    Json preprocessing = Json::object();
    for (int p = 0; p < cg.base.num_players(); ++p) {
        preprocessing[cg.base.players()[p]] =
            cg.preprocessing[static_cast<std::size_t>(p)] == Preprocessing::Ignore ? "ignore"
                                                                                   : "emp";
    }
    doc["preprocessing"] = std::move(preprocessing);

    if (roles) {
        Json roles_node = Json::object();
        for (int p = 0; p < cg.base.num_players(); ++p) {
            const RoleLabels& labels = roles->at(static_cast<std::size_t>(p));
            Json entry = Json::object();
            entry["cooperate"] = labels.cooperate;
            entry["defect"] = labels.defect;
            roles_node[cg.base.players()[p]] = std::move(entry);
        }
        doc["roles"] = std::move(roles_node);
    }

    return doc.dump(2) + "\n";
}

} // namespace cgg
