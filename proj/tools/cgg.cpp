// Command-line front end: reads canonical game documents, runs the transform,
// solvers, diagnostics, differentials and repeated-game analyses, and emits
// either human tables or deterministic machine JSON.
#include "cgg/coarse_game.hpp"
#include "cgg/differentials.hpp"
#include "cgg/equilibrium.hpp"
#include "cgg/errors.hpp"
#include "cgg/io.hpp"
#include "cgg/repeated.hpp"
#include "cgg/scenarios.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

using cgg::CoarseGame;
using cgg::Error;
using cgg::ErrorCode;
using cgg::Game;
using cgg::MixedProfile;
using cgg::PureProfile;
using cgg::Rational;
using Json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::AmbiguousSelection:
        case ErrorCode::MultipleBaseEquilibria:
            return 2;
        default:
            return 1;
    }
}

// ANSI styling for human output only; machine output never carries escapes.
struct Style {
    bool on = false;

    std::string bold(const std::string& s) const { return on ? "\033[1m" + s + "\033[0m" : s; }
    std::string good(const std::string& s) const { return on ? "\033[32m" + s + "\033[0m" : s; }
    std::string bad(const std::string& s) const { return on ? "\033[31m" + s + "\033[0m" : s; }
};

struct Output {
    bool machine = false;
    std::string out_path; // empty = stdout
    Style style;

    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(out_path);
        if (!f) throw Error(ErrorCode::ValidationError, "cannot write to '" + out_path + "'");
        f << text;
    }
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << f.rdbuf();
    return buffer.str();
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, ',')) parts.push_back(trim(current));
    return parts;
}

// Accepts "Confess,Silent" with optional surrounding parentheses; strategy
// names must match the document exactly.
PureProfile parse_profile(const Game& g, std::string text) {
    text = trim(text);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
        text = text.substr(1, text.size() - 2);
    }
    const std::vector<std::string> names = split_commas(text);
    if (static_cast<int>(names.size()) != g.num_players()) {
        throw Error(ErrorCode::ValidationError,
                    "profile needs one strategy per player (" +
                        std::to_string(g.num_players()) + "), got " +
                        std::to_string(names.size()));
    }
    PureProfile profile;
    for (int p = 0; p < g.num_players(); ++p) {
        const int idx = g.strategy_index(p, names[static_cast<std::size_t>(p)]);
        if (idx < 0) {
            std::string known;
            for (const auto& s : g.strategies(p)) {
                if (!known.empty()) known += ", ";
                known += s;
            }
            throw Error(ErrorCode::ValidationError,
                        "'" + names[static_cast<std::size_t>(p)] + "' is not a strategy of " +
                            g.players()[static_cast<std::size_t>(p)] + " (has: " + known + ")");
        }
        profile.push_back(idx);
    }
    return profile;
}

int player_index_or_throw(const Game& g, const std::string& name) {
    const int idx = g.player_index(name);
    if (idx < 0) {
        std::string known;
        for (const auto& p : g.players()) {
            if (!known.empty()) known += ", ";
            known += p;
        }
        throw Error(ErrorCode::ValidationError,
                    "unknown player '" + name + "' (has: " + known + ")");
    }
    return idx;
}

std::string profile_names(const Game& g, const PureProfile& profile) {
    std::string text = "(";
    for (int p = 0; p < g.num_players(); ++p) {
        if (p) text += ", ";
        text += g.strategies(p)[static_cast<std::size_t>(profile[static_cast<std::size_t>(p)])];
    }
    return text + ")";
}

Json profile_json(const Game& g, const PureProfile& profile) {
    Json node = Json::array();
    for (int p = 0; p < g.num_players(); ++p) {
        node.push_back(
            g.strategies(p)[static_cast<std::size_t>(profile[static_cast<std::size_t>(p)])]);
    }
    return node;
}

std::string vector_names(const Game& g, int player, const std::vector<Rational>& probs) {
    std::string text = "(";
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (i) text += ", ";
        text += g.strategies(player)[i] + " " + cgg::format_rational(probs[i]);
    }
    return text + ")";
}

Json vector_json(const Game& g, int player, const std::vector<Rational>& probs) {
    Json node = Json::object();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        node[g.strategies(player)[i]] = cgg::format_rational(probs[i]);
    }
    return node;
}

std::string mixed_names(const Game& g, const MixedProfile& m) {
    std::string text;
    for (int p = 0; p < g.num_players(); ++p) {
        if (p) text += ", ";
        text += g.players()[static_cast<std::size_t>(p)] + " " +
                vector_names(g, p, m.probs[static_cast<std::size_t>(p)]);
    }
    return text;
}

Json mixed_json(const Game& g, const MixedProfile& m) {
    Json node = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        node[g.players()[static_cast<std::size_t>(p)]] =
            vector_json(g, p, m.probs[static_cast<std::size_t>(p)]);
    }
    return node;
}

// Left-aligned columns padded to the widest entry, two spaces between.
std::string render_table(const std::vector<std::vector<std::string>>& rows,
                         const std::string& indent) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (row.size() > widths.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::string text;
    for (const auto& row : rows) {
        text += indent;
        for (std::size_t c = 0; c < row.size(); ++c) {
            text += row[c];
            if (c + 1 < row.size()) {
                text += std::string(widths[c] - row[c].size() + 2, ' ');
            }
        }
        text += "\n";
    }
    return text;
}

std::string machine_text(const Json& doc) { return doc.dump(2) + "\n"; }

// ----------------------------------------------------------------------------
// validate

int run_validate(const std::string& file, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    const Game& g = doc.game.base;

    Json report = Json::object();
    report["command"] = "validate";
    report["valid"] = true;
    report["players"] = g.players();
    Json strategies = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        strategies[g.players()[static_cast<std::size_t>(p)]] = g.strategies(p);
    }
    report["strategies"] = std::move(strategies);
    Json partitions = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        const cgg::Partition& part = doc.game.partitions[static_cast<std::size_t>(p)];
        Json entry = Json::object();
        entry["coverage"] =
            part.coverage() == cgg::Coverage::Strict ? "strict" : "implicit-finest";
        entry["grains"] = part.grains().size();
        partitions[g.players()[static_cast<std::size_t>(p)]] = std::move(entry);
    }
    report["partitions"] = std::move(partitions);
    Json preprocessing = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        preprocessing[g.players()[static_cast<std::size_t>(p)]] =
            doc.game.preprocessing[static_cast<std::size_t>(p)] == cgg::Preprocessing::Ignore
                ? "ignore"
                : "emp";
    }
    report["preprocessing"] = std::move(preprocessing);
    report["roles_present"] = doc.roles.has_value();

    if (out.machine) {
        out.emit(machine_text(report));
        return 0;
    }
    std::string text = out.style.good("document is valid") + "\n";
    std::vector<std::vector<std::string>> rows;
    for (int p = 0; p < g.num_players(); ++p) {
        const auto& name = g.players()[static_cast<std::size_t>(p)];
        std::string strat_list;
        for (const auto& s : g.strategies(p)) {
            if (!strat_list.empty()) strat_list += ", ";
            strat_list += s;
        }
        const cgg::Partition& part = doc.game.partitions[static_cast<std::size_t>(p)];
        rows.push_back({name, strat_list,
                        std::to_string(part.grains().size()) + " grains",
                        part.coverage() == cgg::Coverage::Strict ? "strict" : "implicit-finest",
                        doc.game.preprocessing[static_cast<std::size_t>(p)] ==
                                cgg::Preprocessing::Ignore
                            ? "ignore"
                            : "emp"});
    }
    text += render_table(rows, "  ");
    text += doc.roles ? "  roles: present\n" : "  roles: absent\n";
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// transform

int run_transform(const std::string& file, const std::string& perspective, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    const int perceiver = player_index_or_throw(doc.game.base, perspective);
    const cgg::PerceivedGame perceived = cgg::perceived_game(doc.game, perceiver);

    if (out.machine) {
        // Emit a full document so the output pipes back into solve/repeated.
        std::vector<cgg::Partition> finest(
            static_cast<std::size_t>(perceived.game.num_players()), cgg::Partition::finest());
        out.emit(cgg::serialize_game(CoarseGame(perceived.game, finest), doc.roles));
        return 0;
    }

    std::string text =
        out.style.bold("perceived game for " + perspective) + "\n";
    std::vector<std::vector<std::string>> rows;
    const Game& g = perceived.game;
    for (std::size_t c = 0; c < g.num_cells(); ++c) {
        const PureProfile profile = g.profile_at(c);
        std::string payoffs = "(";
        for (int p = 0; p < g.num_players(); ++p) {
            if (p) payoffs += ", ";
            payoffs += cgg::format_rational(g.cell(c)[static_cast<std::size_t>(p)]);
        }
        payoffs += ")";
        rows.push_back({profile_names(g, profile), payoffs});
    }
    text += render_table(rows, "  ");
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// solve

int run_solve(const std::string& file, const std::string& perspective, bool pure_only,
              bool mixed_only, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    std::optional<int> perceiver;
    if (perspective != "base") {
        perceiver = player_index_or_throw(doc.game.base, perspective);
    }
    const Game solved = perceiver ? cgg::perceived_game(doc.game, *perceiver).game
                                  : doc.game.base;
    if (mixed_only && solved.num_players() != 2) {
        throw Error(ErrorCode::DimensionMismatch,
                    "mixed solving handles exactly two players; this game has " +
                        std::to_string(solved.num_players()));
    }
    const cgg::EquilibriumSet set = cgg::solve_equilibria(doc.game, perceiver);
    const bool show_pure = !mixed_only;
    const bool show_mixed = !pure_only && solved.num_players() == 2;

    Json report = Json::object();
    report["command"] = "solve";
    report["perspective"] = perspective;
    if (show_pure) {
        Json pure = Json::array();
        for (const auto& profile : set.pure) pure.push_back(profile_json(solved, profile));
        report["pure"] = std::move(pure);
    }
    if (show_mixed) {
        Json mixed = Json::array();
        for (const auto& m : set.mixed) mixed.push_back(mixed_json(solved, m));
        report["mixed"] = std::move(mixed);
        Json degenerate = Json::array();
        for (const auto& record : set.degenerate) {
            Json entry = Json::object();
            Json support = Json::object();
            for (int p = 0; p < 2; ++p) {
                Json names = Json::array();
                for (int s : record.support[static_cast<std::size_t>(p)]) {
                    names.push_back(solved.strategies(p)[static_cast<std::size_t>(s)]);
                }
                support[solved.players()[static_cast<std::size_t>(p)]] = std::move(names);
            }
            entry["support"] = std::move(support);
            Json pinned = Json::object();
            for (int p = 0; p < 2; ++p) {
                if (!record.pinned[static_cast<std::size_t>(p)]) continue;
                pinned[solved.players()[static_cast<std::size_t>(p)]] =
                    vector_json(solved, p, record.pinned_vector[static_cast<std::size_t>(p)]);
            }
            entry["pinned"] = std::move(pinned);
            entry["uniform_player"] =
                record.uniform_player < 0
                    ? Json()
                    : Json(solved.players()[static_cast<std::size_t>(record.uniform_player)]);
            entry["witness"] = mixed_json(solved, record.witness);
            entry["note"] = record.note;
            degenerate.push_back(std::move(entry));
        }
        report["degenerate"] = std::move(degenerate);
    }
    Json diagnostics = Json::object();
    diagnostics["multiple_pure"] = set.diagnostics.multiple_pure;
    if (perceiver) {
        Json uniform = Json::array();
        for (int subject : set.diagnostics.uniform_for) {
            uniform.push_back(solved.players()[static_cast<std::size_t>(subject)]);
        }
        diagnostics["uniform_for"] = std::move(uniform);
        diagnostics["non_competitive"] = set.diagnostics.non_competitive;
    }
    report["diagnostics"] = std::move(diagnostics);

    if (out.machine) {
        out.emit(machine_text(report));
        return 0;
    }

    std::string text = out.style.bold("equilibria (perspective: " + perspective + ")") + "\n";
    if (show_pure) {
        if (set.pure.empty()) {
            text += "  pure: none\n";
        } else {
            text += "  pure:\n";
            for (const auto& profile : set.pure) {
                text += "    " + profile_names(solved, profile) + "\n";
            }
        }
    }
    if (show_mixed) {
        if (set.mixed.empty()) {
            text += "  mixed: none\n";
        } else {
            text += "  mixed:\n";
            for (const auto& m : set.mixed) {
                text += "    " + mixed_names(solved, m) + "\n";
            }
        }
        for (const auto& record : set.degenerate) {
            text += "  degenerate support:";
            for (int p = 0; p < 2; ++p) {
                text += p ? " x " : " ";
                text += solved.players()[static_cast<std::size_t>(p)] + " {";
                const auto& sup = record.support[static_cast<std::size_t>(p)];
                for (std::size_t i = 0; i < sup.size(); ++i) {
                    if (i) text += ", ";
                    text += solved.strategies(p)[static_cast<std::size_t>(sup[i])];
                }
                text += "}";
            }
            text += "\n";
            for (int p = 0; p < 2; ++p) {
                if (!record.pinned[static_cast<std::size_t>(p)]) continue;
                text += "    pinned: " + solved.players()[static_cast<std::size_t>(p)] + " " +
                        vector_names(solved, p,
                                     record.pinned_vector[static_cast<std::size_t>(p)]) +
                        "\n";
            }
            text += "    witness: " + mixed_names(solved, record.witness) + "\n";
            if (!record.note.empty()) text += "    note: " + record.note + "\n";
        }
    }
    if (set.diagnostics.multiple_pure) {
        text += "  note: multiple pure equilibria\n";
    }
    if (perceiver && !set.diagnostics.uniform_for.empty()) {
        text += "  uniform through this lens:";
        for (int subject : set.diagnostics.uniform_for) {
            text += " " + solved.players()[static_cast<std::size_t>(subject)];
        }
        text += set.diagnostics.non_competitive ? " (game is non-competitive)\n" : "\n";
    }
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// diagnose

int run_diagnose(const std::string& file, const std::string& perspective, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    const Game& g = doc.game.base;
    const int perceiver = player_index_or_throw(g, perspective);
    const cgg::CompetitivenessReport report = cgg::diagnose_competitiveness(doc.game, perceiver);

    Json node = Json::object();
    node["command"] = "diagnose";
    node["perspective"] = perspective;
    Json uniform = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        uniform[g.players()[static_cast<std::size_t>(p)]] =
            report.uniform_for[static_cast<std::size_t>(p)];
    }
    node["uniform_for"] = std::move(uniform);
    node["non_competitive"] = report.non_competitive;

    if (out.machine) {
        out.emit(machine_text(node));
        return 0;
    }
    std::string text = out.style.bold("uniformity through " + perspective + "'s lens") + "\n";
    for (int p = 0; p < g.num_players(); ++p) {
        const bool flat = report.uniform_for[static_cast<std::size_t>(p)];
        text += "  " + g.players()[static_cast<std::size_t>(p)] + ": " +
                (flat ? "uniform (payoffs indistinguishable)" : "distinguishable") + "\n";
    }
    text += report.non_competitive
                ? "  every player is uniform: the game appears non-competitive\n"
                : "  the game remains competitive through this lens\n";
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// differentials

int run_differentials(const std::string& file, const std::string& realized_spec,
                      const std::vector<std::string>& expectation_specs, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    const Game& g = doc.game.base;

    cgg::RealizedOutcome realized =
        realized_spec == "auto"
            ? cgg::realized_profile(
                  doc.game,
                  std::vector<std::optional<std::size_t>>(
                      static_cast<std::size_t>(g.num_players()), std::nullopt))
            : cgg::realized_override(doc.game, parse_profile(g, realized_spec));

    std::vector<std::optional<PureProfile>> lens_expectations(
        static_cast<std::size_t>(g.num_players()));
    std::optional<PureProfile> base_expectation;
    for (const std::string& spec : expectation_specs) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ValidationError,
                        "expectation must look like player1=Strat1,Strat2 or base=...");
        }
        const std::string target = trim(spec.substr(0, eq));
        const PureProfile profile = parse_profile(g, spec.substr(eq + 1));
        if (target == "base") {
            base_expectation = profile;
        } else {
            lens_expectations[static_cast<std::size_t>(player_index_or_throw(g, target))] =
                profile;
        }
    }

    const cgg::DifferentialReport report =
        cgg::differential_report(doc.game, realized, lens_expectations, base_expectation);

    Json node = Json::object();
    node["command"] = "differentials";
    node["realized"] = profile_json(g, report.realized);
    Json expectations = Json::object();
    for (int lens = 0; lens < g.num_players(); ++lens) {
        expectations[g.players()[static_cast<std::size_t>(lens)]] =
            profile_json(g, report.lens_expectations[static_cast<std::size_t>(lens)]);
    }
    expectations["base"] = profile_json(g, *report.base_expectation);
    node["expectations"] = std::move(expectations);
    Json incidental = Json::object();
    for (int lens = 0; lens < g.num_players(); ++lens) {
        Json per_subject = Json::object();
        for (int subject = 0; subject < g.num_players(); ++subject) {
            const cgg::DifferentialEntry& entry =
                report.incidental[static_cast<std::size_t>(lens)]
                                 [static_cast<std::size_t>(subject)];
            Json cell = Json::object();
            cell["expected"] = cgg::format_rational(entry.expected);
            cell["actual"] = cgg::format_rational(entry.actual);
            cell["delta"] = cgg::format_rational(entry.delta);
            per_subject[g.players()[static_cast<std::size_t>(subject)]] = std::move(cell);
        }
        incidental[g.players()[static_cast<std::size_t>(lens)]] = std::move(per_subject);
    }
    node["incidental"] = std::move(incidental);
    Json base_row = Json::object();
    for (int subject = 0; subject < g.num_players(); ++subject) {
        const cgg::DifferentialEntry& entry =
            report.unrecognized[static_cast<std::size_t>(subject)];
        Json cell = Json::object();
        cell["expected"] = cgg::format_rational(entry.expected);
        cell["actual"] = cgg::format_rational(entry.actual);
        cell["delta"] = cgg::format_rational(entry.delta);
        base_row[g.players()[static_cast<std::size_t>(subject)]] = std::move(cell);
    }
    node["base"] = std::move(base_row);

    if (out.machine) {
        out.emit(machine_text(node));
        return 0;
    }

    std::string text =
        out.style.bold("differentials at realized " + profile_names(g, report.realized)) + "\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"matrix", "expected"};
    for (int subject = 0; subject < g.num_players(); ++subject) {
        header.push_back("delta " + g.players()[static_cast<std::size_t>(subject)]);
    }
    rows.push_back(header);
    for (int lens = 0; lens < g.num_players(); ++lens) {
        std::vector<std::string> row = {
            "perceived " + g.players()[static_cast<std::size_t>(lens)],
            profile_names(g, report.lens_expectations[static_cast<std::size_t>(lens)])};
        for (int subject = 0; subject < g.num_players(); ++subject) {
            row.push_back(cgg::format_rational(
                report.incidental[static_cast<std::size_t>(lens)]
                                 [static_cast<std::size_t>(subject)]
                    .delta));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> base_line = {"base",
                                          profile_names(g, *report.base_expectation)};
    for (int subject = 0; subject < g.num_players(); ++subject) {
        base_line.push_back(cgg::format_rational(
            report.unrecognized[static_cast<std::size_t>(subject)].delta));
    }
    rows.push_back(std::move(base_line));
    text += render_table(rows, "  ");
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// repeated

const char* classification_name(cgg::ThresholdClass c) {
    switch (c) {
        case cgg::ThresholdClass::Interior: return "interior";
        case cgg::ThresholdClass::AlwaysSustains: return "always-sustains";
        case cgg::ThresholdClass::NeverSustains: return "never-sustains";
    }
    return "interior";
}

std::vector<cgg::RoleLabels> resolve_roles(const Game& g,
                                           const std::vector<std::string>& specs,
                                           const std::optional<std::vector<cgg::RoleLabels>>&
                                               doc_roles) {
    if (specs.empty()) {
        if (doc_roles) return *doc_roles;
        throw Error(ErrorCode::RoleLabelMissing,
                    "no --roles given and the document carries no roles block");
    }
    const std::size_t n = static_cast<std::size_t>(g.num_players());
    std::vector<std::optional<cgg::RoleLabels>> chosen(n);
    if (doc_roles) {
        for (std::size_t p = 0; p < n; ++p) chosen[p] = (*doc_roles)[p];
    }
    for (const std::string& spec : specs) {
        const std::size_t eq = spec.find('=');
        const std::string target = eq == std::string::npos ? "" : trim(spec.substr(0, eq));
        const std::string labels_text = eq == std::string::npos ? spec : spec.substr(eq + 1);
        const std::vector<std::string> labels = split_commas(labels_text);
        if (labels.size() != 2) {
            throw Error(ErrorCode::ValidationError,
                        "roles must be two labels: cooperate,defect");
        }
        const cgg::RoleLabels pair{labels[0], labels[1]};
        if (target.empty()) {
            for (std::size_t p = 0; p < n; ++p) chosen[p] = pair;
        } else {
            chosen[static_cast<std::size_t>(player_index_or_throw(g, target))] = pair;
        }
    }
    std::vector<cgg::RoleLabels> resolved;
    for (std::size_t p = 0; p < n; ++p) {
        if (!chosen[p]) {
            throw Error(ErrorCode::RoleLabelMissing,
                        "no role labels for player " + g.players()[p]);
        }
        resolved.push_back(*chosen[p]);
    }
    return resolved;
}

int run_repeated(const std::string& file, const std::vector<std::string>& role_specs,
                 const std::string& delta_spec, const Output& out) {
    const cgg::ParsedDocument doc = cgg::parse_game(read_input(file));
    const Game& g = doc.game.base;
    const std::vector<cgg::RoleLabels> labels = resolve_roles(g, role_specs, doc.roles);
    const cgg::DiscountAnalysis analysis = cgg::perspective_thresholds(doc.game, labels);

    std::optional<Rational> delta;
    if (!delta_spec.empty()) {
        delta = cgg::parse_rational(delta_spec);
        if (*delta < 0 || *delta >= 1) {
            throw Error(ErrorCode::InvalidDiscount,
                        "discount factor must satisfy 0 <= delta < 1, got " + delta_spec);
        }
    }

    struct MisalignmentRow {
        std::string a, b;
        int player;
        std::pair<Rational, Rational> interval;
    };
    std::vector<MisalignmentRow> misalignments;
    for (const auto& pa : analysis.perspectives) {
        for (const auto& pb : analysis.perspectives) {
            if (pa.perspective == pb.perspective) continue;
            for (int p = 0; p < g.num_players(); ++p) {
                const auto interval =
                    cgg::misalignment(analysis, pa.perspective, pb.perspective, p);
                if (interval) {
                    misalignments.push_back({pa.perspective, pb.perspective, p, *interval});
                }
            }
        }
    }

    Json node = Json::object();
    node["command"] = "repeated";
    Json roles_node = Json::object();
    for (int p = 0; p < g.num_players(); ++p) {
        Json entry = Json::object();
        entry["cooperate"] = labels[static_cast<std::size_t>(p)].cooperate;
        entry["defect"] = labels[static_cast<std::size_t>(p)].defect;
        roles_node[g.players()[static_cast<std::size_t>(p)]] = std::move(entry);
    }
    node["roles"] = std::move(roles_node);
    Json perspectives = Json::array();
    for (const auto& perspective : analysis.perspectives) {
        Json entry = Json::object();
        entry["perspective"] = perspective.perspective;
        Json players = Json::array();
        for (std::size_t p = 0; p < perspective.players.size(); ++p) {
            const auto& per = perspective.players[p];
            Json row = Json::object();
            row["player"] = g.players()[p];
            Json roles = Json::object();
            roles["t_c"] = cgg::format_rational(per.roles.t_c);
            roles["t_d"] = cgg::format_rational(per.roles.t_d);
            roles["t_b"] = cgg::format_rational(per.roles.t_b);
            row["stage_payoffs"] = std::move(roles);
            if (per.threshold) {
                row["threshold"] = cgg::format_rational(per.threshold->value);
                row["classification"] = classification_name(per.threshold->classification);
            } else {
                row["threshold"] = Json();
                row["degenerate_reason"] = per.degenerate_reason;
            }
            players.push_back(std::move(row));
        }
        entry["players"] = std::move(players);
        perspectives.push_back(std::move(entry));
    }
    node["perspectives"] = std::move(perspectives);
    Json misalignment_node = Json::array();
    for (const auto& row : misalignments) {
        Json entry = Json::object();
        entry["cooperative_perspective"] = row.a;
        entry["defecting_perspective"] = row.b;
        entry["player"] = g.players()[static_cast<std::size_t>(row.player)];
        entry["lo"] = cgg::format_rational(row.interval.first);
        entry["hi"] = cgg::format_rational(row.interval.second);
        misalignment_node.push_back(std::move(entry));
    }
    node["misalignment"] = std::move(misalignment_node);
    if (delta) {
        node["delta"] = cgg::format_rational(*delta);
        Json verdicts = Json::array();
        for (const auto& perspective : analysis.perspectives) {
            for (std::size_t p = 0; p < perspective.players.size(); ++p) {
                if (!perspective.players[p].threshold) continue;
                Json entry = Json::object();
                entry["perspective"] = perspective.perspective;
                entry["player"] = g.players()[p];
                entry["cooperates"] = cgg::cooperation_verdict(
                    perspective.players[p].threshold->value, *delta);
                verdicts.push_back(std::move(entry));
            }
        }
        node["verdicts"] = std::move(verdicts);
    }

    if (out.machine) {
        out.emit(machine_text(node));
        return 0;
    }

    std::string text = out.style.bold("grim-trigger thresholds") + "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"perspective", "player", "T_C", "T_D", "T_B", "threshold", "class"});
    for (const auto& perspective : analysis.perspectives) {
        for (std::size_t p = 0; p < perspective.players.size(); ++p) {
            const auto& per = perspective.players[p];
            rows.push_back(
                {perspective.perspective, g.players()[p], cgg::format_rational(per.roles.t_c),
                 cgg::format_rational(per.roles.t_d), cgg::format_rational(per.roles.t_b),
                 per.threshold ? cgg::format_rational(per.threshold->value) : "-",
                 per.threshold ? classification_name(per.threshold->classification)
                               : per.degenerate_reason});
        }
    }
    text += render_table(rows, "  ");
    if (misalignments.empty()) {
        text += "  no misalignment between perspectives\n";
    } else {
        for (const auto& row : misalignments) {
            text += "  misalignment for " + g.players()[static_cast<std::size_t>(row.player)] +
                    ": " + row.a + " cooperates but " + row.b + " defects on [" +
                    cgg::format_rational(row.interval.first) + ", " +
                    cgg::format_rational(row.interval.second) + ")\n";
        }
    }
    if (delta) {
        text += out.style.bold("verdicts at delta " + cgg::format_rational(*delta)) + "\n";
        for (const auto& perspective : analysis.perspectives) {
            for (std::size_t p = 0; p < perspective.players.size(); ++p) {
                if (!perspective.players[p].threshold) continue;
                const bool coop = cgg::cooperation_verdict(
                    perspective.players[p].threshold->value, *delta);
                text += "  " + perspective.perspective + " / " + g.players()[p] + ": " +
                        (coop ? out.style.good("cooperate") : out.style.bad("defect")) + "\n";
            }
        }
    }
    out.emit(text);
    return 0;
}

// ----------------------------------------------------------------------------
// scenario

int run_scenario(const std::string& name, bool emit_file, const Output& out) {
    const cgg::Scenario scenario = cgg::scenario_by_name(name);
    if (emit_file) {
        out.emit(cgg::serialize_game(scenario.game, scenario.roles));
        return 0;
    }

    struct Result {
        std::string description;
        bool pass;
        std::string detail;
    };
    std::vector<Result> results;
    bool all_pass = true;
    for (const auto& fixture : scenario.fixtures) {
        std::string detail;
        const bool pass = fixture.check(detail);
        all_pass = all_pass && pass;
        results.push_back({fixture.description, pass, detail});
    }

    if (out.machine) {
        Json node = Json::object();
        node["command"] = "scenario";
        node["name"] = scenario.name;
        node["summary"] = scenario.summary;
        Json fixtures = Json::array();
        for (const auto& r : results) {
            Json entry = Json::object();
            entry["description"] = r.description;
            entry["pass"] = r.pass;
            if (!r.pass) entry["detail"] = r.detail;
            fixtures.push_back(std::move(entry));
        }
        node["fixtures"] = std::move(fixtures);
        node["all_pass"] = all_pass;
        out.emit(machine_text(node));
        return all_pass ? 0 : 1;
    }

    std::string text = out.style.bold("scenario " + scenario.name) + "\n";
    text += "  " + scenario.summary + "\n";
    for (const auto& r : results) {
        text += "  " + (r.pass ? out.style.good("[ok]  ") : out.style.bad("[fail]")) + " " +
                r.description + "\n";
        if (!r.pass && !r.detail.empty()) text += "         " + r.detail + "\n";
    }
    text += all_pass ? "  all fixtures hold\n" : "  some fixtures FAILED\n";
    out.emit(text);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-grained game calculator: transforms games through per-player "
                 "perception partitions and analyzes what each player believes they play"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "human";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));
    std::string out_path;
    app.add_option("--out", out_path, "write the report to this file instead of stdout");

    std::string file;
    std::string perspective = "base";
    bool pure_only = false, mixed_only = false;
    std::string realized_spec;
    std::vector<std::string> expectation_specs;
    std::vector<std::string> role_specs;
    std::string delta_spec;
    std::string scenario_name;
    bool emit_file = false;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a game document");
    validate->add_option("file", file, "game document, or - for stdin")->required();

    CLI::App* transform =
        app.add_subcommand("transform", "compute one player's perceived game");
    transform->add_option("file", file, "game document, or - for stdin")->required();
    transform->add_option("--perspective", perspective, "perceiving player")->required();

    CLI::App* solve = app.add_subcommand("solve", "find equilibria of the base or a "
                                                  "perceived game");
    solve->add_option("file", file, "game document, or - for stdin")->required();
    solve->add_option("--perspective", perspective,
                      "player whose perceived game to solve, or 'base'");
    solve->add_flag("--pure", pure_only, "report pure equilibria only");
    solve->add_flag("--mixed", mixed_only, "report mixed equilibria only (two players)");

    CLI::App* diagnose =
        app.add_subcommand("diagnose", "uniformity and competitiveness through one lens");
    diagnose->add_option("file", file, "game document, or - for stdin")->required();
    diagnose->add_option("--perspective", perspective, "perceiving player")->required();

    CLI::App* differentials = app.add_subcommand(
        "differentials", "expected-vs-actual payoff gaps per perception matrix");
    differentials->add_option("file", file, "game document, or - for stdin")->required();
    differentials
        ->add_option("--realized", realized_spec,
                     "joint profile actually played (Strat1,Strat2,...), or 'auto' to use "
                     "each player's own equilibrium")
        ->required();
    differentials->add_option(
        "--expectations", expectation_specs,
        "expected equilibrium per matrix, e.g. player1=Confess,Confess or base=...; "
        "repeatable");

    CLI::App* repeated = app.add_subcommand(
        "repeated", "grim-trigger cooperation thresholds per perspective");
    repeated->add_option("file", file, "game document, or - for stdin")->required();
    repeated->add_option("--roles", role_specs,
                         "cooperate,defect labels, globally or as player=coop,defect; "
                         "defaults to the document's roles block");
    repeated->add_option("--delta", delta_spec, "discount factor to judge, e.g. 1/4");

    CLI::App* scenario =
        app.add_subcommand("scenario", "run a built-in worked example's self-checks");
    scenario->add_option("name", scenario_name, "scenario name; unknown names list all")
        ->required();
    scenario->add_flag("--emit-file", emit_file,
                       "emit the scenario's game document instead of running checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 64;
    }

    Output out;
    out.machine = format == "machine";
    out.out_path = out_path;
    const char* color_env = std::getenv("CGG_COLOR");
    const bool color_never = color_env && std::string(color_env) == "never";
    out.style.on = !out.machine && out_path.empty() && !color_never && isatty(1);

    try {
        if (*validate) return run_validate(file, out);
        if (*transform) return run_transform(file, perspective, out);
        if (*solve) return run_solve(file, perspective, pure_only, mixed_only, out);
        if (*diagnose) return run_diagnose(file, perspective, out);
        if (*differentials) {
            return run_differentials(file, realized_spec, expectation_specs, out);
        }
        if (*repeated) return run_repeated(file, role_specs, delta_spec, out);
        if (*scenario) return run_scenario(scenario_name, emit_file, out);
    } catch (const Error& e) {
        std::cerr << "error [" << cgg::error_code_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
