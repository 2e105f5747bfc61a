// Deterministic generators and process-spawning helpers shared by the unit
// and acceptance suites. All randomness is seeded by hand so a failing case
// replays exactly.
#pragma once

#include "cgg/coarse_game.hpp"
#include "cgg/game.hpp"
#include "cgg/partition.hpp"
#include "cgg/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cggtest {

// splitmix64: tiny and deterministic; quality is plenty for test data.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Inclusive on both ends.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

inline cgg::Rational random_rational(Rng& rng, long lo, long hi, long max_den = 4) {
    const long den = rng.range(1, max_den);
    const long num = rng.range(lo * den, hi * den);
    return cgg::Rational(num, den);
}

// Random valid partition of bounded grains (so emp always works), strictly
// separated, starting left of the payoff range used by random_game.
inline cgg::Partition random_partition(Rng& rng) {
    const int count = static_cast<int>(rng.below(5));
    std::vector<cgg::Grain> grains;
    cgg::Rational cursor(rng.range(-13, -9));
    for (int i = 0; i < count; ++i) {
        cursor += random_rational(rng, 1, 3, 2);
        if (rng.below(4) == 0) {
            grains.push_back(cgg::Grain::singleton(cursor));
        } else {
            const cgg::Rational hi = cursor + random_rational(rng, 1, 4, 2);
            grains.push_back(cgg::Grain::interval(cursor, rng.below(2) == 0, hi,
                                                  rng.below(2) == 0));
            cursor = hi;
        }
    }
    return cgg::Partition::validated(std::move(grains));
}

// Random dense game: 2..3 players, 1..3 strategies each (2+ when
// min_strategies says so), rational payoffs in [-10, 10].
inline cgg::Game random_game(Rng& rng, int num_players = 0, int min_strategies = 1,
                             int max_strategies = 3) {
    const int n = num_players > 0 ? num_players : static_cast<int>(rng.range(2, 3));
    std::vector<std::string> players;
    std::vector<std::vector<std::string>> strategies;
    std::size_t cell_count = 1;
    for (int p = 0; p < n; ++p) {
        players.push_back("p" + std::to_string(p + 1));
        const int k = static_cast<int>(rng.range(min_strategies, max_strategies));
        std::vector<std::string> names;
        for (int s = 0; s < k; ++s) names.push_back("s" + std::to_string(s + 1));
        strategies.push_back(std::move(names));
        cell_count *= static_cast<std::size_t>(k);
    }
    std::vector<std::vector<cgg::Rational>> cells;
    cells.reserve(cell_count);
    for (std::size_t c = 0; c < cell_count; ++c) {
        std::vector<cgg::Rational> tuple;
        for (int p = 0; p < n; ++p) tuple.push_back(random_rational(rng, -10, 10, 3));
        cells.push_back(std::move(tuple));
    }
    return cgg::Game(std::move(players), std::move(strategies), std::move(cells));
}

inline cgg::CoarseGame random_coarse_game(Rng& rng, int num_players = 0,
                                          int min_strategies = 1) {
    cgg::Game base = random_game(rng, num_players, min_strategies);
    std::vector<cgg::Partition> partitions;
    for (int p = 0; p < base.num_players(); ++p) partitions.push_back(random_partition(rng));
    return cgg::CoarseGame(std::move(base), std::move(partitions));
}

} // namespace cggtest

#ifdef CGG_CLI_PATH

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace cggtest {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline const std::string& temp_dir() {
    static const std::string dir = [] {
        const std::string d = std::filesystem::temp_directory_path().string() + "/cggtest-" +
                              std::to_string(::getpid());
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = temp_dir() + "/" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

inline std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream buffer;
    buffer << f.rdbuf();
    return buffer.str();
}

// Runs the built CLI with a shell-composed argument string; stdin_text is
// piped in, stdout/stderr captured.
inline CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    static int counter = 0;
    const std::string base = temp_dir() + "/run" + std::to_string(counter++);
    const std::string in_path = base + ".in";
    const std::string out_path = base + ".out";
    const std::string err_path = base + ".err";
    {
        std::ofstream in(in_path);
        in << stdin_text;
    }
    const std::string command = std::string(CGG_CLI_PATH) + " " + args + " < " + in_path +
                                " > " + out_path + " 2> " + err_path;
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

} // namespace cggtest

#endif // CGG_CLI_PATH
