#include "cgg/coarse_game.hpp"

#include "cgg/errors.hpp"

namespace cgg {

CoarseGame::CoarseGame(Game base_game, std::vector<Partition> parts,
                       std::vector<Preprocessing> prep)
    : base(std::move(base_game)), partitions(std::move(parts)), preprocessing(std::move(prep)) {
    if (partitions.size() != static_cast<std::size_t>(base.num_players())) {
        throw Error(ErrorCode::ValidationError, "one partition required per player");
    }
    if (preprocessing.size() != static_cast<std::size_t>(base.num_players())) {
        throw Error(ErrorCode::ValidationError, "one preprocessing entry required per player");
    }
}

CoarseGame::CoarseGame(Game base_game, std::vector<Partition> parts)
    : base(std::move(base_game)), partitions(std::move(parts)),
      preprocessing(partitions.size(), Preprocessing::Emp) {
    if (partitions.size() != static_cast<std::size_t>(base.num_players())) {
        throw Error(ErrorCode::ValidationError, "one partition required per player");
    }
}

bool CoarseGame::operator==(const CoarseGame& other) const {
    return base == other.base && partitions == other.partitions &&
           preprocessing == other.preprocessing;
}

GrainMatrix coarse_view(const CoarseGame& cg, int perceiver) {
    if (perceiver < 0 || perceiver >= cg.base.num_players()) {
        throw Error(ErrorCode::ValidationError, "perceiver index out of range");
    }
    const Partition& partition = cg.partitions[static_cast<std::size_t>(perceiver)];
    GrainMatrix gm;
    gm.perceiver = perceiver;
    gm.cells.reserve(cg.base.num_cells());
    for (std::size_t c = 0; c < cg.base.num_cells(); ++c) {
        std::vector<Grain> grains;
        grains.reserve(cg.base.cell(c).size());
        for (const Rational& value : cg.base.cell(c)) {
            grains.push_back(partition.coarsen(value));
        }
        gm.cells.push_back(std::move(grains));
    }
    return gm;
}

PerceivedGame perceived_game(const CoarseGame& cg, int perceiver) {
    if (perceiver < 0 || perceiver >= cg.base.num_players()) {
        throw Error(ErrorCode::ValidationError, "perceiver index out of range");
    }
    if (cg.preprocessing[static_cast<std::size_t>(perceiver)] == Preprocessing::Ignore) {
        throw Error(ErrorCode::IgnorePreprocessing,
                    "player " + cg.base.players()[static_cast<std::size_t>(perceiver)] +
                        " discards coarse payoffs, so no playable matrix exists");
    }
    const GrainMatrix stage = coarse_view(cg, perceiver);
    std::vector<std::vector<Rational>> cells;
    cells.reserve(stage.cells.size());
    for (const auto& grain_cell : stage.cells) {
        std::vector<Rational> numeric;
        numeric.reserve(grain_cell.size());
        for (const Grain& g : grain_cell) numeric.push_back(emp(g));
        cells.push_back(std::move(numeric));
    }
    std::vector<std::vector<std::string>> strategy_lists;
    strategy_lists.reserve(static_cast<std::size_t>(cg.base.num_players()));
    for (int p = 0; p < cg.base.num_players(); ++p) {
        strategy_lists.push_back(cg.base.strategies(p));
    }
    Game game(cg.base.players(), std::move(strategy_lists), std::move(cells));
    return PerceivedGame{std::move(game), perceiver,
                         cg.partitions[static_cast<std::size_t>(perceiver)]};
}

} // namespace cgg
