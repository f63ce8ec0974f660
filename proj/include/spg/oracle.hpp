#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spg/game.hpp"

namespace spg {

/// Parameters for a random game. Out-degrees are clamped to n.
struct GameSeedSpec {
    std::size_t n = 16;
    int d = 4;
    std::size_t min_out = 1;
    std::size_t max_out = 3;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument.
    void validate() const;
};

/// Deterministic in spec.seed: uniform owners and priorities in 0..d, and a
/// uniform out-degree in [min_out, max_out] with distinct targets per vertex.
ParityGame gen_random(const GameSeedSpec& spec);

/// Explicit recursive (Zielonka) solver; exact regions and one positional
/// winning strategy per player on its region.
ExplicitSolution explicit_solve(const ParityGame& g);

struct VerifyResult {
    bool accepted = true;
    std::string reason;
    std::optional<VertexId> vertex;
    std::optional<Edge> edge;
    std::vector<VertexId> cycle; // a play cycle the opponent wins, when that is the reason

    explicit operator bool() const { return accepted; }
};

/**
 * Check that `moves` lets `player` win every vertex of `region`:
 *  - moves are edges from player-owned region vertices into the region, and
 *    each player-owned region vertex has one;
 *  - no opponent vertex in the region can leave it;
 *  - in the region with the player restricted to `moves` (still choosing
 *    among them), the player wins everywhere.
 * Throws GameError for out-of-range ids.
 */
VerifyResult verify_strategy(const ParityGame& g, Player player, std::span<const VertexId> region,
                             std::span<const Edge> moves);

/// Verify both players of a full solution, plus the region partition.
VerifyResult verify_solution(const ParityGame& g, const ExplicitSolution& s);

/// A positional strategy inside `moves` that wins `region` for `player`, if
/// one exists. Used to turn multi-successor strategies into single moves.
std::optional<Strategy> extract_positional(const ParityGame& g, Player player,
                                           std::span<const VertexId> region, std::span<const Edge> moves);

/// Vertices won by the player in s, ascending.
std::vector<VertexId> region_of(const ExplicitSolution& s, Player p);

} // namespace spg
