#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spg {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

enum class Player : std::uint8_t { Even = 0, Odd = 1 };

constexpr Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }
constexpr Player parity_owner(int priority) { return priority % 2 == 0 ? Player::Even : Player::Odd; }
constexpr int player_index(Player p) { return static_cast<int>(p); }
const char* player_name(Player p);

/// Malformed game or solution data. line is 0 when not tied to an input line.
class GameError : public std::runtime_error {
  public:
    explicit GameError(const std::string& what, int line = 0);
    int line() const { return line_; }

  private:
    int line_;
};

/**
 * Explicit parity game with dense vertex ids 0..n-1.
 *
 * Every vertex has at least one successor; successor lists are duplicate-free
 * and keep input order. The id a vertex had in its source file is kept for
 * output.
 */
class ParityGame {
  public:
    struct VertexSpec {
        Player owner = Player::Even;
        int priority = 0;
        std::vector<VertexId> successors;
        std::int64_t original_id = -1; // -1: same as the dense id
        std::string name;
    };

    ParityGame() = default;
    /// Validates and deduplicates. Throws GameError.
    explicit ParityGame(std::vector<VertexSpec> vertices);

    std::size_t size() const { return owner_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    int max_priority() const { return max_priority_; }
    /// Number of distinct priorities that occur.
    std::size_t priority_count() const;

    Player owner(VertexId v) const { return owner_[v]; }
    int priority(VertexId v) const { return priority_[v]; }
    const std::vector<VertexId>& successors(VertexId v) const { return succ_[v]; }
    bool has_edge(VertexId from, VertexId to) const;
    std::int64_t original_id(VertexId v) const { return original_id_[v]; }
    const std::string& name(VertexId v) const { return name_[v]; }
    /// Dense id for an original id, or -1.
    std::int64_t find_original(std::int64_t original) const;

    std::vector<Edge> edges() const;

    friend bool operator==(const ParityGame&, const ParityGame&) = default;

  private:
    std::vector<Player> owner_;
    std::vector<int> priority_;
    std::vector<std::vector<VertexId>> succ_;
    std::vector<std::int64_t> original_id_;
    std::vector<std::string> name_;
    std::size_t edge_count_ = 0;
    int max_priority_ = 0;
};

/// A set of moves of one player; may hold several moves per source.
struct Strategy {
    Player player = Player::Even;
    std::vector<Edge> moves; // sorted, unique

    void normalize();
    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct ExplicitSolution {
    std::vector<Player> winner;
    Strategy strategy_even{Player::Even, {}};
    Strategy strategy_odd{Player::Odd, {}};

    const Strategy& strategy(Player p) const { return p == Player::Even ? strategy_even : strategy_odd; }
    Strategy& strategy(Player p) { return p == Player::Even ? strategy_even : strategy_odd; }
    friend bool operator==(const ExplicitSolution&, const ExplicitSolution&) = default;
};

ParityGame parse_pgsolver(std::istream& in);
ParityGame parse_pgsolver(std::string_view text);
void write_pgsolver(std::ostream& out, const ParityGame& g);
std::string to_pgsolver(const ParityGame& g);

/// Solution lines use the vertices' original ids. With determinize set, each
/// vertex gets at most one target (the smallest id); otherwise all targets
/// are listed, comma separated.
void write_solution(std::ostream& out, const ParityGame& g, const ExplicitSolution& s,
                    bool determinize = true);
std::string to_solution_text(const ParityGame& g, const ExplicitSolution& s, bool determinize = true);
ExplicitSolution parse_solution(std::istream& in, const ParityGame& g);
ExplicitSolution parse_solution(std::string_view text, const ParityGame& g);

/// Keep, for every source, the move to the smallest target. Throws GameError
/// if a move is not an edge of g or its source is not owned by s.player.
Strategy determinize(const Strategy& s, const ParityGame& g);

} // namespace spg
