#include "spg/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace spg {

// ---------------------------------------------------------------------------
// Random games

void GameSeedSpec::validate() const
{
    if (n == 0) throw std::invalid_argument("vertex count must be positive");
    if (d < 0) throw std::invalid_argument("maximum priority must be non-negative");
    if (min_out < 1) throw std::invalid_argument("minimum out-degree must be at least 1");
    if (max_out < min_out) throw std::invalid_argument("maximum out-degree below minimum");
}

namespace {

// Unbiased draw in [0, bound); std distributions are not portable.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace

ParityGame gen_random(const GameSeedSpec& spec)
{
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n;
    const std::size_t lo = std::min(spec.min_out, n);
    const std::size_t hi = std::min(spec.max_out, n);

    std::vector<ParityGame::VertexSpec> vertices(n);
    std::vector<VertexId> pool(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto& vs = vertices[v];
        vs.owner = draw(rng, 2) == 0 ? Player::Even : Player::Odd;
        vs.priority = static_cast<int>(draw(rng, static_cast<std::uint64_t>(spec.d) + 1));
        const std::size_t deg = lo + draw(rng, hi - lo + 1);
        // Partial Fisher-Yates for distinct targets.
        for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<VertexId>(i);
        for (std::size_t i = 0; i < deg; ++i) {
            const std::size_t j = i + draw(rng, n - i);
            std::swap(pool[i], pool[j]);
            vs.successors.push_back(pool[i]);
        }
    }
    return ParityGame(std::move(vertices));
}

// ---------------------------------------------------------------------------
// Explicit solver

namespace {

constexpr std::int64_t kNoMove = -1;

class ExplicitZielonka {
  public:
    explicit ExplicitZielonka(const ParityGame& g)
        : g_(g), pred_(g.size()), winner_(g.size(), Player::Even), move_(g.size(), kNoMove)
    {
        for (VertexId v = 0; v < g.size(); ++v) {
            for (VertexId s : g.successors(v)) pred_[s].push_back(v);
        }
    }

    void run()
    {
        std::vector<VertexId> all(g_.size());
        for (VertexId v = 0; v < g_.size(); ++v) all[v] = v;
        solve(all);
    }

    ExplicitSolution result() const
    {
        ExplicitSolution s;
        s.winner = winner_;
        for (VertexId v = 0; v < g_.size(); ++v) {
            if (g_.owner(v) == winner_[v] && move_[v] != kNoMove) {
                s.strategy(winner_[v]).moves.emplace_back(v, static_cast<VertexId>(move_[v]));
            }
        }
        return s;
    }

  private:
    // Attractor of `target` for `player` inside the subgame `in`. Records a
    // move for every attracted player vertex outside target.
    std::vector<VertexId> attractor(Player player, const std::vector<VertexId>& target,
                                    const std::vector<char>& in)
    {
        std::vector<char> inside(g_.size(), 0);
        std::unordered_map<VertexId, std::size_t> remaining;
        std::vector<VertexId> out;
        std::deque<VertexId> queue;
        for (VertexId v : target) {
            if (!inside[v]) {
                inside[v] = 1;
                out.push_back(v);
                queue.push_back(v);
            }
        }
        while (!queue.empty()) {
            const VertexId u = queue.front();
            queue.pop_front();
            for (VertexId v : pred_[u]) {
                if (!in[v] || inside[v]) continue;
                if (g_.owner(v) == player) {
                    move_[v] = u;
                } else {
                    auto it = remaining.find(v);
                    if (it == remaining.end()) {
                        std::size_t c = 0;
                        for (VertexId s : g_.successors(v)) c += in[s] ? 1 : 0;
                        it = remaining.emplace(v, c).first;
                    }
                    if (--it->second > 0) continue;
                }
                inside[v] = 1;
                out.push_back(v);
                queue.push_back(v);
            }
        }
        return out;
    }

    void solve(const std::vector<VertexId>& verts)
    {
        if (verts.empty()) return;
        std::vector<char> in(g_.size(), 0);
        int top = -1;
        for (VertexId v : verts) {
            in[v] = 1;
            top = std::max(top, g_.priority(v));
        }
        const Player alpha = parity_owner(top);
        std::vector<VertexId> heads;
        for (VertexId v : verts) {
            if (g_.priority(v) == top) heads.push_back(v);
        }

        const std::vector<VertexId> a = attractor(alpha, heads, in);
        std::vector<char> in_a(g_.size(), 0);
        for (VertexId v : a) in_a[v] = 1;
        std::vector<VertexId> rest;
        for (VertexId v : verts) {
            if (!in_a[v]) rest.push_back(v);
        }
        solve(rest);

        std::vector<VertexId> lost;
        for (VertexId v : rest) {
            if (winner_[v] != alpha) lost.push_back(v);
        }
        if (lost.empty()) {
            for (VertexId v : a) winner_[v] = alpha;
            for (VertexId v : heads) {
                if (g_.owner(v) != alpha) continue;
                for (VertexId s : g_.successors(v)) {
                    if (in[s]) {
                        move_[v] = s;
                        break;
                    }
                }
            }
            return;
        }

        const std::vector<VertexId> b = attractor(opponent(alpha), lost, in);
        std::vector<char> in_b(g_.size(), 0);
        for (VertexId v : b) {
            in_b[v] = 1;
            winner_[v] = opponent(alpha);
        }
        std::vector<VertexId> remainder;
        for (VertexId v : verts) {
            if (!in_b[v]) remainder.push_back(v);
        }
        solve(remainder);
    }

    const ParityGame& g_;
    std::vector<std::vector<VertexId>> pred_;
    std::vector<Player> winner_;
    std::vector<std::int64_t> move_;
};

} // namespace

ExplicitSolution explicit_solve(const ParityGame& g)
{
    ExplicitZielonka z(g);
    z.run();
    return z.result();
}

std::vector<VertexId> region_of(const ExplicitSolution& s, Player p)
{
    std::vector<VertexId> out;
    for (VertexId v = 0; v < s.winner.size(); ++v) {
        if (s.winner[v] == p) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct Restricted {
    ParityGame game;
    std::vector<VertexId> to_global;
};

// The region as a game of its own, the player limited to `moves`.
Restricted restrict_to(const ParityGame& g, Player player, const std::vector<char>& in_region,
                       std::span<const Edge> moves)
{
    std::vector<std::int64_t> local(g.size(), -1);
    Restricted r;
    for (VertexId v = 0; v < g.size(); ++v) {
        if (in_region[v]) {
            local[v] = static_cast<std::int64_t>(r.to_global.size());
            r.to_global.push_back(v);
        }
    }
    std::vector<ParityGame::VertexSpec> specs(r.to_global.size());
    for (std::size_t i = 0; i < r.to_global.size(); ++i) {
        const VertexId v = r.to_global[i];
        specs[i].owner = g.owner(v);
        specs[i].priority = g.priority(v);
        if (g.owner(v) != player) {
            for (VertexId s : g.successors(v)) specs[i].successors.push_back(static_cast<VertexId>(local[s]));
        }
    }
    for (const auto& [from, to] : moves) {
        specs[static_cast<std::size_t>(local[from])].successors.push_back(static_cast<VertexId>(local[to]));
    }
    r.game = ParityGame(std::move(specs));
    return r;
}

void check_ids(const ParityGame& g, std::span<const VertexId> region, std::span<const Edge> moves)
{
    for (VertexId v : region) {
        if (v >= g.size()) throw GameError("region vertex " + std::to_string(v) + " out of range");
    }
    for (const auto& [from, to] : moves) {
        if (from >= g.size() || to >= g.size()) {
            throw GameError("strategy move " + std::to_string(from) + "->" + std::to_string(to) +
                            " out of range");
        }
    }
}

VerifyResult reject(std::string reason)
{
    VerifyResult r;
    r.accepted = false;
    r.reason = std::move(reason);
    return r;
}

} // namespace

VerifyResult verify_strategy(const ParityGame& g, Player player, std::span<const VertexId> region,
                             std::span<const Edge> moves)
{
    check_ids(g, region, moves);
    std::vector<char> in(g.size(), 0);
    for (VertexId v : region) in[v] = 1;

    std::vector<char> has_move(g.size(), 0);
    for (const auto& [from, to] : moves) {
        const std::string e = std::to_string(from) + "->" + std::to_string(to);
        VerifyResult r;
        if (!g.has_edge(from, to)) {
            r = reject("move " + e + " is not an edge");
        } else if (g.owner(from) != player) {
            r = reject("move " + e + " starts at a vertex not owned by " + player_name(player));
        } else if (!in[from]) {
            r = reject("move " + e + " starts outside the winning region");
        } else if (!in[to]) {
            r = reject("move " + e + " leaves the winning region");
        } else {
            has_move[from] = 1;
            continue;
        }
        r.edge = Edge{from, to};
        r.vertex = from;
        return r;
    }

    for (VertexId v = 0; v < g.size(); ++v) {
        if (!in[v]) continue;
        if (g.owner(v) == player) {
            if (!has_move[v]) {
                VerifyResult r = reject("vertex " + std::to_string(v) + " has no strategy move");
                r.vertex = v;
                return r;
            }
        } else {
            for (VertexId s : g.successors(v)) {
                if (!in[s]) {
                    VerifyResult r = reject(std::string(player_name(opponent(player))) + " escapes the region via " +
                                            std::to_string(v) + "->" + std::to_string(s));
                    r.vertex = v;
                    r.edge = Edge{v, s};
                    return r;
                }
            }
        }
    }
    if (region.empty()) return {};

    const Restricted sub = restrict_to(g, player, in, moves);
    const ExplicitSolution sol = explicit_solve(sub.game);
    for (VertexId i = 0; i < sub.game.size(); ++i) {
        if (sol.winner[i] == player) continue;
        // The opponent wins from i even against every choice the player has.
        // Following the opponent's winning moves and any player move closes a
        // cycle the opponent wins.
        std::vector<std::int64_t> opp_move(sub.game.size(), -1);
        for (const auto& [from, to] : sol.strategy(opponent(player)).moves) opp_move[from] = to;
        std::vector<std::int64_t> seen_at(sub.game.size(), -1);
        std::vector<VertexId> path;
        VertexId cur = i;
        while (seen_at[cur] < 0) {
            seen_at[cur] = static_cast<std::int64_t>(path.size());
            path.push_back(cur);
            cur = sub.game.owner(cur) == player ? sub.game.successors(cur).front()
                                                : static_cast<VertexId>(opp_move[cur]);
        }
        VerifyResult r = reject("vertex " + std::to_string(sub.to_global[i]) + " is won by " +
                                player_name(opponent(player)) + " against the strategy");
        r.vertex = sub.to_global[i];
        for (std::size_t k = static_cast<std::size_t>(seen_at[cur]); k < path.size(); ++k) {
            r.cycle.push_back(sub.to_global[path[k]]);
        }
        return r;
    }
    return {};
}

VerifyResult verify_solution(const ParityGame& g, const ExplicitSolution& s)
{
    if (s.winner.size() != g.size()) return reject("solution size does not match the game");
    for (Player p : {Player::Even, Player::Odd}) {
        const std::vector<VertexId> region = region_of(s, p);
        VerifyResult r = verify_strategy(g, p, region, s.strategy(p).moves);
        if (!r) {
            r.reason = std::string(player_name(p)) + ": " + r.reason;
            return r;
        }
    }
    return {};
}

std::optional<Strategy> extract_positional(const ParityGame& g, Player player,
                                           std::span<const VertexId> region, std::span<const Edge> moves)
{
    if (!verify_strategy(g, player, region, moves)) return std::nullopt;
    Strategy out{player, {}};
    if (region.empty()) return out;
    std::vector<char> in(g.size(), 0);
    for (VertexId v : region) in[v] = 1;
    const Restricted sub = restrict_to(g, player, in, moves);
    const ExplicitSolution sol = explicit_solve(sub.game);
    for (const auto& [from, to] : sol.strategy(player).moves) {
        out.moves.emplace_back(sub.to_global[from], sub.to_global[to]);
    }
    out.normalize();
    return out;
}

} // namespace spg
