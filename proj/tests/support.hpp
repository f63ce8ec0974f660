#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spg/game.hpp"
#include "spg/oracle.hpp"
#include "spg/symbolic.hpp"

namespace spgtest {

using namespace spg;

inline ParityGame golden_game()
{
    std::ifstream in(std::string(SPG_DATA_DIR) + "/simple9.pg");
    return parse_pgsolver(in);
}

inline std::string golden_path() { return std::string(SPG_DATA_DIR) + "/simple9.pg"; }

/// Random games for the oracle comparisons: n in 1..32, d in 0..6, out-degree 1..4.
inline GameSeedSpec small_spec(std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
    GameSeedSpec s;
    s.n = 1 + rng() % 32;
    s.d = static_cast<int>(rng() % 7);
    s.min_out = 1;
    s.max_out = 4;
    s.seed = seed;
    return s;
}

using Mask = std::vector<char>;

inline Mask to_mask(const std::vector<VertexId>& vs, std::size_t n)
{
    Mask m(n, 0);
    for (VertexId v : vs) m[v] = 1;
    return m;
}

inline Mask decode_mask(const Bdd& b, const SymbolicGame& sg) { return to_mask(decode_set(b, sg), sg.n); }

inline Bdd encode_mask(const Mask& m, const SymbolicGame& sg)
{
    std::vector<VertexId> vs;
    for (VertexId v = 0; v < m.size(); ++v)
        if (m[v]) vs.push_back(v);
    return vertex_set(sg, vs);
}

inline Mask bf_diamond(const ParityGame& g, const Mask& x)
{
    Mask out(g.size(), 0);
    for (VertexId v = 0; v < g.size(); ++v)
        for (VertexId w : g.successors(v)) out[v] |= x[w];
    return out;
}

inline Mask bf_box(const ParityGame& g, const Mask& x)
{
    Mask out(g.size(), 1);
    for (VertexId v = 0; v < g.size(); ++v)
        for (VertexId w : g.successors(v)) out[v] &= x[w];
    return out;
}

/// Player-controlled attractor to target inside within, by repeated sweeps.
inline Mask bf_attract(const ParityGame& g, Player p, const Mask& target, const Mask& within)
{
    Mask a(g.size(), 0);
    for (VertexId v = 0; v < g.size(); ++v) a[v] = target[v] && within[v];
    for (bool grew = true; grew;) {
        grew = false;
        for (VertexId v = 0; v < g.size(); ++v) {
            if (a[v] || !within[v]) continue;
            bool any = false, all = true;
            for (VertexId w : g.successors(v)) {
                if (!within[w]) continue;
                any = any || a[w];
                all = all && a[w];
            }
            if (g.owner(v) == p ? any : all) {
                a[v] = 1;
                grew = true;
            }
        }
    }
    return a;
}

inline Mask winner_mask(const ExplicitSolution& s, Player p)
{
    Mask m(s.winner.size(), 0);
    for (std::size_t v = 0; v < m.size(); ++v) m[v] = s.winner[v] == p;
    return m;
}

inline ParityGame self_loop(int priority, Player owner)
{
    ParityGame::VertexSpec v;
    v.owner = owner;
    v.priority = priority;
    v.successors = {0};
    return ParityGame({v});
}

struct TempDir {
    TempDir()
    {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("spg_test_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    std::filesystem::path path;
};

} // namespace spgtest
