#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spg/bdd.hpp"
#include "spg/game.hpp"

namespace spg {

class EncodingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class VarOrder {
    PreBeforePost, // x0..x(k-1) then x'0..x'(k-1)
    Interleaved,   // x0 x'0 x1 x'1 ...
};

/**
 * A parity game as BDDs. Vertex i is the k-bit binary code of i over
 * pre_vars (most significant bit first) and over post_vars as an edge
 * target. Codes >= n are not in V.
 */
struct SymbolicGame {
    BddManager* mgr = nullptr;
    std::size_t n = 0;
    std::uint32_t k = 0;
    int d = 0;
    VarOrder order = VarOrder::PreBeforePost;

    std::vector<VarId> pre_vars;
    std::vector<VarId> post_vars;
    std::vector<VarId> edge_vars; // pre and post, increasing
    Bdd pre_cube;
    Bdd post_cube;
    VarMap to_post;
    VarMap to_pre;

    Bdd V;
    Bdd V_even_owner;
    Bdd V_odd_owner;
    std::vector<Bdd> Vp;    // vertices of priority p, p = 0..d
    Bdd V0;                 // even priority
    Bdd V1;                 // odd priority
    std::vector<Bdd> below; // below[p] = vertices of priority < p
    std::vector<Bdd> above; // above[p] = vertices of priority > p
    Bdd E;

    const Bdd& owned_by(Player p) const { return p == Player::Even ? V_even_owner : V_odd_owner; }
    Bdd to_post_vars(const Bdd& f) const { return mgr->substitute(f, to_post); }
    Bdd to_pre_vars(const Bdd& f) const { return mgr->substitute(f, to_pre); }
};

/// max(1, ceil(log2 n))
std::uint32_t encoding_bits(std::size_t n);
/// Variables a manager needs to encode a game of n vertices.
std::uint32_t required_vars(std::size_t n);

SymbolicGame encode(const ParityGame& g, BddManager& mgr, VarOrder order = VarOrder::PreBeforePost);

Bdd vertex_set(const SymbolicGame& sg, std::span<const VertexId> vertices);
Bdd edge_set(const SymbolicGame& sg, std::span<const Edge> edges);

/// Vertices of s (restricted to V), ascending. s must not mention post_vars.
std::vector<VertexId> decode_set(const Bdd& s, const SymbolicGame& sg);
/// Edges of s restricted to E, ascending.
std::vector<Edge> decode_edges(const Bdd& s, const SymbolicGame& sg);

} // namespace spg
