#include "spg/symbolic.hpp"

#include <algorithm>

namespace spg {

std::uint32_t encoding_bits(std::size_t n)
{
    std::uint32_t k = 1;
    while (k < 63 && (std::size_t(1) << k) < n) ++k;
    return k;
}

std::uint32_t required_vars(std::size_t n) { return 2 * encoding_bits(n); }

namespace {

// Combined code of an edge over sg.edge_vars.
std::uint64_t edge_code(const SymbolicGame& sg, VertexId from, VertexId to)
{
    const std::uint32_t k = sg.k;
    if (sg.order == VarOrder::PreBeforePost) return (std::uint64_t(from) << k) | to;
    std::uint64_t code = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
        const std::uint32_t shift = k - 1 - j;
        code = (code << 2) | (((from >> shift) & 1u) << 1) | ((to >> shift) & 1u);
    }
    return code;
}

Edge split_edge_code(const SymbolicGame& sg, std::uint64_t code)
{
    const std::uint32_t k = sg.k;
    const std::uint64_t mask = (std::uint64_t(1) << k) - 1;
    if (sg.order == VarOrder::PreBeforePost) {
        return {static_cast<VertexId>(code >> k), static_cast<VertexId>(code & mask)};
    }
    std::uint64_t from = 0, to = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
        const std::uint32_t shift = 2 * (k - 1 - j);
        from = (from << 1) | ((code >> (shift + 1)) & 1u);
        to = (to << 1) | ((code >> shift) & 1u);
    }
    return {static_cast<VertexId>(from), static_cast<VertexId>(to)};
}

} // namespace

SymbolicGame encode(const ParityGame& g, BddManager& mgr, VarOrder order)
{
    SymbolicGame sg;
    sg.mgr = &mgr;
    sg.n = g.size();
    sg.k = encoding_bits(g.size());
    sg.d = g.max_priority();
    sg.order = order;
    if (mgr.var_count() < 2 * sg.k) {
        throw EncodingError("manager has " + std::to_string(mgr.var_count()) + " variables, game needs " +
                            std::to_string(2 * sg.k));
    }
    if (sg.k > 31) throw EncodingError("game too large to encode");

    for (std::uint32_t j = 0; j < sg.k; ++j) {
        const VarId pre = order == VarOrder::PreBeforePost ? j : 2 * j;
        const VarId post = order == VarOrder::PreBeforePost ? sg.k + j : 2 * j + 1;
        sg.pre_vars.push_back(pre);
        sg.post_vars.push_back(post);
        sg.to_post.emplace_back(pre, post);
        sg.to_pre.emplace_back(post, pre);
    }
    sg.edge_vars = sg.pre_vars;
    sg.edge_vars.insert(sg.edge_vars.end(), sg.post_vars.begin(), sg.post_vars.end());
    std::sort(sg.edge_vars.begin(), sg.edge_vars.end());
    sg.pre_cube = mgr.cube(sg.pre_vars);
    sg.post_cube = mgr.cube(sg.post_vars);

    const std::size_t n = g.size();
    std::vector<std::uint64_t> all, even_owned, odd_owned;
    std::vector<std::vector<std::uint64_t>> by_prio(static_cast<std::size_t>(sg.d) + 1);
    for (VertexId v = 0; v < n; ++v) {
        all.push_back(v);
        (g.owner(v) == Player::Even ? even_owned : odd_owned).push_back(v);
        by_prio[static_cast<std::size_t>(g.priority(v))].push_back(v);
    }
    sg.V = mgr.from_codes(all, sg.pre_vars);
    sg.V_even_owner = mgr.from_codes(even_owned, sg.pre_vars);
    sg.V_odd_owner = mgr.from_codes(odd_owned, sg.pre_vars);
    sg.V0 = mgr.bdd_false();
    sg.V1 = mgr.bdd_false();
    for (std::size_t p = 0; p < by_prio.size(); ++p) {
        sg.Vp.push_back(mgr.from_codes(by_prio[p], sg.pre_vars));
        (p % 2 == 0 ? sg.V0 : sg.V1) |= sg.Vp.back();
    }

    const std::size_t levels = sg.Vp.size();
    sg.below.assign(levels, mgr.bdd_false());
    sg.above.assign(levels, mgr.bdd_false());
    for (std::size_t p = 1; p < levels; ++p) sg.below[p] = sg.below[p - 1] | sg.Vp[p - 1];
    for (std::size_t p = levels - 1; p-- > 0;) sg.above[p] = sg.above[p + 1] | sg.Vp[p + 1];

    std::vector<std::uint64_t> edge_codes;
    edge_codes.reserve(g.edge_count());
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId s : g.successors(v)) edge_codes.push_back(edge_code(sg, v, s));
    }
    sg.E = mgr.from_codes(edge_codes, sg.edge_vars);
    return sg;
}

Bdd vertex_set(const SymbolicGame& sg, std::span<const VertexId> vertices)
{
    std::vector<std::uint64_t> codes;
    codes.reserve(vertices.size());
    for (VertexId v : vertices) {
        if (v >= sg.n) throw EncodingError("vertex " + std::to_string(v) + " out of range");
        codes.push_back(v);
    }
    return sg.mgr->from_codes(codes, sg.pre_vars);
}

Bdd edge_set(const SymbolicGame& sg, std::span<const Edge> edges)
{
    std::vector<std::uint64_t> codes;
    codes.reserve(edges.size());
    for (const auto& [from, to] : edges) {
        if (from >= sg.n || to >= sg.n) throw EncodingError("edge endpoint out of range");
        codes.push_back(edge_code(sg, from, to));
    }
    return sg.mgr->from_codes(codes, sg.edge_vars);
}

std::vector<VertexId> decode_set(const Bdd& s, const SymbolicGame& sg)
{
    for (VarId v : sg.mgr->support(s)) {
        if (std::find(sg.pre_vars.begin(), sg.pre_vars.end(), v) == sg.pre_vars.end()) {
            throw EncodingError("vertex set depends on non-vertex variable " + std::to_string(v));
        }
    }
    std::vector<VertexId> out;
    sg.mgr->for_each_sat(s & sg.V, sg.pre_vars,
                         [&](std::uint64_t code) { out.push_back(static_cast<VertexId>(code)); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> decode_edges(const Bdd& s, const SymbolicGame& sg)
{
    std::vector<Edge> out;
    sg.mgr->for_each_sat(s & sg.E, sg.edge_vars,
                         [&](std::uint64_t code) { out.push_back(split_edge_code(sg, code)); });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace spg
