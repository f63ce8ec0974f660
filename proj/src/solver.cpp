#include "spg/solver.hpp"

#include <algorithm>
#include <limits>

#include "spg/dfi.hpp"
#include "spg/fpj.hpp"
#include "spg/zielonka.hpp"

namespace spg {

std::string_view algorithm_name(Algorithm a)
{
    switch (a) {
    case Algorithm::Dfi: return "dfi";
    case Algorithm::DfiNs: return "dfi-ns";
    case Algorithm::Fpj: return "fpj";
    case Algorithm::Zlk: return "zlk";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    for (Algorithm a : {Algorithm::Dfi, Algorithm::DfiNs, Algorithm::Fpj, Algorithm::Zlk}) {
        if (algorithm_name(a) == name) return a;
    }
    return std::nullopt;
}

bool computes_strategy(Algorithm a) { return a == Algorithm::Dfi || a == Algorithm::Fpj; }

std::uint64_t default_iteration_cap(const SymbolicGame& sg)
{
    constexpr std::uint64_t kMax = std::uint64_t(1) << 62;
    std::uint64_t cap = std::max<std::uint64_t>(sg.n, 1);
    for (int i = 0; i < sg.d; ++i) {
        if (cap > kMax / (sg.n + 1)) return kMax;
        cap *= sg.n + 1;
    }
    // Every iteration visits one priority level, so allow d+1 per state.
    if (cap > kMax / (static_cast<std::uint64_t>(sg.d) + 1)) return kMax;
    return cap * (static_cast<std::uint64_t>(sg.d) + 1);
}

ExplicitSolution to_explicit(const SolveResult& r, const SymbolicGame& sg)
{
    ExplicitSolution s;
    s.winner.assign(sg.n, Player::Even);
    for (VertexId v : decode_set(r.W_odd, sg)) s.winner[v] = Player::Odd;
    if (r.has_strategy) {
        s.strategy_even.moves = decode_edges(r.S_even, sg);
        s.strategy_odd.moves = decode_edges(r.S_odd, sg);
    }
    return s;
}

SolveResult solve(Algorithm a, const SymbolicGame& sg)
{
    switch (a) {
    case Algorithm::Dfi: return dfi_solve(sg, {});
    case Algorithm::DfiNs: {
        DfiOptions o;
        o.compute_strategy = false;
        return dfi_solve(sg, o);
    }
    case Algorithm::Fpj: return fpj_solve(sg, {});
    case Algorithm::Zlk: return zlk_solve(sg, {});
    }
    throw SolverError("unknown algorithm");
}

} // namespace spg
