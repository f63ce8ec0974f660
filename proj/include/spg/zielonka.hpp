#pragma once

#include "spg/solver.hpp"

namespace spg {

struct ZlkOptions {
    /// Assert at every recursion step that the subgame mask is total.
    bool check_totality = false;
    std::size_t depth_cap = 0; // 0: n + d + 2
};

/// Recursive (Zielonka) solver over vertex masks of the original encoding.
/// Regions only; the strategy fields of the result are false.
SolveResult zlk_solve(const SymbolicGame& sg, const ZlkOptions& options = {});

} // namespace spg
