#pragma once

#include <functional>
#include <vector>

#include "spg/solver.hpp"

namespace spg {

/// How the unfrozen-vertex sets are formed.
enum class FoldOrder {
    Incremental, // subtract the freeze sets one at a time, smallest first
    SinglePass,  // subtract the union of all freeze sets at once
};

struct DfiState {
    Bdd Z;              // distractions
    std::vector<Bdd> F; // F[q]: vertices frozen while working on priority q
    Bdd S;              // strategy edges
    int p = 0;
};

struct DfiEvent {
    enum Kind {
        Distractions, // new distractions were added to Z at priority p
        Reset,        // lower vertices won by p's player were removed from Z
        Thaw,         // p was stable; F[p] cleared, moving on
    } kind;
    const DfiState& state;
    const Bdd& z_before; // Z before this step
};

struct DfiOptions {
    bool compute_strategy = true;
    FoldOrder fold = FoldOrder::Incremental;
    std::uint64_t iteration_cap = 0; // 0: default_iteration_cap
    std::function<void(const DfiEvent&)> observer;
};

/// Distraction fixpoint iteration with freezing. With compute_strategy unset
/// the strategy bookkeeping is skipped and only the regions are returned.
SolveResult dfi_solve(const SymbolicGame& sg, const DfiOptions& options = {});

} // namespace spg
