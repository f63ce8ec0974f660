#pragma once

#include <functional>

#include "spg/solver.hpp"

namespace spg {

struct FpjState {
    Bdd Z; // current estimate of Even's winning vertices
    Bdd J; // justification graph, a subset of E
    Bdd U; // unjustified vertices: V minus the sources of J
};

struct FpjStep {
    int p = 0;           // priority that was processed
    bool changed = false; // some unjustified p-vertex switched sides
    Bdd changed_set;     // C
    Bdd pruned;          // R (false when nothing changed)
};

struct FpjOptions {
    std::uint64_t iteration_cap = 0; // 0: default_iteration_cap
    /// Called at every loop head, before fpj_next.
    std::function<void(const FpjState&)> observer;
};

/// Initial state: Even wins the even-priority vertices, nothing justified.
FpjState fpj_initial(const SymbolicGame& sg);

/// One step of fixpoint iteration with justifications. state.U must be non-empty;
/// on return Z and J are updated and U is recomputed.
FpjStep fpj_next(FpjState& state, const SymbolicGame& sg);

/// Vertices that reach x along edges of j (x included).
Bdd reaches(const Bdd& j, const Bdd& x, const SymbolicGame& sg);

/// One-step Even win: Even-owned vertices with a successor in z plus
/// Odd-owned vertices with all successors in z.
Bdd phi(const Bdd& z, const SymbolicGame& sg);

/// Justifying edges for the vertices of u given the estimate z: a vertex won
/// by its owner keeps the edges that stay on its side, any other vertex keeps
/// all its edges.
Bdd fpj_strategy(const Bdd& z, const Bdd& u, const SymbolicGame& sg);

SolveResult fpj_solve(const SymbolicGame& sg, const FpjOptions& options = {});

} // namespace spg
