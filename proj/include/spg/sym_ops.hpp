#pragma once

#include "spg/symbolic.hpp"

namespace spg {

// All results are subsets of sg.V. Vertex-set arguments are over pre_vars.

/// Vertices with some successor in x.
Bdd diamond(const Bdd& x, const SymbolicGame& sg);
/// Vertices with all successors in x.
Bdd box(const Bdd& x, const SymbolicGame& sg);
/// Sources of rel (over pre and post vars) with some rel-successor in x.
Bdd preimage(const Bdd& rel, const Bdd& x, const SymbolicGame& sg);

/// Vertices in x that Even wins in one step into target: Even-owned with a
/// successor in target, or Odd-owned with all successors in target.
Bdd onestep_into(const Bdd& x, const Bdd& target, const SymbolicGame& sg);

/// Current Even/Odd region for a distraction set z:
///   even = (V0 & ~z) | (V1 & z),  odd = (V0 & z) | (V1 & ~z)
Bdd even_region(const Bdd& z, const SymbolicGame& sg);
Bdd odd_region(const Bdd& z, const SymbolicGame& sg);

/// onestep_into(x, even_region(z)).
Bdd onestep_even(const Bdd& x, const Bdd& z, const SymbolicGame& sg);

/// Vertices of `within` from which `player` forces a visit to target while
/// staying in `within`. The game restricted to `within` must be total.
Bdd attract(Player player, const Bdd& target, const Bdd& within, const SymbolicGame& sg);

} // namespace spg
