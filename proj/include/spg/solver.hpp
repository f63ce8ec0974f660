#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spg/game.hpp"
#include "spg/symbolic.hpp"

namespace spg {

/// Raised when a solver exceeds its iteration or recursion safeguard. The
/// algorithms terminate, so this always points at a bug.
class SolverError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

enum class Algorithm { Dfi, DfiNs, Fpj, Zlk };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
/// Whether the algorithm produces winning strategies.
bool computes_strategy(Algorithm a);

struct SolveResult {
    Bdd W_even;
    Bdd W_odd;
    Bdd S_even; // false when has_strategy is unset
    Bdd S_odd;
    bool has_strategy = false;
    std::uint64_t iterations = 0;
};

/// Winner per vertex and the (possibly multi-successor) strategies, decoded.
ExplicitSolution to_explicit(const SolveResult& r, const SymbolicGame& sg);

SolveResult solve(Algorithm a, const SymbolicGame& sg);

/// Default iteration safeguard: n * (n+1)^d, saturating.
std::uint64_t default_iteration_cap(const SymbolicGame& sg);

} // namespace spg
