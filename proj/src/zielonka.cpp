#include "spg/zielonka.hpp"

#include <utility>

#include "spg/sym_ops.hpp"

namespace spg {

namespace {

struct Regions {
    Bdd even;
    Bdd odd;
};

class Zielonka {
  public:
    Zielonka(const SymbolicGame& sg, const ZlkOptions& options)
        : sg_(sg), options_(options),
          depth_cap_(options.depth_cap ? options.depth_cap : sg.n + static_cast<std::size_t>(sg.d) + 2)
    {
    }

    Regions solve(const Bdd& mask, std::size_t depth)
    {
        BddManager& mgr = *sg_.mgr;
        ++calls_;
        if (mask.is_false()) return {mgr.bdd_false(), mgr.bdd_false()};
        if (depth > depth_cap_) throw SolverError("zlk: recursion depth cap exceeded");
        if (options_.check_totality && !(mask.diff(diamond(mask, sg_))).is_false()) {
            throw SolverError("zlk: subgame is not total");
        }

        std::size_t p = sg_.Vp.size();
        Bdd top;
        while (p-- > 0) {
            top = sg_.Vp[p] & mask;
            if (!top.is_false()) break;
        }
        const Player alpha = parity_owner(static_cast<int>(p));
        const Bdd a = attract(alpha, top, mask, sg_);
        Regions sub = solve(mask.diff(a), depth + 1);
        Bdd& sub_opp = alpha == Player::Even ? sub.odd : sub.even;
        if (sub_opp.is_false()) {
            Regions out{mgr.bdd_false(), mgr.bdd_false()};
            (alpha == Player::Even ? out.even : out.odd) = mask;
            return out;
        }
        const Bdd b = attract(opponent(alpha), sub_opp, mask, sg_);
        Regions rest = solve(mask.diff(b), depth + 1);
        (alpha == Player::Even ? rest.odd : rest.even) |= b;
        return rest;
    }

    std::uint64_t calls() const { return calls_; }

  private:
    const SymbolicGame& sg_;
    const ZlkOptions& options_;
    std::size_t depth_cap_;
    std::uint64_t calls_ = 0;
};

} // namespace

SolveResult zlk_solve(const SymbolicGame& sg, const ZlkOptions& options)
{
    Zielonka z(sg, options);
    Regions w = z.solve(sg.V, 0);
    SolveResult r;
    r.W_even = std::move(w.even);
    r.W_odd = std::move(w.odd);
    r.S_even = sg.mgr->bdd_false();
    r.S_odd = sg.mgr->bdd_false();
    r.has_strategy = false;
    r.iterations = z.calls();
    return r;
}

} // namespace spg
