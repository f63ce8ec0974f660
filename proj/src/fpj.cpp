#include "spg/fpj.hpp"

#include "spg/sym_ops.hpp"

namespace spg {

namespace {

Bdd unjustified(const Bdd& j, const SymbolicGame& sg)
{
    return sg.V.diff(sg.mgr->exists(j, sg.post_cube));
}

} // namespace

Bdd reaches(const Bdd& j, const Bdd& x, const SymbolicGame& sg)
{
    Bdd acc = x;
    for (;;) {
        const Bdd next = acc | preimage(j, acc, sg);
        if (next == acc) return acc;
        acc = next;
    }
}

Bdd phi(const Bdd& z, const SymbolicGame& sg)
{
    return onestep_into(sg.V, z, sg);
}

Bdd fpj_strategy(const Bdd& z, const Bdd& u, const SymbolicGame& sg)
{
    const Bdd won_even = u & sg.V_even_owner & z;
    const Bdd won_odd = (u & sg.V_odd_owner).diff(z);
    const Bdd losing = u.diff(won_even | won_odd) & sg.V;
    const Bdd z_post = sg.to_post_vars(z);
    return (won_even & z_post & sg.E) | (won_odd.diff(z_post) & sg.E) | (losing & sg.E);
}

FpjState fpj_initial(const SymbolicGame& sg)
{
    FpjState st;
    st.Z = sg.V0;
    st.J = sg.mgr->bdd_false();
    st.U = unjustified(st.J, sg);
    return st;
}

FpjStep fpj_next(FpjState& st, const SymbolicGame& sg)
{
    BddManager& mgr = *sg.mgr;
    FpjStep step;
    std::size_t p = 0;
    while (p < sg.Vp.size() && (sg.Vp[p] & st.U).is_false()) ++p;
    if (p == sg.Vp.size()) throw SolverError("fpj_next called with every vertex justified");
    step.p = static_cast<int>(p);

    const Bdd u = sg.Vp[p] & st.U;
    const Bdd changed = u & (st.Z ^ onestep_into(u, st.Z, sg)); // phi(Z) restricted to u
    step.changed_set = changed;
    if (!changed.is_false()) {
        const Bdd r = reaches(st.J, changed, sg);
        Bdd reset;
        if (p % 2 == 0) {
            reset = st.Z.diff(r & sg.V1) & sg.below[p];
        } else {
            reset = (st.Z | (r & sg.V0)) & sg.below[p];
        }
        const Bdd z_next = (st.Z & sg.above[p]) | ((st.Z & sg.Vp[p]) ^ changed) | reset;
        st.J = st.J.diff(r) | fpj_strategy(z_next, changed, sg);
        st.Z = z_next;
        step.changed = true;
        step.pruned = r;
    } else {
        st.J |= fpj_strategy(st.Z, u, sg);
        step.pruned = mgr.bdd_false();
    }
    st.U = unjustified(st.J, sg);
    return step;
}

SolveResult fpj_solve(const SymbolicGame& sg, const FpjOptions& options)
{
    const std::uint64_t cap = options.iteration_cap ? options.iteration_cap : default_iteration_cap(sg);
    FpjState st = fpj_initial(sg);
    std::uint64_t iterations = 0;
    while (!st.U.is_false()) {
        if (options.observer) options.observer(st);
        if (++iterations > cap) throw SolverError("fpj: iteration cap exceeded");
        fpj_next(st, sg);
    }
    if (options.observer) options.observer(st);

    SolveResult r;
    r.W_even = st.Z;
    r.W_odd = sg.V.diff(st.Z);
    r.S_even = st.J & sg.V_even_owner & r.W_even;
    r.S_odd = st.J & sg.V_odd_owner & r.W_odd;
    r.has_strategy = true;
    r.iterations = iterations;
    return r;
}

} // namespace spg
