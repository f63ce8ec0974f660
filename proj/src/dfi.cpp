#include "spg/dfi.hpp"

#include <algorithm>

#include "spg/sym_ops.hpp"

namespace spg {

namespace {

Bdd remove_frozen(Bdd acc, const std::vector<Bdd>& frozen, FoldOrder fold, BddManager& mgr)
{
    if (fold == FoldOrder::SinglePass) {
        Bdd all = mgr.bdd_false();
        for (const Bdd& f : frozen) all |= f;
        return acc.diff(all);
    }
    std::vector<std::pair<std::size_t, const Bdd*>> order;
    for (const Bdd& f : frozen) {
        if (!f.is_false()) order.emplace_back(mgr.count_nodes(f), &f);
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [size, f] : order) {
        if (acc.is_false()) break;
        acc = acc.diff(*f);
    }
    return acc;
}

} // namespace

SolveResult dfi_solve(const SymbolicGame& sg, const DfiOptions& options)
{
    BddManager& mgr = *sg.mgr;
    const int d = sg.d;
    const std::uint64_t cap = options.iteration_cap ? options.iteration_cap : default_iteration_cap(sg);
    const bool strat = options.compute_strategy;

    DfiState st;
    st.Z = mgr.bdd_false();
    st.F.assign(static_cast<std::size_t>(d) + 1, mgr.bdd_false());
    st.S = mgr.bdd_false();
    st.p = 0;

    std::uint64_t iterations = 0;
    while (st.p <= d) {
        if (++iterations > cap) throw SolverError("dfi: iteration cap exceeded");
        const auto p = static_cast<std::size_t>(st.p);
        const bool even = st.p % 2 == 0;

        const Bdd x = remove_frozen(sg.Vp[p].diff(st.Z), st.F, options.fold, mgr);
        Bdd fresh = mgr.bdd_false();
        if (!x.is_false()) {
            const Bdd step = onestep_even(x, st.Z, sg);
            fresh = even ? x.diff(step) : step;
        }

        const Bdd z_before = st.Z;
        st.Z |= fresh;

        if (strat && !x.is_false()) {
            st.S = st.S.diff(x);
            const Bdd even_post = sg.to_post_vars(even_region(st.Z, sg));
            const Bdd odd_post = sg.to_post_vars(odd_region(st.Z, sg));
            st.S |= x & sg.V_even_owner & sg.E & even_post;
            st.S |= x & sg.V_odd_owner & sg.E & odd_post;
        }

        if (!fresh.is_false()) {
            if (options.observer) options.observer({DfiEvent::Distractions, st, z_before});
            const Bdd lower = remove_frozen(sg.below[p], st.F, options.fold, mgr);
            const Bdd won = lower & (even ? even_region(st.Z, sg) : odd_region(st.Z, sg));
            st.F[p] |= lower.diff(won);
            const Bdd z_mid = st.Z;
            st.Z = st.Z.diff(won);
            if (options.observer) options.observer({DfiEvent::Reset, st, z_mid});
            st.p = 0;
        } else {
            st.F[p] = mgr.bdd_false();
            if (options.observer) options.observer({DfiEvent::Thaw, st, z_before});
            ++st.p;
        }
    }

    SolveResult r;
    r.W_even = even_region(st.Z, sg);
    r.W_odd = odd_region(st.Z, sg);
    r.has_strategy = strat;
    if (strat) {
        r.S_even = r.W_even & sg.V_even_owner & st.S;
        r.S_odd = r.W_odd & sg.V_odd_owner & st.S;
    } else {
        r.S_even = mgr.bdd_false();
        r.S_odd = mgr.bdd_false();
    }
    r.iterations = iterations;
    return r;
}

} // namespace spg
