#include "spg/sym_ops.hpp"

namespace spg {

Bdd preimage(const Bdd& rel, const Bdd& x, const SymbolicGame& sg)
{
    return sg.mgr->and_exists(rel, sg.to_post_vars(x), sg.post_cube);
}

Bdd diamond(const Bdd& x, const SymbolicGame& sg)
{
    return sg.V & preimage(sg.E, x, sg);
}

Bdd box(const Bdd& x, const SymbolicGame& sg)
{
    // forall x'. ~E | X'  ==  ~exists x'. E & ~X'. Codes outside V have no
    // edges and would satisfy the forall vacuously, hence the final & V.
    const Bdd escape = sg.mgr->and_exists(sg.E, ~sg.to_post_vars(x), sg.post_cube);
    return sg.V.diff(escape);
}

Bdd onestep_into(const Bdd& x, const Bdd& target, const SymbolicGame& sg)
{
    if (x.is_false()) return x;
    const Bdd rel = sg.E & x;
    const Bdd target_post = sg.to_post_vars(target);
    const Bdd some = sg.mgr->and_exists(rel, target_post, sg.post_cube);
    const Bdd escape = sg.mgr->and_exists(rel, ~target_post, sg.post_cube);
    const Bdd even_part = sg.V_even_owner & x & some;
    const Bdd odd_part = (sg.V_odd_owner & x).diff(escape);
    return even_part | odd_part;
}

Bdd even_region(const Bdd& z, const SymbolicGame& sg)
{
    return sg.V0.diff(z) | (sg.V1 & z);
}

Bdd odd_region(const Bdd& z, const SymbolicGame& sg)
{
    return (sg.V0 & z) | sg.V1.diff(z);
}

Bdd onestep_even(const Bdd& x, const Bdd& z, const SymbolicGame& sg)
{
    if (x.is_false()) return x;
    return onestep_into(x, even_region(z, sg), sg);
}

Bdd attract(Player player, const Bdd& target, const Bdd& within, const SymbolicGame& sg)
{
    const Bdd own = within & sg.owned_by(player);
    const Bdd other = within & sg.owned_by(opponent(player));
    const Bdd outside = sg.V.diff(within);
    Bdd attr = target & within;
    for (;;) {
        const Bdd next = attr | (own & diamond(attr, sg)) | (other & box(attr | outside, sg));
        if (next == attr) return attr;
        attr = next;
    }
}

} // namespace spg
