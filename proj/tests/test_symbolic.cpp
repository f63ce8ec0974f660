#include <doctest.h>

#include "spg/sym_ops.hpp"
#include "support.hpp"

using namespace spg;
using namespace spgtest;

namespace {

struct Encoded {
    explicit Encoded(const ParityGame& game, VarOrder order = VarOrder::PreBeforePost)
        : g(game), mgr(required_vars(game.size()), 256), sg(encode(g, mgr, order))
    {
    }
    Bdd set(std::initializer_list<VertexId> vs) { return vertex_set(sg, std::vector<VertexId>(vs)); }
    std::vector<VertexId> dec(const Bdd& b) { return decode_set(b, sg); }

    ParityGame g;
    BddManager mgr;
    SymbolicGame sg;
};

enum : VertexId { a, b, c, d, e, f, g_, h, i };

} // namespace

TEST_CASE("encoding bits")
{
    CHECK(encoding_bits(1) == 1);
    CHECK(encoding_bits(2) == 1);
    CHECK(encoding_bits(3) == 2);
    CHECK(encoding_bits(9) == 4);
    CHECK(encoding_bits(16) == 4);
    CHECK(encoding_bits(17) == 5);
    CHECK(required_vars(9) == 8);
}

TEST_CASE("golden game encoding")
{
    Encoded en(golden_game());
    const SymbolicGame& sg = en.sg;
    CHECK(sg.k == 4);
    CHECK(sg.pre_vars.size() == 4);
    CHECK(sg.post_vars.size() == 4);
    for (VarId p : sg.pre_vars)
        for (VarId q : sg.post_vars) CHECK(p < q);
    CHECK(en.mgr.sat_count(sg.E, sg.edge_vars) == doctest::Approx(15.0));
    CHECK(en.dec(sg.V) == std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(en.dec(en.mgr.bdd_false()).empty());
    CHECK(en.dec(sg.Vp[2]) == std::vector<VertexId>{b, h});
    auto edges = decode_edges(sg.E, sg);
    auto expected = en.g.edges();
    std::sort(edges.begin(), edges.end());
    std::sort(expected.begin(), expected.end());
    CHECK(edges == expected);
    CHECK(decode_edges(en.mgr.bdd_false(), sg).empty());
    CHECK_THROWS_AS(decode_set(sg.E, sg), EncodingError);
}

TEST_CASE("single vertex uses one pre-variable")
{
    Encoded en(self_loop(0, Player::Even));
    CHECK(en.sg.k == 1);
    CHECK(en.sg.pre_vars.size() == 1);
    CHECK(en.dec(en.sg.V) == std::vector<VertexId>{0});
}

TEST_CASE("insufficient variables")
{
    BddManager mgr(3);
    CHECK_THROWS_AS(encode(golden_game(), mgr), EncodingError);
}

TEST_CASE("encoding invariants on random games")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        for (VarOrder order : {VarOrder::PreBeforePost, VarOrder::Interleaved}) {
            Encoded en(gen_random(small_spec(seed)), order);
            const SymbolicGame& sg = en.sg;
            CHECK((sg.V_even_owner | sg.V_odd_owner) == sg.V);
            CHECK((sg.V_even_owner & sg.V_odd_owner).is_false());
            Bdd all = en.mgr.bdd_false();
            for (std::size_t p = 0; p < sg.Vp.size(); ++p) {
                CHECK((all & sg.Vp[p]).is_false());
                all |= sg.Vp[p];
            }
            CHECK(all == sg.V);
            CHECK((sg.V0 | sg.V1) == sg.V);
            CHECK(en.mgr.sat_count(sg.V, sg.pre_vars) == doctest::Approx(double(sg.n)));
            std::vector<VertexId> every(sg.n);
            for (VertexId v = 0; v < sg.n; ++v) every[v] = v;
            CHECK(en.dec(sg.V) == every);
            auto edges = decode_edges(sg.E, sg);
            auto expected = en.g.edges();
            std::sort(edges.begin(), edges.end());
            std::sort(expected.begin(), expected.end());
            CHECK(edges == expected);
            CHECK(diamond(sg.V, sg) == sg.V);
        }
    }
}

TEST_CASE("golden game operators")
{
    Encoded en(golden_game());
    const SymbolicGame& sg = en.sg;
    const Bdd none = en.mgr.bdd_false();
    CHECK(en.dec(diamond(en.set({f}), sg)) == std::vector<VertexId>{b});
    CHECK(diamond(none, sg).is_false());
    CHECK(diamond(sg.V, sg) == sg.V);
    CHECK(en.dec(box(en.set({g_, h}), sg)) == std::vector<VertexId>{f, g_});
    CHECK(box(sg.V, sg) == sg.V);
    CHECK(box(none, sg).is_false());

    CHECK(onestep_even(en.set({d}), none, sg).is_false());
    CHECK(onestep_even(none, none, sg).is_false());

    CHECK(en.dec(attract(Player::Even, en.set({f}), sg.V, sg)) == std::vector<VertexId>{f});
    CHECK(attract(Player::Odd, none, sg.V, sg).is_false());
    const auto odd_e = en.dec(attract(Player::Odd, en.set({e}), sg.V, sg));
    CHECK(std::find(odd_e.begin(), odd_e.end(), d) != odd_e.end());
    CHECK(std::find(odd_e.begin(), odd_e.end(), e) != odd_e.end());
}

TEST_CASE("onestep on a single even self-loop")
{
    Encoded en(self_loop(0, Player::Even));
    CHECK(onestep_even(en.sg.V, en.mgr.bdd_false(), en.sg) == en.sg.V);
}

TEST_CASE("operators match brute force on random games")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        GameSeedSpec spec = small_spec(seed);
        spec.n = 1 + rng() % 64;
        Encoded en(gen_random(spec), seed % 2 ? VarOrder::Interleaved : VarOrder::PreBeforePost);
        const SymbolicGame& sg = en.sg;
        const std::size_t n = sg.n;
        for (int trial = 0; trial < 3; ++trial) {
            Mask x(n), w(n, 1);
            for (std::size_t v = 0; v < n; ++v) x[v] = rng() % 3 == 0;
            const Bdd X = encode_mask(x, sg);
            const Bdd dia = diamond(X, sg), bx = box(X, sg);
            REQUIRE(decode_mask(dia, sg) == bf_diamond(en.g, x));
            REQUIRE(decode_mask(bx, sg) == bf_box(en.g, x));
            CHECK(bx == (sg.V & ~diamond(sg.V & ~X, sg)));
            CHECK(dia.diff(sg.V).is_false());
            CHECK(bx.diff(sg.V).is_false());
            for (Player p : {Player::Even, Player::Odd}) {
                const Bdd A = attract(p, X, sg.V, sg);
                REQUIRE(decode_mask(A, sg) == bf_attract(en.g, p, x, w));
                CHECK(attract(p, A, sg.V, sg) == A);
            }
        }
    }
}
