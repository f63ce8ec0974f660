#include <doctest.h>

#include "spg/dfi.hpp"
#include "spg/fpj.hpp"
#include "spg/sym_ops.hpp"
#include "spg/zielonka.hpp"
#include "support.hpp"

using namespace spg;
using namespace spgtest;

namespace {

const Algorithm kAll[] = {Algorithm::Dfi, Algorithm::DfiNs, Algorithm::Fpj, Algorithm::Zlk};

struct Run {
    explicit Run(const ParityGame& game) : g(game), mgr(required_vars(g.size()), 256), sg(encode(g, mgr)) {}
    ParityGame g;
    BddManager mgr;
    SymbolicGame sg;
};

enum : VertexId { a, b, c, d, e, f, g_, h, i };

} // namespace

TEST_CASE("golden game: odd wins everything")
{
    for (Algorithm alg : kAll) {
        CAPTURE(algorithm_name(alg));
        Run run(golden_game());
        const SolveResult r = solve(alg, run.sg);
        CHECK(r.W_odd == run.sg.V);
        CHECK(r.W_even.is_false());
        CHECK(r.has_strategy == computes_strategy(alg));
        if (!r.has_strategy) {
            CHECK(r.S_even.is_false());
            CHECK(r.S_odd.is_false());
            continue;
        }
        const ExplicitSolution sol = to_explicit(r, run.sg);
        CHECK(sol.strategy_even.moves.empty());
        const auto s_odd = decode_edges(r.S_odd, run.sg);
        CHECK(std::find(s_odd.begin(), s_odd.end(), Edge{b, f}) != s_odd.end());
        CHECK(std::find(s_odd.begin(), s_odd.end(), Edge{d, e}) != s_odd.end());
        CHECK(determinize(sol.strategy_odd, run.g).moves == std::vector<Edge>{{b, f}, {d, e}});
        CHECK(verify_solution(run.g, sol));
    }
}

TEST_CASE("golden game region helpers")
{
    Run run(golden_game());
    const SymbolicGame& sg = run.sg;
    const Bdd none = run.mgr.bdd_false();
    CHECK(even_region(none, sg) == sg.V0);
    DfiState last;
    DfiOptions opt;
    opt.observer = [&](const DfiEvent& ev) { last = ev.state; };
    dfi_solve(sg, opt);
    CHECK(odd_region(last.Z, sg) == sg.V);
    CHECK((even_region(last.Z, sg) | odd_region(last.Z, sg)) == sg.V);
}

TEST_CASE("self-loops")
{
    for (Algorithm alg : kAll) {
        CAPTURE(algorithm_name(alg));
        for (Player owner : {Player::Even, Player::Odd}) {
            for (int prio : {0, 1}) {
                Run run(self_loop(prio, owner));
                const SolveResult r = solve(alg, run.sg);
                const Player w = parity_owner(prio);
                CHECK(r.W_even == (w == Player::Even ? run.sg.V : run.mgr.bdd_false()));
                CHECK(r.W_odd == (w == Player::Odd ? run.sg.V : run.mgr.bdd_false()));
                if (!r.has_strategy) continue;
                const Bdd& own = owner == Player::Even ? r.S_even : r.S_odd;
                const Bdd& other = owner == Player::Even ? r.S_odd : r.S_even;
                CHECK(own == (owner == w ? run.sg.E : run.mgr.bdd_false()));
                CHECK(other.is_false());
            }
        }
    }
}

TEST_CASE("all solvers match the explicit oracle")
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ParityGame g = gen_random(small_spec(seed));
        const ExplicitSolution truth = explicit_solve(g);
        REQUIRE(verify_solution(g, truth));
        for (Algorithm alg : kAll) {
            CAPTURE(seed);
            CAPTURE(algorithm_name(alg));
            Run run(g);
            const SolveResult r = solve(alg, run.sg);
            CHECK((r.W_even | r.W_odd) == run.sg.V);
            CHECK((r.W_even & r.W_odd).is_false());
            const ExplicitSolution sol = to_explicit(r, run.sg);
            REQUIRE(sol.winner == truth.winner);
            if (r.has_strategy) {
                for (Player p : {Player::Even, Player::Odd}) {
                    const Bdd& S = p == Player::Even ? r.S_even : r.S_odd;
                    const Bdd& W = p == Player::Even ? r.W_even : r.W_odd;
                    CHECK(S.diff(run.sg.E & run.sg.owned_by(p) & W).is_false());
                    const Bdd sources = run.mgr.exists(S, run.sg.post_cube);
                    CHECK(sources == (run.sg.owned_by(p) & W));
                }
                const VerifyResult v = verify_solution(g, sol);
                CHECK_MESSAGE(v.accepted, v.reason);
            }
        }
    }
}

TEST_CASE("dfi with and without strategies")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Run run(gen_random(small_spec(seed)));
        const SolveResult with = dfi_solve(run.sg);
        DfiOptions no;
        no.compute_strategy = false;
        const SolveResult without = dfi_solve(run.sg, no);
        CHECK(with.W_even == without.W_even);
        CHECK(with.W_odd == without.W_odd);
        CHECK_FALSE(without.has_strategy);
        CHECK(without.S_even.is_false());
        CHECK(without.S_odd.is_false());
    }
}

TEST_CASE("dfi fold orders agree")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Run run(gen_random(small_spec(seed)));
        DfiOptions inc, single;
        single.fold = FoldOrder::SinglePass;
        const SolveResult x = dfi_solve(run.sg, inc), y = dfi_solve(run.sg, single);
        CHECK(x.W_even == y.W_even);
        CHECK(x.S_even == y.S_even);
        CHECK(x.S_odd == y.S_odd);
        CHECK(x.iterations == y.iterations);
    }
}

TEST_CASE("dfi state invariants")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Run run(gen_random(small_spec(seed)));
        const SymbolicGame& sg = run.sg;
        DfiOptions opt;
        std::size_t events = 0;
        opt.observer = [&](const DfiEvent& ev) {
            ++events;
            const DfiState& st = ev.state;
            const auto p = static_cast<std::size_t>(st.p);
            CHECK(st.Z.diff(sg.V).is_false());
            for (const Bdd& fq : st.F) CHECK(fq.diff(sg.V).is_false());
            CHECK(st.S.diff(sg.E).is_false());
            switch (ev.kind) {
            case DfiEvent::Distractions:
                CHECK(ev.z_before.diff(st.Z).is_false());
                CHECK(st.Z.diff(ev.z_before).diff(sg.Vp[p]).is_false());
                break;
            case DfiEvent::Reset:
                CHECK(st.Z.diff(ev.z_before).is_false());
                CHECK(ev.z_before.diff(st.Z).diff(sg.below[p]).is_false());
                break;
            case DfiEvent::Thaw:
                CHECK(st.F[p].is_false());
                CHECK(st.Z == ev.z_before);
                break;
            }
        };
        dfi_solve(sg, opt);
        CHECK(events > 0);
    }
}

TEST_CASE("fpj building blocks on the golden game")
{
    Run run(golden_game());
    const SymbolicGame& sg = run.sg;
    auto set = [&](std::initializer_list<VertexId> vs) { return vertex_set(sg, std::vector<VertexId>(vs)); };
    const Bdd none = run.mgr.bdd_false();

    CHECK(phi(sg.V, sg) == sg.V);
    CHECK(phi(none, sg).is_false());
    const auto p0 = decode_set(phi(sg.V0, sg), sg);
    CHECK(std::find(p0.begin(), p0.end(), c) != p0.end());

    const Bdd bf = edge_set(sg, std::vector<Edge>{{b, f}});
    CHECK(reaches(bf, none, sg).is_false());
    CHECK(decode_set(reaches(bf, set({f}), sg), sg) == std::vector<VertexId>{b, f});

    FpjState st = fpj_initial(sg);
    CHECK(st.Z == sg.V0);
    CHECK(st.J.is_false());
    CHECK(st.U == sg.V);
    const FpjStep step = fpj_next(st, sg);
    CHECK(step.p == 0);

    // d is Odd-owned and Odd-won: only edges leaving Z
    CHECK(decode_edges(fpj_strategy(set({c}), set({d}), sg), sg) == std::vector<Edge>{{d, e}});
    const SolveResult r = fpj_solve(sg);
    std::vector<Edge> from_d;
    for (const Edge& ed : decode_edges(r.S_odd, sg))
        if (ed.first == d) from_d.push_back(ed);
    CHECK(from_d == std::vector<Edge>{{d, e}});
    // c is Even-owned and losing: all its edges
    CHECK(decode_edges(fpj_strategy(none, set({c}), sg), sg) == std::vector<Edge>{{c, b}, {c, g_}});
    // a winning Even vertex keeps only edges into Z
    CHECK(decode_edges(fpj_strategy(set({b, c, g_}), set({c}), sg), sg).size() == 2);
    CHECK(decode_edges(fpj_strategy(set({b, c}), set({c}), sg), sg) == std::vector<Edge>{{c, b}});
}

TEST_CASE("fpj no-change branch on an even self-loop")
{
    Run run(self_loop(0, Player::Even));
    FpjState st = fpj_initial(run.sg);
    const Bdd z0 = st.Z;
    const FpjStep step = fpj_next(st, run.sg);
    CHECK_FALSE(step.changed);
    CHECK(step.changed_set.is_false());
    CHECK(st.Z == z0);
    CHECK(st.J == run.sg.E);
    CHECK(st.U.is_false());
}

TEST_CASE("fpj state invariants and reaches")
{
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Run run(gen_random(small_spec(seed)));
        const SymbolicGame& sg = run.sg;
        BddManager& mgr = run.mgr;
        FpjOptions opt;
        opt.observer = [&](const FpjState& st) {
            CHECK(st.J.diff(sg.E).is_false());
            CHECK(st.U == (sg.V & ~mgr.exists(st.J, sg.post_cube)));
            CHECK(st.Z.diff(sg.V).is_false());
        };
        const SolveResult r = fpj_solve(sg, opt);
        CHECK((r.W_even | r.W_odd) == sg.V);

        std::vector<Edge> js;
        for (const Edge& ed : run.g.edges())
            if (rng() % 2) js.push_back(ed);
        Mask x(sg.n);
        for (auto& bit : x) bit = rng() % 4 == 0;
        const Bdd J = edge_set(sg, js), X = encode_mask(x, sg);
        const Bdd R = reaches(J, X, sg);
        CHECK(X.diff(R).is_false());
        CHECK(reaches(J, R, sg) == R);
        // brute-force backward closure
        Mask br = x;
        for (bool grew = true; grew;) {
            grew = false;
            for (const Edge& ed : js)
                if (br[ed.second] && !br[ed.first]) br[ed.first] = 1, grew = true;
        }
        CHECK(decode_mask(R, sg) == br);
    }
}

TEST_CASE("fpj pruning")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Run run(gen_random(small_spec(seed)));
        const SymbolicGame& sg = run.sg;
        FpjState st = fpj_initial(sg);
        for (int guard = 0; !st.U.is_false() && guard < 100000; ++guard) {
            const FpjState before = st;
            const FpjStep step = fpj_next(st, sg);
            if (!step.changed) continue;
            const Bdd re_added = fpj_strategy(st.Z, step.changed_set, sg);
            const Bdd left = (st.J & step.pruned).diff(re_added);
            CHECK(left.is_false());
        }
        CHECK(st.U.is_false());
    }
}

TEST_CASE("zielonka totality check")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Run run(gen_random(small_spec(seed)));
        ZlkOptions opt;
        opt.check_totality = true;
        CHECK_NOTHROW(zlk_solve(run.sg, opt));
    }
}

TEST_CASE("iteration cap trips")
{
    Run run(golden_game());
    DfiOptions opt;
    opt.iteration_cap = 3;
    CHECK_THROWS_AS(dfi_solve(run.sg, opt), SolverError);
    FpjOptions fo;
    fo.iteration_cap = 2;
    CHECK_THROWS_AS(fpj_solve(run.sg, fo), SolverError);
    ZlkOptions zo;
    zo.depth_cap = 1;
    CHECK_THROWS_AS(zlk_solve(run.sg, zo), SolverError);
}

TEST_CASE("algorithm names")
{
    for (Algorithm alg : kAll) CHECK(parse_algorithm(algorithm_name(alg)) == alg);
    CHECK_FALSE(parse_algorithm("psi"));
    CHECK(computes_strategy(Algorithm::Dfi));
    CHECK(computes_strategy(Algorithm::Fpj));
    CHECK_FALSE(computes_strategy(Algorithm::DfiNs));
    CHECK_FALSE(computes_strategy(Algorithm::Zlk));
}
