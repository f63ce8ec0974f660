#include <doctest.h>

#include <sstream>

#include "support.hpp"

using namespace spg;
using spgtest::golden_game;

TEST_CASE("golden game parses")
{
    const ParityGame g = golden_game();
    CHECK(g.size() == 9);
    CHECK(g.edge_count() == 15);
    CHECK(g.max_priority() == 8);
    CHECK(g.owner(1) == Player::Odd);
    CHECK(g.owner(3) == Player::Odd);
    CHECK(g.priority(2) == 7);
    CHECK(g.successors(1) == std::vector<VertexId>{5, 0});
    CHECK(g.name(0) == "a");
}

TEST_CASE("minimal game")
{
    const ParityGame g = parse_pgsolver("parity 0;\n0 0 0 0;\n");
    CHECK(g.size() == 1);
    CHECK(g.owner(0) == Player::Even);
    CHECK(g.priority(0) == 0);
    CHECK(g.successors(0) == std::vector<VertexId>{0});
    CHECK(parse_pgsolver(to_pgsolver(g)) == g);
}

TEST_CASE("validation errors")
{
    CHECK_THROWS_WITH_AS(parse_pgsolver("0 0 0 ;"), doctest::Contains("at least one successor"), GameError);
    CHECK_THROWS_AS(parse_pgsolver("parity 1;\n0 0 0 1;\n"), GameError);   // out of range
    CHECK_THROWS_AS(parse_pgsolver("parity 1;\n0 -1 0 0;\n"), GameError);  // negative priority
    CHECK_THROWS_AS(parse_pgsolver("0 0 2 0;"), GameError);                // owner
    CHECK_THROWS_AS(parse_pgsolver("0 0 0 0;\n0 1 0 0;"), GameError);      // duplicate id
    CHECK_THROWS_AS(parse_pgsolver(""), GameError);
    CHECK_THROWS_AS(parse_pgsolver("0 0 0 0"), GameError); // missing ';'
    try {
        parse_pgsolver("parity 1;\n0 0 0 0;\n1 1 1 ;\n");
        FAIL("no error");
    } catch (const GameError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("sparse ids and duplicate edges")
{
    const ParityGame g = parse_pgsolver("10 1 0 20,20,10;\n20 2 1 10;\n");
    CHECK(g.size() == 2);
    CHECK(g.original_id(0) == 10);
    CHECK(g.original_id(1) == 20);
    CHECK(g.successors(0) == std::vector<VertexId>{1, 0});
    CHECK(g.edge_count() == 3);
    CHECK(g.find_original(20) == 1);
    CHECK(g.find_original(5) < 0);
}

TEST_CASE("start line is accepted")
{
    const ParityGame g = parse_pgsolver("parity 1;\nstart 0;\n0 0 0 1;\n1 1 1 0;\n");
    CHECK(g.size() == 2);
}

TEST_CASE("round trip on random games")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GameSeedSpec spec{1 + seed % 40, static_cast<int>(seed % 9), 1, 1 + seed % 5, seed};
        const ParityGame g = gen_random(spec);
        CHECK(parse_pgsolver(to_pgsolver(g)) == g);
    }
    const ParityGame g = golden_game();
    CHECK(parse_pgsolver(to_pgsolver(g)) == g);
}

TEST_CASE("solution writing and reading")
{
    const ParityGame g = golden_game();
    ExplicitSolution s;
    s.winner.assign(9, Player::Odd);
    s.strategy_odd.moves = {{1, 5}, {3, 4}};
    const std::string text = to_solution_text(g, s);
    CHECK(text.find("1 1 5;") != std::string::npos);
    CHECK(text.find("3 1 4;") != std::string::npos);
    CHECK(text.find("0 1;") != std::string::npos);
    CHECK(parse_solution(text, g) == s);

    // multi-successor output lists all targets
    ExplicitSolution multi = s;
    multi.strategy_odd.moves = {{1, 0}, {1, 5}, {3, 4}};
    const std::string mtext = to_solution_text(g, multi, false);
    CHECK(mtext.find("1 1 0,5;") != std::string::npos);
    CHECK(parse_solution(mtext, g) == multi);
    CHECK(to_solution_text(g, multi, true).find("1 1 0;") != std::string::npos);

    CHECK_THROWS_AS(parse_solution("paritysol 8;\n0 1;\n", g), GameError);
}

TEST_CASE("determinize")
{
    const ParityGame g = golden_game();
    Strategy s{Player::Odd, {{1, 5}}};
    CHECK(determinize(s, g).moves == s.moves);
    const ParityGame h = parse_pgsolver("0 0 0 2,5,0;\n2 0 0 2;\n5 0 0 5;\n");
    Strategy multi{Player::Even, {{0, 2}, {0, 1}}};
    multi.normalize();
    CHECK(determinize(multi, h).moves == std::vector<Edge>{{0, 1}});
    CHECK_THROWS_AS(determinize(Strategy{Player::Odd, {{1, 2}}}, g), GameError);  // not an edge
    CHECK_THROWS_AS(determinize(Strategy{Player::Even, {{1, 5}}}, g), GameError); // wrong owner
}
