// Command-line front end: solve, verify, bench, gen.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spg/bench.hpp"
#include "spg/game.hpp"
#include "spg/oracle.hpp"
#include "spg/solver.hpp"
#include "spg/symbolic.hpp"

namespace fs = std::filesystem;
using namespace spg;

namespace {

enum ExitCode : int {
    kOk = 0,
    kRejected = 1,
    kUsage = 2,
    kIoError = 3,
    kInputError = 4,
};

struct IoFailure {
    std::string what;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure{"cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names)
{
    std::vector<Algorithm> out;
    for (const auto& n : names) out.push_back(*parse_algorithm(n));
    return out;
}

const std::vector<std::string> kAlgorithmNames{"dfi", "dfi-ns", "fpj", "zlk"};

// One move per vertex. Picks a winning positional strategy out of the
// (possibly multi-successor) symbolic one; the smallest-target rule alone can
// pick a move that keeps the play in a losing cycle.
void make_positional(const ParityGame& g, ExplicitSolution& sol)
{
    for (Player p : {Player::Even, Player::Odd}) {
        Strategy& s = sol.strategy(p);
        const std::vector<VertexId> region = region_of(sol, p);
        if (auto pos = extract_positional(g, p, region, s.moves)) {
            s = std::move(*pos);
        } else {
            s = determinize(s, g);
        }
    }
}

int cmd_solve(const std::string& input, const std::string& alg_name, bool emit_strategy, bool determinize_moves,
              const std::string& out_path, bool interleaved, bool stats)
{
    const Algorithm alg = *parse_algorithm(alg_name);
    if (emit_strategy && !computes_strategy(alg)) {
        std::cerr << "error: algorithm " << alg_name << " does not compute strategies; drop --emit-strategy\n";
        return kUsage;
    }
    const ParityGame g = parse_pgsolver(read_file(input));

    BddManager mgr(required_vars(g.size()));
    const SymbolicGame sg = encode(g, mgr, interleaved ? VarOrder::Interleaved : VarOrder::PreBeforePost);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = solve(alg, sg);
    const auto stop = std::chrono::steady_clock::now();

    ExplicitSolution sol = to_explicit(result, sg);
    if (!emit_strategy) {
        sol.strategy_even.moves.clear();
        sol.strategy_odd.moves.clear();
    } else if (determinize_moves) {
        make_positional(g, sol);
    }

    if (stats) {
        std::cerr << "algorithm " << alg_name << " vertices " << g.size() << " edges " << g.edge_count()
                  << " time_s " << std::chrono::duration<double>(stop - start).count() << " peak_live_nodes "
                  << mgr.peak_live_nodes() << " iterations " << result.iterations << '\n';
    }

    if (out_path.empty() || out_path == "-") {
        write_solution(std::cout, g, sol, determinize_moves);
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoFailure{"cannot write " + out_path};
        write_solution(out, g, sol, determinize_moves);
    }
    return kOk;
}

int cmd_verify(const std::string& game_path, const std::string& solution_path)
{
    const std::string game_text = read_file(game_path);
    const std::string sol_text = read_file(solution_path);
    const ParityGame g = parse_pgsolver(game_text);
    const ExplicitSolution sol = parse_solution(sol_text, g);

    if (sol.strategy_even.moves.empty() && sol.strategy_odd.moves.empty()) {
        // Regions only: compare against the explicit solver.
        const ExplicitSolution truth = explicit_solve(g);
        for (VertexId v = 0; v < g.size(); ++v) {
            if (truth.winner[v] != sol.winner[v]) {
                std::cout << "REJECT: vertex " << g.original_id(v) << " is won by " << player_name(truth.winner[v])
                          << ", solution says " << player_name(sol.winner[v]) << '\n';
                return kRejected;
            }
        }
        std::cout << "OK (regions checked against the explicit solver; no strategies given)\n";
        return kOk;
    }

    const VerifyResult r = verify_solution(g, sol);
    if (!r) {
        std::cout << "REJECT: " << r.reason;
        if (!r.cycle.empty()) {
            std::cout << "; cycle";
            for (VertexId v : r.cycle) std::cout << ' ' << g.original_id(v);
        }
        std::cout << '\n';
        return kRejected;
    }
    std::cout << "OK\n";
    return kOk;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& algs, int repeats, const std::string& csv,
              int jobs, bool interleaved, bool no_verify)
{
    if (!fs::is_directory(dir)) throw IoFailure{"not a directory: " + dir};
    BenchOptions opt;
    opt.algorithms = parse_algorithms(algs);
    opt.repeats = repeats;
    opt.jobs = jobs;
    opt.order = interleaved ? VarOrder::Interleaved : VarOrder::PreBeforePost;
    opt.verify_strategies = !no_verify;

    const auto games = load_bench_dir(dir);
    const auto records = run_bench(games, opt);
    std::string set = fs::path(dir).lexically_normal().filename().string();
    if (set.empty()) set = fs::path(dir).lexically_normal().parent_path().filename().string();
    const auto summary = summarize(records, set, opt);

    std::size_t failures = 0;
    for (const auto& r : records) failures += r.error.empty() ? 0 : 1;
    if (failures) std::cerr << failures << " benchmark cell(s) failed; see the error column\n";

    if (csv.empty() || csv == "-") {
        write_bench_csv(std::cout, records, summary);
    } else {
        std::ofstream out(csv);
        if (!out) throw IoFailure{"cannot write " + csv};
        write_bench_csv(out, records, summary);
    }
    return kOk;
}

int cmd_gen(const GameSeedSpec& base, int count, const std::string& out_dir)
{
    base.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) throw IoFailure{"cannot create directory " + out_dir};
    for (int i = 0; i < count; ++i) {
        GameSeedSpec spec = base;
        spec.seed = base.seed + static_cast<std::uint64_t>(i);
        const ParityGame g = gen_random(spec);
        std::ostringstream name;
        name << "random_n" << spec.n << "_d" << spec.d << "_s" << spec.seed << ".pg";
        const fs::path path = fs::path(out_dir) / name.str();
        std::ofstream out(path);
        if (!out) throw IoFailure{"cannot write " + path.string()};
        write_pgsolver(out, g);
        if (!out.flush()) throw IoFailure{"cannot write " + path.string()};
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symbolic parity game solver"};
    app.require_subcommand(1);

    bool interleaved = false;

    auto* solve_cmd = app.add_subcommand("solve", "Solve a PGSolver game and write a solution");
    std::string solve_input, solve_alg = "dfi", solve_out;
    bool emit_strategy = false, determinize_flag = false, stats = false;
    solve_cmd->add_option("game", solve_input, "PGSolver game file")->required();
    solve_cmd->add_option("--alg", solve_alg, "dfi | dfi-ns | fpj | zlk")
        ->check(CLI::IsMember(kAlgorithmNames));
    solve_cmd->add_flag("--emit-strategy", emit_strategy, "Include strategy moves (dfi, fpj)");
    solve_cmd->add_flag("--determinize", determinize_flag, "One winning move per vertex");
    solve_cmd->add_option("--out", solve_out, "Solution file (default: stdout)");
    solve_cmd->add_flag("--interleaved-vars", interleaved, "Interleave pre/post BDD variables");
    solve_cmd->add_flag("--stats", stats, "Print time and peak live nodes to stderr");

    auto* verify_cmd = app.add_subcommand("verify", "Check a solution against its game");
    std::string verify_game, verify_sol;
    verify_cmd->add_option("game", verify_game, "PGSolver game file")->required();
    verify_cmd->add_option("solution", verify_sol, "Solution file")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Benchmark solvers over a directory of .pg files");
    std::string bench_dir, bench_csv;
    std::vector<std::string> bench_algs = kAlgorithmNames;
    int repeats = 5, jobs = 1;
    bool no_verify = false;
    bench_cmd->add_option("dir", bench_dir, "Directory with .pg files")->required();
    bench_cmd->add_option("--alg", bench_algs, "Algorithms (repeatable; default all)")
        ->check(CLI::IsMember(kAlgorithmNames));
    bench_cmd->add_option("--repeats", repeats, "Runs per game and algorithm")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", bench_csv, "CSV output (default: stdout)");
    bench_cmd->add_option("--jobs", jobs, "Cells run in parallel")->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--interleaved-vars", interleaved, "Interleave pre/post BDD variables");
    bench_cmd->add_flag("--no-verify", no_verify, "Skip strategy verification");

    auto* gen_cmd = app.add_subcommand("gen", "Generate random games");
    GameSeedSpec spec;
    int count = 1;
    std::string gen_out = ".";
    gen_cmd->add_option("--n", spec.n, "Vertices")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--d", spec.d, "Maximum priority")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--min-out", spec.min_out, "Minimum out-degree")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-out", spec.max_out, "Maximum out-degree")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", spec.seed, "Base seed; game i uses seed + i");
    gen_cmd->add_option("--count", count, "Number of games")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--out", gen_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*solve_cmd) {
            return cmd_solve(solve_input, solve_alg, emit_strategy, determinize_flag, solve_out, interleaved, stats);
        }
        if (*verify_cmd) return cmd_verify(verify_game, verify_sol);
        if (*bench_cmd) {
            return cmd_bench(bench_dir, bench_algs, repeats, bench_csv, jobs, interleaved, no_verify);
        }
        if (*gen_cmd) return cmd_gen(spec, count, gen_out);
    } catch (const IoFailure& e) {
        std::cerr << "I/O error: " << e.what << '\n';
        return kIoError;
    } catch (const GameError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRejected;
    }
    return kUsage;
}
