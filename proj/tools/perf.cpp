// Serial vs parallel bench cells, and DFI fold orders, on generated games.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "spg/bench.hpp"
#include "spg/dfi.hpp"
#include "spg/oracle.hpp"
#include "spg/symbolic.hpp"

using namespace spg;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_non_timing(const std::vector<BenchRecord>& a, const std::vector<BenchRecord>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.game != y.game || x.algorithm != y.algorithm || x.run != y.run || x.peak_live_nodes != y.peak_live_nodes ||
            x.regions_agree != y.regions_agree || x.strategy_verified != y.strategy_verified || x.error != y.error) {
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spg performance comparison"};
    GameSeedSpec spec;
    spec.n = 256;
    spec.d = 8;
    spec.min_out = 1;
    spec.max_out = 4;
    int games = 8, jobs = 4, repeats = 1;
    app.add_option("--n", spec.n)->check(CLI::PositiveNumber);
    app.add_option("--d", spec.d)->check(CLI::NonNegativeNumber);
    app.add_option("--seed", spec.seed);
    app.add_option("--games", games)->check(CLI::PositiveNumber);
    app.add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::vector<BenchGame> set;
    for (int i = 0; i < games; ++i) {
        GameSeedSpec s = spec;
        s.seed = spec.seed + static_cast<std::uint64_t>(i);
        set.push_back({"g" + std::to_string(i), gen_random(s), {}});
    }

    BenchOptions opt;
    opt.repeats = repeats;
    opt.verify_strategies = false;

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_bench(set, opt);
    const double t_serial = seconds_since(t0);

    opt.jobs = jobs;
    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_bench(set, opt);
    const double t_parallel = seconds_since(t0);

    std::cout << "bench cells: " << serial.size() << "\n";
    std::cout << "serial   " << t_serial << " s\n";
    std::cout << "jobs=" << jobs << "   " << t_parallel << " s\n";
    std::cout << "non-timing columns identical: " << (same_non_timing(serial, parallel) ? "yes" : "no") << "\n";

    double t_inc = 0.0, t_single = 0.0;
    bool agree = true;
    for (const auto& bg : set) {
        std::vector<VertexId> first;
        for (FoldOrder fold : {FoldOrder::Incremental, FoldOrder::SinglePass}) {
            BddManager mgr(required_vars(bg.game->size()));
            const SymbolicGame sg = encode(*bg.game, mgr);
            DfiOptions o;
            o.fold = fold;
            t0 = std::chrono::steady_clock::now();
            const SolveResult r = dfi_solve(sg, o);
            (fold == FoldOrder::Incremental ? t_inc : t_single) += seconds_since(t0);
            const auto w = decode_set(r.W_odd, sg);
            if (fold == FoldOrder::Incremental) first = w;
            else agree = agree && first == w;
        }
    }
    std::cout << "dfi fold incremental " << t_inc << " s, single-pass " << t_single << " s, regions agree: "
              << (agree ? "yes" : "no") << "\n";
    return 0;
}
