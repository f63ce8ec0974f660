#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spg/game.hpp"
#include "spg/solver.hpp"

namespace spg {

struct BenchRecord {
    std::string game;
    Algorithm algorithm = Algorithm::Dfi;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t priorities = 0;
    int run = 0;
    double seconds = 0.0;
    std::size_t peak_live_nodes = 0;
    std::optional<bool> regions_agree;
    std::optional<bool> strategy_verified;
    std::string error; // non-empty when the cell failed

    /// Winner per vertex (1 = Odd), kept for the cross-algorithm comparison.
    std::vector<char> odd_wins;
    /// Peak live nodes sampled after encoding and after solving.
    std::vector<std::size_t> peak_samples;
};

struct BenchGame {
    std::string id;
    std::optional<ParityGame> game; // empty when loading failed
    std::string error;
};

struct BenchOptions {
    std::vector<Algorithm> algorithms{Algorithm::Dfi, Algorithm::DfiNs, Algorithm::Fpj, Algorithm::Zlk};
    int repeats = 5;
    int jobs = 1; // > 1 runs independent cells in parallel
    VarOrder order = VarOrder::PreBeforePost;
    bool verify_strategies = true;
    std::size_t verify_limit = 4096; // skip strategy verification above this many vertices
};

struct BenchSummary {
    std::string set;
    Algorithm algorithm = Algorithm::Dfi;
    std::size_t games = 0;
    double cumulative_seconds = 0.0;    // sum over games of the mean time per game
    double mean_seconds = 0.0;          // cumulative / games
    std::optional<double> rsd_percent;  // mean over games of stddev/mean, needs >= 2 runs
    double avg_peak_live_nodes = 0.0;
};

/// *.pg files of a directory (sorted by name), parsed. Parse failures are kept
/// as entries with an error.
std::vector<BenchGame> load_bench_dir(const std::filesystem::path& dir);

/// One record per (game, algorithm, run), in input order regardless of jobs.
std::vector<BenchRecord> run_bench(const std::vector<BenchGame>& games, const BenchOptions& options);

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records, const std::string& set,
                                    const BenchOptions& options);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records,
                     const std::vector<BenchSummary>& summary);

} // namespace spg
