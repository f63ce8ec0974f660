#include "spg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spg/oracle.hpp"
#include "spg/symbolic.hpp"

namespace spg {

std::vector<BenchGame> load_bench_dir(const std::filesystem::path& dir)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pg") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<BenchGame> out;
    for (const auto& f : files) {
        BenchGame bg;
        bg.id = f.filename().string();
        std::ifstream in(f);
        if (!in) {
            bg.error = "cannot open " + f.string();
        } else {
            try {
                bg.game = parse_pgsolver(in);
            } catch (const GameError& e) {
                bg.error = e.what();
            }
        }
        out.push_back(std::move(bg));
    }
    return out;
}

namespace {

void run_cell(const ParityGame& g, Algorithm alg, const BenchOptions& options, BenchRecord& rec)
{
    BddManager mgr(required_vars(g.size()));
    const SymbolicGame sg = encode(g, mgr, options.order);
    rec.peak_samples.push_back(mgr.peak_live_nodes());

    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = solve(alg, sg);
    const auto stop = std::chrono::steady_clock::now();
    rec.seconds = std::chrono::duration<double>(stop - start).count();
    rec.peak_samples.push_back(mgr.peak_live_nodes());

    const ExplicitSolution sol = to_explicit(result, sg);
    rec.odd_wins.resize(g.size());
    for (VertexId v = 0; v < g.size(); ++v) rec.odd_wins[v] = sol.winner[v] == Player::Odd;
    if (result.has_strategy && options.verify_strategies && g.size() <= options.verify_limit) {
        rec.strategy_verified = static_cast<bool>(verify_solution(g, sol));
    }
    rec.peak_samples.push_back(mgr.peak_live_nodes());
    rec.peak_live_nodes = rec.peak_samples[1];
}

} // namespace

std::vector<BenchRecord> run_bench(const std::vector<BenchGame>& games, const BenchOptions& options)
{
    if (options.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    std::vector<BenchRecord> records;
    for (const BenchGame& bg : games) {
        for (Algorithm alg : options.algorithms) {
            for (int run = 0; run < options.repeats; ++run) {
                BenchRecord r;
                r.game = bg.id;
                r.algorithm = alg;
                r.run = run;
                if (bg.game) {
                    r.vertices = bg.game->size();
                    r.edges = bg.game->edge_count();
                    r.priorities = bg.game->priority_count();
                } else {
                    r.error = bg.error.empty() ? "game not loaded" : bg.error;
                }
                records.push_back(std::move(r));
            }
        }
    }

    std::vector<const ParityGame*> game_of(records.size(), nullptr);
    {
        std::size_t i = 0;
        for (const BenchGame& bg : games) {
            const std::size_t cells = options.algorithms.size() * static_cast<std::size_t>(options.repeats);
            for (std::size_t c = 0; c < cells; ++c, ++i) game_of[i] = bg.game ? &*bg.game : nullptr;
        }
    }

    const auto cell = [&](std::size_t i) {
        BenchRecord& r = records[i];
        if (!game_of[i]) return;
        try {
            run_cell(*game_of[i], r.algorithm, options, r);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    };

    const auto count = static_cast<std::int64_t>(records.size());
#ifdef _OPENMP
    if (options.jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(options.jobs)
        for (std::int64_t i = 0; i < count; ++i) cell(static_cast<std::size_t>(i));
    } else
#endif
    {
        for (std::int64_t i = 0; i < count; ++i) cell(static_cast<std::size_t>(i));
    }

    // Cross-algorithm region agreement per game.
    std::map<std::string, std::vector<std::size_t>> by_game;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].error.empty()) by_game[records[i].game].push_back(i);
    }
    for (const auto& [id, idx] : by_game) {
        std::vector<Algorithm> algs;
        for (std::size_t i : idx) algs.push_back(records[i].algorithm);
        std::sort(algs.begin(), algs.end());
        if (std::unique(algs.begin(), algs.end()) - algs.begin() < 2) continue;
        for (std::size_t i : idx) {
            bool agree = true;
            for (std::size_t j : idx) agree = agree && records[i].odd_wins == records[j].odd_wins;
            records[i].regions_agree = agree;
        }
    }
    return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records, const std::string& set,
                                    const BenchOptions& options)
{
    std::vector<BenchSummary> out;
    for (Algorithm alg : options.algorithms) {
        std::map<std::string, std::vector<const BenchRecord*>> runs;
        std::vector<std::string> order;
        for (const BenchRecord& r : records) {
            if (r.algorithm != alg || !r.error.empty()) continue;
            if (!runs.count(r.game)) order.push_back(r.game);
            runs[r.game].push_back(&r);
        }
        BenchSummary s;
        s.set = set;
        s.algorithm = alg;
        s.games = order.size();
        if (order.empty()) {
            out.push_back(s);
            continue;
        }
        double rsd_sum = 0.0;
        bool rsd_defined = true;
        double peak_sum = 0.0;
        std::size_t peak_count = 0;
        for (const std::string& id : order) {
            const auto& rs = runs[id];
            double sum = 0.0;
            for (const BenchRecord* r : rs) {
                sum += r->seconds;
                peak_sum += static_cast<double>(r->peak_live_nodes);
                ++peak_count;
            }
            const double mean = sum / static_cast<double>(rs.size());
            s.cumulative_seconds += mean;
            if (rs.size() < 2) {
                rsd_defined = false;
                continue;
            }
            double var = 0.0;
            for (const BenchRecord* r : rs) var += (r->seconds - mean) * (r->seconds - mean);
            var /= static_cast<double>(rs.size() - 1);
            rsd_sum += mean > 0.0 ? 100.0 * std::sqrt(var) / mean : 0.0;
        }
        s.mean_seconds = s.cumulative_seconds / static_cast<double>(order.size());
        if (rsd_defined) s.rsd_percent = rsd_sum / static_cast<double>(order.size());
        s.avg_peak_live_nodes = peak_sum / static_cast<double>(peak_count);
        out.push_back(s);
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

const char* flag(const std::optional<bool>& f)
{
    if (!f) return "";
    return *f ? "1" : "0";
}

} // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records,
                     const std::vector<BenchSummary>& summary)
{
    out << "# spg-bench v1; time_s: solve only, excludes parse/encode/decode; "
           "peak_live_nodes: max over the run of allocated minus dead BDD nodes, fresh manager per run\n";
    out << "game,algorithm,vertices,edges,priorities,run,time_s,peak_live_nodes,regions_agree,"
           "strategy_verified,error\n";
    for (const BenchRecord& r : records) {
        std::ostringstream t;
        t << std::setprecision(6) << std::scientific << r.seconds;
        out << csv_field(r.game) << ',' << algorithm_name(r.algorithm) << ',' << r.vertices << ','
            << r.edges << ',' << r.priorities << ',' << r.run << ','
            << (r.error.empty() ? t.str() : "") << ',' << (r.error.empty() ? std::to_string(r.peak_live_nodes) : "")
            << ',' << flag(r.regions_agree) << ',' << flag(r.strategy_verified) << ',' << csv_field(r.error)
            << '\n';
    }
    if (records.empty()) return;
    out << "# summary\n";
    out << "set,algorithm,games,cumulative_time_s,mean_time_s,rsd_percent,avg_peak_live_nodes\n";
    for (const BenchSummary& s : summary) {
        out << csv_field(s.set) << ',' << algorithm_name(s.algorithm) << ',' << s.games << ','
            << std::setprecision(6) << std::scientific << s.cumulative_seconds << ',' << s.mean_seconds << ',';
        if (s.rsd_percent) out << std::fixed << std::setprecision(2) << *s.rsd_percent;
        out << ',' << std::fixed << std::setprecision(1) << s.avg_peak_live_nodes << '\n';
        out << std::defaultfloat;
    }
}

} // namespace spg
