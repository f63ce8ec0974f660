#include "spg/game.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace spg {

const char* player_name(Player p) { return p == Player::Even ? "Even" : "Odd"; }

GameError::GameError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
{
}

ParityGame::ParityGame(std::vector<VertexSpec> vertices)
{
    const std::size_t n = vertices.size();
    if (n == 0) throw GameError("game has no vertices");
    if (n > (std::size_t(1) << 31)) throw GameError("game too large");

    owner_.reserve(n);
    priority_.reserve(n);
    succ_.reserve(n);
    original_id_.reserve(n);
    name_.reserve(n);
    std::unordered_set<std::int64_t> originals;
    for (std::size_t v = 0; v < n; ++v) {
        VertexSpec& spec = vertices[v];
        const std::int64_t orig = spec.original_id < 0 ? static_cast<std::int64_t>(v) : spec.original_id;
        if (spec.priority < 0) {
            throw GameError("vertex " + std::to_string(orig) + " has negative priority");
        }
        if (spec.successors.empty()) {
            throw GameError("vertex " + std::to_string(orig) +
                            " has no successors; every vertex must have at least one successor");
        }
        if (!originals.insert(orig).second) {
            throw GameError("vertex id " + std::to_string(orig) + " defined twice");
        }
        std::vector<VertexId> succ;
        std::unordered_set<VertexId> seen;
        for (VertexId s : spec.successors) {
            if (s >= n) {
                throw GameError("vertex " + std::to_string(orig) + " has successor " +
                                std::to_string(s) + " out of range");
            }
            if (seen.insert(s).second) succ.push_back(s);
        }
        edge_count_ += succ.size();
        max_priority_ = std::max(max_priority_, spec.priority);
        owner_.push_back(spec.owner);
        priority_.push_back(spec.priority);
        succ_.push_back(std::move(succ));
        original_id_.push_back(orig);
        name_.push_back(std::move(spec.name));
    }
}

std::size_t ParityGame::priority_count() const
{
    std::set<int> ps(priority_.begin(), priority_.end());
    return ps.size();
}

bool ParityGame::has_edge(VertexId from, VertexId to) const
{
    if (from >= size()) return false;
    const auto& s = succ_[from];
    return std::find(s.begin(), s.end(), to) != s.end();
}

std::int64_t ParityGame::find_original(std::int64_t original) const
{
    // Dense files map identically; check that first.
    if (original >= 0 && static_cast<std::size_t>(original) < size() &&
        original_id_[static_cast<std::size_t>(original)] == original) {
        return original;
    }
    const auto it = std::find(original_id_.begin(), original_id_.end(), original);
    return it == original_id_.end() ? -1 : it - original_id_.begin();
}

std::vector<Edge> ParityGame::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId v = 0; v < size(); ++v) {
        for (VertexId s : succ_[v]) out.emplace_back(v, s);
    }
    return out;
}

void Strategy::normalize()
{
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
}

// ---------------------------------------------------------------------------
// Tokenizer shared by the game and solution readers.

namespace {

struct Token {
    enum Kind { Number, Word, String, Comma, Semicolon, End } kind;
    std::string text;
    int line;
};

class Lexer {
  public:
    explicit Lexer(std::istream& in) : in_(in) {}

    Token next()
    {
        int c = skip_space();
        if (c == EOF) return {Token::End, {}, line_};
        if (c == ',') {
            in_.get();
            return {Token::Comma, ",", line_};
        }
        if (c == ';') {
            in_.get();
            return {Token::Semicolon, ";", line_};
        }
        if (c == '"') {
            in_.get();
            const int start = line_;
            std::string s;
            while ((c = in_.get()) != EOF && c != '"') {
                if (c == '\n') ++line_;
                s.push_back(static_cast<char>(c));
            }
            if (c == EOF) throw GameError("unterminated string", start);
            return {Token::String, s, start};
        }
        std::string s;
        const bool numeric = std::isdigit(c) || c == '-' || c == '+';
        while ((c = in_.peek()) != EOF && !std::isspace(c) && c != ',' && c != ';' && c != '"') {
            s.push_back(static_cast<char>(in_.get()));
        }
        return {numeric ? Token::Number : Token::Word, s, line_};
    }

  private:
    int skip_space()
    {
        int c;
        while ((c = in_.peek()) != EOF) {
            if (c == '\n') ++line_;
            if (!std::isspace(c)) break;
            in_.get();
        }
        return c;
    }

    std::istream& in_;
    int line_ = 1;
};

std::int64_t to_int(const Token& t, const char* what)
{
    if (t.kind != Token::Number) {
        throw GameError(std::string("expected ") + what + ", got '" + t.text + "'", t.line);
    }
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(t.text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.text.size()) throw GameError(std::string("malformed ") + what + " '" + t.text + "'", t.line);
    return v;
}

Player to_player(const Token& t)
{
    const std::int64_t o = to_int(t, "owner");
    if (o != 0 && o != 1) throw GameError("owner must be 0 or 1, got " + t.text, t.line);
    return o == 0 ? Player::Even : Player::Odd;
}

void expect_semicolon(const Token& t)
{
    if (t.kind != Token::Semicolon) throw GameError("expected ';', got '" + t.text + "'", t.line);
}

// Reads "a,b,c" and returns the following token.
Token read_id_list(Lexer& lex, Token first, std::vector<std::int64_t>& out)
{
    out.push_back(to_int(first, "vertex id"));
    Token t = lex.next();
    while (t.kind == Token::Comma) {
        out.push_back(to_int(lex.next(), "vertex id"));
        t = lex.next();
    }
    return t;
}

} // namespace

ParityGame parse_pgsolver(std::istream& in)
{
    struct Raw {
        std::int64_t id;
        int priority;
        Player owner;
        std::vector<std::int64_t> succ;
        std::string name;
        int line;
    };
    std::vector<Raw> raw;
    Lexer lex(in);
    bool seen_vertex = false;

    for (Token t = lex.next(); t.kind != Token::End; t = lex.next()) {
        if (t.kind == Token::Word) {
            if (t.text == "parity") {
                if (seen_vertex) throw GameError("header after vertex lines", t.line);
                to_int(lex.next(), "maximum id");
                expect_semicolon(lex.next());
                continue;
            }
            if (t.text == "start") {
                to_int(lex.next(), "start vertex");
                expect_semicolon(lex.next());
                continue;
            }
            throw GameError("unexpected '" + t.text + "'", t.line);
        }
        if (t.kind == Token::Semicolon) continue;

        Raw r;
        r.line = t.line;
        r.id = to_int(t, "vertex id");
        if (r.id < 0) throw GameError("negative vertex id", t.line);
        const std::int64_t prio = to_int(lex.next(), "priority");
        if (prio < 0) throw GameError("negative priority", t.line);
        if (prio > (1 << 30)) throw GameError("priority too large", t.line);
        r.priority = static_cast<int>(prio);
        r.owner = to_player(lex.next());
        Token s = lex.next();
        if (s.kind == Token::Semicolon || s.kind == Token::End) {
            throw GameError("vertex " + std::to_string(r.id) +
                                " has no successors; every vertex must have at least one successor",
                            t.line);
        }
        s = read_id_list(lex, s, r.succ);
        if (s.kind == Token::String) {
            r.name = s.text;
            s = lex.next();
        }
        expect_semicolon(s);
        raw.push_back(std::move(r));
        seen_vertex = true;
    }
    if (raw.empty()) throw GameError("game has no vertices");

    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.id < b.id; });
    std::map<std::int64_t, VertexId> dense;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!dense.emplace(raw[i].id, static_cast<VertexId>(i)).second) {
            throw GameError("vertex id " + std::to_string(raw[i].id) + " defined twice", raw[i].line);
        }
    }
    std::vector<ParityGame::VertexSpec> specs;
    specs.reserve(raw.size());
    for (Raw& r : raw) {
        ParityGame::VertexSpec spec;
        spec.owner = r.owner;
        spec.priority = r.priority;
        spec.original_id = r.id;
        spec.name = std::move(r.name);
        for (std::int64_t s : r.succ) {
            auto it = dense.find(s);
            if (it == dense.end()) {
                throw GameError("successor " + std::to_string(s) + " of vertex " + std::to_string(r.id) +
                                    " is not a vertex",
                                r.line);
            }
            spec.successors.push_back(it->second);
        }
        specs.push_back(std::move(spec));
    }
    return ParityGame(std::move(specs));
}

ParityGame parse_pgsolver(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_pgsolver(in);
}

void write_pgsolver(std::ostream& out, const ParityGame& g)
{
    std::int64_t max_id = 0;
    for (VertexId v = 0; v < g.size(); ++v) max_id = std::max(max_id, g.original_id(v));
    out << "parity " << max_id << ";\n";
    for (VertexId v = 0; v < g.size(); ++v) {
        out << g.original_id(v) << ' ' << g.priority(v) << ' ' << player_index(g.owner(v)) << ' ';
        const auto& succ = g.successors(v);
        for (std::size_t i = 0; i < succ.size(); ++i) {
            if (i) out << ',';
            out << g.original_id(succ[i]);
        }
        if (!g.name(v).empty()) out << " \"" << g.name(v) << '"';
        out << ";\n";
    }
}

std::string to_pgsolver(const ParityGame& g)
{
    std::ostringstream out;
    write_pgsolver(out, g);
    return out.str();
}

// ---------------------------------------------------------------------------
// Solutions

void write_solution(std::ostream& out, const ParityGame& g, const ExplicitSolution& s, bool determinize)
{
    if (s.winner.size() != g.size()) throw GameError("solution does not match game size");
    std::vector<std::vector<VertexId>> targets(g.size());
    for (const Strategy* st : {&s.strategy_even, &s.strategy_odd}) {
        for (const auto& [from, to] : st->moves) {
            if (from >= g.size() || to >= g.size()) throw GameError("strategy move out of range");
            if (s.winner[from] == st->player && g.owner(from) == st->player) targets[from].push_back(to);
        }
    }
    std::int64_t max_id = 0;
    for (VertexId v = 0; v < g.size(); ++v) max_id = std::max(max_id, g.original_id(v));
    out << "paritysol " << max_id << ";\n";
    for (VertexId v = 0; v < g.size(); ++v) {
        auto& t = targets[v];
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        if (determinize && t.size() > 1) t.resize(1);
        out << g.original_id(v) << ' ' << player_index(s.winner[v]);
        for (std::size_t i = 0; i < t.size(); ++i) {
            out << (i ? ',' : ' ') << g.original_id(t[i]);
        }
        out << ";\n";
    }
}

std::string to_solution_text(const ParityGame& g, const ExplicitSolution& s, bool determinize)
{
    std::ostringstream out;
    write_solution(out, g, s, determinize);
    return out.str();
}

ExplicitSolution parse_solution(std::istream& in, const ParityGame& g)
{
    ExplicitSolution sol;
    sol.winner.assign(g.size(), Player::Even);
    std::vector<bool> seen(g.size(), false);
    Lexer lex(in);

    for (Token t = lex.next(); t.kind != Token::End; t = lex.next()) {
        if (t.kind == Token::Word) {
            if (t.text == "paritysol" || t.text == "parity") {
                to_int(lex.next(), "maximum id");
                expect_semicolon(lex.next());
                continue;
            }
            throw GameError("unexpected '" + t.text + "'", t.line);
        }
        if (t.kind == Token::Semicolon) continue;

        const std::int64_t orig = to_int(t, "vertex id");
        const std::int64_t v = g.find_original(orig);
        if (v < 0) throw GameError("vertex " + std::to_string(orig) + " is not in the game", t.line);
        const auto vid = static_cast<VertexId>(v);
        if (seen[vid]) throw GameError("vertex " + std::to_string(orig) + " listed twice", t.line);
        seen[vid] = true;
        const Player w = to_player(lex.next());
        sol.winner[vid] = w;

        Token s = lex.next();
        if (s.kind == Token::Number) {
            std::vector<std::int64_t> ids;
            s = read_id_list(lex, s, ids);
            if (g.owner(vid) != w) {
                throw GameError("vertex " + std::to_string(orig) + " has a strategy but is owned by the loser",
                                t.line);
            }
            for (std::int64_t target : ids) {
                const std::int64_t tv = g.find_original(target);
                if (tv < 0) throw GameError("strategy target " + std::to_string(target) + " is not in the game", t.line);
                sol.strategy(w).moves.emplace_back(vid, static_cast<VertexId>(tv));
            }
        }
        expect_semicolon(s);
    }
    for (VertexId v = 0; v < g.size(); ++v) {
        if (!seen[v]) throw GameError("solution has no entry for vertex " + std::to_string(g.original_id(v)));
    }
    sol.strategy_even.normalize();
    sol.strategy_odd.normalize();
    return sol;
}

ExplicitSolution parse_solution(std::string_view text, const ParityGame& g)
{
    std::istringstream in{std::string(text)};
    return parse_solution(in, g);
}

Strategy determinize(const Strategy& s, const ParityGame& g)
{
    Strategy out{s.player, {}};
    std::vector<Edge> moves = s.moves;
    std::sort(moves.begin(), moves.end());
    for (const auto& [from, to] : moves) {
        if (!g.has_edge(from, to)) {
            throw GameError("strategy move " + std::to_string(from) + "->" + std::to_string(to) +
                            " is not an edge");
        }
        if (g.owner(from) != s.player) {
            throw GameError("strategy move from vertex " + std::to_string(from) + " not owned by " +
                            player_name(s.player));
        }
        if (out.moves.empty() || out.moves.back().first != from) out.moves.emplace_back(from, to);
    }
    return out;
}

} // namespace spg
