#include "spg/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace spg {

namespace {

constexpr std::size_t kMinGcLimit = 1u << 16;
constexpr std::size_t kMaxCacheEntries = 1u << 23;

inline std::uint64_t mix(std::uint64_t h)
{
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

std::size_t next_pow2(std::size_t v)
{
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

} // namespace

// ---------------------------------------------------------------------------
// Bdd handle

Bdd::Bdd(BddManager* mgr, std::uint32_t node) : mgr_(mgr), node_(node)
{
    mgr_->inc_ref(node_);
}

Bdd::Bdd(const Bdd& other) : mgr_(other.mgr_), node_(other.node_)
{
    if (mgr_) mgr_->inc_ref(node_);
}

Bdd::Bdd(Bdd&& other) noexcept : mgr_(other.mgr_), node_(other.node_)
{
    other.mgr_ = nullptr;
    other.node_ = 0;
}

Bdd& Bdd::operator=(const Bdd& other)
{
    if (this != &other) {
        if (other.mgr_) other.mgr_->inc_ref(other.node_);
        if (mgr_) mgr_->dec_ref(node_);
        mgr_ = other.mgr_;
        node_ = other.node_;
    }
    return *this;
}

Bdd& Bdd::operator=(Bdd&& other) noexcept
{
    if (this != &other) {
        if (mgr_) mgr_->dec_ref(node_);
        mgr_ = other.mgr_;
        node_ = other.node_;
        other.mgr_ = nullptr;
        other.node_ = 0;
    }
    return *this;
}

Bdd::~Bdd()
{
    if (mgr_) mgr_->dec_ref(node_);
}

bool Bdd::is_false() const { return mgr_ && node_ == BddManager::kFalse; }
bool Bdd::is_true() const { return mgr_ && node_ == BddManager::kTrue; }

Bdd Bdd::operator&(const Bdd& g) const
{
    if (!mgr_) throw BddError("operation on empty BDD handle");
    return mgr_->apply(BoolOp::And, *this, g);
}

Bdd Bdd::operator|(const Bdd& g) const
{
    if (!mgr_) throw BddError("operation on empty BDD handle");
    return mgr_->apply(BoolOp::Or, *this, g);
}

Bdd Bdd::operator^(const Bdd& g) const
{
    if (!mgr_) throw BddError("operation on empty BDD handle");
    return mgr_->apply(BoolOp::Xor, *this, g);
}

Bdd Bdd::operator~() const
{
    if (!mgr_) throw BddError("operation on empty BDD handle");
    return mgr_->negate(*this);
}

Bdd Bdd::diff(const Bdd& g) const { return *this & ~g; }

// ---------------------------------------------------------------------------
// Manager

BddManager::BddManager(std::uint32_t num_vars, std::size_t initial_capacity)
    : num_vars_(num_vars), gc_limit_(std::max(kMinGcLimit, initial_capacity))
{
    if (num_vars >= kNil - 1) throw BddError("too many variables");
    nodes_.reserve(initial_capacity + 2);
    // Terminals sit below every variable.
    nodes_.push_back({num_vars_, kFalse, kFalse, 0, kNil, false, false});
    nodes_.push_back({num_vars_, kTrue, kTrue, 0, kNil, false, false});
    buckets_.assign(next_pow2(std::max<std::size_t>(initial_capacity, 1024)), kNil);
    cache_.resize(next_pow2(std::max<std::size_t>(initial_capacity, 1u << 14)));
    maps_.emplace_back(); // id 0 unused
}

BddManager::~BddManager() = default;

void BddManager::check_owner(const Bdd& f) const
{
    if (f.mgr_ == nullptr) throw BddError("operation on empty BDD handle");
    if (f.mgr_ != this) throw BddError("BDD operand belongs to a different manager");
}

void BddManager::bump_peak()
{
    const std::size_t live = allocated_ - dead_;
    if (live > peak_live_) peak_live_ = live;
}

void BddManager::inc_ref(std::uint32_t n)
{
    if (n < 2) return;
    Node& nd = nodes_[n];
    if (nd.dead) {
        nd.dead = false;
        --dead_;
        const std::uint32_t lo = nd.lo, hi = nd.hi;
        inc_ref(lo);
        inc_ref(hi);
        bump_peak();
    }
    ++nodes_[n].ref;
}

void BddManager::dec_ref(std::uint32_t n)
{
    if (n < 2) return;
    Node& nd = nodes_[n];
    if (nd.ref == 0) return; // released twice; tolerated for fresh nodes
    if (--nd.ref == 0) {
        nd.dead = true;
        ++dead_;
        const std::uint32_t lo = nd.lo, hi = nd.hi;
        dec_ref(lo);
        dec_ref(hi);
    }
}

std::size_t BddManager::bucket_of(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) const
{
    const std::uint64_t h = mix((std::uint64_t(var) << 40) ^ (std::uint64_t(lo) << 20) ^ hi ^
                                (std::uint64_t(hi) << 52));
    return h & (buckets_.size() - 1);
}

void BddManager::rehash(std::size_t buckets)
{
    buckets_.assign(buckets, kNil);
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        Node& nd = nodes_[i];
        if (nd.free) continue;
        const std::size_t b = bucket_of(nd.var, nd.lo, nd.hi);
        nd.next = buckets_[b];
        buckets_[b] = i;
    }
}

std::uint32_t BddManager::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi)
{
    if (lo == hi) return lo;
    const std::size_t b = bucket_of(var, lo, hi);
    for (std::uint32_t i = buckets_[b]; i != kNil; i = nodes_[i].next) {
        const Node& nd = nodes_[i];
        if (nd.var == var && nd.lo == lo && nd.hi == hi) return i;
    }

    std::uint32_t idx;
    if (free_head_ != kNil) {
        idx = free_head_;
        free_head_ = nodes_[idx].next;
        nodes_[idx] = {var, lo, hi, 0, kNil, false, false};
    } else {
        if (nodes_.size() >= kNil - 1) throw BddError("BDD node table exhausted");
        idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({var, lo, hi, 0, kNil, false, false});
    }
    inc_ref(lo);
    inc_ref(hi);
    ++allocated_;
    bump_peak();

    if (allocated_ > buckets_.size()) {
        rehash(buckets_.size() * 2);
    } else {
        nodes_[idx].next = buckets_[b];
        buckets_[b] = idx;
    }
    return idx;
}

void BddManager::collect_garbage()
{
    // Fresh nodes never referenced by anyone are garbage too; releasing them
    // cascades to their children.
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        Node& nd = nodes_[i];
        if (!nd.free && !nd.dead && nd.ref == 0) {
            nd.dead = true;
            ++dead_;
            const std::uint32_t lo = nd.lo, hi = nd.hi;
            dec_ref(lo);
            dec_ref(hi);
        }
    }
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        Node& nd = nodes_[i];
        if (nd.free || !nd.dead) continue;
        nd.free = true;
        nd.dead = false;
        nd.next = free_head_;
        free_head_ = i;
        --allocated_;
        --dead_;
    }
    rehash(buckets_.size());
    std::fill(cache_.begin(), cache_.end(), CacheEntry{});
    ++gc_runs_;
}

void BddManager::resize_cache(std::size_t entries)
{
    cache_.assign(entries, CacheEntry{});
}

void BddManager::begin_op()
{
    if (allocated_ >= gc_limit_) {
        collect_garbage();
        if (allocated_ * 2 > gc_limit_) gc_limit_ *= 2;
    }
    if (cache_.size() < allocated_ && cache_.size() < kMaxCacheEntries) {
        resize_cache(std::min(kMaxCacheEntries, next_pow2(allocated_)));
    }
}

bool BddManager::cache_lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              std::uint32_t& out)
{
    ++cache_lookups_;
    const std::uint64_t h = mix((std::uint64_t(op) << 58) ^ (std::uint64_t(a) << 29) ^ b ^
                                (std::uint64_t(c) << 45) ^ (std::uint64_t(c) >> 19));
    const CacheEntry& e = cache_[h & (cache_.size() - 1)];
    if (e.op == op && e.a == a && e.b == b && e.c == c) {
        ++cache_hits_;
        out = e.result;
        return true;
    }
    return false;
}

void BddManager::cache_store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                             std::uint32_t result)
{
    const std::uint64_t h = mix((std::uint64_t(op) << 58) ^ (std::uint64_t(a) << 29) ^ b ^
                                (std::uint64_t(c) << 45) ^ (std::uint64_t(c) >> 19));
    cache_[h & (cache_.size() - 1)] = {op, a, b, c, result};
}

// ---------------------------------------------------------------------------
// Recursive kernels. They pass raw node indices around; no collection may
// happen while one is running.

std::uint32_t BddManager::and_rec(std::uint32_t f, std::uint32_t g)
{
    if (f == kFalse || g == kFalse) return kFalse;
    if (f == kTrue) return g;
    if (g == kTrue || f == g) return f;
    if (f > g) std::swap(f, g);

    std::uint32_t r;
    if (cache_lookup(kOpAnd, f, g, 0, r)) return r;

    const std::uint32_t vf = level(f), vg = level(g);
    const std::uint32_t v = std::min(vf, vg);
    const std::uint32_t f0 = vf == v ? nodes_[f].lo : f, f1 = vf == v ? nodes_[f].hi : f;
    const std::uint32_t g0 = vg == v ? nodes_[g].lo : g, g1 = vg == v ? nodes_[g].hi : g;
    const std::uint32_t lo = and_rec(f0, g0);
    const std::uint32_t hi = and_rec(f1, g1);
    r = mk(v, lo, hi);
    cache_store(kOpAnd, f, g, 0, r);
    return r;
}

std::uint32_t BddManager::or_rec(std::uint32_t f, std::uint32_t g)
{
    if (f == kTrue || g == kTrue) return kTrue;
    if (f == kFalse) return g;
    if (g == kFalse || f == g) return f;
    if (f > g) std::swap(f, g);

    std::uint32_t r;
    if (cache_lookup(kOpOr, f, g, 0, r)) return r;

    const std::uint32_t vf = level(f), vg = level(g);
    const std::uint32_t v = std::min(vf, vg);
    const std::uint32_t f0 = vf == v ? nodes_[f].lo : f, f1 = vf == v ? nodes_[f].hi : f;
    const std::uint32_t g0 = vg == v ? nodes_[g].lo : g, g1 = vg == v ? nodes_[g].hi : g;
    const std::uint32_t lo = or_rec(f0, g0);
    const std::uint32_t hi = or_rec(f1, g1);
    r = mk(v, lo, hi);
    cache_store(kOpOr, f, g, 0, r);
    return r;
}

std::uint32_t BddManager::xor_rec(std::uint32_t f, std::uint32_t g)
{
    if (f == g) return kFalse;
    if (f == kFalse) return g;
    if (g == kFalse) return f;
    if (f == kTrue) return not_rec(g);
    if (g == kTrue) return not_rec(f);
    if (f > g) std::swap(f, g);

    std::uint32_t r;
    if (cache_lookup(kOpXor, f, g, 0, r)) return r;

    const std::uint32_t vf = level(f), vg = level(g);
    const std::uint32_t v = std::min(vf, vg);
    const std::uint32_t f0 = vf == v ? nodes_[f].lo : f, f1 = vf == v ? nodes_[f].hi : f;
    const std::uint32_t g0 = vg == v ? nodes_[g].lo : g, g1 = vg == v ? nodes_[g].hi : g;
    const std::uint32_t lo = xor_rec(f0, g0);
    const std::uint32_t hi = xor_rec(f1, g1);
    r = mk(v, lo, hi);
    cache_store(kOpXor, f, g, 0, r);
    return r;
}

std::uint32_t BddManager::not_rec(std::uint32_t f)
{
    if (f == kFalse) return kTrue;
    if (f == kTrue) return kFalse;

    std::uint32_t r;
    if (cache_lookup(kOpNot, f, 0, 0, r)) return r;
    const std::uint32_t v = level(f);
    const std::uint32_t f0 = nodes_[f].lo, f1 = nodes_[f].hi;
    const std::uint32_t lo = not_rec(f0);
    const std::uint32_t hi = not_rec(f1);
    r = mk(v, lo, hi);
    cache_store(kOpNot, f, 0, 0, r);
    // The complement of r is f; record it so double negation is free.
    cache_store(kOpNot, r, 0, 0, f);
    return r;
}

std::uint32_t BddManager::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h)
{
    if (f == kTrue) return g;
    if (f == kFalse) return h;
    if (g == h) return g;
    if (g == kTrue && h == kFalse) return f;
    if (g == kFalse && h == kTrue) return not_rec(f);
    if (g == kTrue) return or_rec(f, h);
    if (g == kFalse) return and_rec(not_rec(f), h);
    if (h == kFalse) return and_rec(f, g);
    if (h == kTrue) return or_rec(not_rec(f), g);

    std::uint32_t r;
    if (cache_lookup(kOpIte, f, g, h, r)) return r;

    const std::uint32_t v = std::min({level(f), level(g), level(h)});
    auto cof = [&](std::uint32_t n, bool high) {
        if (level(n) != v) return n;
        return high ? nodes_[n].hi : nodes_[n].lo;
    };
    const std::uint32_t lo = ite_rec(cof(f, false), cof(g, false), cof(h, false));
    const std::uint32_t hi = ite_rec(cof(f, true), cof(g, true), cof(h, true));
    r = mk(v, lo, hi);
    cache_store(kOpIte, f, g, h, r);
    return r;
}

std::uint32_t BddManager::quant_rec(std::uint32_t f, std::uint32_t cube, bool exists)
{
    if (f < 2) return f;
    const std::uint32_t v = level(f);
    while (cube != kTrue && level(cube) < v) cube = nodes_[cube].hi;
    if (cube == kTrue) return f;

    const std::uint32_t op = exists ? kOpExists : kOpForall;
    std::uint32_t r;
    if (cache_lookup(op, f, cube, 0, r)) return r;

    const std::uint32_t f0 = nodes_[f].lo, f1 = nodes_[f].hi;
    if (level(cube) == v) {
        const std::uint32_t rest = nodes_[cube].hi;
        const std::uint32_t lo = quant_rec(f0, rest, exists);
        if (exists && lo == kTrue) {
            r = kTrue;
        } else if (!exists && lo == kFalse) {
            r = kFalse;
        } else {
            const std::uint32_t hi = quant_rec(f1, rest, exists);
            r = exists ? or_rec(lo, hi) : and_rec(lo, hi);
        }
    } else {
        const std::uint32_t lo = quant_rec(f0, cube, exists);
        const std::uint32_t hi = quant_rec(f1, cube, exists);
        r = mk(v, lo, hi);
    }
    cache_store(op, f, cube, 0, r);
    return r;
}

std::uint32_t BddManager::and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube)
{
    if (f == kFalse || g == kFalse) return kFalse;
    if (cube == kTrue) return and_rec(f, g);
    if (f == kTrue && g == kTrue) return kTrue;
    if (f == kTrue || f == g) return quant_rec(g, cube, true);
    if (g == kTrue) return quant_rec(f, cube, true);
    if (f > g) std::swap(f, g);

    const std::uint32_t v = std::min(level(f), level(g));
    while (cube != kTrue && level(cube) < v) cube = nodes_[cube].hi;
    if (cube == kTrue) return and_rec(f, g);

    std::uint32_t r;
    if (cache_lookup(kOpAndExists, f, g, cube, r)) return r;

    const std::uint32_t vf = level(f), vg = level(g);
    const std::uint32_t f0 = vf == v ? nodes_[f].lo : f, f1 = vf == v ? nodes_[f].hi : f;
    const std::uint32_t g0 = vg == v ? nodes_[g].lo : g, g1 = vg == v ? nodes_[g].hi : g;
    if (level(cube) == v) {
        const std::uint32_t rest = nodes_[cube].hi;
        const std::uint32_t lo = and_exists_rec(f0, g0, rest);
        if (lo == kTrue) {
            r = kTrue;
        } else {
            const std::uint32_t hi = and_exists_rec(f1, g1, rest);
            r = or_rec(lo, hi);
        }
    } else {
        const std::uint32_t lo = and_exists_rec(f0, g0, cube);
        const std::uint32_t hi = and_exists_rec(f1, g1, cube);
        r = mk(v, lo, hi);
    }
    cache_store(kOpAndExists, f, g, cube, r);
    return r;
}

std::uint32_t BddManager::rename_rec(std::uint32_t f, std::uint32_t map_id, bool monotone)
{
    if (f < 2) return f;
    std::uint32_t r;
    if (cache_lookup(kOpRename, f, map_id, 0, r)) return r;

    const std::uint32_t v = level(f);
    const std::uint32_t f0 = nodes_[f].lo, f1 = nodes_[f].hi;
    const std::uint32_t lo = rename_rec(f0, map_id, monotone);
    const std::uint32_t hi = rename_rec(f1, map_id, monotone);
    const std::vector<VarId>& map = maps_[map_id];
    const std::uint32_t target = map[v] == kNil ? v : map[v];
    if (monotone) {
        r = mk(target, lo, hi);
    } else {
        r = ite_rec(mk(target, kFalse, kTrue), hi, lo);
    }
    cache_store(kOpRename, f, map_id, 0, r);
    return r;
}

std::uint32_t BddManager::build_codes(std::span<const std::uint64_t> codes,
                                      std::span<const VarId> vars, std::size_t depth)
{
    if (codes.empty()) return kFalse;
    if (depth == vars.size()) return kTrue;
    const std::uint64_t bit = std::uint64_t(1) << (vars.size() - 1 - depth);
    const auto mid = std::partition_point(codes.begin(), codes.end(),
                                          [bit](std::uint64_t c) { return (c & bit) == 0; });
    const auto split = static_cast<std::size_t>(mid - codes.begin());
    const std::uint32_t lo = build_codes(codes.first(split), vars, depth + 1);
    const std::uint32_t hi = build_codes(codes.subspan(split), vars, depth + 1);
    return mk(vars[depth], lo, hi);
}

// ---------------------------------------------------------------------------
// Public operations

Bdd BddManager::var(VarId v)
{
    if (v >= num_vars_) throw BddError("unknown variable " + std::to_string(v));
    begin_op();
    return {this, mk(v, kFalse, kTrue)};
}

Bdd BddManager::nvar(VarId v)
{
    if (v >= num_vars_) throw BddError("unknown variable " + std::to_string(v));
    begin_op();
    return {this, mk(v, kTrue, kFalse)};
}

Bdd BddManager::apply(BoolOp op, const Bdd& f, const Bdd& g)
{
    check_owner(f);
    check_owner(g);
    begin_op();
    switch (op) {
    case BoolOp::And: return {this, and_rec(f.node_, g.node_)};
    case BoolOp::Or: return {this, or_rec(f.node_, g.node_)};
    case BoolOp::Xor: return {this, xor_rec(f.node_, g.node_)};
    }
    throw BddError("unknown operator");
}

Bdd BddManager::negate(const Bdd& f)
{
    check_owner(f);
    begin_op();
    return {this, not_rec(f.node_)};
}

Bdd BddManager::ite(const Bdd& f, const Bdd& g, const Bdd& h)
{
    check_owner(f);
    check_owner(g);
    check_owner(h);
    begin_op();
    return {this, ite_rec(f.node_, g.node_, h.node_)};
}

Bdd BddManager::cube(std::span<const VarId> vars)
{
    std::vector<VarId> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (VarId v : sorted) {
        if (v >= num_vars_) throw BddError("unknown variable " + std::to_string(v));
    }
    begin_op();
    std::uint32_t r = kTrue;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) r = mk(*it, kFalse, r);
    return {this, r};
}

Bdd BddManager::quantify(Quant kind, const Bdd& f, std::span<const VarId> vars)
{
    check_owner(f);
    const Bdd c = cube(vars);
    return kind == Quant::Exists ? exists(f, c) : forall(f, c);
}

Bdd BddManager::exists(const Bdd& f, const Bdd& cube)
{
    check_owner(f);
    check_owner(cube);
    begin_op();
    return {this, quant_rec(f.node_, cube.node_, true)};
}

Bdd BddManager::forall(const Bdd& f, const Bdd& cube)
{
    check_owner(f);
    check_owner(cube);
    begin_op();
    return {this, quant_rec(f.node_, cube.node_, false)};
}

Bdd BddManager::and_exists(const Bdd& f, const Bdd& g, const Bdd& cube)
{
    check_owner(f);
    check_owner(g);
    check_owner(cube);
    begin_op();
    return {this, and_exists_rec(f.node_, g.node_, cube.node_)};
}

std::uint32_t BddManager::intern_map(const std::vector<VarId>& full_map)
{
    for (std::uint32_t i = 1; i < maps_.size(); ++i) {
        if (maps_[i] == full_map) return i;
    }
    maps_.push_back(full_map);
    return static_cast<std::uint32_t>(maps_.size() - 1);
}

Bdd BddManager::substitute(const Bdd& f, const VarMap& mapping)
{
    check_owner(f);
    std::vector<VarId> full(num_vars_, kNil);
    std::set<VarId> images;
    for (const auto& [from, to] : mapping) {
        if (from >= num_vars_ || to >= num_vars_) {
            throw BddError("substitution mentions unknown variable");
        }
        if (full[from] != kNil && full[from] != to) {
            throw BddError("substitution maps variable " + std::to_string(from) + " twice");
        }
        if (full[from] == kNil && !images.insert(to).second) {
            throw BddError("substitution is not injective (target " + std::to_string(to) + ")");
        }
        full[from] = to;
    }
    for (VarId v = 0; v < num_vars_; ++v) {
        if (full[v] == v) full[v] = kNil;
    }

    const std::vector<VarId> sup = support(f);
    std::vector<VarId> targets;
    targets.reserve(sup.size());
    for (VarId v : sup) targets.push_back(full[v] == kNil ? v : full[v]);
    std::vector<VarId> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw BddError("substitution collides with a variable already in the function");
    }
    const bool monotone = std::is_sorted(targets.begin(), targets.end());

    const std::uint32_t id = intern_map(full);
    begin_op();
    return {this, rename_rec(f.node_, id, monotone)};
}

Bdd BddManager::from_codes(std::span<const std::uint64_t> codes, std::span<const VarId> vars)
{
    if (vars.size() > 64) throw BddError("at most 64 variables per code");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] >= num_vars_) throw BddError("unknown variable " + std::to_string(vars[i]));
        if (i > 0 && vars[i - 1] >= vars[i]) throw BddError("code variables must be increasing");
    }
    std::vector<std::uint64_t> sorted(codes.begin(), codes.end());
    if (vars.size() < 64) {
        const std::uint64_t limit = std::uint64_t(1) << vars.size();
        for (std::uint64_t c : sorted) {
            if (c >= limit) throw BddError("code does not fit in the given variables");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    begin_op();
    return {this, build_codes(sorted, vars, 0)};
}

void BddManager::for_each_sat(const Bdd& f, std::span<const VarId> vars,
                              const std::function<void(std::uint64_t)>& fn) const
{
    check_owner(f);
    if (vars.size() > 64) throw BddError("at most 64 variables per code");
    std::vector<bool> allowed(num_vars_, false);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i > 0 && vars[i - 1] >= vars[i]) throw BddError("code variables must be increasing");
        allowed.at(vars[i]) = true;
    }
    for (VarId v : support(f)) {
        if (!allowed[v]) {
            throw BddError("function depends on variable " + std::to_string(v) +
                           " outside the enumeration set");
        }
    }

    std::function<void(std::uint32_t, std::size_t, std::uint64_t)> walk =
        [&](std::uint32_t n, std::size_t j, std::uint64_t code) {
            if (n == kFalse) return;
            if (j == vars.size()) {
                fn(code);
                return;
            }
            if (n == kTrue || level(n) > vars[j]) {
                walk(n, j + 1, code << 1);
                walk(n, j + 1, (code << 1) | 1);
            } else {
                walk(nodes_[n].lo, j + 1, code << 1);
                walk(nodes_[n].hi, j + 1, (code << 1) | 1);
            }
        };
    walk(f.node_, 0, 0);
}

double BddManager::sat_count(const Bdd& f, std::span<const VarId> vars) const
{
    check_owner(f);
    std::vector<VarId> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (VarId v : support(f)) {
        if (!std::binary_search(sorted.begin(), sorted.end(), v)) {
            throw BddError("function depends on variable outside the counting set");
        }
    }
    // Position of the first counted variable at or below a node's level.
    auto pos = [&](std::uint32_t n) {
        return static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), level(n)) - sorted.begin());
    };
    std::unordered_map<std::uint32_t, double> memo;
    std::function<double(std::uint32_t)> count = [&](std::uint32_t n) -> double {
        if (n == kFalse) return 0.0;
        if (n == kTrue) return 1.0;
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        const std::size_t p = pos(n);
        const std::uint32_t lo = nodes_[n].lo, hi = nodes_[n].hi;
        const double c = count(lo) * std::ldexp(1.0, static_cast<int>(pos(lo) - p - 1)) +
                         count(hi) * std::ldexp(1.0, static_cast<int>(pos(hi) - p - 1));
        memo.emplace(n, c);
        return c;
    };
    return count(f.node_) * std::ldexp(1.0, static_cast<int>(pos(f.node_)));
}

bool BddManager::eval(const Bdd& f, const std::vector<bool>& assignment) const
{
    check_owner(f);
    std::uint32_t n = f.node_;
    while (n >= 2) {
        const VarId v = level(n);
        if (v >= assignment.size()) throw BddError("assignment too short");
        n = assignment[v] ? nodes_[n].hi : nodes_[n].lo;
    }
    return n == kTrue;
}

std::vector<VarId> BddManager::support(const Bdd& f) const
{
    check_owner(f);
    std::vector<bool> seen_var(num_vars_, false);
    std::vector<std::uint32_t> stack{f.node_};
    std::unordered_map<std::uint32_t, bool> visited;
    while (!stack.empty()) {
        const std::uint32_t n = stack.back();
        stack.pop_back();
        if (n < 2 || !visited.emplace(n, true).second) continue;
        seen_var[level(n)] = true;
        stack.push_back(nodes_[n].lo);
        stack.push_back(nodes_[n].hi);
    }
    std::vector<VarId> out;
    for (VarId v = 0; v < num_vars_; ++v) {
        if (seen_var[v]) out.push_back(v);
    }
    return out;
}

std::size_t BddManager::count_nodes(const Bdd& f) const
{
    check_owner(f);
    std::vector<std::uint32_t> stack{f.node_};
    std::unordered_map<std::uint32_t, bool> visited;
    while (!stack.empty()) {
        const std::uint32_t n = stack.back();
        stack.pop_back();
        if (n < 2 || !visited.emplace(n, true).second) continue;
        stack.push_back(nodes_[n].lo);
        stack.push_back(nodes_[n].hi);
    }
    return visited.size();
}

VarId BddManager::top_var(const Bdd& f) const
{
    check_owner(f);
    return level(f.node_);
}

Bdd BddManager::low(const Bdd& f)
{
    check_owner(f);
    return {this, f.node_ < 2 ? f.node_ : nodes_[f.node_].lo};
}

Bdd BddManager::high(const Bdd& f)
{
    check_owner(f);
    return {this, f.node_ < 2 ? f.node_ : nodes_[f.node_].hi};
}

BddStats BddManager::stats() const
{
    BddStats s;
    s.allocated = allocated_;
    s.dead = dead_;
    s.live = allocated_ - dead_;
    s.peak_live = peak_live_;
    s.gc_runs = gc_runs_;
    s.cache_size = cache_.size();
    s.cache_hits = cache_hits_;
    s.cache_lookups = cache_lookups_;
    return s;
}

std::string BddManager::check_consistency() const
{
    std::ostringstream err;
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    std::vector<std::uint32_t> live_parents(nodes_.size(), 0);
    std::size_t allocated = 0, dead = 0;
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        if (nd.free) continue;
        ++allocated;
        if (nd.dead) {
            ++dead;
            if (nd.ref != 0) err << "dead node " << i << " has references; ";
        }
        if (nd.lo == nd.hi) err << "node " << i << " is redundant; ";
        if (nd.var >= level(nd.lo) || nd.var >= level(nd.hi)) {
            err << "node " << i << " violates the variable order; ";
        }
        if (nodes_[nd.lo].free || nodes_[nd.hi].free) err << "node " << i << " has a freed child; ";
        if (!seen.emplace(nd.var, nd.lo, nd.hi).second) err << "node " << i << " is a duplicate; ";
        if (!nd.dead) {
            ++live_parents[nd.lo];
            ++live_parents[nd.hi];
        }
        if (!err.str().empty()) return err.str();
    }
    if (allocated != allocated_) return "allocated counter out of sync";
    if (dead != dead_) return "dead counter out of sync";
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        if (!nd.free && !nd.dead && nd.ref < live_parents[i]) {
            return "node " + std::to_string(i) + " has fewer references than live parents";
        }
    }
    return {};
}

} // namespace spg
