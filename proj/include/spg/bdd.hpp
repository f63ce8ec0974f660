#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spg {

using VarId = std::uint32_t;

class BddError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class BoolOp { And, Or, Xor };
enum class Quant { Exists, Forall };

class BddManager;

/**
 * Reference-counted handle to a node of a BddManager.
 *
 * Two handles compare equal iff they denote the same Boolean function in the
 * same manager (the node table is canonical). A default-constructed handle is
 * empty and may only be assigned to or destroyed.
 */
class Bdd {
  public:
    Bdd() = default;
    Bdd(const Bdd& other);
    Bdd(Bdd&& other) noexcept;
    Bdd& operator=(const Bdd& other);
    Bdd& operator=(Bdd&& other) noexcept;
    ~Bdd();

    BddManager* manager() const { return mgr_; }
    std::uint32_t id() const { return node_; }
    bool empty_handle() const { return mgr_ == nullptr; }

    bool is_false() const;
    bool is_true() const;
    bool is_const() const { return is_false() || is_true(); }

    Bdd operator&(const Bdd& g) const;
    Bdd operator|(const Bdd& g) const;
    Bdd operator^(const Bdd& g) const;
    Bdd operator~() const;
    /// f & ~g
    Bdd diff(const Bdd& g) const;
    Bdd& operator&=(const Bdd& g) { return *this = *this & g; }
    Bdd& operator|=(const Bdd& g) { return *this = *this | g; }

    friend bool operator==(const Bdd& a, const Bdd& b) { return a.mgr_ == b.mgr_ && a.node_ == b.node_; }

  private:
    friend class BddManager;
    Bdd(BddManager* mgr, std::uint32_t node);

    BddManager* mgr_ = nullptr;
    std::uint32_t node_ = 0;
};

/// Injective variable renaming, as (from, to) pairs.
using VarMap = std::vector<std::pair<VarId, VarId>>;

struct BddStats {
    std::size_t allocated = 0;     // nodes in the unique table, dead or alive
    std::size_t dead = 0;          // released, awaiting collection
    std::size_t live = 0;          // allocated - dead
    std::size_t peak_live = 0;
    std::size_t gc_runs = 0;
    std::size_t cache_size = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_lookups = 0;
};

/**
 * Reduced ordered BDD manager with a fixed variable order (variable index ==
 * level). Nodes are shared through a unique table; operations are memoized in
 * a lossy computed table.
 *
 * Live-node accounting follows the usual reference-count scheme: a node is
 * dead once its last reference (from a handle or a live parent) is dropped,
 * and it stays in the table until garbage collection, which only runs at the
 * start of a top-level operation. Newly created nodes count as live until
 * they are either referenced and released, or collected.
 *
 * Not thread-safe. Handles must not outlive their manager.
 */
class BddManager {
  public:
    explicit BddManager(std::uint32_t num_vars, std::size_t initial_capacity = 1u << 12);
    BddManager(const BddManager&) = delete;
    BddManager& operator=(const BddManager&) = delete;
    ~BddManager();

    std::uint32_t var_count() const { return num_vars_; }

    Bdd bdd_false() { return {this, kFalse}; }
    Bdd bdd_true() { return {this, kTrue}; }
    Bdd var(VarId v);
    Bdd nvar(VarId v);

    Bdd apply(BoolOp op, const Bdd& f, const Bdd& g);
    Bdd negate(const Bdd& f);
    Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);

    /// Conjunction of the given (positive) variables; the canonical variable-set form.
    Bdd cube(std::span<const VarId> vars);
    Bdd quantify(Quant kind, const Bdd& f, std::span<const VarId> vars);
    Bdd exists(const Bdd& f, const Bdd& cube);
    Bdd forall(const Bdd& f, const Bdd& cube);
    /// exists cube . (f & g), without building f & g.
    Bdd and_exists(const Bdd& f, const Bdd& g, const Bdd& cube);

    /// Rename variables. Throws BddError if the map is not injective or if two
    /// variables in the support of f would land on the same variable.
    Bdd substitute(const Bdd& f, const VarMap& mapping);

    /// Set of bit-vectors: bit (m-1-j) of each code is the value of vars[j].
    /// vars must be strictly increasing and at most 64 long.
    Bdd from_codes(std::span<const std::uint64_t> codes, std::span<const VarId> vars);

    /// Call fn(code) for every satisfying assignment over vars, with the same
    /// bit convention as from_codes. Throws if f depends on a variable outside vars.
    void for_each_sat(const Bdd& f, std::span<const VarId> vars,
                      const std::function<void(std::uint64_t)>& fn) const;
    double sat_count(const Bdd& f, std::span<const VarId> vars) const;

    bool eval(const Bdd& f, const std::vector<bool>& assignment) const;
    std::vector<VarId> support(const Bdd& f) const;
    std::size_t count_nodes(const Bdd& f) const;

    // Node inspection.
    VarId top_var(const Bdd& f) const;
    Bdd low(const Bdd& f);
    Bdd high(const Bdd& f);

    std::size_t live_nodes() const { return allocated_ - dead_; }
    std::size_t peak_live_nodes() const { return peak_live_; }
    BddStats stats() const;

    void collect_garbage();

    /// Walk the whole node table and check ordering, reduction, uniqueness and
    /// reference counts. Returns an empty string when consistent, otherwise a
    /// description of the first violation.
    std::string check_consistency() const;

  private:
    friend class Bdd;

    static constexpr std::uint32_t kFalse = 0;
    static constexpr std::uint32_t kTrue = 1;
    static constexpr std::uint32_t kNil = 0xffffffffu;

    struct Node {
        std::uint32_t var;
        std::uint32_t lo;
        std::uint32_t hi;
        std::uint32_t ref;
        std::uint32_t next;
        bool dead;
        bool free;
    };

    struct CacheEntry {
        std::uint32_t op = 0;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        std::uint32_t c = 0;
        std::uint32_t result = 0;
    };

    enum Op : std::uint32_t {
        kOpAnd = 1,
        kOpOr,
        kOpXor,
        kOpNot,
        kOpIte,
        kOpExists,
        kOpForall,
        kOpAndExists,
        kOpRename,
    };

    void check_owner(const Bdd& f) const;
    void begin_op();

    void inc_ref(std::uint32_t n);
    void dec_ref(std::uint32_t n);
    void bump_peak();

    std::uint32_t level(std::uint32_t n) const { return nodes_[n].var; }
    std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
    void rehash(std::size_t buckets);
    std::size_t bucket_of(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) const;

    bool cache_lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                      std::uint32_t& out);
    void cache_store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                     std::uint32_t result);
    void resize_cache(std::size_t entries);

    std::uint32_t and_rec(std::uint32_t f, std::uint32_t g);
    std::uint32_t or_rec(std::uint32_t f, std::uint32_t g);
    std::uint32_t xor_rec(std::uint32_t f, std::uint32_t g);
    std::uint32_t not_rec(std::uint32_t f);
    std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);
    std::uint32_t quant_rec(std::uint32_t f, std::uint32_t cube, bool exists);
    std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube);
    std::uint32_t rename_rec(std::uint32_t f, std::uint32_t map_id, bool monotone);
    std::uint32_t build_codes(std::span<const std::uint64_t> codes, std::span<const VarId> vars,
                              std::size_t depth);

    std::uint32_t intern_map(const std::vector<VarId>& full_map);

    std::uint32_t num_vars_;
    std::vector<Node> nodes_;
    std::uint32_t free_head_ = kNil;
    std::vector<std::uint32_t> buckets_;
    std::vector<CacheEntry> cache_;

    std::size_t allocated_ = 0;
    std::size_t dead_ = 0;
    std::size_t peak_live_ = 0;
    std::size_t gc_runs_ = 0;
    std::size_t gc_limit_;
    std::uint64_t cache_hits_ = 0;
    std::uint64_t cache_lookups_ = 0;

    // Registered rename maps, indexed by variable; kNil means identity.
    std::vector<std::vector<VarId>> maps_;
};

} // namespace spg
