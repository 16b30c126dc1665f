#include <atomic>
#include <chrono>
#include <mutex>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mgc/oracle.hpp"
#include "mgc/translate.hpp"

// Strong-equivalence search over all HT pairs <X,Y>, X subset of Y, of the
// programs' ground atoms. There-worlds are enumerated by cardinality and
// then by mask value; here-worlds by mask value within each there-world.
//
// Two implementations ship side by side:
//   * a serial reference that evaluates the shared ground DAG for every
//     pair directly, and
//   * the default kernel, which fixes Y, folds every there-world-only
//     value out of the DAG once, and then scans the here-worlds over the
//     few atoms the residual formula still mentions. The scan over
//     there-worlds is OpenMP-parallel; the reported counterexample is the
//     first one in enumeration order regardless of thread count.

namespace mgc {

namespace {

// ---------------------------------------------------------------------------
// There-world stream: masks by (popcount, value), handed out in chunks.
// ---------------------------------------------------------------------------

struct YChunkItem {
    std::uint64_t mask;
    int cardinality;
    std::uint64_t index_in_class;  // position among masks of this cardinality
    std::uint64_t flat_rank;
};

class YStream {
  public:
    explicit YStream(int n) : n_(n) {}

    // Appends up to `want` items; returns false when exhausted.
    bool take(std::vector<YChunkItem>& out, std::size_t want) {
        std::lock_guard<std::mutex> lock(mu_);
        out.clear();
        while (out.size() < want && !done_) {
            out.push_back(YChunkItem{mask_, k_, idx_in_class_, flat_});
            ++flat_;
            ++idx_in_class_;
            advance();
        }
        return !out.empty();
    }

  private:
    void advance() {
        if (k_ == 0) {
            next_class();
            return;
        }
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t m = mask_;
        std::uint64_t u = m & (~m + 1);
        std::uint64_t v = m + u;
        if (v == 0 || (n_ < 64 && (v >> n_) != 0)) {
            next_class();
            return;
        }
        mask_ = v | (((m ^ v) / u) >> 2);
        if (n_ < 64 && (mask_ >> n_) != 0) next_class();
    }

    void next_class() {
        ++k_;
        idx_in_class_ = 0;
        if (k_ > n_) {
            done_ = true;
            return;
        }
        mask_ = (k_ == 64) ? ~0ull : ((1ull << k_) - 1);
    }

    int n_;
    int k_ = 0;
    std::uint64_t mask_ = 0;
    std::uint64_t idx_in_class_ = 0;
    std::uint64_t flat_ = 0;
    bool done_ = false;
    std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Shared setup
// ---------------------------------------------------------------------------

struct CheckSetup {
    RegistryPtr registry;
    AtomTable atoms;
    GroundFormula g1, g2;
    int margin = 0;
    std::vector<std::string> warnings;
};

CheckSetup prepare(const Program& p1, const Program& p2, const Universe& u,
                   const OracleOptions& opts) {
    CheckSetup s;
    s.registry = std::make_shared<FamilyRegistry>();
    FormulaPtr f1 = tau_star_program(desugar_count_eq(p1), *s.registry);
    FormulaPtr f2 = tau_star_program(desugar_count_eq(p2), *s.registry);

    std::vector<PredRef> preds;
    for (const auto& [name, arity] : collect_predicates(p1))
        preds.push_back(PredRef{PredKind::Plain, name, arity, -1, false});
    for (const auto& [name, arity] : collect_predicates(p2))
        preds.push_back(PredRef{PredKind::Plain, name, arity, -1, false});
    s.atoms = AtomTable::build(preds, u);
    if (s.atoms.size() > 40)
        throw std::invalid_argument(
            "more than 40 ground atoms; the exhaustive pair search is infeasible");

    s.margin = opts.margin.value_or(std::max(auto_margin(f1, u, s.registry.get()),
                                             auto_margin(f2, u, s.registry.get())));
    GroundOptions gopts;
    gopts.margin = s.margin;
    auto [g1, g2] = ground_pair(f1, f2, u, s.atoms, s.registry.get(), gopts);
    s.g1 = g1;
    s.g2 = g2;
    s.warnings = g1.dag->warnings;
    return s;
}

std::uint64_t pow3_clamped(int n) {
    __uint128_t v = 1;
    for (int i = 0; i < n; ++i) {
        v *= 3;
        if (v > ~0ull) return ~0ull;
    }
    return static_cast<std::uint64_t>(v);
}

// Binomials C(n,k) for the pairs-checked arithmetic.
std::vector<std::vector<__uint128_t>> binomials(int n) {
    std::vector<std::vector<__uint128_t>> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    return c;
}

std::uint64_t clamp_u128(__uint128_t v) { return v > ~0ull ? ~0ull : static_cast<std::uint64_t>(v); }

// Pairs that precede (and include) the failing here-world in enumeration
// order: all pairs of earlier there-worlds plus the prefix within this one.
std::uint64_t pairs_up_to(int n, int k, std::uint64_t idx_in_class, std::uint64_t x_rank) {
    auto c = binomials(n);
    __uint128_t total = 0;
    for (int j = 0; j < k; ++j)
        total += c[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] *
                 (static_cast<__uint128_t>(1) << j);
    total += static_cast<__uint128_t>(idx_in_class) * (static_cast<__uint128_t>(1) << k);
    total += x_rank + 1;
    return clamp_u128(total);
}

// Rank of a subset mask among all subsets of `super`, in mask order: the
// integer formed by compressing the subset's bits onto super's positions.
std::uint64_t subset_rank(std::uint64_t subset, std::uint64_t super) {
    std::uint64_t rank = 0;
    int out = 0;
    for (std::uint64_t bits = super; bits; bits &= bits - 1, ++out) {
        std::uint64_t bit = bits & (~bits + 1);
        if (subset & bit) rank |= 1ull << out;
    }
    return rank;
}

std::vector<std::string> mask_atoms(std::uint64_t mask, const AtomTable& atoms) {
    std::vector<std::string> out;
    for (int i = 0; i < atoms.size(); ++i)
        if ((mask >> i) & 1) out.push_back(atoms.names[static_cast<std::size_t>(i)]);
    return out;
}

// ---------------------------------------------------------------------------
// Per-there-world specialization
// ---------------------------------------------------------------------------

// Residual here-world formula once Y is fixed. Nodes are hash-consed per
// arena so identical residuals of the two programs share ids.
struct SpecArena {
    enum class Op : std::uint8_t { Const, Var, And, Or, Impl, CountGe };
    struct SNode {
        Op op;
        std::uint8_t cval = 0;     // Const
        int var = -1;              // Var: atom id
        int a = -1, b = -1;        // Impl
        std::int64_t bound = 0;    // CountGe
        int kids_ofs = 0, kids_len = 0;
    };

    std::vector<SNode> nodes;
    std::vector<int> kidpool;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    int const_false = -1, const_true = -1;

    void reset() {
        nodes.clear();
        kidpool.clear();
        buckets.clear();
        const_false = intern_const(false);
        const_true = intern_const(true);
    }

    std::uint64_t node_hash(const SNode& n) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::uint64_t>(n.op));
        mix(n.cval);
        mix(static_cast<std::uint64_t>(n.var) + 1);
        mix(static_cast<std::uint64_t>(n.a) + 1);
        mix(static_cast<std::uint64_t>(n.b) + 1);
        mix(static_cast<std::uint64_t>(n.bound));
        for (int i = 0; i < n.kids_len; ++i)
            mix(static_cast<std::uint64_t>(kidpool[static_cast<std::size_t>(n.kids_ofs + i)]));
        return h;
    }

    bool node_equal(const SNode& x, const SNode& y) const {
        if (x.op != y.op || x.cval != y.cval || x.var != y.var || x.a != y.a || x.b != y.b ||
            x.bound != y.bound || x.kids_len != y.kids_len)
            return false;
        for (int i = 0; i < x.kids_len; ++i)
            if (kidpool[static_cast<std::size_t>(x.kids_ofs + i)] !=
                kidpool[static_cast<std::size_t>(y.kids_ofs + i)])
                return false;
        return true;
    }

    int intern(SNode n) {
        std::uint64_t h = node_hash(n);
        auto& bucket = buckets[h];
        for (int id : bucket)
            if (node_equal(nodes[static_cast<std::size_t>(id)], n)) {
                // Drop the kids we copied speculatively.
                if (n.kids_len && n.kids_ofs + n.kids_len == static_cast<int>(kidpool.size()))
                    kidpool.resize(static_cast<std::size_t>(n.kids_ofs));
                return id;
            }
        int id = static_cast<int>(nodes.size());
        nodes.push_back(n);
        bucket.push_back(id);
        return id;
    }

    int intern_const(bool v) {
        SNode n;
        n.op = Op::Const;
        n.cval = v ? 1 : 0;
        return intern(n);
    }

    int intern_var(int atom) {
        SNode n;
        n.op = Op::Var;
        n.var = atom;
        return intern(n);
    }

    bool is_const(int id, bool v) const {
        const SNode& n = nodes[static_cast<std::size_t>(id)];
        return n.op == Op::Const && (n.cval != 0) == v;
    }

    int intern_list(Op op, std::vector<int>& tmp) {
        SNode n;
        n.op = op;
        n.kids_ofs = static_cast<int>(kidpool.size());
        n.kids_len = static_cast<int>(tmp.size());
        kidpool.insert(kidpool.end(), tmp.begin(), tmp.end());
        return intern(n);
    }
};

// Specializes a ground node to its (classical value, residual here formula)
// for a fixed there-world.
class Specializer {
  public:
    Specializer(const Dag& dag, SpecArena& arena)
        : dag_(dag), arena_(arena), c_(dag.nodes.size(), 0), h_(dag.nodes.size(), -1),
          stamp_(dag.nodes.size(), 0) {}

    void set_there(std::uint64_t y) {
        there_ = y;
        ++now_;
        arena_.reset();
    }

    // Returns the residual here-node; classical value via cval().
    int specialize(int id) {
        std::size_t i = static_cast<std::size_t>(id);
        if (stamp_[i] == now_) return h_[i];
        const Dag::Node& n = dag_.nodes[i];
        bool c = false;
        int h = arena_.const_false;
        switch (n.op) {
            case Dag::Op::False:
                break;
            case Dag::Op::True:
                c = true;
                h = arena_.const_true;
                break;
            case Dag::Op::Atom: {
                c = (there_ >> n.atom) & 1;
                h = c ? arena_.intern_var(n.atom) : arena_.const_false;
                break;
            }
            case Dag::Op::Not: {
                specialize(n.a);
                c = !cval(n.a);
                h = c ? arena_.const_true : arena_.const_false;
                break;
            }
            case Dag::Op::And: {
                c = true;
                std::vector<int> live;
                bool dead = false;
                for (int k : n.kids) {
                    specialize(k);
                    c = c && cval(k);
                    int hk = h_[static_cast<std::size_t>(k)];
                    if (arena_.is_const(hk, false)) dead = true;
                    else if (!arena_.is_const(hk, true)) live.push_back(hk);
                }
                if (dead || live.empty())
                    h = dead ? arena_.const_false : arena_.const_true;
                else if (live.size() == 1)
                    h = live[0];
                else
                    h = arena_.intern_list(SpecArena::Op::And, live);
                break;
            }
            case Dag::Op::Or: {
                c = false;
                std::vector<int> live;
                bool alive = false;
                for (int k : n.kids) {
                    specialize(k);
                    c = c || cval(k);
                    int hk = h_[static_cast<std::size_t>(k)];
                    if (arena_.is_const(hk, true)) alive = true;
                    else if (!arena_.is_const(hk, false)) live.push_back(hk);
                }
                if (alive || live.empty())
                    h = alive ? arena_.const_true : arena_.const_false;
                else if (live.size() == 1)
                    h = live[0];
                else
                    h = arena_.intern_list(SpecArena::Op::Or, live);
                break;
            }
            case Dag::Op::Impl: {
                specialize(n.a);
                specialize(n.b);
                c = !cval(n.a) || cval(n.b);
                if (!c) {
                    h = arena_.const_false;
                } else {
                    int ha = h_[static_cast<std::size_t>(n.a)];
                    int hb = h_[static_cast<std::size_t>(n.b)];
                    if (arena_.is_const(ha, false) || arena_.is_const(hb, true))
                        h = arena_.const_true;
                    else if (arena_.is_const(ha, true))
                        h = hb;
                    else {
                        SpecArena::SNode sn;
                        sn.op = SpecArena::Op::Impl;
                        sn.a = ha;
                        sn.b = hb;
                        h = arena_.intern(sn);
                    }
                }
                break;
            }
            case Dag::Op::CountGe:
            case Dag::Op::CountLe: {
                const Dag::Node& list = dag_.nodes[static_cast<std::size_t>(n.a)];
                std::int64_t c_cnt = 0;
                std::int64_t base = 0;
                std::vector<int> live;
                for (int k : list.kids) {
                    specialize(k);
                    c_cnt += cval(k) ? 1 : 0;
                    if (n.op == Dag::Op::CountGe) {
                        int hk = h_[static_cast<std::size_t>(k)];
                        if (arena_.is_const(hk, true)) ++base;
                        else if (!arena_.is_const(hk, false)) live.push_back(hk);
                    }
                }
                if (n.op == Dag::Op::CountLe) {
                    c = c_cnt <= n.bound;
                    h = c ? arena_.const_true : arena_.const_false;
                } else {
                    c = c_cnt >= n.bound;
                    std::int64_t eff = n.bound - base;
                    if (eff <= 0)
                        h = arena_.const_true;
                    else if (eff > static_cast<std::int64_t>(live.size()))
                        h = arena_.const_false;
                    else {
                        SpecArena::SNode sn;
                        sn.op = SpecArena::Op::CountGe;
                        sn.bound = eff;
                        sn.kids_ofs = static_cast<int>(arena_.kidpool.size());
                        sn.kids_len = static_cast<int>(live.size());
                        arena_.kidpool.insert(arena_.kidpool.end(), live.begin(), live.end());
                        h = arena_.intern(sn);
                    }
                }
                break;
            }
            case Dag::Op::List:
                throw std::logic_error("list nodes are not directly specializable");
        }
        stamp_[i] = now_;
        c_[i] = c ? 1 : 0;
        h_[i] = h;
        return h;
    }

    bool cval(int id) const { return c_[static_cast<std::size_t>(id)] != 0; }

  private:
    const Dag& dag_;
    SpecArena& arena_;
    std::vector<std::uint8_t> c_;
    std::vector<int> h_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t now_ = 0;
    std::uint64_t there_ = 0;
};

// Evaluates residual here-nodes for a given here-world mask.
class HereEvaluator {
  public:
    void bind(const SpecArena& arena) {
        arena_ = &arena;
        if (stamp_.size() < arena.nodes.size()) {
            stamp_.resize(arena.nodes.size(), 0);
            val_.resize(arena.nodes.size(), 0);
        }
    }

    bool eval(int id, std::uint64_t here) {
        ++now_;
        here_ = here;
        return run(id);
    }

  private:
    bool run(int id) {
        std::size_t i = static_cast<std::size_t>(id);
        if (stamp_[i] == now_) return val_[i] != 0;
        const SpecArena::SNode& n = arena_->nodes[i];
        bool v = false;
        switch (n.op) {
            case SpecArena::Op::Const:
                v = n.cval != 0;
                break;
            case SpecArena::Op::Var:
                v = (here_ >> n.var) & 1;
                break;
            case SpecArena::Op::And: {
                v = true;
                for (int k = 0; k < n.kids_len && v; ++k)
                    v = run(arena_->kidpool[static_cast<std::size_t>(n.kids_ofs + k)]);
                break;
            }
            case SpecArena::Op::Or: {
                v = false;
                for (int k = 0; k < n.kids_len && !v; ++k)
                    v = run(arena_->kidpool[static_cast<std::size_t>(n.kids_ofs + k)]);
                break;
            }
            case SpecArena::Op::Impl:
                v = !run(n.a) || run(n.b);
                break;
            case SpecArena::Op::CountGe: {
                std::int64_t cnt = 0;
                for (int k = 0; k < n.kids_len; ++k) {
                    if (run(arena_->kidpool[static_cast<std::size_t>(n.kids_ofs + k)])) ++cnt;
                    if (cnt >= n.bound) break;
                }
                v = cnt >= n.bound;
                break;
            }
        }
        stamp_[i] = now_;
        val_[i] = v ? 1 : 0;
        return v;
    }

    const SpecArena* arena_ = nullptr;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint8_t> val_;
    std::uint32_t now_ = 0;
    std::uint64_t here_ = 0;
};

std::uint64_t residual_support(const SpecArena& arena, int root1, int root2) {
    std::uint64_t support = 0;
    std::vector<std::uint8_t> seen(arena.nodes.size(), 0);
    std::vector<int> stack{root1, root2};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        std::size_t i = static_cast<std::size_t>(id);
        if (seen[i]) continue;
        seen[i] = 1;
        const SpecArena::SNode& n = arena.nodes[i];
        if (n.op == SpecArena::Op::Var) support |= 1ull << n.var;
        if (n.op == SpecArena::Op::Impl) {
            stack.push_back(n.a);
            stack.push_back(n.b);
        }
        for (int k = 0; k < n.kids_len; ++k)
            stack.push_back(arena.kidpool[static_cast<std::size_t>(n.kids_ofs + k)]);
    }
    return support;
}

struct Candidate {
    std::uint64_t flat_rank;
    int cardinality;
    std::uint64_t index_in_class;
    std::uint64_t y_mask;
    std::uint64_t x_mask;
};

}  // namespace

// ---------------------------------------------------------------------------
// check_strong_equivalence
// ---------------------------------------------------------------------------

EquivalenceReport check_strong_equivalence(const Program& p1, const Program& p2,
                                           const Universe& u, const OracleOptions& opts) {
    if (opts.serial) return check_strong_equivalence_serial(p1, p2, u, opts);
    auto t0 = std::chrono::steady_clock::now();
    CheckSetup s = prepare(p1, p2, u, opts);
    const Dag& dag = *s.g1.dag;
    int n = s.atoms.size();

    EquivalenceReport report;
    report.universe = u.str();
    report.atom_count = n;
    report.margin = s.margin;
    report.warnings = s.warnings;

    std::atomic<std::uint64_t> best_rank{~0ull};
    std::mutex cand_mu;
    std::vector<Candidate> candidates;

    YStream stream(n);
    const std::size_t chunk_size = 256;

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        SpecArena arena;
        Specializer spec(dag, arena);
        HereEvaluator here_eval;
        std::vector<YChunkItem> chunk;
        while (stream.take(chunk, chunk_size)) {
            for (const YChunkItem& item : chunk) {
                if (item.flat_rank > best_rank.load(std::memory_order_relaxed)) continue;
                spec.set_there(item.mask);
                int r1 = spec.specialize(s.g1.root);
                int r2 = spec.specialize(s.g2.root);
                if (r1 == r2) continue;  // identical residuals: no here-world differs
                std::uint64_t support = residual_support(arena, r1, r2);
                here_eval.bind(arena);
                // Here-worlds in mask order over the residual support; the
                // first difference matches the full-order first difference.
                std::uint64_t sub = 0;
                bool found = false;
                std::uint64_t found_x = 0;
                for (;;) {
                    bool v1 = here_eval.eval(r1, sub);
                    bool v2 = here_eval.eval(r2, sub);
                    if (v1 != v2) {
                        found = true;
                        found_x = sub;
                        break;
                    }
                    if (sub == support) break;
                    sub = (sub - support) & support;
                }
                if (found) {
                    std::lock_guard<std::mutex> lock(cand_mu);
                    candidates.push_back(Candidate{item.flat_rank, item.cardinality,
                                                   item.index_in_class, item.mask, found_x});
                    std::uint64_t prev = best_rank.load();
                    while (prev > item.flat_rank &&
                           !best_rank.compare_exchange_weak(prev, item.flat_rank)) {
                    }
                }
            }
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (candidates.empty()) {
        report.equivalent = true;
        report.pairs_checked = pow3_clamped(n);
        return report;
    }
    const Candidate* best = &candidates[0];
    for (const Candidate& c : candidates)
        if (c.flat_rank < best->flat_rank) best = &c;

    report.equivalent = false;
    Counterexample cex;
    cex.here_mask = best->x_mask;
    cex.there_mask = best->y_mask;
    cex.here = mask_atoms(best->x_mask, s.atoms);
    cex.there = mask_atoms(best->y_mask, s.atoms);
    report.counterexample = cex;
    report.pairs_checked = pairs_up_to(n, best->cardinality, best->index_in_class,
                                       subset_rank(best->x_mask, best->y_mask));
    return report;
}

// ---------------------------------------------------------------------------
// Serial reference: direct evaluation of every pair
// ---------------------------------------------------------------------------

EquivalenceReport check_strong_equivalence_serial(const Program& p1, const Program& p2,
                                                  const Universe& u, const OracleOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CheckSetup s = prepare(p1, p2, u, opts);
    int n = s.atoms.size();

    EquivalenceReport report;
    report.universe = u.str();
    report.atom_count = n;
    report.margin = s.margin;
    report.warnings = s.warnings;

    PairEvaluator ev(*s.g1.dag);
    YStream stream(n);
    std::vector<YChunkItem> chunk;
    std::uint64_t pairs = 0;
    while (stream.take(chunk, 1024)) {
        for (const YChunkItem& item : chunk) {
            std::uint64_t y = item.mask;
            std::uint64_t x = 0;
            for (;;) {
                ++pairs;
                HTPair pair{x, y};
                bool v1 = ev.eval(s.g1.root, pair).second;
                bool v2 = ev.eval(s.g2.root, pair).second;
                if (v1 != v2) {
                    auto t1 = std::chrono::steady_clock::now();
                    report.elapsed_ms =
                        std::chrono::duration<double, std::milli>(t1 - t0).count();
                    report.equivalent = false;
                    Counterexample cex;
                    cex.here_mask = x;
                    cex.there_mask = y;
                    cex.here = mask_atoms(x, s.atoms);
                    cex.there = mask_atoms(y, s.atoms);
                    report.counterexample = cex;
                    report.pairs_checked = pairs;
                    return report;
                }
                if (x == y) break;
                x = (x - y) & y;
            }
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.equivalent = true;
    report.pairs_checked = pairs;
    return report;
}

// ---------------------------------------------------------------------------
// Stable models
// ---------------------------------------------------------------------------

StableModelsResult stable_models(const Program& prog, const Universe& u,
                                 const OracleOptions& opts) {
    auto registry = std::make_shared<FamilyRegistry>();
    FormulaPtr f = tau_star_program(desugar_count_eq(prog), *registry);

    std::vector<PredRef> preds;
    for (const auto& [name, arity] : collect_predicates(prog))
        preds.push_back(PredRef{PredKind::Plain, name, arity, -1, false});

    StableModelsResult result;
    result.atoms = AtomTable::build(preds, u);
    int n = result.atoms.size();
    if (n > 30)
        throw std::invalid_argument("more than 30 ground atoms; stable-model search infeasible");

    GroundOptions gopts;
    gopts.margin = opts.margin.value_or(auto_margin(f, u, registry.get()));
    GroundFormula g = ground(f, u, result.atoms, registry.get(), gopts);
    result.warnings = g.dag->warnings;

    PairEvaluator ev(*g.dag);
    std::uint64_t limit = n == 64 ? ~0ull : (1ull << n);
    for (std::uint64_t x = 0; x < limit; ++x) {
        // <X,X> satisfaction is classical satisfaction by X.
        if (!ev.eval(g.root, HTPair{x, x}).first) continue;
        bool minimal = true;
        for (std::uint64_t sub = 0; sub != x; sub = (sub - x) & x) {
            if (ev.eval(g.root, HTPair{sub, x}).second) {
                minimal = false;
                break;
            }
        }
        if (minimal) result.models.push_back(mask_atoms(x, result.atoms));
    }
    return result;
}

}  // namespace mgc
