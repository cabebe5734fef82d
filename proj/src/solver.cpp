#include "permforge/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace permforge {

namespace {

// An avoided pattern in mesh normal form, preprocessed for prefix pruning.
// Fully shaded columns of the mesh are equivalent to index adjacencies and
// fully shaded rows to value adjacencies; only the remaining cells need a
// region scan.
struct CompiledAvoid {
    Permutation base = Permutation::identity(1);
    int k = 0;
    std::vector<int> base_inv;   // padded inverse, size k+2
    std::vector<char> adj_after; // adj_after[a] for 1<=a<=k-1: i_{a+1} = i_a + 1
    bool anchor_start = false;   // adjacency 0: i_1 = 1
    bool anchor_end = false;     // adjacency k: i_k = n
    std::vector<int> value_adj;  // entries b: value adjacency between J_b and J_{b+1}
    std::vector<Cell> residual;
};

// Lower-bound prune for a statistic predicate: every term has a nonnegative
// coefficient over a statistic that can only grow as the prefix extends, and
// the comparator is eq or le, so prefix value > rhs kills the subtree.
struct CompiledBound {
    std::int64_t coef_inv = 0;
    std::int64_t coef_des = 0;
    std::int64_t coef_asc = 0;
    std::int64_t coef_maj = 0;
    std::int64_t rhs = 0;
};

struct CompiledModel {
    const Model* model = nullptr;
    int n = 0;
    bool infeasible = false; // a containment pattern longer than n
    std::vector<CompiledAvoid> avoids;
    std::vector<CompiledBound> bounds;
    std::vector<const Constraint*> leaf_checks; // with pruning: avoids are subsumed
    std::vector<const Constraint*> all_checks;  // leaf-check-only mode
};

std::vector<int> padded_inverse(const Permutation& base) {
    const int k = base.size();
    std::vector<int> inv(static_cast<size_t>(k) + 2);
    inv[0] = 0;
    inv[static_cast<size_t>(k) + 1] = k + 1;
    for (int i = 1; i <= k; ++i) inv[static_cast<size_t>(base(i))] = i;
    return inv;
}

CompiledAvoid compile_avoid(const PatternSpec& pattern) {
    const PatternSpec meshform = to_mesh(pattern);
    const int k = meshform.length();
    std::vector<std::vector<char>> cell(static_cast<size_t>(k) + 1,
                                        std::vector<char>(static_cast<size_t>(k) + 1, 0));
    for (const Cell& c : meshform.regions()) cell[static_cast<size_t>(c.x)][static_cast<size_t>(c.y)] = 1;

    std::vector<char> full_col(static_cast<size_t>(k) + 1, 1);
    std::vector<char> full_row(static_cast<size_t>(k) + 1, 1);
    for (int x = 0; x <= k; ++x) {
        for (int y = 0; y <= k; ++y) {
            if (!cell[static_cast<size_t>(x)][static_cast<size_t>(y)]) {
                full_col[static_cast<size_t>(x)] = 0;
            }
            if (!cell[static_cast<size_t>(y)][static_cast<size_t>(x)]) {
                full_row[static_cast<size_t>(x)] = 0;
            }
        }
    }

    CompiledAvoid out;
    out.base = meshform.base();
    out.k = k;
    out.base_inv = padded_inverse(out.base);
    out.adj_after.assign(static_cast<size_t>(k) + 1, 0);
    for (int a = 0; a <= k; ++a) {
        if (!full_col[static_cast<size_t>(a)]) continue;
        if (a == 0) {
            out.anchor_start = true;
        } else if (a == k) {
            out.anchor_end = true;
        } else {
            out.adj_after[static_cast<size_t>(a)] = 1;
        }
    }
    for (int b = 0; b <= k; ++b) {
        if (full_row[static_cast<size_t>(b)]) out.value_adj.push_back(b);
    }
    for (const Cell& c : meshform.regions()) {
        if (!full_col[static_cast<size_t>(c.x)] && !full_row[static_cast<size_t>(c.y)]) {
            out.residual.push_back(c);
        }
    }
    return out;
}

std::int64_t saturating_add_product(std::int64_t acc, std::int64_t coef, std::int64_t value) {
    std::int64_t product = 0;
    if (__builtin_mul_overflow(coef, value, &product) || __builtin_add_overflow(acc, product, &acc)) {
        return std::numeric_limits<std::int64_t>::max();
    }
    return acc;
}

CompiledModel compile(const Model& m) {
    CompiledModel cm;
    cm.model = &m;
    cm.n = m.length;
    for (const Constraint& c : m.constraints) {
        if (const auto* pc = std::get_if<PatternConstraint>(&c)) {
            if (pc->pattern.length() > m.length) {
                if (pc->mode == Mode::contain) cm.infeasible = true;
                // an avoided pattern longer than the target holds vacuously
                continue;
            }
            cm.all_checks.push_back(&c);
            if (pc->mode == Mode::avoid) {
                cm.avoids.push_back(compile_avoid(pc->pattern));
            } else {
                cm.leaf_checks.push_back(&c);
            }
            continue;
        }
        cm.all_checks.push_back(&c);
        cm.leaf_checks.push_back(&c);
        if (const auto* sc = std::get_if<StatisticConstraint>(&c)) {
            const StatisticPredicate& pred = sc->pred;
            if (pred.modulus || (pred.op != Comparator::eq && pred.op != Comparator::le)) continue;
            CompiledBound bound;
            bound.rhs = pred.rhs;
            bool eligible = true;
            for (const StatisticTerm& term : pred.terms) {
                if (term.coefficient < 0) {
                    eligible = false;
                    break;
                }
                std::int64_t* slot = nullptr;
                switch (term.stat) {
                    case StatisticKind::inversions: slot = &bound.coef_inv; break;
                    case StatisticKind::descents: slot = &bound.coef_des; break;
                    case StatisticKind::ascents: slot = &bound.coef_asc; break;
                    case StatisticKind::major_index: slot = &bound.coef_maj; break;
                    case StatisticKind::excedances: eligible = false; break;
                }
                if (!eligible) break;
                if (__builtin_add_overflow(*slot, term.coefficient, slot)) {
                    eligible = false;
                    break;
                }
            }
            if (eligible) cm.bounds.push_back(bound);
        }
    }
    return cm;
}

struct SharedProgress {
    std::optional<std::uint64_t> budget;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exceeded{false};
};

constexpr std::uint64_t kNodeFlushInterval = 1024;

// Per-worker depth-first search over value assignments in ascending order,
// which makes the emitted solution stream lexicographic.
class Searcher {
public:
    using Sink = std::function<bool(const Permutation&)>;

    Searcher(const CompiledModel& cm, bool pruning, SharedProgress* progress)
        : cm_(cm), n_(cm.n), pruning_(pruning), progress_(progress) {
        assign_.assign(static_cast<size_t>(n_), 0);
        used_.assign(static_cast<size_t>(n_) + 1, 0);
        inv_.assign(static_cast<size_t>(n_) + 1, 0);
        des_.assign(static_cast<size_t>(n_) + 1, 0);
        asc_.assign(static_cast<size_t>(n_) + 1, 0);
        maj_.assign(static_cast<size_t>(n_) + 1, 0);
        int max_k = 0;
        for (const CompiledAvoid& p : cm.avoids) max_k = std::max(max_k, p.k);
        occ_.assign(static_cast<size_t>(max_k), 0);
    }

    // Replays the prefix without feasibility checks and searches its subtree.
    // The sink sees satisfying permutations in lexicographic order; returning
    // false stops the search. Returns false when stopped early (sink or
    // budget).
    bool run(const std::vector<int>& prefix, const Sink& sink) {
        reset();
        for (size_t i = 0; i < prefix.size(); ++i) place(static_cast<int>(i) + 1, prefix[i]);
        sink_ = &sink;
        collector_ = nullptr;
        depth_limit_ = n_;
        const bool completed = dfs(static_cast<int>(prefix.size()));
        for (int v : prefix) used_[static_cast<size_t>(v)] = 0;
        flush_nodes();
        return completed;
    }

    // All feasible-so-far prefixes of the given depth, in lexicographic order.
    void collect_prefixes(int depth, std::vector<std::vector<int>>& out) {
        reset();
        sink_ = nullptr;
        collector_ = &out;
        depth_limit_ = depth;
        dfs(0);
        flush_nodes();
    }

    bool prefix_ok(const std::vector<int>& prefix) {
        reset();
        const int m = static_cast<int>(prefix.size());
        for (int i = 1; i <= m; ++i) place(i, prefix[static_cast<size_t>(i) - 1]);
        bool ok = true;
        for (const CompiledBound& b : cm_.bounds) {
            if (bound_value(b, m) > b.rhs) ok = false;
        }
        for (const CompiledAvoid& p : cm_.avoids) {
            if (!ok) break;
            for (int end = 1; end <= m && ok; ++end) {
                if (find_persistent(p, end, m)) ok = false;
            }
        }
        for (int v : prefix) used_[static_cast<size_t>(v)] = 0;
        return ok;
    }

private:
    void reset() {
        std::fill(used_.begin(), used_.end(), 0);
        inv_[0] = des_[0] = asc_[0] = maj_[0] = 0;
    }

    void place(int pos, int v) {
        const int m = pos - 1;
        std::int64_t below = 0;
        for (int u = 1; u < v; ++u) below += used_[static_cast<size_t>(u)];
        assign_[static_cast<size_t>(m)] = v;
        used_[static_cast<size_t>(v)] = 1;
        inv_[static_cast<size_t>(pos)] = inv_[static_cast<size_t>(m)] + (m - below);
        if (pos >= 2) {
            const bool desc = assign_[static_cast<size_t>(m) - 1] > v;
            des_[static_cast<size_t>(pos)] = des_[static_cast<size_t>(m)] + (desc ? 1 : 0);
            asc_[static_cast<size_t>(pos)] = asc_[static_cast<size_t>(m)] + (desc ? 0 : 1);
            maj_[static_cast<size_t>(pos)] = maj_[static_cast<size_t>(m)] + (desc ? m : 0);
        } else {
            des_[1] = asc_[1] = maj_[1] = 0;
        }
    }

    std::int64_t bound_value(const CompiledBound& b, int depth) const {
        std::int64_t acc = 0;
        acc = saturating_add_product(acc, b.coef_inv, inv_[static_cast<size_t>(depth)]);
        acc = saturating_add_product(acc, b.coef_des, des_[static_cast<size_t>(depth)]);
        acc = saturating_add_product(acc, b.coef_asc, asc_[static_cast<size_t>(depth)]);
        acc = saturating_add_product(acc, b.coef_maj, maj_[static_cast<size_t>(depth)]);
        return acc;
    }

    bool count_node() {
        if (++local_nodes_ >= kNodeFlushInterval) flush_nodes();
        return !(progress_ && progress_->exceeded.load(std::memory_order_relaxed));
    }

    void flush_nodes() {
        if (progress_ && local_nodes_ > 0) {
            const std::uint64_t total = progress_->nodes.fetch_add(local_nodes_) + local_nodes_;
            if (progress_->budget && total > *progress_->budget) {
                progress_->exceeded.store(true, std::memory_order_relaxed);
            }
        }
        local_nodes_ = 0;
    }

    // depth = current prefix length; returns false to stop the whole search
    bool dfs(int depth) {
        if (depth == depth_limit_) return emit();
        const int pos = depth + 1;
        std::int64_t used_below = 0;
        for (int v = 1; v <= n_; ++v) {
            if (used_[static_cast<size_t>(v)]) {
                ++used_below;
                continue;
            }
            if (!count_node()) return false;
            assign_[static_cast<size_t>(depth)] = v;
            used_[static_cast<size_t>(v)] = 1;
            inv_[static_cast<size_t>(pos)] = inv_[static_cast<size_t>(depth)] + (depth - used_below);
            if (pos >= 2) {
                const bool desc = assign_[static_cast<size_t>(depth) - 1] > v;
                des_[static_cast<size_t>(pos)] = des_[static_cast<size_t>(depth)] + (desc ? 1 : 0);
                asc_[static_cast<size_t>(pos)] = asc_[static_cast<size_t>(depth)] + (desc ? 0 : 1);
                maj_[static_cast<size_t>(pos)] = maj_[static_cast<size_t>(depth)] + (desc ? depth : 0);
            } else {
                des_[1] = asc_[1] = maj_[1] = 0;
            }
            bool viable = true;
            if (pruning_) {
                for (const CompiledBound& b : cm_.bounds) {
                    if (bound_value(b, pos) > b.rhs) {
                        viable = false;
                        break;
                    }
                }
                if (viable) {
                    for (const CompiledAvoid& p : cm_.avoids) {
                        if (find_persistent(p, pos, pos)) {
                            viable = false;
                            break;
                        }
                    }
                }
            }
            const bool keep_going = viable ? dfs(pos) : true;
            used_[static_cast<size_t>(v)] = 0;
            if (!keep_going) return false;
        }
        return true;
    }

    bool emit() {
        if (collector_) {
            collector_->emplace_back(assign_.begin(), assign_.begin() + depth_limit_);
            return true;
        }
        Permutation perm(assign_);
        for (const Constraint* c : pruning_ ? cm_.leaf_checks : cm_.all_checks) {
            if (!satisfies(perm, *c)) return true;
        }
        return (*sink_)(perm);
    }

    // True iff some occurrence of `p` with last index `end` is valid in every
    // completion of the current prefix of length `m`. Regions left of the last
    // index are fully decided; regions right of it stay empty exactly when no
    // assigned or unused value can land inside them.
    bool find_persistent(const CompiledAvoid& p, int end, int m) {
        if (p.k > n_) return false;
        if (p.anchor_end && end != n_) return false;
        occ_[static_cast<size_t>(p.k) - 1] = end;
        if (p.k == 1) {
            if (p.anchor_start && end != 1) return false;
            return persistent_complete(p, end, m);
        }
        return persistent_extend(p, p.k - 1, end, m);
    }

    bool persistent_extend(const CompiledAvoid& p, int t, int end, int m) {
        const int hi = occ_[static_cast<size_t>(t)] - 1;
        if (hi < t) return false; // no room for indices 1..t below
        const int lo = p.adj_after[static_cast<size_t>(t)] ? hi : t;
        for (int i = hi; i >= lo; --i) {
            bool consistent = true;
            const int vi = assign_[static_cast<size_t>(i) - 1];
            for (int s = t + 1; s <= p.k && consistent; ++s) {
                const int vs = assign_[static_cast<size_t>(occ_[static_cast<size_t>(s) - 1]) - 1];
                consistent = (p.base(t) < p.base(s)) == (vi < vs);
            }
            if (!consistent) continue;
            occ_[static_cast<size_t>(t) - 1] = i;
            if (t == 1) {
                if (p.anchor_start && i != 1) continue;
                if (persistent_complete(p, end, m)) return true;
            } else {
                if (persistent_extend(p, t - 1, end, m)) return true;
            }
        }
        return false;
    }

    int occurrence_value(const CompiledAvoid& p, int y) const {
        if (y == 0) return 0;
        if (y == p.k + 1) return n_ + 1;
        const int pos = occ_[static_cast<size_t>(p.base_inv[static_cast<size_t>(y)]) - 1];
        return assign_[static_cast<size_t>(pos) - 1];
    }

    bool persistent_complete(const CompiledAvoid& p, int end, int m) {
        for (int b : p.value_adj) {
            if (occurrence_value(p, b + 1) != occurrence_value(p, b) + 1) return false;
        }
        for (const Cell& c : p.residual) {
            const int vlo = occurrence_value(p, c.y);
            const int vhi = occurrence_value(p, c.y + 1);
            if (c.x < p.k) {
                const int lo = c.x == 0 ? 0 : occ_[static_cast<size_t>(c.x) - 1];
                const int hi = occ_[static_cast<size_t>(c.x)];
                for (int q = lo + 1; q < hi; ++q) {
                    const int v = assign_[static_cast<size_t>(q) - 1];
                    if (vlo < v && v < vhi) return false;
                }
            } else {
                for (int q = end + 1; q <= m; ++q) {
                    const int v = assign_[static_cast<size_t>(q) - 1];
                    if (vlo < v && v < vhi) return false;
                }
                for (int u = vlo + 1; u < vhi; ++u) {
                    if (!used_[static_cast<size_t>(u)]) return false;
                }
            }
        }
        return true;
    }

    const CompiledModel& cm_;
    int n_;
    bool pruning_;
    SharedProgress* progress_;
    const Sink* sink_ = nullptr;
    std::vector<std::vector<int>>* collector_ = nullptr;
    int depth_limit_ = 0;
    std::uint64_t local_nodes_ = 0;
    std::vector<int> assign_;
    std::vector<char> used_;
    std::vector<std::int64_t> inv_, des_, asc_, maj_;
    std::vector<int> occ_;
};

void validate_config(const SolveConfig& cfg) {
    if (cfg.workers < 1) throw ValidationError("workers must be at least 1");
    if (cfg.split_depth < 0) throw ValidationError("split depth must be nonnegative");
    if (cfg.limit && *cfg.limit == 0) throw ValidationError("limit must be positive");
    if (cfg.node_budget && *cfg.node_budget == 0) throw ValidationError("node budget must be positive");
}

std::vector<std::vector<int>> make_tasks(const CompiledModel& cm, const SolveConfig& cfg,
                                         int depth, SharedProgress* progress) {
    std::vector<std::vector<int>> tasks;
    if (depth == 0) {
        tasks.emplace_back();
        return tasks;
    }
    Searcher searcher(cm, cfg.pruning, progress);
    searcher.collect_prefixes(depth, tasks);
    return tasks;
}

std::vector<std::uint64_t> emitted_stats(const Permutation& perm, const Model& m) {
    std::vector<std::uint64_t> values;
    values.reserve(m.emit.size());
    for (StatisticKind kind : m.emit) values.push_back(statistic(perm, kind));
    return values;
}

struct TaskResult {
    std::uint64_t count = 0;
    std::vector<Solution> solutions;
};

SolveOutcome run_solve(const Model& m, const SolveConfig& cfg, bool want_solutions) {
    validate_model(m);
    validate_config(cfg);

    CompiledModel cm = compile(m);
    SolveOutcome outcome;
    if (cm.infeasible) return outcome;

    SharedProgress progress;
    progress.budget = cfg.node_budget;

    const int depth = std::min(cfg.split_depth, m.length - 1);
    const auto tasks = make_tasks(cm, cfg, depth, &progress);

    const int workers = static_cast<int>(std::min<size_t>(static_cast<size_t>(cfg.workers), tasks.size()));

    if (workers <= 1) {
        Searcher searcher(cm, cfg.pruning, &progress);
        bool stopped = false;
        Searcher::Sink sink = [&](const Permutation& perm) {
            ++outcome.count;
            if (want_solutions) outcome.solutions.push_back({perm, emitted_stats(perm, m)});
            if (cfg.limit && outcome.count >= *cfg.limit) {
                stopped = true;
                return false;
            }
            return true;
        };
        for (const auto& task : tasks) {
            if (!searcher.run(task, sink)) break;
        }
        if (progress.exceeded.load()) throw ResourceLimit("node budget exhausted");
        outcome.exhausted = !stopped;
        return outcome;
    }

    std::vector<TaskResult> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        Searcher searcher(cm, cfg.pruning, &progress);
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            TaskResult& r = results[i];
            Searcher::Sink sink = [&](const Permutation& perm) {
                ++r.count;
                if (want_solutions) r.solutions.push_back({perm, emitted_stats(perm, m)});
                return true;
            };
            if (!searcher.run(tasks[i], sink)) break;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (progress.exceeded.load()) throw ResourceLimit("node budget exhausted");

    // merge in task (= lexicographic) order, applying the limit to the stream
    bool stopped = false;
    for (const TaskResult& r : results) {
        if (stopped) break;
        if (!want_solutions) {
            outcome.count += r.count;
            if (cfg.limit && outcome.count >= *cfg.limit) {
                outcome.count = *cfg.limit;
                stopped = true;
            }
            continue;
        }
        for (const Solution& s : r.solutions) {
            ++outcome.count;
            outcome.solutions.push_back(s);
            if (cfg.limit && outcome.count >= *cfg.limit) {
                stopped = true;
                break;
            }
        }
    }
    outcome.exhausted = !stopped;
    return outcome;
}

} // namespace

SolveOutcome solve(const Model& m, const SolveConfig& cfg) {
    return run_solve(m, cfg, cfg.mode == SolveMode::enumerate);
}

void solve_stream(const Model& m, const SolveConfig& cfg,
                  const std::function<bool(const Solution&)>& sink) {
    validate_model(m);
    validate_config(cfg);

    if (cfg.workers > 1) {
        SolveConfig inner = cfg;
        inner.mode = SolveMode::enumerate;
        SolveOutcome outcome = run_solve(m, inner, true);
        for (const Solution& s : outcome.solutions) {
            if (!sink(s)) return;
        }
        return;
    }

    CompiledModel cm = compile(m);
    if (cm.infeasible) return;
    SharedProgress progress;
    progress.budget = cfg.node_budget;
    const int depth = std::min(cfg.split_depth, m.length - 1);
    const auto tasks = make_tasks(cm, cfg, depth, &progress);
    Searcher searcher(cm, cfg.pruning, &progress);
    std::uint64_t emitted = 0;
    Searcher::Sink inner = [&](const Permutation& perm) {
        ++emitted;
        if (!sink({perm, emitted_stats(perm, m)})) return false;
        return !(cfg.limit && emitted >= *cfg.limit);
    };
    for (const auto& task : tasks) {
        if (!searcher.run(task, inner)) break;
    }
    if (progress.exceeded.load()) throw ResourceLimit("node budget exhausted");
}

bool prefix_feasible(const PartialAssignment& pa, const Model& m) {
    validate_model(m);
    const int n = m.length;
    if (static_cast<int>(pa.prefix.size()) > n) {
        throw ValidationError("prefix longer than the model length");
    }
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : pa.prefix) {
        if (v < 1 || v > n) throw ValidationError("prefix value " + std::to_string(v) + " outside 1..n");
        if (seen[static_cast<size_t>(v)]) throw ValidationError("prefix repeats value " + std::to_string(v));
        seen[static_cast<size_t>(v)] = 1;
    }

    CompiledModel cm = compile(m);
    if (cm.infeasible) return false;
    Searcher searcher(cm, true, nullptr);
    return searcher.prefix_ok(pa.prefix);
}

std::vector<PartialAssignment> split_work(const Model& m, const SolveConfig& cfg) {
    validate_model(m);
    validate_config(cfg);
    if (cfg.split_depth >= m.length) {
        throw ValidationError("split depth must be smaller than the model length");
    }
    CompiledModel cm = compile(m);
    std::vector<PartialAssignment> out;
    if (cm.infeasible) return out;
    SharedProgress progress;
    for (auto& task : make_tasks(cm, cfg, cfg.split_depth, &progress)) {
        out.push_back({std::move(task)});
    }
    return out;
}

} // namespace permforge
