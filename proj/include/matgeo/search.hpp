#pragma once

#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <random>

#include "matgeo/classify.hpp"

namespace matgeo {

// A homomorphism search instance: partial assignment plus structural
// constraint flags.  Feasibility uses only the adjacency constraints of the
// homomorphism definition; non-adjacent preimages stay unconstrained.
struct SearchProblem {
    Space src;
    Space dst;
    std::vector<std::pair<Enc, Enc>> pins;
    bool fix_zero_to_zero = false;
    bool require_distance2_image_pair = false;  // designated pair (0, E11+E22) at image distance exactly 2
    bool require_degenerate_witness = false;    // post-filter solutions through the degeneracy detector
    bool symmetry_reduction = false;            // canonicalize the first branched value; needs pins within {0 -> 0}
    std::uint64_t budget = 0;                   // 0 means the configured default
    std::uint64_t seed = 0;
    bool least_constraining_values = false;     // order values by one-step lookahead flexibility
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    int max_depth = 0;
};

enum class SearchStatus { Found, Unsat, BudgetExceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::Unsat;
    std::optional<MapTable> table;
    SearchStats stats;
};

namespace detail {

// Precomputed structure shared by all searches over one (src, dst) pair.
// Value sets are bitmasks over destination encodings, `blocks` words each.
struct SearchContext {
    Space src, dst;
    std::size_t blocks;
    std::vector<std::vector<std::uint32_t>> src_neighbors;  // by src encoding
    std::vector<std::uint64_t> adj_mask;                    // [val * blocks ...]: values adjacent to val
    std::vector<std::uint64_t> dist2_mask;                  // values at distance exactly 2 from val
    std::vector<std::vector<std::uint64_t>> rank_class;     // mask of all values of rank r

    SearchContext(Space s, Space d) : src(s), dst(d) {
        require_cap(src.count(), "search source enumeration");
        require_cap(dst.count(), "search destination enumeration");
        if (dst.count() > 4096) throw cap_exceeded("destination space too large for search masks");
        blocks = (dst.count() + 63) / 64;
        std::vector<Enc> r1s;
        for (const Mat& r : rank_one_list(src)) r1s.push_back(src.encode(r));
        src_neighbors.resize(src.count());
        for (Enc e = 0; e < src.count(); ++e) {
            Mat x = src.decode(e);
            for (Enc re : r1s)
                src_neighbors[e].push_back(static_cast<std::uint32_t>(src.encode(x + src.decode(re))));
        }
        std::size_t nd = dst.count();
        adj_mask.assign(nd * blocks, 0);
        dist2_mask.assign(nd * blocks, 0);
        rank_class.assign(std::min(dst.m, dst.n) + 1, std::vector<std::uint64_t>(blocks, 0));
        std::vector<Mat> dmats;
        dmats.reserve(nd);
        for (Enc e = 0; e < nd; ++e) {
            dmats.push_back(dst.decode(e));
            int r = rank(dmats.back());
            rank_class[r][e / 64] |= 1ull << (e % 64);
        }
        for (Enc a = 0; a < nd; ++a)
            for (Enc b = 0; b < nd; ++b) {
                int dist = rank(dmats[a] - dmats[b]);
                if (dist == 1) adj_mask[a * blocks + b / 64] |= 1ull << (b % 64);
                if (dist == 2) dist2_mask[a * blocks + b / 64] |= 1ull << (b % 64);
            }
    }
};

}  // namespace detail

// Depth-first homomorphism search.  Candidate sets shrink by forward
// checking: assigning a vertex intersects every unassigned neighbour's set
// with the image's neighbourhood, so dead branches surface at the earliest
// adjacent variable.  The next variable is always one with the fewest
// remaining candidates (ties by encoding), which keeps the walk inside the
// constrained region of the graph; a static breadth-first order stalls on the
// larger fields.  Unsat is only reported after complete exploration.
class HomSearcher {
public:
    explicit HomSearcher(const SearchProblem& p) : prob_(p), ctx_(p.src, p.dst) {
        budget_ = p.budget ? p.budget : config().node_budget;
        if (prob_.fix_zero_to_zero) prob_.pins.emplace_back(0, 0);
        std::sort(prob_.pins.begin(), prob_.pins.end());
        prob_.pins.erase(std::unique(prob_.pins.begin(), prob_.pins.end()), prob_.pins.end());
        for (std::size_t i = 1; i < prob_.pins.size(); ++i)
            if (prob_.pins[i].first == prob_.pins[i - 1].first)
                throw invalid_problem("conflicting pins on one source vertex");
        for (const auto& [se, de] : prob_.pins)
            if (se >= ctx_.src.count() || de >= ctx_.dst.count()) throw invalid_problem("pin out of range");
        for (std::size_t i = 0; i < prob_.pins.size(); ++i)
            for (std::size_t j = i + 1; j < prob_.pins.size(); ++j) {
                Mat a = ctx_.src.decode(prob_.pins[i].first), b = ctx_.src.decode(prob_.pins[j].first);
                if (rank(a - b) == 1) {
                    Mat fa = ctx_.dst.decode(prob_.pins[i].second), fb = ctx_.dst.decode(prob_.pins[j].second);
                    if (rank(fa - fb) != 1)
                        throw invalid_problem("pinned adjacent vertices have non-adjacent images");
                }
            }
        if (prob_.require_distance2_image_pair) designated_ = designated_pair();
        if (prob_.symmetry_reduction)
            for (const auto& [se, de] : prob_.pins)
                if (!(se == 0 && de == 0))
                    throw invalid_problem("symmetry reduction is only valid with pins within {0 -> 0}");
        build_order();
        masks_.resize(ctx_.src.count() * ctx_.blocks);
        pool_.resize((ctx_.src.count() + 1) * (max_degree() + 2) * ctx_.blocks);
        depth_blocks_ = (order_.size() + 64) / 64;
        past_fc_.assign(ctx_.src.count() * depth_blocks_, 0);
        conf_.assign((order_.size() + 1) * depth_blocks_, 0);
    }

    // Runs the search, invoking sink(table) on every solution; sink returns
    // false to stop.  Found wins over BudgetExceeded wins over Unsat.
    // `value_order` permutes the value loop; `guide` optionally names a
    // preferred first value per variable (tried ahead of the permutation).
    SearchResult run(const std::function<bool(const MapTable&)>& sink,
                     const std::vector<Enc>* value_order = nullptr,
                     const std::vector<Enc>* guide = nullptr) {
        guide_ = guide;
        assignment_.assign(ctx_.src.count(), UNASSIGNED);
        stats_ = SearchStats{};
        found_any_ = false;
        solutions_emitted_ = 0;
        stopped_ = false;
        out_of_budget_ = false;
        first_solution_.reset();
        trail_.clear();
        pool_top_ = 0;
        // full candidate sets
        std::size_t nd = ctx_.dst.count();
        for (Enc v = 0; v < ctx_.src.count(); ++v)
            for (std::size_t b = 0; b < ctx_.blocks; ++b) {
                std::uint64_t word = ~0ull;
                if (b == ctx_.blocks - 1 && nd % 64) word = (1ull << (nd % 64)) - 1;
                masks_[v * ctx_.blocks + b] = word;
            }
        std::fill(past_fc_.begin(), past_fc_.end(), 0);
        std::fill(conf_.begin(), conf_.end(), 0);
        bool consistent = true;
        Enc failed = 0;
        for (const auto& [se, de] : prob_.pins) {
            if (!mask_test(se, de)) { consistent = false; break; }
            assignment_[se] = static_cast<std::int64_t>(de);
            if (!propagate(se, de, PIN_DEPTH, &failed)) { consistent = false; break; }
        }
        std::vector<Enc> base_order(nd);
        std::iota(base_order.begin(), base_order.end(), 0);
        const std::vector<Enc>& vorder = value_order ? *value_order : base_order;
        if (consistent) dfs(0, vorder, sink);
        SearchResult res;
        res.stats = stats_;
        if (found_any_) res.status = SearchStatus::Found;
        else if (out_of_budget_) res.status = SearchStatus::BudgetExceeded;
        else res.status = SearchStatus::Unsat;
        if (first_solution_) res.table = *first_solution_;
        return res;
    }

private:
    static constexpr std::int64_t UNASSIGNED = -1;

    // Designated source pair for the distance-2 image constraint: 0 and the
    // rank-2 diagonal unit sum; the graph's automorphisms move any distance-2
    // source pair onto it.
    std::pair<Enc, Enc> designated_pair() const {
        if (std::min(ctx_.src.m, ctx_.src.n) < 2)
            throw invalid_problem("distance-2 constraint needs min(m, n) >= 2");
        return {0, ctx_.src.encode(diag_rect(*ctx_.src.field, ctx_.src.m, ctx_.src.n, 2))};
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& nb : ctx_.src_neighbors) d = std::max(d, nb.size());
        return d;
    }

    void build_order() {
        std::vector<int> state(ctx_.src.count(), 0);
        std::deque<Enc> queue;
        std::vector<Enc> seeds;
        for (const auto& [se, de] : prob_.pins) seeds.push_back(se);
        if (seeds.empty()) seeds.push_back(0);
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
        for (Enc s : seeds) {
            state[s] = 1;
            queue.push_back(s);
        }
        std::vector<Enc> bfs;
        while (!queue.empty()) {
            Enc cur = queue.front();
            queue.pop_front();
            bfs.push_back(cur);
            std::vector<Enc> next;
            for (auto nb : ctx_.src_neighbors[cur])
                if (!state[nb]) {
                    state[nb] = 1;
                    next.push_back(nb);
                }
            std::sort(next.begin(), next.end());
            for (Enc e : next) queue.push_back(e);
        }
        for (Enc e = 0; e < ctx_.src.count(); ++e)
            if (!state[e]) bfs.push_back(e);
        std::vector<char> pinned(ctx_.src.count(), 0);
        for (const auto& [se, de] : prob_.pins) pinned[se] = 1;
        for (Enc e : bfs)
            if (!pinned[e]) order_.push_back(static_cast<std::uint32_t>(e));
    }

    bool mask_test(Enc var, Enc val) const {
        return masks_[var * ctx_.blocks + val / 64] >> (val % 64) & 1;
    }

    bool mask_empty(Enc var) const {
        for (std::size_t b = 0; b < ctx_.blocks; ++b)
            if (masks_[var * ctx_.blocks + b]) return false;
        return true;
    }

    void save_mask(Enc var, std::uint32_t depth) {
        trail_.push_back(TrailEntry{static_cast<std::uint32_t>(var), depth, pool_top_});
        std::copy_n(masks_.begin() + var * ctx_.blocks, ctx_.blocks, pool_.begin() + pool_top_);
        pool_top_ += ctx_.blocks;
        if (depth != PIN_DEPTH) past_fc_[var * depth_blocks_ + depth / 64] |= 1ull << (depth % 64);
    }

    // Intersects `var`s candidates with `table` row of `val`; false when empty.
    bool shrink(Enc var, const std::vector<std::uint64_t>& table, Enc val, std::uint32_t depth) {
        save_mask(var, depth);
        bool nonempty = false;
        for (std::size_t b = 0; b < ctx_.blocks; ++b) {
            std::uint64_t w = masks_[var * ctx_.blocks + b] & table[val * ctx_.blocks + b];
            masks_[var * ctx_.blocks + b] = w;
            nonempty |= w != 0;
        }
        return nonempty;
    }

    // Forward checking after assigning var := val at `depth`; on failure the
    // variable whose candidates emptied comes back through *failed.
    bool propagate(Enc var, Enc val, std::uint32_t depth, Enc* failed) {
        for (auto nb : ctx_.src_neighbors[var])
            if (assignment_[nb] == UNASSIGNED && !shrink(nb, ctx_.adj_mask, val, depth)) {
                *failed = nb;
                return false;
            }
        if (designated_) {
            auto [u, v] = *designated_;
            Enc other = var == u ? v : (var == v ? u : var);
            if (other != var && assignment_[other] == UNASSIGNED &&
                !shrink(other, ctx_.dist2_mask, val, depth)) {
                *failed = other;
                return false;
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            TrailEntry e = trail_.back();
            trail_.pop_back();
            std::copy_n(pool_.begin() + e.off, ctx_.blocks, masks_.begin() + e.var * ctx_.blocks);
            pool_top_ = e.off;
            if (e.depth != PIN_DEPTH)
                past_fc_[e.var * depth_blocks_ + e.depth / 64] &= ~(1ull << (e.depth % 64));
        }
    }

    int mask_popcount(Enc var) const {
        int c = 0;
        for (std::size_t b = 0; b < ctx_.blocks; ++b)
            c += std::popcount(masks_[var * ctx_.blocks + b]);
        return c;
    }

    // Minimum-remaining-values selection, ties broken by encoding.
    Enc select_variable() const {
        Enc best = 0;
        int best_count = -1;
        for (Enc v : order_) {
            if (assignment_[v] != UNASSIGNED) continue;
            int c = mask_popcount(v);
            if (best_count < 0 || c < best_count) {
                best = v;
                best_count = c;
                if (c <= 1) break;
            }
        }
        return best;
    }

    // Conflict-directed backjumping over the forward-checking trail.  Returns
    // the depth to resume at: `depth - 1` is a chronological step, anything
    // smaller jumps over exhausted levels whose assignments provably do not
    // matter for this dead end, and -1 abandons the whole tree.  Subtrees
    // that produced a solution always unwind chronologically, so enumeration
    // stays exhaustive.
    int dfs(std::size_t depth, const std::vector<Enc>& vorder,
            const std::function<bool(const MapTable&)>& sink) {
        if (stopped_ || out_of_budget_) return -1;
        stats_.max_depth = std::max(stats_.max_depth, static_cast<int>(depth));
        if (depth == order_.size()) {
            MapTable t(ctx_.src, ctx_.dst);
            for (Enc e = 0; e < ctx_.src.count(); ++e) t.out[e] = static_cast<Enc>(assignment_[e]);
            if (t.hom_violation()) throw error("internal: search emitted a non-homomorphism");
            if (prob_.require_degenerate_witness && !is_degenerate(t))
                return static_cast<int>(depth) - 1;
            found_any_ = true;
            ++solutions_emitted_;
            if (!first_solution_) first_solution_ = t;
            if (!sink(t)) stopped_ = true;
            return static_cast<int>(depth) - 1;
        }
        Enc var = select_variable();
        std::optional<Enc> forced;
        if (prob_.symmetry_reduction && depth == 0) forced = canonical_first_value(var);
        std::vector<Enc> vals;
        std::optional<Enc> preferred;
        if (guide_) {
            Enc g = (*guide_)[var];
            if (mask_test(var, g) && (!forced || g == *forced)) {
                preferred = g;
                vals.push_back(g);
            }
        }
        for (Enc val : vorder) {
            if (preferred && val == *preferred) continue;
            if (!mask_test(var, val)) continue;
            if (forced && val != *forced) continue;
            vals.push_back(val);
        }
        if (prob_.least_constraining_values && !preferred && vals.size() > 1) {
            // one-step lookahead: total remaining flexibility of the
            // unassigned neighbours after taking this value, larger first;
            // ties keep the incoming (possibly shuffled) order
            std::vector<std::pair<std::int64_t, Enc>> scored;
            scored.reserve(vals.size());
            for (std::size_t pos = 0; pos < vals.size(); ++pos) {
                Enc val = vals[pos];
                std::int64_t score = 0;
                for (auto nb : ctx_.src_neighbors[var]) {
                    if (assignment_[nb] != UNASSIGNED) continue;
                    for (std::size_t b = 0; b < ctx_.blocks; ++b)
                        score += std::popcount(masks_[nb * ctx_.blocks + b] &
                                               ctx_.adj_mask[val * ctx_.blocks + b]);
                }
                scored.emplace_back(-score * static_cast<std::int64_t>(vals.size()) -
                                        static_cast<std::int64_t>(pos),
                                    val);
            }
            std::sort(scored.begin(), scored.end());
            for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = scored[i].second;
        }
        std::uint64_t* conf = &conf_[depth * depth_blocks_];
        std::fill(conf, conf + depth_blocks_, 0);
        // assignments that pruned this variable's own candidates are in
        // conflict with every one of its values
        for (std::size_t b = 0; b < depth_blocks_; ++b) conf[b] |= past_fc_[var * depth_blocks_ + b];
        bool solution_below = false;
        for (Enc val : vals) {
            if (stats_.nodes >= budget_) {
                out_of_budget_ = true;
                return -1;
            }
            ++stats_.nodes;
            std::size_t mark = trail_.size();
            assignment_[var] = static_cast<std::int64_t>(val);
            Enc failed = 0;
            if (propagate(var, val, static_cast<std::uint32_t>(depth), &failed)) {
                std::uint64_t before = solutions_emitted_;
                int jump = dfs(depth + 1, vorder, sink);
                solution_below |= solutions_emitted_ != before;
                undo_to(mark);
                assignment_[var] = UNASSIGNED;
                ++stats_.backtracks;
                if (stopped_ || out_of_budget_) return -1;
                if (jump < static_cast<int>(depth)) return jump;  // jumped over this level
            } else {
                // the fail variable's remaining prunings name the conflict
                for (std::size_t b = 0; b < depth_blocks_; ++b)
                    conf[b] |= past_fc_[failed * depth_blocks_ + b];
                undo_to(mark);
                assignment_[var] = UNASSIGNED;
                ++stats_.backtracks;
            }
        }
        if (solution_below) return static_cast<int>(depth) - 1;
        conf[depth / 64] &= ~(1ull << (depth % 64));  // this level never blames itself
        int target = -1;
        for (std::size_t b = depth_blocks_; b-- > 0;)
            if (conf[b]) {
                target = static_cast<int>(b * 64 + 63 - std::countl_zero(conf[b]));
                break;
            }
        if (target >= 0) {
            // pass the remaining conflicts to the jump target
            std::uint64_t* tconf = &conf_[static_cast<std::size_t>(target) * depth_blocks_];
            for (std::size_t b = 0; b < depth_blocks_; ++b) tconf[b] |= conf[b];
            tconf[target / 64] &= ~(1ull << (target % 64));
        }
        return target;
    }

    // Orbit representative for the first branched variable.  The destination
    // automorphisms X -> P X Q fix a pinned 0 and act transitively on each
    // rank class, so when the variable's candidate set is exactly one rank
    // class its value can be fixed to the diagonal representative; with no
    // pins at all translations make 0 the representative of the full space.
    // Any other candidate set leaves the value unrestricted.
    std::optional<Enc> canonical_first_value(Enc var) const {
        auto mask_is = [&](const std::vector<std::uint64_t>& ref) {
            for (std::size_t b = 0; b < ctx_.blocks; ++b)
                if (masks_[var * ctx_.blocks + b] != ref[b]) return false;
            return true;
        };
        if (prob_.pins.empty()) {
            std::vector<std::uint64_t> full(ctx_.blocks, ~0ull);
            if (ctx_.dst.count() % 64) full.back() = (1ull << (ctx_.dst.count() % 64)) - 1;
            if (mask_is(full)) return 0;
            return std::nullopt;
        }
        for (int r = 1; r < static_cast<int>(ctx_.rank_class.size()); ++r)
            if (mask_is(ctx_.rank_class[r]))
                return ctx_.dst.encode(diag_rect(*ctx_.dst.field, ctx_.dst.m, ctx_.dst.n, r));
        return std::nullopt;
    }

    static constexpr std::uint32_t PIN_DEPTH = 0xffffffffu;

    struct TrailEntry {
        std::uint32_t var;
        std::uint32_t depth;
        std::size_t off;
    };

    SearchProblem prob_;
    detail::SearchContext ctx_;
    std::uint64_t budget_ = 0;
    std::vector<std::uint32_t> order_;
    std::vector<std::int64_t> assignment_;
    std::optional<std::pair<Enc, Enc>> designated_;
    std::optional<MapTable> first_solution_;
    SearchStats stats_;
    bool found_any_ = false, stopped_ = false, out_of_budget_ = false;
    std::uint64_t solutions_emitted_ = 0;
    std::vector<std::uint64_t> masks_;     // candidate sets by variable
    std::vector<std::uint64_t> pool_;      // saved masks, stack discipline
    std::size_t pool_top_ = 0;
    std::vector<TrailEntry> trail_;
    std::size_t depth_blocks_ = 1;
    std::vector<std::uint64_t> past_fc_;   // per variable: depths whose assignment pruned it
    std::vector<std::uint64_t> conf_;      // per active depth: conflicting earlier depths
    const std::vector<Enc>* guide_ = nullptr;
};

inline SearchResult search_hom(const SearchProblem& p) {
    HomSearcher searcher(p);
    return searcher.run([](const MapTable&) { return false; });
}

// Continues past the first solution, yielding up to `limit` tables.
inline std::vector<MapTable> enumerate_homs(const SearchProblem& p, std::uint64_t limit) {
    std::vector<MapTable> out;
    if (limit == 0) return out;
    HomSearcher searcher(p);
    searcher.run([&](const MapTable& t) {
        out.push_back(t);
        return out.size() < limit;
    });
    return out;
}

namespace detail {

// A randomized member of the canonical families, used as a value-ordering
// guide for restarts.  Even-numbered draws are block bijections P (X^tau) Q,
// odd ones field-tower colourings into a random clique through 0; nullopt
// when the spaces do not support the family.
inline std::optional<std::vector<Enc>> random_guide(const Space& src, const Space& dst,
                                                    std::mt19937_64& rng, int family) {
    auto homs = enumerate_field_homs(*src.field, *dst.field);
    try {
        if (family < 2) {
            if (homs.empty() || src.m != src.n || dst.m < src.n || dst.n < src.n) return std::nullopt;
            Space pm(*dst.field, dst.m, dst.m), qn(*dst.field, dst.n, dst.n);
            std::uniform_int_distribution<Enc> pick_p(0, pm.count() - 1), pick_q(0, qn.count() - 1);
            Mat p = pm.decode(pick_p(rng)), q = qn.decode(pick_q(rng));
            for (int tries = 0; tries < 64 && !is_invertible(p); ++tries) p = pm.decode(pick_p(rng));
            for (int tries = 0; tries < 64 && !is_invertible(q); ++tries) q = qn.decode(pick_q(rng));
            if (!is_invertible(p) || !is_invertible(q)) return std::nullopt;
            const FieldHom& tau = homs[rng() % homs.size()];
            CanonicalForm form = semrl_form(
                family == 0 ? FormVariant::SemrlStandard : FormVariant::SemrlTranspose, src, dst, p,
                Mat(*dst.field, src.n, src.n), tau, q);
            return tabulate(form).out;
        }
        // colouring guide: random clique through 0, random independent weights
        Mat zero(*dst.field, dst.m, dst.n);
        auto sets = maximal_sets_through(zero);
        const MaximalSet& target = sets[rng() % sets.size()];
        int em = std::max(src.m, src.n), en = std::min(src.m, src.n);
        std::uint64_t tower = ipow(src.field->q(), static_cast<unsigned>(em));
        if (tower > 60000) return std::nullopt;
        std::uniform_int_distribution<Elt> pick_w(0, static_cast<Elt>(tower - 1));
        for (int tries = 0; tries < 32; ++tries) {
            std::vector<Elt> weights(static_cast<std::size_t>(en));
            for (auto& w : weights) w = pick_w(rng);
            try {
                return make_colouring(src, target, weights).out;
            } catch (const improper_colouring&) {
                continue;
            }
        }
        return std::nullopt;
    } catch (const error&) {
        return std::nullopt;
    }
}

}  // namespace detail

// Randomized restarts: each restart shuffles the value order and, on most
// attempts, follows a randomly drawn canonical-family table as the preferred
// value per variable (deviating wherever constraints force it).  Returns up
// to `count` distinct solutions, reproducible for a fixed seed.
inline std::vector<MapTable> sample_homs(const SearchProblem& p, std::uint64_t count, std::uint64_t seed,
                                         std::uint64_t restart_budget = 50'000, std::uint64_t max_restarts = 0) {
    std::vector<MapTable> out;
    if (count == 0) return out;
    SearchProblem local = p;
    local.budget = restart_budget;
    HomSearcher searcher(local);
    std::vector<Enc> vorder(p.dst.count());
    std::iota(vorder.begin(), vorder.end(), 0);
    if (max_restarts == 0) max_restarts = std::max<std::uint64_t>(200, count * 60);
    std::vector<std::vector<Enc>> seen;
    for (std::uint64_t attempt = 0; attempt < max_restarts && out.size() < count; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + attempt + 1);
        std::shuffle(vorder.begin(), vorder.end(), rng);
        std::optional<std::vector<Enc>> guide;
        if (attempt % 4 != 3) guide = detail::random_guide(p.src, p.dst, rng, static_cast<int>(attempt % 4));
        std::optional<MapTable> got;
        searcher.run(
            [&](const MapTable& t) {
                got = t;
                return false;
            },
            &vorder, guide ? &*guide : nullptr);
        if (got && std::find(seen.begin(), seen.end(), got->out) == seen.end()) {
            seen.push_back(got->out);
            out.push_back(std::move(*got));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Problem file: mirrors the map-table header, then pins and constraint flags.

inline SearchProblem read_problem(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "problem v1") throw parse_error("expected 'problem v1' header");
    auto read_space = [&](const std::string& tag) {
        if (!std::getline(is, line) || line.rfind(tag + " field ", 0) != 0)
            throw parse_error("expected '" + tag + " field ...'");
        const Field& f = parse_field_spec(line.substr(tag.size() + 7));
        if (!std::getline(is, line) || line.rfind(tag + " shape ", 0) != 0)
            throw parse_error("expected '" + tag + " shape ...'");
        std::istringstream ss(line.substr(tag.size() + 7));
        int m = 0, n = 0;
        ss >> m >> n;
        if (m < 1 || n < 1) throw parse_error("bad shape in " + tag);
        return Space(f, m, n);
    };
    SearchProblem p;
    p.src = read_space("src");
    p.dst = read_space("dst");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("pin ", 0) == 0) {
            auto sep = line.find(" => ");
            if (sep == std::string::npos) throw parse_error("malformed pin line: " + line);
            Mat a = p.src.parse(line.substr(4, sep - 4));
            Mat b = p.dst.parse(line.substr(sep + 4));
            p.pins.emplace_back(p.src.encode(a), p.dst.encode(b));
        } else if (line.rfind("constraint ", 0) == 0) {
            std::string flag = line.substr(11);
            if (flag == "fix_zero_to_zero") p.fix_zero_to_zero = true;
            else if (flag == "require_distance2_image_pair") p.require_distance2_image_pair = true;
            else if (flag == "require_degenerate_witness") p.require_degenerate_witness = true;
            else if (flag == "symmetry_reduction") p.symmetry_reduction = true;
            else throw parse_error("unknown constraint flag: " + flag);
        } else if (line.rfind("budget ", 0) == 0) {
            p.budget = std::stoull(line.substr(7));
        } else if (line.rfind("seed ", 0) == 0) {
            p.seed = std::stoull(line.substr(5));
        } else {
            throw parse_error("unrecognized problem line: " + line);
        }
    }
    return p;
}

}  // namespace matgeo
