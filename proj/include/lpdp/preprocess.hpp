#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lpdp/block_table.hpp"
#include "lpdp/block_view.hpp"
#include "lpdp/solution.hpp"

namespace lpdp {

// Cooperative cutoff signal; converted to a Timeout status at the solve entry
// point.
struct timeout_error {};

struct PreprocessLimits {
    bool rule_end_above_root = true;  // segments may only end above their root
    bool rule_roots_increasing = true; // new roots must top all prior roots
    bool prune_dominated = true;
    std::size_t max_table_entries = BlockTable::default_max_entries;
    Deadline deadline{};
};

namespace detail {

class SegmentEngine {
public:
    SegmentEngine(const BlockView& view, std::span<const BlockTable* const> child_tables,
                  const PreprocessLimits& lim)
        : view_(view), child_tables_(child_tables), lim_(lim),
          table_(static_cast<int>(view.aux.size()), lim.max_table_entries) {
        visited_.assign(view_.total_nodes(), 0);
        b_child_.resize(view_.children.size());
        c_child_.assign(view_.children.size(), 0);
        // lift_[c][j]: this view's aux standing for the same original vertex
        // as child c's boundary vertex j — the port's faux mask
        lift_.resize(view_.children.size());
        for (std::uint32_t v = 0; v < view_.inner_count(); ++v) {
            const ViewInner& in = view_.inner[v];
            if (in.owner < 0) continue;
            auto& slots = lift_[static_cast<std::size_t>(in.owner)];
            if (slots.size() <= in.child_local) slots.resize(in.child_local + 1, 0);
            slots[in.child_local] = view_.node_faux[v];
        }
    }

    BlockTable run() {
        start_segments();
        table_.freeze(lim_.prune_dominated);
        return std::move(table_);
    }

    std::uint64_t expanded() const { return expanded_; }

private:
    void tick() {
        if ((++expanded_ & 0xffff) == 0 && lim_.deadline.expired()) throw timeout_error{};
    }

    void visit(std::uint32_t node) {
        visited_[node] = 1;
        faux_trail_.push_back(faux_);
        faux_ |= view_.node_faux[node];
    }

    void unvisit(std::uint32_t node) {
        faux_ = faux_trail_.back();
        faux_trail_.pop_back();
        visited_[node] = 0;
    }

    bool child_feasible(std::size_t c) const {
        return child_tables_[c]->feasible(make_match_key(b_child_[c]), c_child_[c]);
    }

    // Leaving `u` by a real edge after entering by a real edge pins u's
    // original vertex for the surrounding path: the owning child must avoid
    // it. Returns false (state unchanged) if that makes the child infeasible.
    bool leave_real(std::uint32_t u, bool entered_clique) {
        if (entered_clique || view_.is_aux_node(u)) return true;
        const std::int32_t c = view_.inner[u].owner;
        if (c < 0) return true;
        const BoundaryMask bit = BoundaryMask{1} << view_.inner[u].child_local;
        c_child_[static_cast<std::size_t>(c)] |= bit;
        if (child_feasible(static_cast<std::size_t>(c))) return true;
        c_child_[static_cast<std::size_t>(c)] &= ~bit;
        return false;
    }

    void undo_leave_real(std::uint32_t u, bool entered_clique) {
        if (entered_clique || view_.is_aux_node(u)) return;
        const std::int32_t c = view_.inner[u].owner;
        if (c < 0) return;
        c_child_[static_cast<std::size_t>(c)] &= ~(BoundaryMask{1} << view_.inner[u].child_local);
    }

    void start_segments() {
        const std::uint32_t beta = static_cast<std::uint32_t>(view_.aux.size());
        std::uint32_t first = 0;
        if (lim_.rule_roots_increasing && !roots_.empty()) first = roots_.back() + 1u;
        for (std::uint32_t r = first; r < beta; ++r) {
            const std::uint32_t rn = view_.aux_node(r);
            if (visited_[rn]) continue;
            tick();
            visit(rn);
            roots_.push_back(static_cast<std::uint8_t>(r));
            seg_steps_.push_back({rn, 0});
            extend(rn, false);
            seg_steps_.pop_back();
            roots_.pop_back();
            unvisit(rn);
        }
    }

    void extend(std::uint32_t u, bool entered_clique) {
        for (const ViewEdge& e : view_.adj[u]) {
            if (visited_[e.to]) continue;
            if (e.clique && entered_clique) continue; // alternation
            tick();
            if (view_.is_aux_node(e.to)) {
                complete_segment(u, entered_clique, e.to);
                continue;
            }
            if (e.clique) {
                const auto c = static_cast<std::size_t>(view_.inner[u].owner);
                b_child_[c].push_back({view_.inner[u].child_local, view_.inner[e.to].child_local});
                if (child_feasible(c)) {
                    visit(e.to);
                    seg_steps_.push_back({e.to, 1});
                    extend(e.to, true);
                    seg_steps_.pop_back();
                    unvisit(e.to);
                }
                b_child_[c].pop_back();
            } else {
                if (!leave_real(u, entered_clique)) continue;
                visit(e.to);
                w_real_ += e.weight;
                seg_steps_.push_back({e.to, 0});
                extend(e.to, false);
                seg_steps_.pop_back();
                w_real_ -= e.weight;
                unvisit(e.to);
                undo_leave_real(u, entered_clique);
            }
        }
    }

    void complete_segment(std::uint32_t u, bool entered_clique, std::uint32_t end_node) {
        const std::uint32_t end_local = static_cast<std::uint32_t>(view_.aux_index(end_node));
        const std::uint8_t root_local = roots_.back();
        if (lim_.rule_end_above_root && end_local <= root_local) return;
        if (!leave_real(u, entered_clique)) return; // attach edges are real
        visit(end_node);
        seg_steps_.push_back({end_node, 0});
        segments_.push_back({root_local, static_cast<std::uint8_t>(end_local), seg_steps_});
        m_pairs_.push_back({root_local, static_cast<std::uint8_t>(end_local)});

        record();
        std::vector<WitnessStep> parked;
        parked.swap(seg_steps_);
        start_segments();
        seg_steps_.swap(parked);

        m_pairs_.pop_back();
        segments_.pop_back();
        seg_steps_.pop_back();
        unvisit(end_node);
        undo_leave_real(u, entered_clique);
    }

    // One completed system: cross-multiply each participating child's
    // compatible rows, grouped by their lifted touched-sets.
    void record() {
        const MatchKey m = make_match_key(m_pairs_);

        struct Cand {
            BoundaryMask lift;
            Weight weight;
            std::uint32_t idx;
        };
        struct Part {
            std::uint32_t child;
            MatchKey key;
            std::vector<Cand> cands;
        };
        std::vector<Part> parts;
        for (std::size_t c = 0; c < b_child_.size(); ++c) {
            if (b_child_[c].empty()) continue;
            Part part;
            part.child = static_cast<std::uint32_t>(c);
            part.key = make_match_key(b_child_[c]);
            const auto rows = child_tables_[c]->rows(part.key);
            for (std::uint32_t idx = 0; idx < rows.size(); ++idx) {
                if (rows[idx].touched & c_child_[c]) continue;
                BoundaryMask lifted = 0;
                BoundaryMask rest = rows[idx].touched;
                while (rest) {
                    const int j = std::countr_zero(rest);
                    rest &= rest - 1;
                    lifted |= lift_[c][static_cast<std::size_t>(j)];
                }
                Cand* slot = nullptr;
                for (Cand& cand : part.cands)
                    if (cand.lift == lifted) {
                        slot = &cand;
                        break;
                    }
                if (!slot) part.cands.push_back({lifted, rows[idx].weight, idx});
                else if (rows[idx].weight > slot->weight) {
                    slot->weight = rows[idx].weight;
                    slot->idx = idx;
                }
            }
            if (part.cands.empty()) fail(errc::witness_missing, "feasible child lost its rows");
            parts.push_back(std::move(part));
        }

        std::vector<std::uint32_t> choice(parts.size(), 0);
        const auto emit = [&] {
            BoundaryMask f = faux_;
            Weight w = w_real_;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                f |= parts[i].cands[choice[i]].lift;
                w += parts[i].cands[choice[i]].weight;
            }
            table_.insert(m, f, w, [&] {
                Witness wit;
                wit.segments = segments_;
                wit.picks.reserve(parts.size());
                for (std::size_t i = 0; i < parts.size(); ++i)
                    wit.picks.push_back({parts[i].child, parts[i].key, parts[i].cands[choice[i]].idx});
                return wit;
            });
        };
        while (true) {
            emit();
            std::size_t i = 0;
            while (i < parts.size() && ++choice[i] == parts[i].cands.size()) {
                choice[i] = 0;
                ++i;
            }
            if (i == parts.size()) break;
        }
    }

    const BlockView& view_;
    std::span<const BlockTable* const> child_tables_;
    const PreprocessLimits& lim_;
    BlockTable table_;

    std::vector<std::uint8_t> visited_;
    BoundaryMask faux_ = 0;
    std::vector<BoundaryMask> faux_trail_;
    Weight w_real_ = 0;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> m_pairs_;
    std::vector<std::uint8_t> roots_;
    std::vector<std::vector<std::pair<std::uint8_t, std::uint8_t>>> b_child_;
    std::vector<BoundaryMask> c_child_;
    std::vector<std::vector<BoundaryMask>> lift_;
    std::vector<WitnessSegment> segments_;
    std::vector<WitnessStep> seg_steps_;
    std::uint64_t expanded_ = 0;
};

} // namespace detail

// Exact table of one block by segment DFS over its view, consulting child
// tables for clique edges. `child_tables` parallels view.children.
inline BlockTable preprocess_block(const BlockView& view,
                                   std::span<const BlockTable* const> child_tables = {},
                                   const PreprocessLimits& lim = {},
                                   std::uint64_t* expanded = nullptr) {
    if (child_tables.size() != view.children.size())
        fail(errc::usage, "child table count does not match view children");
    for (const BlockTable* t : child_tables)
        if (!t || !t->frozen()) fail(errc::usage, "child tables must be frozen");
    detail::SegmentEngine engine(view, child_tables, lim);
    BlockTable out = engine.run();
    if (expanded) *expanded += engine.expanded();
    return out;
}

namespace detail {

// Expands a stored entry into original-vertex paths, one per matched pair,
// keyed (lo,hi) by local boundary index and oriented lo-side to hi-side.
class Expander {
public:
    Expander(std::span<const BlockView> views, std::span<const BlockTable> tables)
        : views_(views), tables_(tables) {}

    std::map<std::pair<int, int>, Path> expand(std::uint32_t node, const MatchKey& key,
                                               std::uint32_t entry_idx) const {
        const BlockView& view = views_[node];
        const TableEntry& ent = tables_[node].entry(key, entry_idx);
        std::vector<std::optional<std::map<std::pair<int, int>, Path>>> kids(view.children.size());
        const auto child_pairs = [&](std::size_t ci) -> const std::map<std::pair<int, int>, Path>& {
            if (!kids[ci]) {
                const WitnessPick* pick = nullptr;
                for (const WitnessPick& p : ent.witness.picks)
                    if (p.child == ci) {
                        pick = &p;
                        break;
                    }
                if (!pick) fail(errc::witness_missing, "no pick for spliced child");
                kids[ci] = expand(view.children[ci], pick->key, pick->entry);
            }
            return *kids[ci];
        };

        std::map<std::pair<int, int>, Path> out;
        for (const WitnessSegment& seg : ent.witness.segments) {
            Path p;
            p.push_back(view.node_orig(seg.steps.front().node));
            for (std::size_t i = 1; i < seg.steps.size(); ++i) {
                const WitnessStep& st = seg.steps[i];
                if (!st.via_clique) {
                    const Vertex o = view.node_orig(st.node);
                    if (o != p.back()) p.push_back(o); // attach edges collapse
                    continue;
                }
                const std::uint32_t prev = seg.steps[i - 1].node;
                const ViewInner& pi = view.inner[prev];
                const ViewInner& ni = view.inner[st.node];
                const auto ci = static_cast<std::size_t>(ni.owner);
                const int la = pi.child_local, lb = ni.child_local;
                const auto& pairs = child_pairs(ci);
                const auto it = pairs.find({std::min(la, lb), std::max(la, lb)});
                if (it == pairs.end()) fail(errc::witness_missing, "spliced pair not in child witness");
                Path sub = it->second;
                if (la != it->first.first) std::reverse(sub.begin(), sub.end());
                if (sub.empty() || sub.front() != p.back())
                    fail(errc::witness_missing, "splice junction mismatch");
                p.insert(p.end(), sub.begin() + 1, sub.end());
            }
            const int a = seg.root_aux, b = seg.end_aux;
            if (a > b) std::reverse(p.begin(), p.end());
            out[{std::min(a, b), std::max(a, b)}] = std::move(p);
        }
        return out;
    }

private:
    std::span<const BlockView> views_;
    std::span<const BlockTable> tables_;
};

} // namespace detail

// Walks the root's best entry for the terminal pair down the hierarchy,
// splicing child paths in place of clique edges.
inline Path reconstruct_path(std::span<const BlockView> views, std::span<const BlockTable> tables,
                             std::uint32_t root, Vertex s, Vertex t) {
    const BlockView& rv = views[root];
    if (rv.aux.size() != 2) fail(errc::witness_missing, "root boundary must be the two terminals");
    MatchKey key;
    key.add_pair(0, 1);
    const auto idx = tables[root].best_entry(key, 0);
    if (!idx) fail(errc::witness_missing, "no stored terminal connection");
    auto pairs = detail::Expander(views, tables).expand(root, key, *idx);
    const auto it = pairs.find({0, 1});
    if (it == pairs.end()) fail(errc::witness_missing, "terminal pair missing from root witness");
    Path path = std::move(it->second);
    if (!path.empty() && path.front() == t && path.back() == s) std::reverse(path.begin(), path.end());
    if (path.empty() || path.front() != s || path.back() != t)
        fail(errc::witness_missing, "reconstructed path has wrong endpoints");
    return path;
}

} // namespace lpdp
