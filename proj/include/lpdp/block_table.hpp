#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lpdp/errors.hpp"
#include "lpdp/graph.hpp"

namespace lpdp {

// Local boundary indices of one block live in [0, 32); sets of them are masks.
using BoundaryMask = std::uint32_t;
inline constexpr int max_boundary_size = 32;

// Partial matching over one block's boundary, canonically encoded as (lo,hi)
// pairs sorted by lo. Disjointness makes lo a unique sort key.
struct MatchKey {
    std::uint8_t count = 0;
    std::array<std::uint8_t, 32> v{};

    void add_pair(int a, int b) {
        const std::uint8_t lo = static_cast<std::uint8_t>(std::min(a, b));
        const std::uint8_t hi = static_cast<std::uint8_t>(std::max(a, b));
        int i = count;
        while (i > 0 && v[2 * (i - 1)] > lo) {
            v[2 * i] = v[2 * (i - 1)];
            v[2 * i + 1] = v[2 * (i - 1) + 1];
            --i;
        }
        v[2 * i] = lo;
        v[2 * i + 1] = hi;
        ++count;
    }

    std::size_t pairs() const { return count; }
    bool empty() const { return count == 0; }
    std::pair<int, int> pair(std::size_t i) const { return {v[2 * i], v[2 * i + 1]}; }

    BoundaryMask vertex_mask() const {
        BoundaryMask m = 0;
        for (int i = 0; i < 2 * count; ++i) m |= BoundaryMask{1} << v[i];
        return m;
    }

    friend bool operator==(const MatchKey&, const MatchKey&) = default;
    friend auto operator<=>(const MatchKey&, const MatchKey&) = default;
};

template <class Pairs>
MatchKey make_match_key(const Pairs& pairs) {
    MatchKey k;
    BoundaryMask used = 0;
    for (const auto& [a, b] : pairs) {
        const int lo = static_cast<int>(std::min(a, b)), hi = static_cast<int>(std::max(a, b));
        if (lo < 0 || hi >= max_boundary_size)
            fail(errc::usage, "matching index " + std::to_string(hi) + " out of range");
        const BoundaryMask bits = (BoundaryMask{1} << lo) | (BoundaryMask{1} << hi);
        if (lo == hi || (used & bits)) fail(errc::usage, "matching reuses a boundary vertex");
        used |= bits;
        k.add_pair(lo, hi);
    }
    return k;
}

inline MatchKey make_match_key(std::initializer_list<std::pair<int, int>> pairs) {
    return make_match_key<std::initializer_list<std::pair<int, int>>>(pairs);
}

struct MatchKeyHash {
    std::size_t operator()(const MatchKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        const auto mix = [&h](std::uint8_t byte) {
            h ^= byte;
            h *= 1099511628211ull;
        };
        mix(k.count);
        for (int i = 0; i < 2 * k.count; ++i) mix(k.v[i]);
        return static_cast<std::size_t>(h);
    }
};

// Witness of one stored entry: the block-level search path split into
// segments (node ids of the owning view; `via_clique` marks edges resolved
// through a child table), plus which child entry each clique edge group drew
// from.
struct WitnessStep {
    std::uint32_t node = 0;
    std::uint8_t via_clique = 0; // edge arriving at `node`
};

struct WitnessSegment {
    std::uint8_t root_aux = 0; // local boundary indices of the endpoints
    std::uint8_t end_aux = 0;
    std::vector<WitnessStep> steps; // steps.front() is the root aux node
};

struct WitnessPick {
    std::uint32_t child = 0; // index into the view's child list
    MatchKey key;            // matching demanded of that child
    std::uint32_t entry = 0; // row index within the child's frozen key group
};

struct Witness {
    std::vector<WitnessSegment> segments;
    std::vector<WitnessPick> picks;
};

struct TableEntry {
    BoundaryMask touched = 0;
    Weight weight = 0;
    Witness witness;
};

struct ClosureRow {
    MatchKey key;
    BoundaryMask allowed = 0;
    Weight weight = 0;

    friend bool operator==(const ClosureRow&, const ClosureRow&) = default;
};

// DP table of one block: matching -> rows of (touched boundary set F, best
// weight, witness). Only exact touched-sets are stored; a query with excluded
// set C maxes over rows with F∩C=∅. Build with insert(), then freeze() once;
// queries and row indices are only meaningful afterwards.
class BlockTable {
public:
    BlockTable() = default;
    explicit BlockTable(int boundary_size, std::size_t max_entries = default_max_entries)
        : boundary_(boundary_size), max_entries_(max_entries) {
        if (boundary_size < 0 || boundary_size > max_boundary_size)
            fail(errc::boundary_too_large, "block boundary of " + std::to_string(boundary_size) +
                                               " exceeds table limit of " + std::to_string(max_boundary_size));
        MatchKey empty;
        building_[empty][0] = TableEntry{0, 0, {}};
        total_ = 1;
    }

    static constexpr std::size_t default_max_entries = std::size_t{1} << 22;

    int boundary_size() const { return boundary_; }
    std::size_t entry_count() const { return total_; }
    bool frozen() const { return frozen_; }

    template <class MakeWitness>
    bool insert(const MatchKey& m, BoundaryMask touched, Weight w, MakeWitness&& make_witness) {
        if (frozen_) fail(errc::usage, "insert into frozen block table");
        auto& slot = building_[m];
        auto it = slot.find(touched);
        if (it == slot.end()) {
            if (++total_ > max_entries_)
                fail(errc::table_blowup, "block table exceeds " + std::to_string(max_entries_) + " entries");
            slot.emplace(touched, TableEntry{touched, w, make_witness()});
            return true;
        }
        if (w > it->second.weight) { // ties keep the first witness seen
            it->second.weight = w;
            it->second.witness = make_witness();
            return true;
        }
        return false;
    }

    bool insert(const MatchKey& m, BoundaryMask touched, Weight w) {
        return insert(m, touched, w, [] { return Witness{}; });
    }

    // Sorts rows (weight desc, |F| asc, F asc) and optionally drops rows whose
    // F is a superset of an equally-good row's F — queries and closure are
    // invariant under that pruning.
    void freeze(bool prune_dominated = true) {
        if (frozen_) return;
        groups_.reserve(building_.size());
        for (auto& [key, rows] : building_) {
            Group grp;
            grp.key = key;
            grp.rows.reserve(rows.size());
            for (auto& [mask, entry] : rows) grp.rows.push_back(std::move(entry));
            std::sort(grp.rows.begin(), grp.rows.end(), [](const TableEntry& a, const TableEntry& b) {
                if (a.weight != b.weight) return a.weight > b.weight;
                const int pa = std::popcount(a.touched), pb = std::popcount(b.touched);
                if (pa != pb) return pa < pb;
                return a.touched < b.touched;
            });
            if (prune_dominated) {
                std::vector<TableEntry> kept;
                kept.reserve(grp.rows.size());
                for (auto& row : grp.rows) {
                    bool dominated = false;
                    for (const auto& d : kept)
                        if ((d.touched & ~row.touched) == 0 && d.weight >= row.weight) {
                            dominated = true;
                            break;
                        }
                    if (!dominated) kept.push_back(std::move(row));
                }
                grp.rows = std::move(kept);
            }
            groups_.push_back(std::move(grp));
        }
        building_.clear();
        std::sort(groups_.begin(), groups_.end(),
                  [](const Group& a, const Group& b) { return a.key < b.key; });
        total_ = 0;
        for (std::size_t i = 0; i < groups_.size(); ++i) {
            index_.emplace(groups_[i].key, i);
            total_ += groups_[i].rows.size();
        }
        frozen_ = true;
    }

    std::span<const TableEntry> rows(const MatchKey& m) const {
        require_frozen();
        auto it = index_.find(m);
        if (it == index_.end()) return {};
        return groups_[it->second].rows;
    }

    const TableEntry& entry(const MatchKey& m, std::uint32_t idx) const {
        auto r = rows(m);
        if (idx >= r.size()) fail(errc::witness_missing, "table entry index out of range");
        return r[idx];
    }

    // Deterministic argmax row index for (m, excluded): rows are sorted, so
    // the first compatible row is the best one.
    std::optional<std::uint32_t> best_entry(const MatchKey& m, BoundaryMask excluded) const {
        auto r = rows(m);
        for (std::uint32_t i = 0; i < r.size(); ++i)
            if ((r[i].touched & excluded) == 0) return i;
        return std::nullopt;
    }

    std::optional<Weight> query(const MatchKey& m, BoundaryMask excluded) const {
        require_frozen();
        auto it = index_.find(m);
        if (it == index_.end()) return std::nullopt;
        const std::uint64_t mk = (static_cast<std::uint64_t>(it->second) << 32) | excluded;
        auto memo = memo_.find(mk);
        if (memo != memo_.end()) return memo->second;
        std::optional<Weight> best;
        for (const TableEntry& row : groups_[it->second].rows)
            if ((row.touched & excluded) == 0) {
                best = row.weight;
                break;
            }
        memo_.emplace(mk, best);
        return best;
    }

    bool feasible(const MatchKey& m, BoundaryMask excluded) const { return query(m, excluded).has_value(); }

    std::vector<MatchKey> keys() const {
        require_frozen();
        std::vector<MatchKey> out;
        out.reserve(groups_.size());
        for (const auto& g : groups_) out.push_back(g.key);
        return out;
    }

    // Test-facing upward closure: every (M, F∪S) an entry covers, with the
    // best weight over covered cores. Exponential in free boundary bits —
    // only for small tables.
    std::vector<ClosureRow> closure() const {
        require_frozen();
        const BoundaryMask full = boundary_ == 32 ? ~BoundaryMask{0}
                                                  : (BoundaryMask{1} << boundary_) - 1;
        std::vector<ClosureRow> out;
        for (const auto& g : groups_) {
            std::unordered_map<BoundaryMask, Weight> best;
            for (const auto& row : g.rows) {
                const BoundaryMask free = full & ~row.touched;
                BoundaryMask s = 0;
                while (true) {
                    const BoundaryMask key = row.touched | s;
                    auto it = best.find(key);
                    if (it == best.end() || row.weight > it->second) best[key] = row.weight;
                    if (s == free) break;
                    s = (s - free) & free; // next subset of `free`
                }
            }
            std::vector<std::pair<BoundaryMask, Weight>> sorted(best.begin(), best.end());
            std::sort(sorted.begin(), sorted.end());
            for (auto [mask, w] : sorted) out.push_back({g.key, mask, w});
        }
        return out;
    }

private:
    struct Group {
        MatchKey key;
        std::vector<TableEntry> rows;
    };

    void require_frozen() const {
        if (!frozen_) fail(errc::usage, "block table used before freeze");
    }

    int boundary_ = 0;
    std::size_t max_entries_ = default_max_entries;
    std::size_t total_ = 0;
    bool frozen_ = false;
    std::unordered_map<MatchKey, std::unordered_map<BoundaryMask, TableEntry>, MatchKeyHash> building_;
    std::vector<Group> groups_;
    std::unordered_map<MatchKey, std::size_t, MatchKeyHash> index_;
    mutable std::unordered_map<std::uint64_t, std::optional<Weight>> memo_;
};

} // namespace lpdp
