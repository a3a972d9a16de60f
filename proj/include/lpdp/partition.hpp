#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpdp/graph.hpp"

namespace lpdp {

// Balanced k-way partition. `l_max` is the per-block size cap the partition
// was built against: (1+epsilon)*ceil(n/k) of the REQUESTED k, so later
// refinements that split a block do not retroactively tighten the bound for
// everyone else.
struct Partition {
    std::vector<std::uint32_t> block_of;
    std::uint32_t k = 0;
    double epsilon = 0.0;
    std::size_t l_max = 0;

    std::size_t block_size(std::uint32_t b) const {
        std::size_t c = 0;
        for (std::uint32_t x : block_of) c += (x == b);
        return c;
    }
};

inline std::size_t balance_cap(std::size_t n, std::uint32_t k, double epsilon) {
    const std::size_t ceil_nk = (n + k - 1) / k;
    // 1e-9 relative guard keeps exact products like (1+0)*4 from rounding down
    return static_cast<std::size_t>(std::floor((1.0 + epsilon) * static_cast<double>(ceil_nk) * (1.0 + 1e-9)));
}

inline Weight cut_weight(const Graph& g, const Partition& p) {
    Weight total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (const Edge& e : g.neighbors(v))
            if (v < e.to && p.block_of[v] != p.block_of[e.to]) total += e.weight;
    return total;
}

// Rooted block tree. Node ids: leaves are 0..k-1 (block ids), internal nodes
// follow in post order, so iterating ids ascending is a valid bottom-up
// schedule. parent[root] == root.
struct Hierarchy {
    std::vector<std::uint32_t> parent;
    std::vector<std::vector<std::uint32_t>> children;
    std::uint32_t root = 0;
    std::uint32_t leaf_count = 0;

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(parent.size()); }
    bool is_leaf(std::uint32_t node) const { return node < leaf_count; }
};

// Single root whose children are all k leaves (or the root IS the single leaf).
inline Hierarchy flat_hierarchy(std::uint32_t k) {
    Hierarchy h;
    h.leaf_count = k;
    if (k == 1) {
        h.parent = {0};
        h.children = {{}};
        h.root = 0;
        return h;
    }
    h.parent.assign(k + 1, k);
    h.children.assign(k + 1, {});
    for (std::uint32_t b = 0; b < k; ++b) h.children[k].push_back(b);
    h.root = k;
    return h;
}

inline void check_hierarchy(const Hierarchy& h) {
    if (h.node_count() == 0 || h.leaf_count == 0 || h.leaf_count > h.node_count())
        fail(errc::usage, "malformed hierarchy");
    for (std::uint32_t v = 0; v < h.node_count(); ++v) {
        if (h.parent[v] >= h.node_count()) fail(errc::usage, "hierarchy parent out of range");
        if ((h.parent[v] == v) != (v == h.root)) fail(errc::usage, "hierarchy must have exactly one root");
        if (h.is_leaf(v) && !h.children[v].empty()) fail(errc::usage, "leaf with children");
        for (std::uint32_t c : h.children[v]) {
            if (c >= v) fail(errc::usage, "hierarchy children must precede parents");
            if (h.parent[c] != v) fail(errc::usage, "hierarchy parent/child mismatch");
        }
    }
}

// Binary hierarchy over an externally supplied flat partition: repeatedly
// merge the two groups joined by the heaviest inter-group cut (ties: lowest
// node-id pair), so heavily connected blocks combine early.
inline Hierarchy pair_hierarchy(const Graph& g, const Partition& p) {
    const std::uint32_t k = p.k;
    if (k == 1) return flat_hierarchy(1);

    Hierarchy h;
    h.leaf_count = k;
    const std::uint32_t total = 2 * k - 1;
    h.parent.assign(total, 0);
    h.children.assign(total, {});

    // cross[a][b]: cut weight between the groups currently rooted at nodes a,b
    std::vector<std::uint32_t> group(k);
    for (std::uint32_t b = 0; b < k; ++b) group[b] = b;
    std::vector<std::vector<Weight>> cross(total, std::vector<Weight>(total, 0));
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (const Edge& e : g.neighbors(v)) {
            const std::uint32_t a = p.block_of[v], b = p.block_of[e.to];
            if (v < e.to && a != b) {
                cross[a][b] += e.weight;
                cross[b][a] += e.weight;
            }
        }

    std::uint32_t next = k;
    std::vector<std::uint32_t> live(group);
    while (live.size() > 1) {
        std::size_t bi = 0, bj = 1;
        Weight best = cross[live[0]][live[1]];
        for (std::size_t i = 0; i < live.size(); ++i)
            for (std::size_t j = i + 1; j < live.size(); ++j)
                if (cross[live[i]][live[j]] > best) {
                    best = cross[live[i]][live[j]];
                    bi = i;
                    bj = j;
                }
        const std::uint32_t a = live[bi], b = live[bj];
        h.parent[a] = next;
        h.parent[b] = next;
        h.children[next] = {a, b};
        for (std::uint32_t o : live)
            if (o != a && o != b) {
                cross[next][o] = cross[a][o] + cross[b][o];
                cross[o][next] = cross[next][o];
            }
        live[bi] = next;
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
        ++next;
    }
    h.root = live[0];
    h.parent[h.root] = h.root;
    check_hierarchy(h);
    return h;
}

// Partition file: one block id per vertex line (KaHIP/METIS convention).
inline Partition load_partition(std::string_view text, const Graph& g, double epsilon,
                                bool allow_imbalance = false) {
    std::vector<std::uint32_t> ids;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (!line.empty()) {
            std::uint32_t value = 0;
            bool ok = !line.empty();
            for (char ch : line) {
                if (ch < '0' || ch > '9') { ok = false; break; }
                value = value * 10 + static_cast<std::uint32_t>(ch - '0');
            }
            if (!ok) fail(errc::line_count_mismatch, "non-numeric partition line '" + std::string(line) + "'");
            ids.push_back(value);
        }
        pos = nl + 1;
    }
    if (ids.size() != g.vertex_count())
        fail(errc::line_count_mismatch,
             "partition has " + std::to_string(ids.size()) + " lines for " + std::to_string(g.vertex_count()) + " vertices");

    if (ids.empty()) return Partition{{}, 1, epsilon, balance_cap(0, 1, epsilon)};
    const std::uint32_t k = *std::max_element(ids.begin(), ids.end()) + 1;
    std::vector<std::size_t> sizes(k, 0);
    for (std::uint32_t b : ids) ++sizes[b];
    for (std::uint32_t b = 0; b < k; ++b)
        if (sizes[b] == 0) fail(errc::non_contiguous_block_ids, "block " + std::to_string(b) + " is empty");

    Partition p{std::move(ids), k, epsilon, balance_cap(g.vertex_count(), k, epsilon)};
    if (!allow_imbalance)
        for (std::uint32_t b = 0; b < k; ++b)
            if (sizes[b] > p.l_max)
                fail(errc::balance_violated,
                     "block " + std::to_string(b) + " has " + std::to_string(sizes[b]) +
                         " vertices, cap is " + std::to_string(p.l_max));
    return p;
}

inline std::string emit_partition(const Partition& p) {
    std::string out;
    for (std::uint32_t b : p.block_of) {
        out += std::to_string(b);
        out += '\n';
    }
    return out;
}

} // namespace lpdp
