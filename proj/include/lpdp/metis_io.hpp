#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpdp/graph.hpp"

namespace lpdp {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t parse_u64(std::string_view tok, errc on_bad) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        fail(on_bad, "bad integer token '" + std::string(tok) + "'");
    return value;
}

inline std::uint64_t parse_weight(std::string_view tok) {
    if (!tok.empty() && tok.front() == '-')
        fail(errc::negative_weight, "negative edge weight '" + std::string(tok) + "'");
    return parse_u64(tok, errc::malformed_header);
}

} // namespace detail

// Parses METIS adjacency format. Header "n m [fmt]"; fmt "1" (or "001") makes
// the file edge-weighted with "neighbor weight" pairs; ids are 1-based;
// '%' lines are comments. Unweighted files yield weight 1 on every edge.
inline Graph parse_metis(std::string_view text) {
    std::vector<std::string_view> lines;
    {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t nl = text.find('\n', pos);
            const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
            const auto toks = detail::split_ws(line);
            if (!(toks.empty() && nl == std::string_view::npos && pos == text.size())) {
                if (toks.empty() || toks[0].front() != '%') lines.push_back(line);
            }
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }
    if (lines.empty()) fail(errc::malformed_header, "empty file");

    const auto head = detail::split_ws(lines[0]);
    if (head.size() < 2 || head.size() > 3) fail(errc::malformed_header, "header must be 'n m [fmt]'");
    const std::uint64_t n = detail::parse_u64(head[0], errc::malformed_header);
    const std::uint64_t m = detail::parse_u64(head[1], errc::malformed_header);
    bool weighted = false;
    if (head.size() == 3) {
        if (head[2] == "1" || head[2] == "001") weighted = true;
        else if (head[2] == "0" || head[2] == "00" || head[2] == "000") weighted = false;
        else fail(errc::malformed_header, "unsupported fmt '" + std::string(head[2]) + "'");
    }
    if (lines.size() - 1 != n)
        fail(errc::malformed_header, "expected " + std::to_string(n) + " adjacency lines, got " + std::to_string(lines.size() - 1));

    std::vector<std::vector<Edge>> rows(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        const auto toks = detail::split_ws(lines[v + 1]);
        if (weighted && toks.size() % 2 != 0)
            fail(errc::malformed_header, "odd token count on weighted line " + std::to_string(v + 2));
        const std::size_t step = weighted ? 2 : 1;
        for (std::size_t i = 0; i < toks.size(); i += step) {
            const std::uint64_t id = detail::parse_u64(toks[i], errc::id_out_of_range);
            if (id < 1 || id > n) fail(errc::id_out_of_range, "neighbor id " + std::string(toks[i]) + " outside 1.." + std::to_string(n));
            const Vertex u = static_cast<Vertex>(id - 1);
            if (u == v) fail(errc::self_loop, "self-loop at vertex " + std::to_string(v + 1));
            const Weight w = weighted ? detail::parse_weight(toks[i + 1]) : 1;
            rows[v].push_back({u, w});
        }
        std::sort(rows[v].begin(), rows[v].end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (std::size_t i = 1; i < rows[v].size(); ++i)
            if (rows[v][i].to == rows[v][i - 1].to)
                fail(errc::duplicate_edge, "vertex " + std::to_string(v + 1) + " lists neighbor " + std::to_string(rows[v][i].to + 1) + " twice");
    }

    std::vector<EdgeTriple> triples;
    triples.reserve(m);
    for (Vertex v = 0; v < n; ++v) {
        for (const Edge& e : rows[v]) {
            // cross-check the mirrored entry
            const auto& back = rows[e.to];
            auto it = std::lower_bound(back.begin(), back.end(), v,
                                       [](const Edge& x, Vertex y) { return x.to < y; });
            if (it == back.end() || it->to != v || it->weight != e.weight)
                fail(errc::asymmetric_adjacency,
                     "edge {" + std::to_string(v + 1) + "," + std::to_string(e.to + 1) + "} not mirrored with equal weight");
            if (v < e.to) triples.emplace_back(v, e.to, e.weight);
        }
    }
    if (triples.size() != m)
        fail(errc::malformed_header, "header claims " + std::to_string(m) + " edges, file has " + std::to_string(triples.size()));
    return Graph::from_edges(n, triples);
}

// Canonical METIS text: fmt flag "1" always, neighbors ascending, single
// trailing newline. Deterministic byte-for-byte.
inline std::string emit_metis(const Graph& g) {
    std::string out;
    out += std::to_string(g.vertex_count());
    out += ' ';
    out += std::to_string(g.edge_count());
    out += " 1\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        bool first = true;
        for (const Edge& e : g.neighbors(v)) {
            if (!first) out += ' ';
            first = false;
            out += std::to_string(e.to + 1);
            out += ' ';
            out += std::to_string(e.weight);
        }
        out += '\n';
    }
    return out;
}

} // namespace lpdp
