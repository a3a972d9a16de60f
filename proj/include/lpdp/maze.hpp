#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lpdp/graph.hpp"
#include "lpdp/rng.hpp"

namespace lpdp {

// Square grid; cells are row-major, 0 = free, 1 = obstacle. Start is the
// top-left cell, target the bottom-right one; both are always free and
// free-connected (4-neighborhood).
struct MazeGrid {
    std::uint32_t side = 0;
    std::vector<std::uint8_t> cells; // side*side entries
    std::uint64_t seed = 0;

    bool free_at(std::uint32_t r, std::uint32_t c) const { return cells[r * side + c] == 0; }
};

namespace detail {

inline bool maze_connected(const MazeGrid& m) {
    const std::uint32_t n = m.side;
    if (!m.free_at(0, 0) || !m.free_at(n - 1, n - 1)) return false;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t cell = queue[head];
        const std::uint32_t r = cell / n, c = cell % n;
        const auto push = [&](std::uint32_t rr, std::uint32_t cc) {
            const std::uint32_t idx = rr * n + cc;
            if (m.cells[idx] == 0 && !seen[idx]) {
                seen[idx] = 1;
                queue.push_back(idx);
            }
        };
        if (r > 0) push(r - 1, c);
        if (r + 1 < n) push(r + 1, c);
        if (c > 0) push(r, c - 1);
        if (c + 1 < n) push(r, c + 1);
    }
    return seen[static_cast<std::size_t>(n) * n - 1] != 0;
}

} // namespace detail

// Places exactly floor(fill*n^2) obstacles, drawn uniformly without
// replacement from the non-start/target cells, then re-draws with seed+1
// until start and target are free-connected (at most 1000 attempts).
inline MazeGrid generate_maze(std::uint32_t n, double fill, std::uint64_t seed) {
    if (n < 2) fail(errc::usage, "maze side must be at least 2");
    if (!(fill >= 0.0 && fill < 1.0)) fail(errc::usage, "fill must lie in [0,1)");
    const std::size_t total = static_cast<std::size_t>(n) * n;
    const std::size_t obstacles = static_cast<std::size_t>(std::floor(fill * static_cast<double>(total)));
    if (obstacles > total - 2) fail(errc::usage, "fill leaves no room for start and target");

    std::vector<std::uint32_t> candidates;
    candidates.reserve(total - 2);
    for (std::size_t i = 1; i + 1 < total; ++i) candidates.push_back(static_cast<std::uint32_t>(i));

    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::uint64_t attempt_seed = seed + static_cast<std::uint64_t>(attempt);
        SplitMix64 rng(attempt_seed);
        MazeGrid m{n, std::vector<std::uint8_t>(total, 0), seed};
        for (std::uint32_t cell : rng.sample(candidates, obstacles)) m.cells[cell] = 1;
        if (detail::maze_connected(m)) return m;
    }
    fail(errc::unsatisfiable, "no connected maze within 1000 seed retries");
}

// One vertex per free cell in row-major order; unit edges between
// 4-adjacent free cells; s is the start cell, t the target cell.
inline Instance maze_to_instance(const MazeGrid& m) {
    const std::uint32_t n = m.side;
    const std::size_t total = static_cast<std::size_t>(n) * n;
    std::vector<Vertex> id(total, 0);
    Vertex next = 0;
    for (std::size_t i = 0; i < total; ++i)
        if (m.cells[i] == 0) id[i] = next++;
    std::vector<EdgeTriple> edges;
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * n + c;
            if (m.cells[i] != 0) continue;
            if (c + 1 < n && m.cells[i + 1] == 0) edges.emplace_back(id[i], id[i + 1], 1);
            if (r + 1 < n && m.cells[i + n] == 0) edges.emplace_back(id[i], id[i + n], 1);
        }
    Graph g = Graph::from_edges(next, edges);
    return make_instance(std::move(g), id[0], id[total - 1]);
}

inline std::string emit_maze(const MazeGrid& m) {
    std::string out;
    out.reserve(static_cast<std::size_t>(m.side) * (m.side + 1));
    for (std::uint32_t r = 0; r < m.side; ++r) {
        for (std::uint32_t c = 0; c < m.side; ++c) {
            char ch = m.cells[static_cast<std::size_t>(r) * m.side + c] ? '#' : '.';
            if (r == 0 && c == 0) ch = 'S';
            if (r == m.side - 1 && c == m.side - 1) ch = 'T';
            out += ch;
        }
        out += '\n';
    }
    return out;
}

inline MazeGrid parse_maze(std::string_view text) {
    std::vector<std::string_view> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view row = text.substr(pos, nl - pos);
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (!row.empty()) rows.push_back(row);
        pos = nl + 1;
    }
    if (rows.size() < 2) fail(errc::malformed_header, "maze needs at least 2 rows");
    const std::uint32_t n = static_cast<std::uint32_t>(rows.size());
    if (rows[0].empty() || rows[0][0] != 'S' || rows[n - 1].size() < n || rows[n - 1][n - 1] != 'T')
        fail(errc::malformed_header, "maze must mark 'S' top-left and 'T' bottom-right");
    MazeGrid m{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0), 0};
    for (std::uint32_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) fail(errc::malformed_header, "maze row " + std::to_string(r + 1) + " is not " + std::to_string(n) + " chars");
        for (std::uint32_t c = 0; c < n; ++c) {
            const char ch = rows[r][c];
            const std::size_t i = static_cast<std::size_t>(r) * n + c;
            switch (ch) {
            case '.': m.cells[i] = 0; break;
            case '#': m.cells[i] = 1; break;
            case 'S':
                if (r != 0 || c != 0) fail(errc::malformed_header, "'S' must be the top-left cell");
                m.cells[i] = 0;
                break;
            case 'T':
                if (r != n - 1 || c != n - 1) fail(errc::malformed_header, "'T' must be the bottom-right cell");
                m.cells[i] = 0;
                break;
            default: fail(errc::malformed_header, std::string("unexpected maze character '") + ch + "'");
            }
        }
    }
    return m;
}

} // namespace lpdp
