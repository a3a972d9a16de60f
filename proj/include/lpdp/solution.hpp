#pragma once

#include <charconv>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "lpdp/graph.hpp"

namespace lpdp {

enum class SolveStatus { solved, no_path, timeout };

inline const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::solved: return "Solved";
    case SolveStatus::no_path: return "NoPath";
    case SolveStatus::timeout: return "Timeout";
    }
    return "Timeout";
}

struct Solution {
    SolveStatus status = SolveStatus::no_path;
    Weight weight = 0;       // meaningful iff solved
    Path path;               // iff solved
    double seconds = 0.0;    // total wall time of the solve call
    double partition_seconds = 0.0;
    std::uint64_t expanded = 0; // search-node expansions
};

// Cooperative wall-clock cutoff; callers poll expired() at coarse intervals.
class Deadline {
public:
    Deadline() = default;
    static Deadline after(double seconds) {
        Deadline d;
        if (seconds > 0)
            d.at_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(seconds));
        return d;
    }
    static Deadline none() { return Deadline{}; }
    bool unlimited() const { return !at_.has_value(); }
    bool expired() const { return at_ && std::chrono::steady_clock::now() >= *at_; }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

// Three lines: status, weight, 1-based path ids (blank unless solved).
inline std::string format_solution(const Solution& s) {
    std::string out = "status ";
    out += status_name(s.status);
    out += "\nweight ";
    out += std::to_string(s.status == SolveStatus::solved ? s.weight : 0);
    out += '\n';
    if (s.status == SolveStatus::solved) {
        bool first = true;
        for (Vertex v : s.path) {
            if (!first) out += ' ';
            first = false;
            out += std::to_string(v + 1);
        }
    }
    out += '\n';
    return out;
}

inline Solution parse_solution(std::string_view text) {
    Solution s;
    std::size_t pos = 0;
    const auto next_line = [&]() -> std::string_view {
        if (pos > text.size()) fail(errc::usage, "truncated solution text");
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        return line;
    };
    const std::string_view status_line = next_line();
    if (status_line == "status Solved") s.status = SolveStatus::solved;
    else if (status_line == "status NoPath") s.status = SolveStatus::no_path;
    else if (status_line == "status Timeout") s.status = SolveStatus::timeout;
    else fail(errc::usage, "bad status line '" + std::string(status_line) + "'");

    const std::string_view weight_line = next_line();
    if (!weight_line.starts_with("weight ")) fail(errc::usage, "bad weight line");
    const std::string_view num = weight_line.substr(7);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), s.weight);
    if (ec != std::errc() || ptr != num.data() + num.size()) fail(errc::usage, "bad weight value");

    const std::string_view path_line = next_line();
    std::size_t i = 0;
    while (i < path_line.size()) {
        while (i < path_line.size() && path_line[i] == ' ') ++i;
        std::size_t j = i;
        while (j < path_line.size() && path_line[j] != ' ') ++j;
        if (j > i) {
            std::uint64_t id = 0;
            const std::string_view tok = path_line.substr(i, j - i);
            auto [p2, e2] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
            if (e2 != std::errc() || p2 != tok.data() + tok.size() || id == 0)
                fail(errc::usage, "bad path id '" + std::string(tok) + "'");
            s.path.push_back(static_cast<Vertex>(id - 1));
        }
        i = j;
    }
    return s;
}

} // namespace lpdp
