#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "lpdp/bench.hpp"
#include "lpdp/errors.hpp"

namespace lpdp {

struct CactusSeries {
    std::string name;
    std::vector<std::pair<std::size_t, double>> points; // (rank, seconds)
};

namespace detail {

inline constexpr double svg_w = 640.0, svg_h = 440.0;
inline constexpr double margin_l = 64.0, margin_r = 24.0, margin_t = 40.0, margin_b = 48.0;
inline constexpr double time_floor = 1e-4; // plotted lower bound for log axes
inline constexpr std::string_view palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                               "#ff7f0e", "#8c564b"};

struct LogAxis {
    double lo_exp = 0.0, hi_exp = 0.0;

    static LogAxis fit(double max_value) {
        LogAxis ax;
        ax.lo_exp = std::floor(std::log10(time_floor));
        ax.hi_exp = std::ceil(std::log10(std::max(max_value, time_floor * 10)));
        if (ax.hi_exp <= ax.lo_exp) ax.hi_exp = ax.lo_exp + 1;
        return ax;
    }
    double frac(double v) const {
        const double e = std::log10(std::max(v, time_floor));
        return (e - lo_exp) / (hi_exp - lo_exp);
    }
};

inline void svg_open(std::string& s, std::string_view title) {
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"440\" "
         "viewBox=\"0 0 640 440\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"640\" height=\"440\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">";
    s += title;
    s += "</text>\n";
}

inline void axis_frame(std::string& s) {
    s += "<rect x=\"" + format_double(margin_l) + "\" y=\"" + format_double(margin_t) + "\" width=\"" +
         format_double(svg_w - margin_l - margin_r) + "\" height=\"" +
         format_double(svg_h - margin_t - margin_b) + "\" fill=\"none\" stroke=\"#444\"/>\n";
}

inline double plot_x(double frac) { return margin_l + frac * (svg_w - margin_l - margin_r); }
inline double plot_y(double frac) { return svg_h - margin_b - frac * (svg_h - margin_t - margin_b); }

inline std::string decade_label(int e) {
    if (e >= 0) {
        std::string s = "1";
        s.append(static_cast<std::size_t>(e), '0');
        return s;
    }
    std::string s = "0.";
    s.append(static_cast<std::size_t>(-e - 1), '0');
    s += '1';
    return s;
}

inline void log_ticks_y(std::string& s, const LogAxis& ax) {
    for (int e = static_cast<int>(ax.lo_exp); e <= static_cast<int>(ax.hi_exp); ++e) {
        const double y = plot_y(ax.frac(std::pow(10.0, e)));
        s += "<line x1=\"" + format_double(margin_l) + "\" y1=\"" + format_double(y) + "\" x2=\"" +
             format_double(svg_w - margin_r) + "\" y2=\"" + format_double(y) +
             "\" stroke=\"#ddd\"/>\n";
        s += "<text x=\"" + format_double(margin_l - 6) + "\" y=\"" + format_double(y + 4) +
             "\" text-anchor=\"end\">" + decade_label(e) + "</text>\n";
    }
}

inline void log_ticks_x(std::string& s, const LogAxis& ax) {
    for (int e = static_cast<int>(ax.lo_exp); e <= static_cast<int>(ax.hi_exp); ++e) {
        const double x = plot_x(ax.frac(std::pow(10.0, e)));
        s += "<line x1=\"" + format_double(x) + "\" y1=\"" + format_double(margin_t) + "\" x2=\"" +
             format_double(x) + "\" y2=\"" + format_double(svg_h - margin_b) +
             "\" stroke=\"#ddd\"/>\n";
        s += "<text x=\"" + format_double(x) + "\" y=\"" + format_double(svg_h - margin_b + 16) +
             "\" text-anchor=\"middle\">" + decade_label(e) + "</text>\n";
    }
}

} // namespace detail

// Per-solver curves of solved runtimes sorted ascending; y is log time.
inline std::string cactus_svg(const std::vector<CactusSeries>& series, double time_limit,
                              std::string_view title = "solved instances by runtime") {
    std::size_t total = 0;
    std::size_t max_rank = 1;
    double max_t = time_limit;
    for (const CactusSeries& sr : series) {
        total += sr.points.size();
        for (const auto& [rank, sec] : sr.points) {
            max_rank = std::max(max_rank, rank);
            max_t = std::max(max_t, sec);
        }
    }
    if (total == 0) fail(errc::empty_series, "no solved runs to plot");

    const auto ax = detail::LogAxis::fit(max_t);
    std::string s;
    detail::svg_open(s, title);
    detail::log_ticks_y(s, ax);
    detail::axis_frame(s);
    s += "<text x=\"320\" y=\"" + detail::format_double(detail::svg_h - 10) +
         "\" text-anchor=\"middle\">instances solved</text>\n";
    s += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" transform=\"rotate(-90 16 240)\">"
         "seconds</text>\n";
    if (time_limit > 0) {
        const double y = detail::plot_y(ax.frac(time_limit));
        s += "<line x1=\"" + detail::format_double(detail::margin_l) + "\" y1=\"" +
             detail::format_double(y) + "\" x2=\"" + detail::format_double(detail::svg_w - detail::margin_r) +
             "\" y2=\"" + detail::format_double(y) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    }
    const auto x_of = [&](std::size_t rank) {
        return detail::plot_x(static_cast<double>(rank) / static_cast<double>(max_rank));
    };
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto color = detail::palette[i % std::size(detail::palette)];
        if (series[i].points.size() > 1) {
            std::string pts;
            for (const auto& [rank, sec] : series[i].points) {
                pts += detail::format_double(x_of(rank));
                pts += ',';
                pts += detail::format_double(detail::plot_y(ax.frac(sec)));
                pts += ' ';
            }
            s += "<polyline fill=\"none\" stroke=\"";
            s += color;
            s += "\" points=\"" + pts + "\"/>\n";
        }
        for (const auto& [rank, sec] : series[i].points) {
            s += "<circle class=\"pt\" cx=\"" + detail::format_double(x_of(rank)) + "\" cy=\"" +
                 detail::format_double(detail::plot_y(ax.frac(sec))) + "\" r=\"3\" fill=\"";
            s += color;
            s += "\"/>\n";
        }
        s += "<text x=\"" + detail::format_double(detail::margin_l + 10) + "\" y=\"" +
             detail::format_double(detail::margin_t + 16 + 16 * static_cast<double>(i)) + "\" fill=\"";
        s += color;
        s += "\">" + series[i].name + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

// Per-instance runtime pairs on log-log axes; timeouts sit on dashed rails
// at the limit and their markers carry the `rail` class.
inline std::string scatter_svg(const std::vector<ScatterPoint>& points, std::string_view name_a,
                               std::string_view name_b, double time_limit,
                               std::string_view title = "per-instance runtimes") {
    if (points.empty()) fail(errc::empty_series, "no points to plot");
    double max_t = time_limit;
    for (const ScatterPoint& p : points) max_t = std::max({max_t, p.a, p.b});
    const auto ax = detail::LogAxis::fit(max_t);

    std::string s;
    detail::svg_open(s, title);
    detail::log_ticks_y(s, ax);
    detail::log_ticks_x(s, ax);
    detail::axis_frame(s);
    s += "<text x=\"320\" y=\"" + detail::format_double(detail::svg_h - 10) +
         "\" text-anchor=\"middle\">";
    s += name_a;
    s += " seconds</text>\n";
    s += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" transform=\"rotate(-90 16 240)\">";
    s += name_b;
    s += " seconds</text>\n";
    // diagonal
    s += "<line x1=\"" + detail::format_double(detail::plot_x(0)) + "\" y1=\"" +
         detail::format_double(detail::plot_y(0)) + "\" x2=\"" + detail::format_double(detail::plot_x(1)) +
         "\" y2=\"" + detail::format_double(detail::plot_y(1)) + "\" stroke=\"#bbb\"/>\n";
    if (time_limit > 0) {
        const double xr = detail::plot_x(ax.frac(time_limit));
        const double yr = detail::plot_y(ax.frac(time_limit));
        s += "<line x1=\"" + detail::format_double(xr) + "\" y1=\"" +
             detail::format_double(detail::margin_t) + "\" x2=\"" + detail::format_double(xr) + "\" y2=\"" +
             detail::format_double(detail::svg_h - detail::margin_b) +
             "\" stroke=\"#1f77b4\" stroke-dasharray=\"4 3\"/>\n";
        s += "<line x1=\"" + detail::format_double(detail::margin_l) + "\" y1=\"" +
             detail::format_double(yr) + "\" x2=\"" + detail::format_double(detail::svg_w - detail::margin_r) +
             "\" y2=\"" + detail::format_double(yr) +
             "\" stroke=\"#1f77b4\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (const ScatterPoint& p : points) {
        const bool rail = p.a_timeout || p.b_timeout;
        s += "<circle class=\"";
        s += rail ? "pt rail" : "pt";
        s += "\" cx=\"" + detail::format_double(detail::plot_x(ax.frac(p.a))) + "\" cy=\"" +
             detail::format_double(detail::plot_y(ax.frac(p.b))) + "\" r=\"3\" fill=\"";
        s += rail ? "#d62728" : "#1f77b4";
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace lpdp
