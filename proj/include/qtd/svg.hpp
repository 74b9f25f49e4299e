#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "qtd/errors.hpp"
#include "qtd/table.hpp"

namespace qtd {

namespace detail {

inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

/// A readable tick step: the largest of {1,2,5}*10^k giving >= 4 intervals.
inline double nice_step(double range) {
    if (!(range > 0.0)) return 1.0;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {5.0, 2.0, 1.0})
        if (mult * mag <= raw) return mult * mag;
    return mag;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Render the table as a static line chart.
///
/// Plot routing is read from provenance lines:
///   "plot: y=<col>[,<col2>]"      columns to draw (default q_l_forward; a
///                                 second column is drawn dashed)
///   "plot: markers=<col>"         per-series vertical marker at x = value of
///                                 <col> in the series' first row (used for
///                                 the effective-frequency zero crossings)
///   "plot: x_label=..." / "plot: y_label=..." / "plot: title=..."
///   "series <k>: <label>"         legend text for series k
/// One polyline per (series, y-column); the first column is the x axis and the
/// "series_id" column groups rows into series.
inline std::string emit_svg(const ResultTable& t) {
    if (t.columns.empty()) throw EmptyTable("table has no columns");
    if (t.rows.empty()) throw EmptyTable("table has no rows");

    std::vector<std::string> y_cols{"q_l_forward"};
    std::string marker_col, title, x_label = t.columns.front(), y_label;
    std::map<long, std::string> series_labels;
    for (const std::string& line : t.provenance) {
        if (line.rfind("plot: y=", 0) == 0) {
            y_cols.clear();
            for (const std::string& c : detail::split(line.substr(8), ','))
                y_cols.push_back(detail::strip(c));
        } else if (line.rfind("plot: markers=", 0) == 0) {
            marker_col = detail::strip(line.substr(14));
        } else if (line.rfind("plot: title=", 0) == 0) {
            title = detail::strip(line.substr(12));
        } else if (line.rfind("plot: x_label=", 0) == 0) {
            x_label = detail::strip(line.substr(14));
        } else if (line.rfind("plot: y_label=", 0) == 0) {
            y_label = detail::strip(line.substr(14));
        } else if (line.rfind("series ", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon != std::string::npos)
                series_labels[std::strtol(line.c_str() + 7, nullptr, 10)] =
                    detail::strip(line.substr(colon + 1));
        }
    }
    if (y_label.empty()) y_label = y_cols.front();

    auto column_index = [&](const std::string& name) -> int {
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            if (t.columns[c] == name) return static_cast<int>(c);
        throw UnsupportedFormat("plot column '" + name + "' not present in table");
    };
    const int series_col = column_index("series_id");
    std::vector<int> y_idx;
    for (const std::string& c : y_cols) y_idx.push_back(column_index(c));
    const int marker_idx = marker_col.empty() ? -1 : column_index(marker_col);

    // gather series ids in first-appearance order
    std::vector<long> series_ids;
    for (const auto& row : t.rows) {
        const long id = std::lround(row[static_cast<std::size_t>(series_col)]);
        if (std::find(series_ids.begin(), series_ids.end(), id) == series_ids.end())
            series_ids.push_back(id);
    }

    double x_min = t.rows.front().front(), x_max = x_min;
    double y_min = 0.0, y_max = 0.0;
    bool first_y = true;
    for (const auto& row : t.rows) {
        x_min = std::min(x_min, row.front());
        x_max = std::max(x_max, row.front());
        for (int yi : y_idx) {
            const double v = row[static_cast<std::size_t>(yi)];
            if (first_y) {
                y_min = y_max = v;
                first_y = false;
            } else {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    }
    if (x_max == x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double width = 960, height = 600;
    const double ml = 90, mr = 230, mt = 50, mb = 70;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
                                    "#aec7e8", "#98df8a", "#c5b0d5", "#ffbb78", "#f7b6d2",
                                    "#c49c94", "#9edae5", "#dbdb8d", "#ad494a", "#636363",
                                    "#393b79"};
    constexpr int n_palette = static_cast<int>(sizeof palette / sizeof *palette);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + detail::svg_num(width)
           + " " + detail::svg_num(height) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        svg += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\"30\" text-anchor=\"middle\" "
               "font-size=\"18\">" + detail::xml_escape(title) + "</text>\n";

    // axes box
    svg += "<rect x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(mt) + "\" width=\""
           + detail::svg_num(pw) + "\" height=\"" + detail::svg_num(ph)
           + "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks
    const double xstep = detail::nice_step(x_max - x_min);
    for (double x = std::ceil(x_min / xstep) * xstep; x <= x_max + 1e-9 * xstep; x += xstep) {
        svg += "<line x1=\"" + detail::svg_num(sx(x)) + "\" y1=\"" + detail::svg_num(mt + ph)
               + "\" x2=\"" + detail::svg_num(sx(x)) + "\" y2=\"" + detail::svg_num(mt + ph + 6)
               + "\" stroke=\"black\"/>\n";
        char xlab[40];
        std::snprintf(xlab, sizeof xlab, "%.6g", std::round(x / xstep) * xstep);
        svg += "<text x=\"" + detail::svg_num(sx(x)) + "\" y=\"" + detail::svg_num(mt + ph + 22)
               + "\" text-anchor=\"middle\" font-size=\"12\">" + xlab + "</text>\n";
    }
    const double ystep = detail::nice_step(y_max - y_min);
    for (double y = std::ceil(y_min / ystep) * ystep; y <= y_max + 1e-9 * ystep; y += ystep) {
        svg += "<line x1=\"" + detail::svg_num(ml - 6) + "\" y1=\"" + detail::svg_num(sy(y))
               + "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(sy(y))
               + "\" stroke=\"black\"/>\n";
        char lab[40];
        std::snprintf(lab, sizeof lab, "%.3g", std::round(y / ystep) * ystep);
        svg += "<text x=\"" + detail::svg_num(ml - 10) + "\" y=\"" + detail::svg_num(sy(y) + 4)
               + "\" text-anchor=\"end\" font-size=\"12\">" + lab + "</text>\n";
    }
    svg += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\""
           + detail::svg_num(height - 20) + "\" text-anchor=\"middle\" font-size=\"14\">"
           + detail::xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"24\" y=\"" + detail::svg_num(mt + ph / 2)
           + "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 24 "
           + detail::svg_num(mt + ph / 2) + ")\">" + detail::xml_escape(y_label) + "</text>\n";

    // zero line if visible
    if (y_min < 0.0 && y_max > 0.0)
        svg += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(sy(0))
               + "\" x2=\"" + detail::svg_num(ml + pw) + "\" y2=\"" + detail::svg_num(sy(0))
               + "\" stroke=\"#cccccc\" stroke-dasharray=\"2,3\"/>\n";

    int legend_row = 0;
    for (std::size_t s = 0; s < series_ids.size(); ++s) {
        const long id = series_ids[s];
        const char* color = palette[s % n_palette];
        for (std::size_t yc = 0; yc < y_idx.size(); ++yc) {
            std::string points;
            for (const auto& row : t.rows) {
                if (std::lround(row[static_cast<std::size_t>(series_col)]) != id) continue;
                points += detail::svg_num(sx(row.front())) + ","
                          + detail::svg_num(sy(row[static_cast<std::size_t>(y_idx[yc])])) + " ";
            }
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\"";
            if (yc > 0) svg += " stroke-dasharray=\"6,4\"";
            svg += " points=\"" + points + "\"/>\n";
        }
        if (marker_idx >= 0) {
            for (const auto& row : t.rows) {
                if (std::lround(row[static_cast<std::size_t>(series_col)]) != id) continue;
                const double xm = row[static_cast<std::size_t>(marker_idx)];
                if (xm >= x_min && xm <= x_max) {
                    svg += "<g class=\"zero-crossing\"><line x1=\"" + detail::svg_num(sx(xm))
                           + "\" y1=\"" + detail::svg_num(mt) + "\" x2=\""
                           + detail::svg_num(sx(xm)) + "\" y2=\"" + detail::svg_num(mt + ph)
                           + "\" stroke=\"";
                    svg += color;
                    svg += "\" stroke-dasharray=\"2,5\" opacity=\"0.7\"/>"
                           "<circle cx=\"" + detail::svg_num(sx(xm)) + "\" cy=\""
                           + detail::svg_num(y_min < 0.0 && y_max > 0.0 ? sy(0.0) : mt + ph)
                           + "\" r=\"4\" fill=\"";
                    svg += color;
                    svg += "\"/></g>\n";
                }
                break;  // one marker per series (constant column)
            }
        }
        // legend
        std::string label = series_labels.count(id) ? series_labels[id]
                                                    : "series " + std::to_string(id);
        const double ly = mt + 14 + 18 * legend_row++;
        svg += "<line x1=\"" + detail::svg_num(ml + pw + 12) + "\" y1=\"" + detail::svg_num(ly - 4)
               + "\" x2=\"" + detail::svg_num(ml + pw + 36) + "\" y2=\"" + detail::svg_num(ly - 4)
               + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::svg_num(ml + pw + 42) + "\" y=\"" + detail::svg_num(ly)
               + "\" font-size=\"11\">" + detail::xml_escape(label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

/// Serialize in the requested format ("csv" or "svg").
inline std::string emit(const ResultTable& t, const std::string& format) {
    if (format == "csv") return emit_csv(t);
    if (format == "svg") return emit_svg(t);
    throw UnsupportedFormat("unknown output format '" + format + "' (expected csv or svg)");
}

}  // namespace qtd
