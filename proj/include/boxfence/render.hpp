#ifndef BOXFENCE_RENDER_HPP
#define BOXFENCE_RENDER_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analyze.hpp"

// Plot rendering with no drawing dependencies: single-line ASCII glyph
// plots for terminals and a self-contained SVG document for files. Both are
// pure functions of the stats and spec, so output bytes are reproducible.

namespace boxfence {

enum class Orientation { Horizontal, Vertical };

struct RenderSpec {
    std::size_t width = 60; // ASCII: columns; SVG: total canvas width in px
    Orientation orientation = Orientation::Vertical; // SVG only; ASCII is a line
    bool show_fences = true;
};

namespace detail {

struct Scale {
    double lo, hi;
    double span() const { return hi - lo; }
};

// Covers every feature of the plot: both fences, both whiskers, all
// outliers. Degenerate spans get unit padding so division is safe.
inline Scale plot_scale(const BoxplotStats& st) {
    double lo = std::min(st.fences.lower, st.whisker_low);
    double hi = std::max(st.fences.upper, st.whisker_high);
    for (double v : st.outliers.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi};
}

inline std::string svg_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Fixed two-decimal coordinates keep the SVG byte-stable.
inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
}

} // namespace detail

// One-line glyph plot: '-' whisker span, '|' whisker caps, '[' ']' box
// edges, '+' median, ':' fences (when shown), 'o' outliers. Several
// outliers landing on one column render as oxN with their count. Later
// glyphs overwrite earlier ones when columns collide on narrow widths.
inline std::string render_ascii(const BoxplotStats& st, const RenderSpec& spec = {}) {
    if (spec.width < 20)
        throw std::invalid_argument("render_ascii: width must be at least 20 columns");
    const detail::Scale sc = detail::plot_scale(st);
    const std::size_t W = spec.width;
    const auto col = [&](double v) {
        const double t = (v - sc.lo) / sc.span();
        return static_cast<std::size_t>(std::llround(t * static_cast<double>(W - 1)));
    };

    std::string line(W, ' ');
    if (spec.show_fences) {
        line[col(st.fences.lower)] = ':';
        line[col(st.fences.upper)] = ':';
    }

    const std::size_t wl = col(st.whisker_low), wh = col(st.whisker_high);
    const std::size_t b1 = col(st.summary.q1), b3 = col(st.summary.q3);
    for (std::size_t c = wl; c <= wh; ++c) line[c] = '-';
    line[wl] = '|';
    line[wh] = '|';
    for (std::size_t c = b1; c <= b3; ++c) line[c] = '=';
    line[b1] = '[';
    line[b3] = ']';
    line[col(st.summary.median)] = '+';

    std::map<std::size_t, std::size_t> hits;
    for (double v : st.outliers.values) ++hits[col(v)];
    for (const auto& [c, count] : hits) {
        std::string glyph = "o";
        if (count > 1) glyph += "x" + std::to_string(count);
        // Shift left at the canvas edge so the count stays visible.
        const std::size_t start = (c + glyph.size() > W) ? W - glyph.size() : c;
        for (std::size_t i = 0; i < glyph.size(); ++i) line[start + i] = glyph[i];
    }
    return line;
}

// Multi-panel SVG grid: panels flow row-major into ceil(sqrt(n)) columns.
// Box, median, whiskers with caps, dashed fence lines (when shown), and
// one small circle per outlier. Orientation flips the value axis between
// vertical (default) and horizontal.
inline std::string render_svg(const std::vector<std::pair<std::string, BoxplotStats>>& panels,
                              const RenderSpec& spec = {}) {
    if (panels.empty())
        throw std::invalid_argument("render_svg: at least one panel required");

    const std::size_t cols =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(panels.size()))));
    const std::size_t rows = (panels.size() + cols - 1) / cols;
    const double total_w = std::max<double>(static_cast<double>(spec.width), 160.0 * cols);
    const double pw = total_w / static_cast<double>(cols);
    const double ph = 0.75 * pw;
    const double total_h = ph * static_cast<double>(rows);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::px(total_w)
       << "\" height=\"" << detail::px(total_h) << "\" viewBox=\"0 0 "
       << detail::px(total_w) << " " << detail::px(total_h) << "\">\n";
    os << "<rect width=\"" << detail::px(total_w) << "\" height=\"" << detail::px(total_h)
       << "\" fill=\"white\"/>\n";

    for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto& [label, st] = panels[i];
        const double x0 = pw * static_cast<double>(i % cols);
        const double y0 = ph * static_cast<double>(i / cols);
        const detail::Scale sc = detail::plot_scale(st);

        const double pad = 0.12 * ph;          // room for the label on top
        const double inset = 0.10 * pw;        // margin inside each panel
        const bool vertical = spec.orientation == Orientation::Vertical;

        // Value axis mapping inside the panel.
        const auto vpos = [&](double v) {
            const double t = (v - sc.lo) / sc.span();
            if (vertical) return y0 + (ph - inset) - t * (ph - pad - 2.0 * inset);
            return x0 + inset + t * (pw - 2.0 * inset);
        };
        // Category axis: center line and box half-thickness.
        const double c_mid = vertical ? x0 + pw / 2.0 : y0 + pad + (ph - pad) / 2.0;
        const double c_half = 0.16 * (vertical ? pw : ph);

        const auto hline = [&](double v, double half, const char* stroke, bool dashed) {
            const double p = vpos(v);
            os << "<line ";
            if (vertical)
                os << "x1=\"" << detail::px(c_mid - half) << "\" y1=\"" << detail::px(p)
                   << "\" x2=\"" << detail::px(c_mid + half) << "\" y2=\"" << detail::px(p);
            else
                os << "x1=\"" << detail::px(p) << "\" y1=\"" << detail::px(c_mid - half)
                   << "\" x2=\"" << detail::px(p) << "\" y2=\"" << detail::px(c_mid + half);
            os << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"";
            if (dashed) os << " stroke-dasharray=\"4 3\"";
            os << "/>\n";
        };
        const auto stem = [&](double v1, double v2) {
            os << "<line ";
            if (vertical)
                os << "x1=\"" << detail::px(c_mid) << "\" y1=\"" << detail::px(vpos(v1))
                   << "\" x2=\"" << detail::px(c_mid) << "\" y2=\"" << detail::px(vpos(v2));
            else
                os << "x1=\"" << detail::px(vpos(v1)) << "\" y1=\"" << detail::px(c_mid)
                   << "\" x2=\"" << detail::px(vpos(v2)) << "\" y2=\"" << detail::px(c_mid);
            os << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        };

        os << "<text x=\"" << detail::px(x0 + pw / 2.0) << "\" y=\"" << detail::px(y0 + pad * 0.7)
           << "\" font-size=\"" << detail::px(pad * 0.45)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\">"
           << detail::svg_escape(label) << "</text>\n";

        // Box spanning q1..q3.
        const double p1 = vpos(st.summary.q1), p3 = vpos(st.summary.q3);
        const double blo = std::min(p1, p3), bhi = std::max(p1, p3);
        if (vertical)
            os << "<rect x=\"" << detail::px(c_mid - c_half) << "\" y=\"" << detail::px(blo)
               << "\" width=\"" << detail::px(2.0 * c_half) << "\" height=\""
               << detail::px(bhi - blo)
               << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        else
            os << "<rect x=\"" << detail::px(blo) << "\" y=\"" << detail::px(c_mid - c_half)
               << "\" width=\"" << detail::px(bhi - blo) << "\" height=\""
               << detail::px(2.0 * c_half)
               << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

        hline(st.summary.median, c_half, "black", false);
        stem(st.summary.q3, st.whisker_high);
        stem(st.summary.q1, st.whisker_low);
        hline(st.whisker_high, c_half * 0.6, "black", false);
        hline(st.whisker_low, c_half * 0.6, "black", false);
        if (spec.show_fences) {
            hline(st.fences.lower, c_half * 1.5, "gray", true);
            hline(st.fences.upper, c_half * 1.5, "gray", true);
        }
        for (double v : st.outliers.values) {
            const double p = vpos(v);
            os << "<circle cx=\"" << detail::px(vertical ? c_mid : p) << "\" cy=\""
               << detail::px(vertical ? p : c_mid)
               << "\" r=\"2.00\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace boxfence

#endif // BOXFENCE_RENDER_HPP
