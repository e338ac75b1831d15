#ifndef RELIASCAN_SVG_REPORT_HPP_
#define RELIASCAN_SVG_REPORT_HPP_

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace reliascan {

// One point of a topic trend: window label plus statistic value.
struct TrendPoint {
    std::string label;
    double value = 0.0;
};

namespace svg_detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace svg_detail

// Self-contained line chart of a statistic across windows, with a dashed
// horizontal marker at the alert threshold. No external renderer involved,
// so identical inputs yield identical bytes.
inline void write_trend_svg(const std::string& title, const std::vector<TrendPoint>& points,
                            double threshold, std::ostream& out) {
    const double width = 640, height = 320;
    const double left = 56, right = 16, top = 36, bottom = 48;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double vmax = threshold;
    for (const auto& p : points) vmax = std::max(vmax, p.value);
    vmax = vmax <= 0 ? 1.0 : vmax * 1.1;

    auto x_of = [&](size_t i) {
        if (points.size() <= 1) return left + plot_w / 2;
        return left + plot_w * double(i) / double(points.size() - 1);
    };
    auto y_of = [&](double v) { return top + plot_h * (1.0 - v / vmax); };

    using svg_detail::escape;
    using svg_detail::fmt;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt(width / 2) << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(top + plot_h) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top + plot_h) << "\" x2=\""
        << fmt(left + plot_w) << "\" y2=\"" << fmt(top + plot_h) << "\" stroke=\"black\"/>\n";

    double ty = y_of(threshold);
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(ty) << "\" x2=\"" << fmt(left + plot_w)
        << "\" y2=\"" << fmt(ty) << "\" stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << fmt(left + plot_w) << "\" y=\"" << fmt(ty - 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" "
        << "fill=\"firebrick\">threshold " << fmt(threshold) << "</text>\n";

    if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (size_t i = 0; i < points.size(); ++i) {
            if (i) out << ' ';
            out << fmt(x_of(i)) << ',' << fmt(y_of(points[i].value));
        }
        out << "\"/>\n";
        for (size_t i = 0; i < points.size(); ++i) {
            out << "<circle cx=\"" << fmt(x_of(i)) << "\" cy=\"" << fmt(y_of(points[i].value))
                << "\" r=\"3\" fill=\"steelblue\"/>\n";
            out << "<text x=\"" << fmt(x_of(i)) << "\" y=\"" << fmt(top + plot_h + 16)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
                << escape(points[i].label) << "</text>\n";
        }
    }
    out << "<text x=\"12\" y=\"" << fmt(top) << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << fmt(vmax) << "</text>\n";
    out << "<text x=\"12\" y=\"" << fmt(top + plot_h) << "\" font-family=\"sans-serif\" "
        << "font-size=\"10\">0</text>\n";
    out << "</svg>\n";
}

}  // namespace reliascan

#endif  // RELIASCAN_SVG_REPORT_HPP_
