#include "hmbec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hmbec {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 50.0;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

bool parse_cell(const std::string& s, double& out) {
    if (s.empty()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

// Blue -> white -> red map over [0, 1].
std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double s = t / 0.5;
        r = static_cast<int>(255.0 * s + 30.0 * (1.0 - s));
        g = static_cast<int>(255.0 * s + 60.0 * (1.0 - s));
        b = static_cast<int>(255.0 * s + 180.0 * (1.0 - s));
    } else {
        const double s = (t - 0.5) / 0.5;
        r = static_cast<int>(200.0 * s + 255.0 * (1.0 - s));
        g = static_cast<int>(30.0 * s + 255.0 * (1.0 - s));
        b = static_cast<int>(30.0 * s + 255.0 * (1.0 - s));
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    double px(double x) const {
        const double span = x_hi > x_lo ? x_hi - x_lo : 1.0;
        return kMarginLeft + (x - x_lo) / span * (kWidth - kMarginLeft - kMarginRight);
    }
    double py(double y) const {
        const double span = y_hi > y_lo ? y_hi - y_lo : 1.0;
        return kHeight - kMarginBottom -
               (y - y_lo) / span * (kHeight - kMarginTop - kMarginBottom);
    }
};

void write_axes(std::ofstream& out, const Frame& fr, const std::string& x_label,
                const std::string& y_label) {
    out << "<rect x='" << fmt(kMarginLeft) << "' y='" << fmt(kMarginTop) << "' width='"
        << fmt(kWidth - kMarginLeft - kMarginRight) << "' height='"
        << fmt(kHeight - kMarginTop - kMarginBottom)
        << "' fill='none' stroke='black'/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double tx = fr.x_lo + (fr.x_hi - fr.x_lo) * i / 4.0;
        const double ty = fr.y_lo + (fr.y_hi - fr.y_lo) * i / 4.0;
        out << "<text x='" << fmt(fr.px(tx)) << "' y='" << fmt(kHeight - kMarginBottom + 18.0)
            << "' font-size='11' text-anchor='middle'>" << escape(fmt(tx)) << "</text>\n";
        out << "<text x='" << fmt(kMarginLeft - 6.0) << "' y='" << fmt(fr.py(ty) + 4.0)
            << "' font-size='11' text-anchor='end'>" << escape(fmt(ty)) << "</text>\n";
    }
    out << "<text x='" << fmt(0.5 * kWidth) << "' y='" << fmt(kHeight - 10.0)
        << "' font-size='13' text-anchor='middle'>" << escape(x_label) << "</text>\n";
    out << "<text x='14' y='" << fmt(0.5 * kHeight)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 14 "
        << fmt(0.5 * kHeight) << ")'>" << escape(y_label) << "</text>\n";
}

}  // namespace

void render_svg(const SweepResult& result, std::size_t n_axes, const std::string& path) {
    if (result.rows.empty()) throw std::invalid_argument("render_svg: empty result");
    if (n_axes < 1 || n_axes > 2)
        throw std::invalid_argument("render_svg: need one or two axes");
    if (result.columns.size() < n_axes + 2)
        throw std::invalid_argument("render_svg: no output column to plot");

    // First output column with at least one numeric cell.
    std::size_t value_col = n_axes;
    bool found = false;
    for (std::size_t c = n_axes; c + 1 < result.columns.size() && !found; ++c) {
        for (const auto& row : result.rows) {
            double v;
            if (parse_cell(row[c], v)) {
                value_col = c;
                found = true;
                break;
            }
        }
    }
    if (!found) throw std::invalid_argument("render_svg: no numeric data to plot");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("render_svg: cannot open '" + path + "'");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt(kWidth)
        << "' height='" << fmt(kHeight) << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";

    if (n_axes == 1) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : result.rows) {
            double x, y;
            if (parse_cell(row[0], x) && parse_cell(row[value_col], y))
                pts.emplace_back(x, y);
        }
        if (pts.empty()) throw std::invalid_argument("render_svg: no plottable points");
        Frame fr{pts[0].first, pts[0].first, pts[0].second, pts[0].second};
        for (const auto& [x, y] : pts) {
            fr.x_lo = std::min(fr.x_lo, x);
            fr.x_hi = std::max(fr.x_hi, x);
            fr.y_lo = std::min(fr.y_lo, y);
            fr.y_hi = std::max(fr.y_hi, y);
        }
        write_axes(out, fr, result.columns[0], result.columns[value_col]);
        if (pts.size() > 1) {
            out << "<polyline fill='none' stroke='#1f4e9c' stroke-width='1.5' points='";
            for (const auto& [x, y] : pts) out << fmt(fr.px(x)) << "," << fmt(fr.py(y)) << " ";
            out << "'/>\n";
        }
        for (const auto& [x, y] : pts)
            out << "<circle cx='" << fmt(fr.px(x)) << "' cy='" << fmt(fr.py(y))
                << "' r='2.2' fill='#1f4e9c'/>\n";
    } else {
        struct Cell {
            double x, y, v;
        };
        std::vector<Cell> cells;
        std::vector<double> xs, ys;
        double v_lo = std::numeric_limits<double>::infinity();
        double v_hi = -std::numeric_limits<double>::infinity();
        for (const auto& row : result.rows) {
            double x, y, v;
            if (parse_cell(row[0], x) && parse_cell(row[1], y) &&
                parse_cell(row[value_col], v)) {
                cells.push_back({x, y, v});
                xs.push_back(x);
                ys.push_back(y);
                v_lo = std::min(v_lo, v);
                v_hi = std::max(v_hi, v);
            }
        }
        if (cells.empty()) throw std::invalid_argument("render_svg: no plottable cells");
        auto uniq = [](std::vector<double>& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(xs);
        uniq(ys);
        Frame fr{xs.front(), xs.back(), ys.front(), ys.back()};
        const double cw = (kWidth - kMarginLeft - kMarginRight) /
                          static_cast<double>(std::max<std::size_t>(xs.size(), 1));
        const double ch = (kHeight - kMarginTop - kMarginBottom) /
                          static_cast<double>(std::max<std::size_t>(ys.size(), 1));
        const double span = v_hi > v_lo ? v_hi - v_lo : 1.0;
        for (const auto& c : cells) {
            const double t = (c.v - v_lo) / span;
            out << "<rect x='" << fmt(fr.px(c.x) - 0.5 * cw) << "' y='"
                << fmt(fr.py(c.y) - 0.5 * ch) << "' width='" << fmt(cw) << "' height='"
                << fmt(ch) << "' fill='" << heat_color(t) << "'/>\n";
        }
        write_axes(out, fr, result.columns[0], result.columns[1]);
        out << "<text x='" << fmt(kWidth - kMarginRight) << "' y='14' font-size='12' "
            << "text-anchor='end'>" << escape(result.columns[value_col]) << " in ["
            << escape(fmt(v_lo)) << ", " << escape(fmt(v_hi)) << "]</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("render_svg: write failed for '" + path + "'");
}

}  // namespace hmbec
