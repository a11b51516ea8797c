#include "netwatch/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netwatch/errors.hpp"

namespace netwatch {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 440;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 48;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void polyline(std::ostringstream& out, const std::vector<std::pair<double, double>>& pts,
              const char* stroke, bool dashed) {
    out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << fmt(pts[i].first) << ',' << fmt(pts[i].second);
    }
    out << "\"/>\n";
}

}  // namespace

std::string render_chart_svg(const std::vector<ChartPoint>& points) {
    if (points.empty()) throw EmptySeries("chart needs at least one point");

    double lo = points[0].lower, hi = points[0].upper;
    int t_min = points[0].t, t_max = points[0].t;
    for (const auto& p : points) {
        lo = std::min({lo, p.lower, p.lower_limit, p.upper, p.upper_limit});
        hi = std::max({hi, p.lower, p.lower_limit, p.upper, p.upper_limit});
        t_min = std::min(t_min, p.t);
        t_max = std::max(t_max, p.t);
    }
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.06 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double t_span = std::max(1, t_max - t_min);
    auto x_of = [&](double t) { return kMarginLeft + (t - t_min) / t_span * plot_w; };
    auto y_of = [&](double v) { return kMarginTop + (hi - v) / (hi - lo) * plot_h; };

    std::vector<std::pair<double, double>> up, dn, ul, ll;
    up.reserve(points.size());
    for (const auto& p : points) {
        up.emplace_back(x_of(p.t), y_of(p.upper));
        dn.emplace_back(x_of(p.t), y_of(p.lower));
        ul.emplace_back(x_of(p.t), y_of(p.upper_limit));
        ll.emplace_back(x_of(p.t), y_of(p.lower_limit));
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // axes
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

    // y ticks
    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        const double y = y_of(v);
        out << "  <line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt(y) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    // x ticks
    for (int i = 0; i <= 4; ++i) {
        const double t = t_min + t_span * i / 4.0;
        const double x = x_of(t);
        out << "  <line x1=\"" << fmt(x) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
            << fmt(x) << "\" y2=\"" << kMarginTop + plot_h + 4 << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << fmt(x) << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    out << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" font-size=\"12\" text-anchor=\"middle\">time</text>\n";
    out << "  <text x=\"16\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(kMarginTop + plot_h / 2) << ")\">statistic</text>\n";

    polyline(out, ul, "#c62828", true);
    polyline(out, ll, "#c62828", true);
    polyline(out, up, "#1565c0", false);
    polyline(out, dn, "#2e7d32", false);

    out << "  <text x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 14
        << "\" font-size=\"11\" fill=\"#1565c0\">upper</text>\n";
    out << "  <text x=\"" << kMarginLeft + 56 << "\" y=\"" << kMarginTop + 14
        << "\" font-size=\"11\" fill=\"#2e7d32\">lower</text>\n";
    out << "</svg>\n";
    return out.str();
}

void render_chart(const std::vector<ChartPoint>& points, const std::string& path) {
    const std::string svg = render_chart_svg(points);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << svg;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace netwatch
