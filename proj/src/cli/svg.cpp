#include "cvxtalk/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cvxtalk::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
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

struct Range {
    double lo = INFINITY;
    double hi = -INFINITY;

    void add(double x) {
        if (!std::isfinite(x)) return;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    void finish() {
        if (!(lo <= hi)) lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(0.5, 0.05 * std::abs(hi));
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string render_svg(const SweepTable& table, const std::string& title) {
    table.check();
    auto q = [](double x) { return parse_value(format_value(x)); };

    const std::size_t n_rows = table.rows();
    std::vector<std::vector<double>> cols(table.columns.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (double x : table.columns[c]) cols[c].push_back(q(x));
    }

    Range xr, yr;
    if (!cols.empty()) {
        for (double x : cols[0]) xr.add(x);
        for (std::size_t c = 1; c < cols.size(); ++c) {
            for (double y : cols[c]) yr.add(y);
        }
    }
    xr.finish();
    yr.finish();

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << num(kLeft) << "\" y=\"20\" font-size=\"13\">" << escape(title) << "</text>\n";
    s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0, yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        s << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
          << format_value(q(xv)) << "</text>\n";
        s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
          << format_value(q(yv)) << "</text>\n";
    }
    if (!table.names.empty()) {
        s << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 18) << "\" text-anchor=\"middle\">"
          << escape(table.names[0]) << "</text>\n";
    }

    for (std::size_t c = 1; c < cols.size(); ++c) {
        const char* color = kPalette[(c - 1) % 10];
        std::string pts;
        auto flush = [&] {
            if (!pts.empty()) {
                s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts
                  << "\"/>\n";
            }
            pts.clear();
        };
        for (std::size_t r = 0; r < n_rows; ++r) {
            const double x = cols[0][r], y = cols[c][r];
            if (!std::isfinite(x) || !std::isfinite(y)) {
                flush();
                continue;
            }
            if (!pts.empty()) pts += ' ';
            pts += num(sx(x)) + "," + num(sy(y));
        }
        flush();
        const double ly = kTop + 14.0 * c;
        s << "<line x1=\"" << num(kLeft + pw + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 30)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << num(kLeft + pw + 34) << "\" y=\"" << num(ly + 4) << "\">" << escape(table.names[c])
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace cvxtalk::cli
