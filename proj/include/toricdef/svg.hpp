#pragma once

#include "toricdef/resolutions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace toricdef::svg {

namespace detail {

// Exact up to this point; fixed formatting keeps output byte-stable.
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}
inline double d(const Rat& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

class Canvas {
public:
    Canvas(double w, double h) : w_(w), h_(h) {}

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
                 "\" " + style + "/>\n";
    }
    void dot(double x, double y, double r, const std::string& fill) {
        body_ += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& anchor = "start", int size = 12) {
        body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
                 "\" text-anchor=\"" + anchor + "\">" + escape(s) + "</text>\n";
    }
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        std::string p;
        for (const auto& [x, y] : pts) p += num(x) + "," + num(y) + " ";
        body_ += "<polygon points=\"" + p + "\" " + style + "/>\n";
    }
    std::string str() const {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w_) + "\" height=\"" + num(h_) +
               "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) + "\" font-family=\"serif\">\n" +
               "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
    }

private:
    static std::string escape(const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else o += c;
        }
        return o;
    }
    double w_, h_;
    std::string body_;
};

/// Integer shift putting the midpoint of [lo, hi] in [-1/2, 1/2).
inline Int centering_shift(const Interval& i) { return -((i.lo + i.hi) / Rat(2) + Rat(1, 2)).floor(); }

inline const char* kStroke = "stroke=\"black\" stroke-width=\"2\"";
inline const char* kAxis = "stroke=\"#bbbbbb\" stroke-width=\"1\"";

struct Axis {
    Rat lo, hi;
    double left, width;
    double x(const Rat& t) const { return left + width * d((t - lo) / (hi - lo)); }
};

/// Horizontal lattice line with the interval drawn on it.
inline void interval_row(Canvas& c, const Axis& ax, double y, const Interval& iv, const std::string& label) {
    c.line(ax.left, y, ax.left + ax.width, y, kAxis);
    for (Int t = ax.lo.ceil(); Rat(t) <= ax.hi; ++t) c.dot(ax.x(Rat(t)), y, 2.5, "#888888");
    if (iv.is_point()) c.dot(ax.x(iv.lo), y, 4, "black");
    else c.line(ax.x(iv.lo), y, ax.x(iv.hi), y, kStroke);
    c.text(ax.x(iv.lo), y - 8, iv.lo.str(), "middle", 10);
    if (!iv.is_point()) c.text(ax.x(iv.hi), y - 8, iv.hi.str(), "middle", 10);
    if (!label.empty()) c.text(8, y + 4, label);
}

}  // namespace detail

/// Segments Q(w^h), h = 2..e-1, each shifted so that its midpoint is near 0.
inline std::string segments(const CqsModel& m) {
    using namespace detail;
    std::vector<Interval> rows;
    Rat lo(0), hi(0);
    for (int h = 2; h < m.e; ++h) {
        auto s = segment(m, h).interval();
        rows.push_back(s.shifted(Rat(centering_shift(s))));
        lo = std::min(lo, rows.back().lo);
        hi = std::max(hi, rows.back().hi);
    }
    lo = Rat(lo.floor() - 1);
    hi = Rat(hi.ceil() + 1);
    Canvas c(560, 40.0 + 50.0 * static_cast<double>(rows.size()));
    Axis ax{lo, hi, 100, 440};
    for (std::size_t j = 0; j < rows.size(); ++j) {
        auto u = to_paper_coords(m.w_at(static_cast<int>(j) + 2), m);
        interval_row(c, ax, 40.0 + 50.0 * static_cast<double>(j), rows[j],
                     "Q(w" + std::to_string(j + 2) + ") [" + u.u1.str() + "," + u.u2.str() + "]");
    }
    return c.str();
}

/// One row per admissible decomposition: the two summands side by side.
inline std::string decompositions(const CqsModel& m) {
    using namespace detail;
    auto decs = enum_decompositions(m);
    Rat lo(0), hi(0);
    std::vector<std::pair<Interval, Interval>> rows;
    for (const auto& dec : decs) {
        auto q = segment(m, dec.h).interval();
        Rat sh(centering_shift(q));
        rows.push_back({dec.summand0.shifted(sh), dec.summand1});
        lo = std::min({lo, rows.back().first.lo, rows.back().second.lo});
        hi = std::max({hi, rows.back().first.hi, rows.back().second.hi});
    }
    lo = Rat(lo.floor() - 1);
    hi = Rat(hi.ceil() + 1);
    Canvas c(820, 40.0 + 45.0 * static_cast<double>(decs.size()));
    Axis left{lo, hi, 120, 300}, right{lo, hi, 490, 300};
    for (std::size_t j = 0; j < decs.size(); ++j) {
        double y = 40.0 + 45.0 * static_cast<double>(j);
        interval_row(c, left, y, rows[j].first, decs[j].label());
        interval_row(c, right, y, rows[j].second, "");
        c.text(455, y + 4, "+", "middle", 14);
    }
    return c.str();
}

/// The slice y + z = 1 of every simultaneous resolution: the top edge carries Q^h, the bottom
/// edge carries the second summand divided by p.
inline std::string slices(const CqsModel& m) {
    using namespace detail;
    struct Panel {
        std::string label;
        Int shear;
        Fan3 fan;
    };
    std::vector<Panel> panels;
    Rat lo(0), hi(0);
    for (const auto& dec : enum_decompositions(m)) {
        auto def = build_deformation(m, dec);
        for (const auto& k : components_of(def)) {
            auto fd = fan_decomposition_for(def, k);
            Int shear = segment(m, dec.h).lemma_shift + 1;
            lo = std::min({lo, fd.total0.lo - Rat(shear), fd.total1.lo / Rat(fd.p)});
            hi = std::max({hi, fd.total0.hi - Rat(shear), fd.total1.hi / Rat(fd.p)});
            panels.push_back({fd.label(), shear, assemble_fan3(fd)});
        }
    }
    lo = Rat(lo.floor());
    hi = Rat(hi.ceil());
    const double pw = 240, ph = 150;
    const std::size_t cols = 4, nrows = (panels.size() + cols - 1) / cols;
    Canvas c(pw * static_cast<double>(cols), ph * static_cast<double>(nrows) + 10);
    for (std::size_t j = 0; j < panels.size(); ++j) {
        double ox = pw * static_cast<double>(j % cols), oy = ph * static_cast<double>(j / cols);
        Axis ax{lo, hi, ox + 20, pw - 40};
        double top = oy + 35, bottom = oy + 115;
        auto place = [&](const I3& v) {
            Rat s(v[1] + v[2]);
            Rat x = (Rat(v[0]) - Rat(panels[j].shear) * Rat(v[1])) / s;
            Rat z = Rat(v[2]) / s;
            return std::pair<double, double>{ax.x(x), top + (bottom - top) * d(z)};
        };
        for (const auto& cone : panels[j].fan.cones) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& r : cone.cone.rays()) pts.push_back(place(r));
            // order around the centroid
            double cx = 0, cy = 0;
            for (const auto& [x, y] : pts) cx += x, cy += y;
            cx /= static_cast<double>(pts.size());
            cy /= static_cast<double>(pts.size());
            std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
                return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
            });
            c.polygon(pts, std::string("fill=\"") + (cone.canonical ? "#dde8f5" : "#f5d0d0") +
                               "\" stroke=\"black\" stroke-width=\"1.5\"");
        }
        for (Int t = lo.ceil(); Rat(t) <= hi; ++t) {
            c.dot(ax.x(Rat(t)), top, 2, "#666666");
            c.dot(ax.x(Rat(t)), bottom, 2, "#666666");
        }
        c.text(ox + pw / 2, oy + 140, panels[j].label, "middle", 11);
    }
    return c.str();
}

inline std::string figure(const CqsModel& m, const std::string& target) {
    if (target == "segments") return segments(m);
    if (target == "decompositions") return decompositions(m);
    if (target == "slices") return slices(m);
    throw InvalidInput("unknown figure target '" + target + "' (expected segments, decompositions or slices)");
}

}  // namespace toricdef::svg
