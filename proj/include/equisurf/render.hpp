#pragma once

#include <iomanip>
#include <set>
#include <sstream>
#include <string>

#include "std_modules.hpp"

namespace equisurf {

inline char cell_char(int v) {
    if (v <= 0) return '.';
    if (v <= 9) return static_cast<char>('0' + v);
    return '*';
}

// Rows top-down, three columns per cell so negative labels line up.
inline std::string render_ascii(const DimTable& t) {
    const Window& w = t.window;
    std::ostringstream os;
    os << "q\\p ";
    for (int p = w.p_min; p <= w.p_max; ++p) os << std::setw(3) << p;
    os << "\n";
    for (int q = w.q_max; q >= w.q_min; --q) {
        os << std::setw(3) << q << (q == 0 ? '-' : ' ');
        for (int p = w.p_min; p <= w.p_max; ++p) os << std::setw(3) << cell_char(t.at({p, q}));
        os << "\n";
    }
    return os.str();
}

inline std::string render_ascii(const ModuleExpr& e, const Window& w) { return render_ascii(dims_window(e, w)); }

namespace detail {

struct SvgFrame {
    Window w;
    int step = 24;
    int margin = 30;
    int x(int p) const { return margin + (p - w.p_min) * step; }
    int y(int q) const { return margin + (w.q_max - q) * step; }
    int width() const { return 2 * margin + (w.width() - 1) * step; }
    int height() const { return 2 * margin + (w.height() - 1) * step; }
};

}  // namespace detail

// Lines for x, y, z are drawn only when the expression is a single standard module.
inline std::string render_svg(const ModuleExpr& e, const Window& w) {
    detail::SvgFrame f{w};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width() << "\" height=\"" << f.height() << "\">\n";
    if (w.contains({0, w.q_min}))
        os << "  <line x1=\"" << f.x(0) << "\" y1=\"" << f.y(w.q_min) << "\" x2=\"" << f.x(0) << "\" y2=\"" << f.y(w.q_max)
           << "\" stroke=\"#bbb\" stroke-dasharray=\"2,3\"/>\n";
    if (w.contains({w.p_min, 0}))
        os << "  <line x1=\"" << f.x(w.p_min) << "\" y1=\"" << f.y(0) << "\" x2=\"" << f.x(w.p_max) << "\" y2=\"" << f.y(0)
           << "\" stroke=\"#bbb\" stroke-dasharray=\"2,3\"/>\n";

    auto copies = e.copies();
    if (copies.size() == 1) {
        ExpandedModule m(copies);
        struct Gen {
            RingElement r;
            const char* colour;
        };
        const Gen gens[] = {{ring::x(), "black"}, {ring::y(), "blue"}, {ring::z(), "red"}};
        std::set<std::tuple<int, int, int, int, std::string>> lines;
        w.for_each([&](Bidegree d) {
            for (auto& c : m.basis(d))
                for (auto& g : gens) {
                    Bidegree t = d + g.r.degree();
                    if (!w.contains(t)) continue;
                    if (m.act(c, g.r)) lines.insert({d.p, d.q, t.p, t.q, g.colour});
                }
        });
        for (auto& [p0, q0, p1, q1, col] : lines)
            os << "  <line x1=\"" << f.x(p0) << "\" y1=\"" << f.y(q0) << "\" x2=\"" << f.x(p1) << "\" y2=\"" << f.y(q1)
               << "\" stroke=\"" << col << "\"/>\n";
    }
    w.for_each([&](Bidegree d) {
        int v = e.dim(d);
        if (v == 0) return;
        os << "  <circle cx=\"" << f.x(d.p) << "\" cy=\"" << f.y(d.q) << "\" r=\"4\" fill=\"black\"/>\n";
        if (copies.size() > 1 && v > 1)
            os << "  <text x=\"" << f.x(d.p) + 5 << "\" y=\"" << f.y(d.q) - 5 << "\" font-size=\"10\">" << v << "</text>\n";
    });
    os << "</svg>\n";
    return os.str();
}

}  // namespace equisurf
