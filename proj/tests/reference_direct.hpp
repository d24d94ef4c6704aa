// A small, self-contained DIRECT (trisection, center sampling, divide all
// longest sides, hull selection with the epsilon-margin rule) written
// directly against the textbook description. Used only to cross-check the
// engine; shares no code with the library.
#ifndef GENDIRECT_TESTS_REFERENCE_DIRECT_HPP
#define GENDIRECT_TESTS_REFERENCE_DIRECT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace refdirect {

using Point = std::vector<double>;
using Func = std::function<double(const Point&)>;

struct Rect {
    Point center;
    std::vector<int> depth;  // trisections per dimension
    double value;
};

struct State {
    std::vector<Rect> rects;
    std::vector<Point> sampled;
    double f_min;
};

inline double diameter(const Rect& r) {
    double s = 0.0;
    for (int d : r.depth) {
        double side = std::pow(3.0, -d);
        s += side * side;
    }
    return 0.5 * std::sqrt(s);
}

inline State init(const Func& f, int n) {
    State st;
    Rect root{Point(static_cast<std::size_t>(n), 0.5), std::vector<int>(static_cast<std::size_t>(n), 0), 0.0};
    root.value = f(root.center);
    st.sampled.push_back(root.center);
    st.f_min = root.value;
    st.rects.push_back(std::move(root));
    return st;
}

inline std::vector<std::size_t> potentially_optimal(const State& st, double ep) {
    // group by diameter (relative 1e-12)
    std::vector<std::size_t> order(st.rects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return diameter(st.rects[a]) < diameter(st.rects[b]);
    });

    struct Group {
        double d;
        double best;
        std::vector<std::size_t> idx;
    };
    std::vector<Group> groups;
    for (std::size_t i : order) {
        double d = diameter(st.rects[i]);
        if (groups.empty() || d - groups.back().d > 1e-12 * std::max(d, groups.back().d))
            groups.push_back({d, st.rects[i].value, {}});
        groups.back().best = std::min(groups.back().best, st.rects[i].value);
        groups.back().idx.push_back(i);
    }

    std::vector<std::size_t> selected;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        // candidate must admit some positive constant beating every group
        double lo = 0.0, hi = std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < groups.size(); ++h) {
            if (h == g) continue;
            double slope =
                (groups[h].best - groups[g].best) / (groups[h].d - groups[g].d);
            if (groups[h].d < groups[g].d) lo = std::max(lo, slope);
            else hi = std::min(hi, slope);
        }
        if (lo > hi || hi <= 0.0) continue;
        double margin = st.f_min - ep * std::abs(st.f_min);
        if (std::isfinite(hi) && groups[g].best - hi * groups[g].d > margin) continue;
        for (std::size_t i : groups[g].idx)
            if (st.rects[i].value == groups[g].best) selected.push_back(i);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

inline void subdivide(State& st, std::size_t idx, const Func& f) {
    Rect parent = st.rects[idx];
    int dmin = *std::min_element(parent.depth.begin(), parent.depth.end());
    std::vector<std::size_t> dims;
    for (std::size_t j = 0; j < parent.depth.size(); ++j)
        if (parent.depth[j] == dmin) dims.push_back(j);

    struct Probe {
        std::size_t j;
        Point lo_pt, hi_pt;
        double lo_val, hi_val, w;
    };
    std::vector<Probe> probes;
    for (std::size_t j : dims) {
        double off = std::pow(3.0, -(dmin + 1));
        Probe p;
        p.j = j;
        p.lo_pt = parent.center;
        p.lo_pt[j] -= off;
        p.hi_pt = parent.center;
        p.hi_pt[j] += off;
        p.lo_val = f(p.lo_pt);
        p.hi_val = f(p.hi_pt);
        p.w = std::min(p.lo_val, p.hi_val);
        st.sampled.push_back(p.lo_pt);
        st.sampled.push_back(p.hi_pt);
        st.f_min = std::min({st.f_min, p.lo_val, p.hi_val});
        probes.push_back(std::move(p));
    }
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Probe& a, const Probe& b) { return a.w < b.w || (a.w == b.w && a.j < b.j); });

    Rect middle = parent;
    std::vector<Rect> out;
    for (const Probe& p : probes) {
        middle.depth[p.j] += 1;
        Rect lo = middle, hi = middle;
        lo.center = p.lo_pt;
        lo.value = p.lo_val;
        hi.center = p.hi_pt;
        hi.value = p.hi_val;
        out.push_back(std::move(lo));
        out.push_back(std::move(hi));
    }
    out.push_back(std::move(middle));
    st.rects.erase(st.rects.begin() + static_cast<std::ptrdiff_t>(idx));
    for (Rect& r : out) st.rects.push_back(std::move(r));
}

inline void iterate(State& st, const Func& f, double ep = 1e-4) {
    std::vector<std::size_t> sel = potentially_optimal(st, ep);
    // subdivide from the largest index so earlier indices stay valid
    std::sort(sel.rbegin(), sel.rend());
    for (std::size_t idx : sel) subdivide(st, idx, f);
}

}  // namespace refdirect

#endif  // GENDIRECT_TESTS_REFERENCE_DIRECT_HPP
