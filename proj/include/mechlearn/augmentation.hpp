#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mechlearn/grid.hpp"
#include "mechlearn/mechanism.hpp"

namespace mechlearn {

// Closed, dominance-closed region presented through membership plus boundary
// queries. col_min(x) is the lowest allocated y in column x (nullopt for an
// empty column); row_min(y) is the leftmost allocated x in row y.
struct MonotoneRegion {
    std::function<bool(const Point&)> contains;
    std::function<std::optional<Rat>(const Rat&)> col_min;
    // left limit of col_min, i.e. the lowest allocated y strictly left of x;
    // for continuous boundaries this coincides with col_min
    std::function<std::optional<Rat>(const Rat&)> col_min_before;
    std::function<std::optional<Rat>(const Rat&)> row_min;
};

inline MonotoneRegion region_of(const Mechanism& m) {
    MonotoneRegion r;
    r.contains = [m](const Point& p) { return m.allocates(p); };
    r.col_min = [m](const Rat& x) { return m.col_min(x); };
    r.col_min_before = [m](const Rat& x) { return m.col_min_before(x); };
    r.row_min = [m](const Rat& y) { return m.row_min(y); };
    return r;
}

// Region above a non-increasing boundary curve y = f(x), f : [0,1] -> reals
// (values above 1 mean the column is empty, below 0 a full column). row_min
// is recovered from f by bisection; this oracle backs curved test targets.
inline MonotoneRegion region_above_curve(std::function<double(double)> f, double tol = 1e-9) {
    MonotoneRegion r;
    r.contains = [f](const Point& p) { return p.y.to_double() >= f(p.x.to_double()) - 1e-15; };
    r.col_min = [f](const Rat& x) -> std::optional<Rat> {
        double b = f(x.to_double());
        if (b > 1.0) return std::nullopt;
        return Rat::from_double(std::max(0.0, b));
    };
    // the left limit equals col_min for a continuous boundary; the 2*tol
    // bias absorbs bisection error so the containing-path walk is not
    // stalled by points a rounding error below a grid row
    r.col_min_before = [f, tol](const Rat& x) -> std::optional<Rat> {
        double b = f(x.to_double());
        if (b > 1.0) return std::nullopt;
        return Rat::from_double(std::min(1.0, std::max(0.0, b) + 2.0 * tol));
    };
    r.row_min = [f, tol](const Rat& y) -> std::optional<Rat> {
        double yy = y.to_double();
        if (f(1.0) > yy) return std::nullopt;
        if (f(0.0) <= yy) return Rat(0);
        double lo = 0.0, hi = 1.0;  // f(lo) > yy >= f(hi)
        // bisect well below the advertised tolerance: steep boundaries
        // amplify the x error into the y direction
        while (hi - lo > 1e-3 * tol) {
            double mid = 0.5 * (lo + hi);
            (f(mid) <= yy ? hi : lo) = mid;
        }
        return Rat::from_double(hi);
    };
    return r;
}

struct AugmentedMechanism {
    Mechanism mechanism;
    AugmentedGrid grid;
    CompletePath path;  // within grid.graph
};

// The augmented-grid mechanism associated with a target region at precision
// eps: boundary tiles contribute one splice point each, then the minimal
// complete path whose region contains the target is read off greedily.
// The output allocates whenever the target does, and charges each agent at
// most eps less, so pointwise revenue drops by at most 2*eps on the target
// region.
inline AugmentedMechanism associated_augmented_mechanism(const MonotoneRegion& region, const Rat& eps) {
    UniformGrid base = uniform_grid(eps);
    const int k = base.k;

    std::vector<Point> splice;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            Point bl(Rat(i, k), Rat(j, k)), tr(Rat(i + 1, k), Rat(j + 1, k));
            if (!region.contains(tr) || region.contains(bl)) continue;  // not a boundary tile
            auto xn = region.row_min(tr.y);
            auto ye = region.col_min(tr.x);
            if (!xn || !ye || *xn > tr.x || *ye > tr.y)
                throw std::logic_error("associated_augmented_mechanism: inconsistent region oracle");
            // entry through the north side means the NW corner is still
            // outside the region; exit through the east side means the SE
            // corner is outside it
            bool from_north = *xn > bl.x;
            bool to_east = *ye > bl.y;
            if (from_north && to_east) {
                splice.push_back(Point(*xn, *ye));
            } else if (from_north && !to_east) {
                splice.push_back(Point(*xn, tr.y));
            } else if (!from_north && to_east) {
                splice.push_back(Point(tr.x, *ye));
            }
            // west-to-south tiles need no splice: the tile's own sides serve
        }
    }
    AugmentedMechanism out;
    out.grid = augment(base, splice);

    // greedy minimal containing path: go right while no allocated point in
    // the columns strictly ahead lies below the current height (the landing
    // column itself is served by later descents), else go down; on the east
    // side descend to the region's own column minimum before stopping
    const OrthogonalGraph& g = out.grid.graph;
    // minimal start: the node where the region meets the north side (it is
    // a splice or grid node); an empty region degenerates to (1,1)
    auto rm = region.row_min(Rat(1));
    int cur = -1;
    if (!rm) {
        cur = g.find_node(Point(Rat(1), Rat(1)));
    } else {
        cur = g.find_node(Point(*rm, Rat(1)));
        if (cur < 0) {
            std::int64_t gi = (*rm * Rat(k)).floor().to_i64();
            if (gi > k) gi = k;
            if (gi < 0) gi = 0;
            cur = g.find_node(Point(Rat(gi, k), Rat(1)));
        }
    }
    for (;;) {
        out.path.nodes.push_back(cur);
        const Point& u = g.node(cur);
        int right = -1, down = -1;
        for (int v : g.out(cur)) {
            if (g.node(v).y == u.y) right = v;
            else
                down = v;
        }
        if (u.x == Rat(1)) {
            auto cm = region.col_min(Rat(1));
            if (cm && *cm < u.y && down >= 0) {
                cur = down;
                continue;
            }
            break;
        }
        bool go_right = false;
        if (right >= 0) {
            auto cm = region.col_min_before(g.node(right).x);
            go_right = !cm || *cm >= u.y;
        }
        if (go_right) cur = right;
        else if (down >= 0)
            cur = down;
        else
            throw std::logic_error("associated_augmented_mechanism: walk stuck");
    }
    out.mechanism = Mechanism::from_path(out.path, g);
    return out;
}

inline AugmentedMechanism associated_augmented_mechanism(const Mechanism& target, const Rat& eps) {
    return associated_augmented_mechanism(region_of(target), eps);
}

// Union of the grid tiles fully contained in the region, as a mechanism.
// Under-approximates the target; the difference is covered by the boundary
// tiles, of which a monotone region has at most 2/eps.
inline Mechanism inner_hull(const MonotoneRegion& region, const Rat& eps) {
    UniformGrid base = uniform_grid(eps);
    const int k = base.k;
    std::vector<Point> corners;
    for (int i = 0; i < k; ++i) {
        auto cm = region.col_min(Rat(i, k));
        if (!cm) continue;
        std::int64_t j = (*cm * Rat(k)).ceil().to_i64();  // lowest tile bottom at or above col_min
        if (j <= k - 1) corners.push_back(Point(Rat(i, k), Rat(j, k)));
    }
    if (corners.empty()) return Mechanism::top_corner();
    return Mechanism::from_points(std::move(corners));
}

inline Mechanism inner_hull(const Mechanism& target, const Rat& eps) {
    return inner_hull(region_of(target), eps);
}

}  // namespace mechlearn
