#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "mechlearn/orthogonal_graph.hpp"

namespace mechlearn {

// G_eps: nodes {0, eps, ..., 1}^2, each linked to its right and bottom neighbor.
struct UniformGrid {
    int k = 0;  // 1/eps
    Rat epsilon;
    OrthogonalGraph graph;

    Point node_point(int i, int j) const { return Point(Rat(i, k), Rat(j, k)); }
};

inline UniformGrid uniform_grid(const Rat& epsilon) {
    if (epsilon.sign() <= 0 || epsilon > Rat(1) || epsilon.num() != BigInt(1))
        throw std::invalid_argument("uniform_grid: 1/epsilon must be a positive integer");
    UniformGrid g;
    g.epsilon = epsilon;
    g.k = static_cast<int>(epsilon.den().to_i64());
    const int k = g.k;
    std::vector<int> ids(static_cast<std::size_t>(k + 1) * (k + 1));
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            ids[static_cast<std::size_t>(i) * (k + 1) + j] = g.graph.add_node(Point(Rat(i, k), Rat(j, k)));
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            if (i < k) g.graph.add_edge(ids[static_cast<std::size_t>(i) * (k + 1) + j],
                                        ids[static_cast<std::size_t>(i + 1) * (k + 1) + j]);
            if (j > 0) g.graph.add_edge(ids[static_cast<std::size_t>(i) * (k + 1) + j],
                                        ids[static_cast<std::size_t>(i) * (k + 1) + j - 1]);
        }
    return g;
}

struct AugmentedGrid {
    int k = 0;
    Rat epsilon;
    std::vector<Point> added;
    OrthogonalGraph graph;
};

namespace detail {

// splits the edge of `g` that strictly contains p in its interior; returns
// the node id of p (which may already exist, in which case nothing splits)
inline int split_at(OrthogonalGraph& g, const Point& p) {
    int existing = g.find_node(p);
    if (existing >= 0) return existing;
    for (auto [u, v] : g.edges()) {
        const Point &a = g.node(u), &b = g.node(v);
        bool vertical = a.x == b.x;
        bool contains = vertical ? (p.x == a.x && p.y < a.y && p.y > b.y)
                                 : (p.y == a.y && p.x > a.x && p.x < b.x);
        if (contains) {
            int id = g.add_node(p);
            g.remove_edge(u, v);
            g.add_edge(u, id);
            g.add_edge(id, v);
            return id;
        }
    }
    throw std::invalid_argument("augment: point " + p.to_string() + " lies on no edge");
}

}  // namespace detail

// Splices data points into G_eps, one per tile at most (tiles exclude their
// south and west sides). Points on the square's own west or south sides are
// tolerated as a degenerate case: they split the boundary edge and get the
// crossing edge toward the interior, which keeps zero-weight detours legal.
inline AugmentedGrid augment(const UniformGrid& base, std::vector<Point> points) {
    const int k = base.k;
    const Rat eps = base.epsilon;

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (static_cast<int>(points.size()) > 2 * k)
        throw std::invalid_argument("augment: more than 2/eps points");

    std::map<std::pair<long long, long long>, int> tile_count;
    for (const auto& p : points) {
        if (!p.in_unit_square()) throw std::invalid_argument("augment: point outside the square");
        // membership tile, half-open on south/west: col = ceil(xk)-1, row = ceil(yk)-1
        long long col = (p.x * Rat(k)).ceil().to_i64() - 1;
        long long row = (p.y * Rat(k)).ceil().to_i64() - 1;
        if (++tile_count[{col, row}] > 1)
            throw std::invalid_argument("augment: two points in one tile");
    }

    AugmentedGrid out;
    out.k = k;
    out.epsilon = eps;
    out.graph = base.graph;
    OrthogonalGraph& g = out.graph;

    for (const auto& p : points) {
        if (g.find_node(p) >= 0) continue;  // already a vertex
        out.added.push_back(p);
        bool on_vline = (p.x * Rat(k)).is_integer();
        bool on_hline = (p.y * Rat(k)).is_integer();
        if (on_vline && on_hline) continue;  // grid vertex handled above
        if (on_vline) {
            int id = detail::split_at(g, p);
            if (p.x.is_zero()) {
                // west side of the square: crossing edge points east instead
                Point q(eps, p.y);
                int qe = detail::split_at(g, q);
                if (!g.has_edge(id, qe)) g.add_edge(id, qe);
            } else {
                Point q(p.x - eps, p.y);
                int qw = detail::split_at(g, q);
                if (!g.has_edge(qw, id)) g.add_edge(qw, id);
            }
        } else if (on_hline) {
            int id = detail::split_at(g, p);
            if (p.y.is_zero()) {
                Point q(p.x, eps);
                int qn = detail::split_at(g, q);
                if (!g.has_edge(qn, id)) g.add_edge(qn, id);
            } else {
                Point q(p.x, p.y - eps);
                int qs = detail::split_at(g, q);
                if (!g.has_edge(id, qs)) g.add_edge(id, qs);
            }
        } else {
            // interior of a tile: the point plus its four side projections
            Rat xw = (p.x * Rat(k)).floor().to_i64() * eps;
            Rat yn = (p.y * Rat(k)).ceil().to_i64() * eps;
            Point north(p.x, yn), south(p.x, yn - eps), west(xw, p.y), east(xw + eps, p.y);
            int id = g.add_node(p);
            g.add_edge(detail::split_at(g, north), id);
            g.add_edge(id, detail::split_at(g, south));
            g.add_edge(detail::split_at(g, west), id);
            g.add_edge(id, detail::split_at(g, east));
        }
    }
    return out;
}

}  // namespace mechlearn
