#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mechlearn/geometry.hpp"

namespace mechlearn {

// Influence region and intrinsic weight of a single directed edge.
// Vertical edge at x: the rows it spans, to the right of x; the edge's
// column is the first agent's critical price there. Horizontal edge at y:
// the columns it spans, above y. Upper interval ends are half-open except
// when they reach 1.
struct EdgeInfluence {
    Box region;
    Rat weight;
};

inline EdgeInfluence edge_influence(const Point& from, const Point& to) {
    EdgeInfluence r;
    if (from.x == to.x && from.y > to.y) {  // vertical, pointing down
        r.region.x_lo = from.x;
        r.region.x_hi = Rat(1);
        r.region.x_hi_closed = true;
        r.region.y_lo = to.y;
        r.region.y_hi = from.y;
        r.region.y_hi_closed = (from.y == Rat(1));
        r.weight = from.x;
    } else if (from.y == to.y && from.x < to.x) {  // horizontal, pointing right
        r.region.y_lo = from.y;
        r.region.y_hi = Rat(1);
        r.region.y_hi_closed = true;
        r.region.x_lo = from.x;
        r.region.x_hi = to.x;
        r.region.x_hi_closed = (to.x == Rat(1));
        r.weight = from.y;
    } else {
        throw std::invalid_argument("edge is neither vertical-down nor horizontal-right");
    }
    return r;
}

// Directed graph whose vertices are points of the unit square and whose
// edges run strictly rightwards or downwards.
class OrthogonalGraph {
  public:
    int add_node(const Point& p) {
        auto it = index_.find(p);
        if (it != index_.end()) return it->second;
        nodes_.push_back(p);
        int id = static_cast<int>(nodes_.size()) - 1;
        index_.emplace(p, id);
        out_.emplace_back();
        in_.emplace_back();
        return id;
    }

    void add_edge(int from, int to) {
        out_[from].push_back(to);
        in_[to].push_back(from);
    }

    bool has_edge(int from, int to) const {
        for (int v : out_[from])
            if (v == to) return true;
        return false;
    }

    void remove_edge(int from, int to) {
        auto& o = out_[from];
        o.erase(std::find(o.begin(), o.end(), to));
        auto& i = in_[to];
        i.erase(std::find(i.begin(), i.end(), from));
    }

    int find_node(const Point& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const {
        int n = 0;
        for (const auto& o : out_) n += static_cast<int>(o.size());
        return n;
    }
    const Point& node(int id) const { return nodes_[id]; }
    const std::vector<int>& out(int id) const { return out_[id]; }
    const std::vector<int>& in(int id) const { return in_[id]; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < node_count(); ++u)
            for (int v : out_[u]) es.emplace_back(u, v);
        return es;
    }

    // node ids sorted so that every edge goes forward; for orthogonal
    // graphs (x ascending, y descending) is a topological order
    std::vector<int> topological_order() const {
        std::vector<int> order(nodes_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int c = cmp(nodes_[a].x, nodes_[b].x);
            if (c != 0) return c < 0;
            return nodes_[a].y > nodes_[b].y;
        });
        return order;
    }

    // checks every clause of the orthogonal-graph definition and reports
    // all violations; an empty list means the graph is orthogonal
    std::vector<std::string> validate() const;

  private:
    std::vector<Point> nodes_;
    std::vector<std::vector<int>> out_, in_;
    std::map<Point, int> index_;
};

inline std::vector<std::string> OrthogonalGraph::validate() const {
    std::vector<std::string> bad;
    const int n = node_count();

    for (int i = 0; i < n; ++i)
        if (!nodes_[i].in_unit_square())
            bad.push_back("(i) node outside the unit square: " + nodes_[i].to_string());
    // distinctness is enforced by construction through the index, but a
    // graph assembled elsewhere may break it
    {
        std::map<Point, int> seen;
        for (int i = 0; i < n; ++i)
            if (!seen.emplace(nodes_[i], i).second)
                bad.push_back("(i) duplicate node: " + nodes_[i].to_string());
    }

    // edge orientation
    struct Seg {
        Point a, b;
        bool vertical;
    };
    std::vector<Seg> segs;
    for (int u = 0; u < n; ++u) {
        for (int v : out_[u]) {
            const Point &p = nodes_[u], &q = nodes_[v];
            if (p.x == q.x && p.y > q.y) {
                segs.push_back({p, q, true});
            } else if (p.y == q.y && p.x < q.x) {
                segs.push_back({p, q, false});
            } else {
                bad.push_back("(iii) edge not vertical-down or horizontal-right: " + p.to_string() +
                              " -> " + q.to_string());
            }
        }
    }

    // pairwise segment intersections only at shared endpoints
    auto is_endpoint = [](const Seg& s, const Point& p) { return p == s.a || p == s.b; };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Seg &s = segs[i], &t = segs[j];
            if (s.vertical == t.vertical) {
                if (s.vertical && s.a.x == t.a.x) {
                    Rat lo = max(min(s.a.y, s.b.y), min(t.a.y, t.b.y));
                    Rat hi = min(max(s.a.y, s.b.y), max(t.a.y, t.b.y));
                    if (lo < hi) bad.push_back("(iii) overlapping vertical edges at x=" + s.a.x.to_string());
                } else if (!s.vertical && s.a.y == t.a.y) {
                    Rat lo = max(min(s.a.x, s.b.x), min(t.a.x, t.b.x));
                    Rat hi = min(max(s.a.x, s.b.x), max(t.a.x, t.b.x));
                    if (lo < hi) bad.push_back("(iii) overlapping horizontal edges at y=" + s.a.y.to_string());
                }
            } else {
                const Seg& v = s.vertical ? s : t;
                const Seg& h = s.vertical ? t : s;
                if (v.a.x >= min(h.a.x, h.b.x) && v.a.x <= max(h.a.x, h.b.x) &&
                    h.a.y >= min(v.a.y, v.b.y) && h.a.y <= max(v.a.y, v.b.y)) {
                    Point cross(v.a.x, h.a.y);
                    if (!(is_endpoint(v, cross) && is_endpoint(h, cross)))
                        bad.push_back("(iii) edges cross at interior point " + cross.to_string());
                }
            }
        }
    }

    // source/sink uniqueness and degree requirements
    int sources = 0, sinks = 0;
    for (int i = 0; i < n; ++i) {
        bool no_in = in_[i].empty(), no_out = out_[i].empty();
        if (no_in) {
            ++sources;
            if (nodes_[i].y != Rat(1))
                bad.push_back("(ii) source not on the north side: " + nodes_[i].to_string());
        }
        if (no_out) {
            ++sinks;
            if (nodes_[i].x != Rat(1))
                bad.push_back("(ii) sink not on the east side: " + nodes_[i].to_string());
        }
        if (no_in && sources > 1) bad.push_back("(ii)/(iv) extra source: " + nodes_[i].to_string());
        if (no_out && sinks > 1) bad.push_back("(ii)/(iv) extra sink: " + nodes_[i].to_string());
    }
    if (n > 0 && sources == 0) bad.push_back("(ii) no source");
    if (n > 0 && sinks == 0) bad.push_back("(ii) no sink");

    return bad;
}

// A complete path: starts on the north side, ends on the east side,
// consecutive nodes joined by graph edges.
struct CompletePath {
    std::vector<int> nodes;

    std::vector<std::string> validate(const OrthogonalGraph& g) const {
        std::vector<std::string> bad;
        if (nodes.empty()) {
            bad.push_back("empty path");
            return bad;
        }
        if (g.node(nodes.front()).y != Rat(1)) bad.push_back("path does not start on the north side");
        if (g.node(nodes.back()).x != Rat(1)) bad.push_back("path does not end on the east side");
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            if (!g.has_edge(nodes[i], nodes[i + 1]))
                bad.push_back("missing edge " + g.node(nodes[i]).to_string() + " -> " +
                              g.node(nodes[i + 1]).to_string());
            const Point &p = g.node(nodes[i]), &q = g.node(nodes[i + 1]);
            if (q.x < p.x || q.y > p.y) bad.push_back("path not monotone down-right");
        }
        return bad;
    }

    std::vector<Point> points(const OrthogonalGraph& g) const {
        std::vector<Point> ps;
        ps.reserve(nodes.size());
        for (int id : nodes) ps.push_back(g.node(id));
        return ps;
    }
};

}  // namespace mechlearn
