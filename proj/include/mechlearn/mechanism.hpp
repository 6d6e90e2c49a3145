#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mechlearn/geometry.hpp"
#include "mechlearn/orthogonal_graph.hpp"

namespace mechlearn {

// A mechanism, stored as the Pareto-minimal corner set of its allocation
// region (equivalently, of a complete path's node set). The region is the
// set of valuations dominating some corner; it is closed, so boundary
// valuations allocate and critical prices are attained.
class Mechanism {
  public:
    Mechanism() = default;

    static Mechanism from_points(std::vector<Point> pts) {
        Mechanism m;
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        // keep points whose lower-left quadrant holds no other point;
        // sweep by x, a point survives iff its y is below all previous ys
        std::optional<Rat> best_y;
        for (const auto& p : pts) {
            if (!best_y || p.y < *best_y) {
                m.corners_.push_back(p);
                best_y = p.y;
            }
        }
        m.cache_doubles();
        return m;
    }

    static Mechanism from_path(const CompletePath& path, const OrthogonalGraph& g) {
        return from_points(path.points(g));
    }

    // rectangle mechanism: allocate iff v1 >= p1 and v2 >= p2
    static Mechanism posted_price(const Rat& p1, const Rat& p2) { return from_points({Point(p1, p2)}); }
    // allocate everywhere at zero prices
    static Mechanism full_square() { return posted_price(Rat(0), Rat(0)); }
    // allocate only at (1,1); the tightest region a complete path can have
    static Mechanism top_corner() { return posted_price(Rat(1), Rat(1)); }

    const std::vector<Point>& corners() const { return corners_; }
    bool operator==(const Mechanism& o) const { return corners_ == o.corners_; }
    bool operator!=(const Mechanism& o) const { return !(*this == o); }

    bool allocates(const Point& v) const {
        // corners have strictly increasing x and strictly decreasing y;
        // the deepest corner left of v decides
        int i = last_corner_at_or_left(v.x);
        return i >= 0 && corners_[i].y <= v.y;
    }

    // critical prices; the min over an empty set is 0
    std::pair<Rat, Rat> payments(const Point& v) const {
        Rat p1(0), p2(0);
        int lo = first_corner_at_or_below(v.y);
        if (lo >= 0) p1 = corners_[lo].x;
        int hi = last_corner_at_or_left(v.x);
        if (hi >= 0) p2 = corners_[hi].y;
        return {p1, p2};
    }

    Rat revenue(const Point& v) const {
        if (!allocates(v)) return Rat(0);
        auto [p1, p2] = payments(v);
        return p1 + p2;
    }

    // double-precision evaluation for Monte Carlo loops
    bool allocates(double x, double y) const {
        int i = last_left_d(x);
        return i >= 0 && cd_[i].second <= y;
    }
    double revenue(double x, double y) const {
        int i = last_left_d(x);
        if (i < 0 || cd_[i].second > y) return 0.0;
        double p2 = cd_[i].second;
        auto it = std::lower_bound(cd_.begin(), cd_.end(), y,
                                   [](const std::pair<double, double>& c, double yy) { return c.second > yy; });
        double p1 = it == cd_.end() ? 0.0 : it->first;
        return p1 + p2;
    }

    // lowest allocated y in column x, +infinity when the column is empty
    double col_min_d(double x) const {
        int i = last_left_d(x);
        return i < 0 ? std::numeric_limits<double>::infinity() : cd_[i].second;
    }

    // monotone-region boundary queries (exact)
    // smallest y with (x, y) allocated, or nullopt if the column is empty
    std::optional<Rat> col_min(const Rat& x) const {
        int i = last_corner_at_or_left(x);
        if (i < 0) return std::nullopt;
        return corners_[i].y;
    }
    // left limit: smallest allocated y over columns strictly left of x
    std::optional<Rat> col_min_before(const Rat& x) const {
        int i = last_corner_at_or_left(x);
        while (i >= 0 && corners_[i].x == x) --i;
        if (i < 0) return std::nullopt;
        return corners_[i].y;
    }
    // smallest x with (x, y) allocated, or nullopt if the row is empty
    std::optional<Rat> row_min(const Rat& y) const {
        int i = first_corner_at_or_below(y);
        if (i < 0) return std::nullopt;
        return corners_[i].x;
    }

    // boundary polyline from the north side to the east side
    std::vector<Point> polyline() const {
        std::vector<Point> ps;
        if (corners_.empty()) return ps;
        auto push = [&](const Point& p) {
            if (ps.empty() || ps.back() != p) ps.push_back(p);
        };
        push(Point(corners_.front().x, Rat(1)));
        for (std::size_t i = 0; i < corners_.size(); ++i) {
            push(corners_[i]);
            if (i + 1 < corners_.size()) push(Point(corners_[i + 1].x, corners_[i].y));
        }
        push(Point(Rat(1), corners_.back().y));
        return ps;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (const auto& c : corners_) h = h * 1099511628211ull ^ c.hash();
        return h;
    }

  private:
    std::vector<Point> corners_;
    std::vector<std::pair<double, double>> cd_;

    void cache_doubles() {
        cd_.clear();
        cd_.reserve(corners_.size());
        for (const auto& c : corners_) cd_.emplace_back(c.x.to_double(), c.y.to_double());
    }

    // index of the last corner with corner.x <= x, or -1
    int last_corner_at_or_left(const Rat& x) const {
        int lo = 0, hi = static_cast<int>(corners_.size()) - 1, ans = -1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (corners_[mid].x <= x) {
                ans = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return ans;
    }
    // index of the first corner with corner.y <= y, or -1 (ys are decreasing)
    int first_corner_at_or_below(const Rat& y) const {
        int lo = 0, hi = static_cast<int>(corners_.size()) - 1, ans = -1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (corners_[mid].y <= y) {
                ans = mid;
                hi = mid - 1;
            } else {
                lo = mid + 1;
            }
        }
        return ans;
    }
    int last_left_d(double x) const {
        auto it = std::upper_bound(cd_.begin(), cd_.end(), x,
                                   [](double xx, const std::pair<double, double>& c) { return xx < c.first; });
        return static_cast<int>(it - cd_.begin()) - 1;
    }
};

}  // namespace mechlearn
