#pragma once

#include <cstddef>
#include <string>

#include "mechlearn/rational.hpp"

namespace mechlearn {

// A point of the unit square with exact coordinates. Also used for
// valuations (v1, v2): by DSIC, bids equal valuations, so one type serves.
struct Point {
    Rat x, y;

    Point() = default;
    Point(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}

    bool in_unit_square() const {
        return x.sign() >= 0 && y.sign() >= 0 && x <= Rat(1) && y <= Rat(1);
    }

    // componentwise >=
    bool dominates(const Point& o) const { return x >= o.x && y >= o.y; }

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // lexicographic (x, then y); used for deterministic tie-breaking
    friend bool operator<(const Point& a, const Point& b) {
        int c = cmp(a.x, b.x);
        if (c != 0) return c < 0;
        return a.y < b.y;
    }

    std::string to_string() const { return x.to_string() + " " + y.to_string(); }
    std::size_t hash() const { return x.hash() * 1000003 + y.hash(); }
};

using Valuation = Point;

struct PointD {
    double x = 0, y = 0;
};

inline Point exact(const PointD& p) { return Point(Rat::from_double(p.x), Rat::from_double(p.y)); }

// Axis-aligned box with the interval-closure conventions of edge influence
// regions: lower ends always closed, upper ends closed or half-open.
struct Box {
    Rat x_lo, x_hi, y_lo, y_hi;
    bool x_hi_closed = true;
    bool y_hi_closed = true;

    bool contains(const Point& p) const {
        if (p.x < x_lo || p.y < y_lo) return false;
        if (x_hi_closed ? p.x > x_hi : p.x >= x_hi) return false;
        if (y_hi_closed ? p.y > y_hi : p.y >= y_hi) return false;
        return true;
    }

    bool contains(double px, double py) const {
        double xl = x_lo.to_double(), xh = x_hi.to_double();
        double yl = y_lo.to_double(), yh = y_hi.to_double();
        if (px < xl || py < yl) return false;
        if (x_hi_closed ? px > xh : px >= xh) return false;
        if (y_hi_closed ? py > yh : py >= yh) return false;
        return true;
    }
};

}  // namespace mechlearn
