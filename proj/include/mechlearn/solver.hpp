#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mechlearn/distribution.hpp"
#include "mechlearn/mechanism.hpp"
#include "mechlearn/orthogonal_graph.hpp"

namespace mechlearn {

// ---------------------------------------------------------------------------
// Support grid and edge weights
// ---------------------------------------------------------------------------

// Product grid over the support coordinates plus {0,1}, each node linked to
// its right and bottom neighbor.
inline OrthogonalGraph support_graph(const DiscreteDistribution& dist) {
    std::vector<Rat> xs{Rat(0), Rat(1)}, ys{Rat(0), Rat(1)};
    for (const auto& [p, w] : dist.atoms) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    OrthogonalGraph g;
    const int k = static_cast<int>(xs.size()), m = static_cast<int>(ys.size());
    std::vector<int> ids(static_cast<std::size_t>(k) * m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) ids[static_cast<std::size_t>(i) * m + j] = g.add_node(Point(xs[i], ys[j]));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) {
            if (i + 1 < k) g.add_edge(ids[static_cast<std::size_t>(i) * m + j], ids[static_cast<std::size_t>(i + 1) * m + j]);
            if (j > 0) g.add_edge(ids[static_cast<std::size_t>(i) * m + j], ids[static_cast<std::size_t>(i) * m + j - 1]);
        }
    return g;
}

// w_V(e) = intrinsic weight times the probability mass of the influence region
inline Rat edge_weight(const Point& from, const Point& to, const DiscreteDistribution& dist) {
    EdgeInfluence inf = edge_influence(from, to);
    return inf.weight * dist.mass_in(inf.region);
}

// ---------------------------------------------------------------------------
// Longest complete path on the implicit support grid
// ---------------------------------------------------------------------------

// One DP serves both lanes: exact rationals for finite rational supports,
// doubles for large empirical samples. Coordinates of the atoms must be
// members of xs/ys. Ties are broken toward the lexicographically smallest
// node sequence (stop > down > right, leftmost start), so results are
// reproducible.
//
// Atoms exactly on the north or east side of the square are priced by the
// path's endpoints, not by any edge's influence region: a region whose
// row-1 part is the sliver [s1,1] x {1} charges p1 = s1 there, and the
// column-1 sliver below the last horizontal edge charges p2 = t2. The DP
// therefore scores vertical spans half-open at the top, horizontal spans
// half-open at the right, and credits the start node s1 * P{y=1, x>=s1}
// and the end node t2 * P{x=1, y>=t2}. On supports without boundary atoms
// this coincides with the plain influence-region sum.
template <typename C, typename W>
struct GridOptimum {
    std::vector<std::pair<C, C>> path;  // node sequence, north start to east end
    W value{};
};

template <typename C, typename W>
GridOptimum<C, W> grid_longest_path(const std::vector<C>& xs, const std::vector<C>& ys,
                                    const std::vector<std::pair<std::pair<C, C>, W>>& atoms) {
    const int k = static_cast<int>(xs.size()), m = static_cast<int>(ys.size());
    if (k < 2 || m < 2) throw std::invalid_argument("grid_longest_path: degenerate grid");

    auto xindex = [&](const C& v) {
        return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin());
    };
    auto yindex = [&](const C& v) {
        return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin());
    };

    // atoms grouped by row band (for vertical edges) and by column band
    // (for horizontal edges); north-row and east-column atoms are kept
    // aside for the endpoint credits
    struct Entry {
        int idx;  // x index for bands, y index for columns
        W mass;
    };
    std::vector<std::vector<Entry>> band(m - 1), col(k - 1);
    std::vector<W> north_suffix(k + 1, W{}), east_suffix(m + 1, W{});
    for (const auto& [pt, w] : atoms) {
        int xi = xindex(pt.first), yi = yindex(pt.second);
        if (yi == m - 1) north_suffix[xi] += w;
        else
            band[yi].push_back({xi, w});
        if (xi == k - 1) east_suffix[yi] += w;
        else
            col[xi].push_back({yi, w});
    }
    for (int i = k - 1; i >= 0; --i) north_suffix[i] += north_suffix[i + 1];
    for (int j = m - 1; j >= 0; --j) east_suffix[j] += east_suffix[j + 1];
    for (auto& b : band)
        std::sort(b.begin(), b.end(), [](const Entry& a, const Entry& c) { return a.idx > c.idx; });
    // per column: suffix masses over descending y index
    std::vector<std::vector<std::pair<int, W>>> colsuf(k - 1);
    for (int c = 0; c < k - 1; ++c) {
        auto& v = col[c];
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.idx > b.idx; });
        W acc{};
        for (const auto& e : v) {
            acc += e.mass;
            colsuf[c].emplace_back(e.idx, acc);
        }
    }
    // mass of atoms in column band c with y index >= j
    auto colmass = [&](int c, int j) -> W {
        const auto& v = colsuf[c];
        // entries sorted by y index descending; find the last with idx >= j
        int lo = 0, hi = static_cast<int>(v.size()) - 1, ans = -1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (v[mid].first >= j) {
                ans = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return ans < 0 ? W{} : v[ans].second;
    };

    enum : std::uint8_t { STOP = 0, DOWN = 1, RIGHT = 2 };
    std::vector<std::uint8_t> dec(static_cast<std::size_t>(k) * m, STOP);
    std::vector<W> below(k), cur(k);

    for (int j = 0; j < m; ++j) {
        std::size_t ptr = 0;
        W vacc{};  // running mass of band j-1 atoms with x index >= i
        const std::vector<Entry>* b = j > 0 ? &band[j - 1] : nullptr;
        for (int i = k - 1; i >= 0; --i) {
            if (b) {
                while (ptr < b->size() && (*b)[ptr].idx >= i) {
                    vacc += (*b)[ptr].mass;
                    ++ptr;
                }
            }
            W best{};
            std::uint8_t d = STOP;
            bool have = i == k - 1;
            if (have) best = ys[j] * east_suffix[j];  // terminate: credit the east sliver
            if (j > 0) {
                W down = xs[i] * vacc + below[i];
                if (!have || down > best) {
                    best = down;
                    d = DOWN;
                    have = true;
                }
            }
            if (i + 1 < k) {
                W right = ys[j] * colmass(i, j) + cur[i + 1];
                if (!have || right > best) {
                    best = right;
                    d = RIGHT;
                    have = true;
                }
            }
            cur[i] = best;
            dec[static_cast<std::size_t>(j) * k + i] = d;
        }
        std::swap(below, cur);
    }
    // after the final swap, `below` holds row m-1 (the north side);
    // starting at (xs[i], 1) additionally earns the north-sliver credit
    std::vector<W> start_value(k);
    for (int i = 0; i < k; ++i) start_value[i] = below[i] + xs[i] * north_suffix[i];
    int start = 0;
    for (int i = 1; i < k; ++i)
        if (start_value[i] > start_value[start]) start = i;

    GridOptimum<C, W> out;
    out.value = start_value[start];
    int i = start, j = m - 1;
    for (;;) {
        out.path.emplace_back(xs[i], ys[j]);
        std::uint8_t d = dec[static_cast<std::size_t>(j) * k + i];
        if (d == STOP) break;
        if (d == DOWN) --j;
        else
            ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact solving for rational supports
// ---------------------------------------------------------------------------

inline Rat expected_revenue(const Mechanism& mech, const DiscreteDistribution& dist) {
    Rat total(0);
    for (const auto& [p, w] : dist.atoms) total += w * mech.revenue(p);
    return total;
}

// Revenue-maximizing mechanism over all DSIC+IR mechanisms, found as the
// maximum-weight complete path on the support grid. The returned mechanism
// is canonicalized to the inclusion-minimal monotone region containing the
// support atoms the optimal path allocates; minimality can only raise
// prices, so the value is unchanged and the result is deterministic.
inline std::pair<Mechanism, Rat> best_mechanism(const DiscreteDistribution& dist) {
    std::vector<Rat> xs{Rat(0), Rat(1)}, ys{Rat(0), Rat(1)};
    std::vector<std::pair<std::pair<Rat, Rat>, Rat>> atoms;
    for (const auto& [p, w] : dist.atoms) {
        xs.push_back(p.x);
        ys.push_back(p.y);
        atoms.push_back({{p.x, p.y}, w});
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto opt = grid_longest_path<Rat, Rat>(xs, ys, atoms);
    std::vector<Point> pts;
    pts.reserve(opt.path.size());
    for (auto& [x, y] : opt.path) pts.emplace_back(x, y);
    Mechanism path_region = Mechanism::from_points(std::move(pts));
    std::vector<Point> allocated;
    for (const auto& [p, w] : dist.atoms)
        if (w.sign() > 0 && path_region.allocates(p)) allocated.push_back(p);
    if (allocated.empty()) return {Mechanism::top_corner(), opt.value};
    return {Mechanism::from_points(std::move(allocated)), opt.value};
}

// Exponential-time oracle: enumerate every subset of the support, build its
// inclusion-minimal monotone region, evaluate exactly, keep the best. Test
// oracle only.
inline std::pair<Mechanism, Rat> brute_force_best(const DiscreteDistribution& dist, int cap = 12) {
    const int n = static_cast<int>(dist.atoms.size());
    if (n > cap) throw std::invalid_argument("brute_force_best: support larger than cap");
    Mechanism best = Mechanism::top_corner();
    Rat best_value = expected_revenue(best, dist);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) pts.push_back(dist.atoms[i].first);
        Mechanism m = Mechanism::from_points(std::move(pts));
        Rat v = expected_revenue(m, dist);
        if (v > best_value) {
            best_value = v;
            best = m;
        }
    }
    return {best, best_value};
}

// count of optimal subsets; lets property tests skip allocation-pattern
// comparisons when the optimum is not unique
inline int brute_force_optimum_multiplicity(const DiscreteDistribution& dist, int cap = 12) {
    const int n = static_cast<int>(dist.atoms.size());
    if (n > cap) throw std::invalid_argument("support larger than cap");
    Rat best_value = expected_revenue(Mechanism::top_corner(), dist);
    std::vector<Rat> vals;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) pts.push_back(dist.atoms[i].first);
        Rat v = expected_revenue(Mechanism::from_points(std::move(pts)), dist);
        vals.push_back(v);
        if (v > best_value) best_value = v;
    }
    int cnt = 0;
    for (const auto& v : vals)
        if (v == best_value) ++cnt;
    return cnt == 0 ? 1 : cnt;
}

// ---------------------------------------------------------------------------
// Empirical (double) lane
// ---------------------------------------------------------------------------

struct EmpiricalOptimum {
    Mechanism mechanism;
    double per_round_value = 0;  // expected revenue under the empirical distribution
};

// Best mechanism for the uniform empirical distribution over `obs`.
// When the sample has more distinct coordinates than `coord_cap`, valuations
// are floored to a coord_cap grid first to bound the DP size; the induced
// value error is at most 2/coord_cap per round.
inline EmpiricalOptimum empirical_best_mechanism(const std::vector<PointD>& obs, int coord_cap = 4096) {
    if (obs.empty()) return {Mechanism::full_square(), 0.0};
    std::vector<PointD> pts = obs;
    {
        std::vector<double> xs, ys;
        xs.reserve(pts.size());
        ys.reserve(pts.size());
        for (auto& p : pts) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
        auto distinct = [](std::vector<double>& v) {
            std::sort(v.begin(), v.end());
            return std::unique(v.begin(), v.end()) - v.begin();
        };
        if (distinct(xs) > coord_cap || distinct(ys) > coord_cap) {
            const double q = coord_cap;
            for (auto& p : pts) {
                p.x = std::floor(p.x * q) / q;
                p.y = std::floor(p.y * q) / q;
            }
        }
    }
    // merge duplicates
    std::sort(pts.begin(), pts.end(), [](const PointD& a, const PointD& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    const double unit = 1.0 / static_cast<double>(obs.size());
    std::vector<std::pair<std::pair<double, double>, double>> atoms;
    std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
    for (std::size_t i = 0; i < pts.size();) {
        std::size_t j = i;
        while (j < pts.size() && pts[j].x == pts[i].x && pts[j].y == pts[i].y) ++j;
        atoms.push_back({{pts[i].x, pts[i].y}, unit * static_cast<double>(j - i)});
        xs.push_back(pts[i].x);
        ys.push_back(pts[i].y);
        i = j;
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    auto opt = grid_longest_path<double, double>(xs, ys, atoms);
    std::vector<Point> path_pts;
    path_pts.reserve(opt.path.size());
    for (auto& [x, y] : opt.path) path_pts.emplace_back(Rat::from_double(x), Rat::from_double(y));
    Mechanism path_region = Mechanism::from_points(std::move(path_pts));
    // canonicalize to the minimal region over the allocated sample points
    std::vector<Point> allocated;
    for (const auto& [pt, w] : atoms)
        if (path_region.allocates(pt.first, pt.second))
            allocated.emplace_back(Rat::from_double(pt.first), Rat::from_double(pt.second));
    if (allocated.empty()) return {Mechanism::top_corner(), opt.value};
    return {Mechanism::from_points(std::move(allocated)), opt.value};
}

}  // namespace mechlearn
