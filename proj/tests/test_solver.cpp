#include "doctest.h"

#include "mechlearn/environments.hpp"
#include "mechlearn/rng.hpp"
#include "mechlearn/solver.hpp"

using namespace mechlearn;

namespace {

DiscreteDistribution random_rational_dist(Rng& rng, int max_atoms, std::int64_t den = 24,
                                          bool allow_boundary = false) {
    int n = 1 + static_cast<int>(rng.below(max_atoms));
    DiscreteDistribution d;
    std::vector<std::int64_t> cuts;
    for (int i = 0; i < n - 1; ++i) cuts.push_back(1 + static_cast<std::int64_t>(rng.below(63)));
    cuts.push_back(0);
    cuts.push_back(64);
    std::sort(cuts.begin(), cuts.end());
    for (int i = 0; i < n; ++i) {
        std::int64_t lo = allow_boundary ? 0 : 1;
        std::int64_t hi = allow_boundary ? den : den - 1;
        Point p(Rat(lo + static_cast<std::int64_t>(rng.below(hi - lo + 1)), den),
                Rat(lo + static_cast<std::int64_t>(rng.below(hi - lo + 1)), den));
        Rat w(cuts[i + 1] - cuts[i], 64);
        bool dup = false;
        for (auto& [q, unused] : d.atoms)
            if (q == p) dup = true;
        if (dup || w.is_zero()) continue;
        d.atoms.push_back({p, w});
    }
    if (d.atoms.empty()) d.atoms.push_back({Point(Rat(1, 2), Rat(1, 2)), Rat(0)});
    Rat sum(0);
    for (auto& [q, w] : d.atoms) sum += w;
    d.atoms.front().second += Rat(1) - sum;
    return d;
}

Mechanism random_staircase(Rng& rng, std::int64_t den = 16) {
    int n = 1 + static_cast<int>(rng.below(5));
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i)
        pts.emplace_back(Rat(static_cast<std::int64_t>(rng.below(den + 1)), den),
                         Rat(static_cast<std::int64_t>(rng.below(den + 1)), den));
    return Mechanism::from_points(std::move(pts));
}

Rat path_edge_weight_sum(const Mechanism& m, const DiscreteDistribution& dist) {
    auto pl = m.polyline();
    Rat sum(0);
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) sum += edge_weight(pl[i], pl[i + 1], dist);
    return sum;
}

}  // namespace

TEST_CASE("support graph of a point mass is the 3x3 grid") {
    auto g = support_graph(DiscreteDistribution::point_mass(Point(Rat(1, 2), Rat(1, 2))));
    CHECK(g.node_count() == 9);
    CHECK(g.edge_count() == 12);
    CHECK(g.validate().empty());
}

TEST_CASE("support graph of the equal-revenue instance is the 5x5 product") {
    auto d = equal_revenue_dist(3, Rat(1, 6));
    auto g = support_graph(d);
    CHECK(g.node_count() == 25);
    CHECK(g.validate().empty());
    // support x coordinates all below any epsilon bigger than delta
    for (auto& [p, w] : d.atoms) CHECK(p.x < Rat(1, 6));
}

TEST_CASE("edge weights multiply intrinsic weight by influence mass") {
    auto d = DiscreteDistribution::point_mass(Point(Rat(7, 10), Rat(2, 10)));
    CHECK(edge_weight(Point(Rat(1, 2), Rat(1, 2)), Point(Rat(1, 2), Rat(0)), d) == Rat(1, 2));
    CHECK(edge_weight(Point(Rat(1, 2), Rat(0)), Point(Rat(1), Rat(0)), d) == Rat(0));
    CHECK(edge_weight(Point(Rat(0), Rat(1, 2)), Point(Rat(1, 2), Rat(1, 2)), d) == Rat(0));
}

TEST_CASE("point mass at the center is fully extracted") {
    auto d = DiscreteDistribution::point_mass(Point(Rat(1, 2), Rat(1, 2)));
    auto [mech, value] = best_mechanism(d);
    CHECK(value == Rat(1));
    CHECK(mech.allocates(Point(Rat(1, 2), Rat(1, 2))));
    CHECK(expected_revenue(mech, d) == Rat(1));
    auto [bmech, bvalue] = brute_force_best(d);
    CHECK(bvalue == Rat(1));
}

TEST_CASE("equal-revenue optimum extracts the whole antichain surplus") {
    // closed form: agent-2 part (n+1) 2^-(n+1); agent-1 part delta * (1 - (n+1) 2^-(n+1))
    auto d = equal_revenue_dist(3, Rat(1, 6));
    auto [mech, value] = best_mechanism(d);
    CHECK(value == Rat(1, 4) + Rat(1, 6) * Rat(3, 4));  // = 3/8
    auto [bmech, bvalue] = brute_force_best(d);
    CHECK(bvalue == value);
    for (auto& [p, w] : d.atoms) CHECK(mech.allocates(p) == bmech.allocates(p));
    // agent-2 revenue component alone
    Rat agent2(0);
    for (auto& [p, w] : d.atoms) agent2 += w * mech.payments(p).second;
    CHECK(agent2 == Rat(1, 4));
}

TEST_CASE("two-atom discretized mixture ties at revenue 1") {
    DiscreteDistribution d;
    d.atoms.push_back({Point(Rat(1, 2), Rat(1, 2)), Rat(1, 3)});
    d.atoms.push_back({Point(Rat(3, 4), Rat(3, 4)), Rat(2, 3)});
    auto [mech, value] = best_mechanism(d);
    CHECK(value == Rat(1));
    CHECK(expected_revenue(Mechanism::posted_price(Rat(1, 2), Rat(1, 2)), d) == Rat(1));
    CHECK(expected_revenue(Mechanism::posted_price(Rat(3, 4), Rat(3, 4)), d) == Rat(1));
}

TEST_CASE("full square mechanism earns nothing") {
    Rng rng(3);
    auto d = random_rational_dist(rng, 6);
    CHECK(expected_revenue(Mechanism::full_square(), d) == Rat(0));
}

TEST_CASE("decomposition: expected revenue equals the influence-weight sum") {
    Rng rng(77);
    for (int it = 0; it < 120; ++it) {
        auto d = random_rational_dist(rng, 5);
        Mechanism m = random_staircase(rng);
        CHECK(expected_revenue(m, d) == path_edge_weight_sum(m, d));
    }
}

TEST_CASE("solver value matches the subset-enumeration oracle exactly") {
    Rng rng(123);
    for (int it = 0; it < 60; ++it) {
        auto d = random_rational_dist(rng, 8);
        auto [mech, value] = best_mechanism(d);
        auto [bmech, bvalue] = brute_force_best(d);
        CHECK(value == bvalue);
        CHECK(expected_revenue(mech, d) == value);
        if (brute_force_optimum_multiplicity(d) == 1) {
            for (auto& [p, w] : d.atoms)
                if (w.sign() > 0) CHECK(mech.allocates(p) == bmech.allocates(p));
        }
    }
}

TEST_CASE("solver handles atoms on the north and east boundaries") {
    Rng rng(321);
    for (int it = 0; it < 40; ++it) {
        auto d = random_rational_dist(rng, 6, 12, /*allow_boundary=*/true);
        auto [mech, value] = best_mechanism(d);
        auto [bmech, bvalue] = brute_force_best(d);
        CHECK(value == bvalue);
        CHECK(expected_revenue(mech, d) == value);
    }
}

TEST_CASE("adding mass inside the optimal region never lowers the optimum") {
    // adding lambda mass at an allocated point and renormalizing scales the
    // measure by 1/(1+lambda), so (1+lambda) * new optimum >= old optimum
    Rng rng(456);
    const Rat lambda(1, 4);
    for (int it = 0; it < 30; ++it) {
        auto d = random_rational_dist(rng, 5);
        auto [mech, value] = best_mechanism(d);
        Point inside = mech.corners().empty() ? Point(Rat(1), Rat(1)) : mech.corners().front();
        DiscreteDistribution d2;
        Rat scale = Rat(1) / (Rat(1) + lambda);
        bool merged = false;
        for (auto& [p, w] : d.atoms) {
            Rat w2 = w * scale;
            if (p == inside) {
                w2 += lambda * scale;
                merged = true;
            }
            d2.atoms.push_back({p, w2});
        }
        if (!merged) d2.atoms.push_back({inside, lambda * scale});
        REQUIRE(d2.validate().empty());
        auto [mech2, value2] = best_mechanism(d2);
        CHECK((Rat(1) + lambda) * value2 >= value);
    }
}

TEST_CASE("empirical double lane agrees with the exact lane on small data") {
    Rng rng(11111);
    for (int it = 0; it < 25; ++it) {
        auto d = random_rational_dist(rng, 6, 16);
        // blow the distribution up into a sample with proportional counts
        std::vector<PointD> obs;
        for (auto& [p, w] : d.atoms) {
            auto copies = (w * Rat(64)).floor().to_i64();
            for (std::int64_t c = 0; c < copies; ++c)
                obs.push_back({p.x.to_double(), p.y.to_double()});
        }
        if (obs.empty()) continue;
        DiscreteDistribution emp;
        for (auto& [p, w] : d.atoms) {
            auto copies = (w * Rat(64)).floor().to_i64();
            if (copies > 0) emp.atoms.push_back({p, Rat(copies, static_cast<std::int64_t>(obs.size()))});
        }
        auto exact = best_mechanism(emp);
        auto fast = empirical_best_mechanism(obs);
        CHECK(doctest::Approx(fast.per_round_value).epsilon(1e-12) == exact.second.to_double());
    }
}

TEST_CASE("brute force refuses oversized supports") {
    DiscreteDistribution d;
    for (int i = 0; i < 13; ++i)
        d.atoms.push_back({Point(Rat(i + 1, 20), Rat(i + 2, 20)), Rat(1, 13)});
    CHECK_THROWS(brute_force_best(d));
}
