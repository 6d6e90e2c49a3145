#include "doctest.h"

#include "mechlearn/environments.hpp"

#include <cmath>

using namespace mechlearn;

TEST_CASE("equal-revenue probabilities and atoms") {
    auto d3 = equal_revenue_dist(3, Rat(1, 6));
    REQUIRE(d3.atoms.size() == 3);
    CHECK(d3.validate().empty());
    CHECK(d3.atoms[0].second == Rat(1, 4));
    CHECK(d3.atoms[1].second == Rat(1, 4));
    CHECK(d3.atoms[2].second == Rat(1, 2));
    CHECK(d3.atoms[0].first == Point(Rat(1, 12), Rat(1, 2)));
    CHECK(d3.atoms[1].first == Point(Rat(1, 8), Rat(1, 4)));
    CHECK(d3.atoms[2].first == Point(Rat(7, 48), Rat(1, 8)));

    auto d1 = equal_revenue_dist(1, Rat(1, 2));
    REQUIRE(d1.atoms.size() == 1);
    CHECK(d1.atoms[0].first == Point(Rat(1, 4), Rat(1, 2)));
    CHECK(d1.atoms[0].second == Rat(1));

    for (int n = 2; n <= 30; ++n) CHECK(equal_revenue_dist(n, Rat(1, 10)).validate().empty());
}

TEST_CASE("every posted price earns the same second-agent revenue") {
    const int n = 5;
    auto d = equal_revenue_dist(n, Rat(1, 1000));
    for (int i = 1; i <= n; ++i) {
        Rat p2(BigInt(1), BigInt::pow(BigInt(2), i));
        Mechanism m = Mechanism::posted_price(Rat(0), p2);
        Rat agent2(0);
        for (auto& [p, w] : d.atoms)
            if (m.allocates(p)) agent2 += w * p2;
        CHECK(agent2 == Rat(BigInt(1), BigInt::pow(BigInt(2), n)));
    }
}

TEST_CASE("smooth mixture sampling hits Q1 with probability alpha") {
    auto env = EnvironmentSpec::smooth_mixture(1.0 / 3.0);
    CHECK(env.validate().empty());
    Rng rng(5);
    int in_q1 = 0;
    const int N = 100000;
    for (int t = 1; t <= N; ++t) {
        PointD v = sample_valuation(env, t, rng);
        bool q1 = v.x < 0.75;
        if (q1) ++in_q1;
        CHECK(v.x >= 0.5);
        CHECK(v.y >= 0.5);
        CHECK(v.x <= 1.0);
        CHECK((q1 ? v.y < 0.75 : v.y >= 0.75));
    }
    double phat = in_q1 / static_cast<double>(N);
    CHECK(std::abs(phat - 1.0 / 3.0) < 3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / N));
}

TEST_CASE("product CDF sampling matches F(x) = x^2 marginals") {
    auto env = EnvironmentSpec::product_cdf([](double x) { return x * x; },
                                            [](double x) { return x * x; }, 4.0);
    Rng rng(6);
    const int N = 20000;
    std::vector<double> xs;
    for (int t = 1; t <= N; ++t) xs.push_back(sample_valuation(env, t, rng).x);
    std::sort(xs.begin(), xs.end());
    double ks = 0;
    for (int i = 0; i < N; ++i) {
        double fx = xs[i] * xs[i];
        ks = std::max(ks, std::abs(fx - (i + 1.0) / N));
        ks = std::max(ks, std::abs(fx - i / static_cast<double>(N)));
    }
    CHECK(ks < 1.95 / std::sqrt(static_cast<double>(N)));  // KS_{0.001}
}

TEST_CASE("point masses sample constantly and smoothness rejects atoms") {
    auto env = EnvironmentSpec::discrete(DiscreteDistribution::point_mass(Point(Rat(1, 2), Rat(1, 4))));
    Rng rng(7);
    for (int t = 1; t <= 50; ++t) {
        PointD v = sample_valuation(env, t, rng);
        CHECK(v.x == 0.5);
        CHECK(v.y == 0.25);
    }
    CHECK_THROWS(smoothness_bound(env));
}

TEST_CASE("smoothness bounds") {
    auto uni = EnvironmentSpec::product_cdf([](double x) { return x; }, [](double x) { return x; }, 1.0);
    CHECK(smoothness_bound(uni) == doctest::Approx(1.0));
    for (double alpha : {4.0 / 15.0 + 1e-6, 1.0 / 3.0, 2.0 / 5.0 - 1e-6}) {
        double sigma = smoothness_bound(EnvironmentSpec::smooth_mixture(alpha));
        CHECK(sigma >= 1.0 / 12.0);
        CHECK(sigma <= 1.0);
    }
}

TEST_CASE("mixture density integrates to one and stays below 12") {
    for (double alpha : {0.27, 1.0 / 3.0, 0.39}) {
        double mass = 16.0 * alpha * 0.0625 + 16.0 * (1.0 - alpha) * 0.0625;
        CHECK(mass == doctest::Approx(1.0));
        CHECK(16.0 * std::max(alpha, 1.0 - alpha) < 12.0);
    }
}

TEST_CASE("two-square family revenues") {
    CHECK(smooth_family_revenues(1.0 / 3.0).first == doctest::Approx(1.0));
    CHECK(smooth_family_revenues(1.0 / 3.0).second == doctest::Approx(1.0));
    double a2 = 1.0 / 3.0 + 1.0 / 16.0;
    CHECK(smooth_family_revenues(a2).second == doctest::Approx(1.5 * (1 - a2)));
    // Monte Carlo agreement for M1 and M2
    Rng rng(8);
    double alpha = 1.0 / 3.0;
    double m1 = 0, m2 = 0;
    const int N = 200000;
    auto env = EnvironmentSpec::smooth_mixture(alpha);
    Mechanism M1 = mechanism_M1(), M2 = mechanism_M2();
    for (int t = 1; t <= N; ++t) {
        PointD v = sample_valuation(env, t, rng);
        m1 += M1.revenue(v.x, v.y);
        m2 += M2.revenue(v.x, v.y);
    }
    CHECK(m1 / N == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(m2 / N == doctest::Approx(1.0).epsilon(6e-3));
}

TEST_CASE("rectangle virtual revenue agrees with closed forms and Monte Carlo") {
    // always-allocating mechanism on [1/2,3/4]^2: revenue a + c = 1
    CHECK(rectangle_virtual_revenue(0.5, 0.75, 0.5, 0.75, Mechanism::full_square()) ==
          doctest::Approx(1.0).epsilon(1e-6));
    // disjoint mechanism earns nothing
    Mechanism far = Mechanism::posted_price(Rat(9, 10), Rat(9, 10));
    CHECK(rectangle_virtual_revenue(0.5, 0.75, 0.5, 0.75, far) == doctest::Approx(0.0));
    // M2 on [3/4,1]^2 always trades at 3/4 + 3/4
    CHECK(rectangle_virtual_revenue(0.75, 1.0, 0.75, 1.0, mechanism_M2()) ==
          doctest::Approx(1.5).epsilon(1e-6));
    // random rectangles with the mechanism threshold inside the support
    // (the virtual-surplus identity prices thresholds within [a,b] x [c,d])
    Rng rng(9);
    for (int it = 0; it < 5; ++it) {
        double a = 0.1 + 0.4 * rng.uniform01(), b = a + 0.2 + 0.3 * rng.uniform01();
        double c = 0.1 + 0.4 * rng.uniform01(), d = c + 0.2 + 0.3 * rng.uniform01();
        b = std::min(b, 1.0);
        d = std::min(d, 1.0);
        Mechanism m = Mechanism::posted_price(Rat::from_double(a + (b - a) * rng.uniform01()),
                                              Rat::from_double(c + (d - c) * rng.uniform01()));
        double vr = rectangle_virtual_revenue(a, b, c, d, m);
        const int N = 400000;
        double sum = 0, sq = 0;
        for (int s = 0; s < N; ++s) {
            double x = rng.uniform(a, b), y = rng.uniform(c, d);
            double r = m.revenue(x, y);
            sum += r;
            sq += r * r;
        }
        double mean = sum / N;
        double se = std::sqrt(std::max(0.0, sq / N - mean * mean) / N);
        CHECK(std::abs(vr - mean) <= 3.0 * se + 1e-6);
    }
}

TEST_CASE("the better square mechanism weakly dominates others") {
    Rng rng(10);
    // rectangle mechanism intersecting Q1 is dominated by M1
    CHECK(domination_check(1.0 / 3.0, Mechanism::posted_price(Rat(3, 5), Rat(3, 5)), rng.split(1)));
    // mechanism missing Q1 entirely is dominated by M2
    CHECK(domination_check(1.0 / 3.0, Mechanism::posted_price(Rat(4, 5), Rat(4, 5)), rng.split(2)));
    CHECK(domination_check(0.3, mechanism_M1(), rng.split(3)));
}

TEST_CASE("shatter paths earn one exactly on the chosen diagonal points") {
    const int k = 6;
    Rat eps(1, k);
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> chosen;
        for (int i = 1; i <= k; ++i)
            if (mask & (1 << (i - 1))) chosen.push_back(i);
        Mechanism m = shatter_path(eps, chosen);
        for (int i = 1; i <= k; ++i) {
            Point p(Rat(i, k), Rat(k - i, k));
            Rat r = m.revenue(p);
            if (mask & (1 << (i - 1))) CHECK(r == Rat(1));
            else
                CHECK(r == Rat(0));
        }
    }
}

TEST_CASE("environment sessions are deterministic in (spec, seed)") {
    auto env = EnvironmentSpec::smooth_mixture(0.3);
    EnvironmentSession s1(env, 42, 100), s2(env, 42, 100);
    for (int t = 1; t <= 100; ++t) {
        PointD a = s1.valuation(t), b = s2.valuation(t);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
    }
}
