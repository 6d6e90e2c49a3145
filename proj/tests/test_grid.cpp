#include "doctest.h"

#include "mechlearn/grid.hpp"

using namespace mechlearn;

TEST_CASE("uniform grid node and edge counts") {
    auto g2 = uniform_grid(Rat(1, 2));
    CHECK(g2.graph.node_count() == 9);
    CHECK(g2.graph.edge_count() == 12);
    auto g6 = uniform_grid(Rat(1, 6));
    CHECK(g6.graph.node_count() == 49);
    CHECK(g6.graph.edge_count() == 2 * 6 * 7);
    CHECK(g6.graph.validate().empty());
    auto g1 = uniform_grid(Rat(1));
    CHECK(g1.graph.node_count() == 4);
    CHECK(g1.graph.edge_count() == 4);
    CHECK_THROWS(uniform_grid(Rat(2, 5)));
    CHECK_THROWS(uniform_grid(Rat(0)));
}

TEST_CASE("interior augmentation adds five nodes and eight edges") {
    auto base = uniform_grid(Rat(1, 2));
    int n0 = base.graph.node_count(), e0 = base.graph.edge_count();
    auto aug = augment(base, {Point(Rat(1, 4), Rat(1, 4))});
    CHECK(aug.graph.node_count() == n0 + 5);
    CHECK(aug.graph.edge_count() == e0 + 8);
    CHECK(aug.graph.validate().empty());
    CHECK(aug.graph.find_node(Point(Rat(1, 4), Rat(1, 4))) >= 0);
    CHECK(aug.graph.find_node(Point(Rat(1, 4), Rat(1, 2))) >= 0);
    CHECK(aug.graph.find_node(Point(Rat(1, 4), Rat(0))) >= 0);
    CHECK(aug.graph.find_node(Point(Rat(0), Rat(1, 4))) >= 0);
    CHECK(aug.graph.find_node(Point(Rat(1, 2), Rat(1, 4))) >= 0);
}

TEST_CASE("vertical-edge and horizontal-edge augmentations splice crossings") {
    auto base = uniform_grid(Rat(1, 2));
    // on the vertical line x = 1/2: adds the west projection and a crossing
    auto va = augment(base, {Point(Rat(1, 2), Rat(1, 4))});
    CHECK(va.graph.validate().empty());
    CHECK(va.graph.node_count() == base.graph.node_count() + 2);
    int from = va.graph.find_node(Point(Rat(0), Rat(1, 4)));
    int to = va.graph.find_node(Point(Rat(1, 2), Rat(1, 4)));
    REQUIRE(from >= 0);
    REQUIRE(to >= 0);
    CHECK(va.graph.has_edge(from, to));

    // on the horizontal line y = 1/2: adds the south projection and a drop
    auto ha = augment(base, {Point(Rat(1, 4), Rat(1, 2))});
    CHECK(ha.graph.validate().empty());
    CHECK(ha.graph.node_count() == base.graph.node_count() + 2);
    int top = ha.graph.find_node(Point(Rat(1, 4), Rat(1, 2)));
    int bot = ha.graph.find_node(Point(Rat(1, 4), Rat(0)));
    REQUIRE(top >= 0);
    REQUIRE(bot >= 0);
    CHECK(ha.graph.has_edge(top, bot));
}

TEST_CASE("augmenting with an existing vertex changes nothing") {
    auto base = uniform_grid(Rat(1, 2));
    auto aug = augment(base, {Point(Rat(1, 2), Rat(1, 2))});
    CHECK(aug.graph.node_count() == base.graph.node_count());
    CHECK(aug.graph.edge_count() == base.graph.edge_count());
    CHECK(aug.added.empty());
}

TEST_CASE("three points exercising all cases keep the graph orthogonal") {
    auto base = uniform_grid(Rat(1, 2));
    auto aug = augment(base, {Point(Rat(1, 4), Rat(3, 4)), Point(Rat(1, 2), Rat(1, 4)),
                              Point(Rat(3, 4), Rat(1, 2))});
    CHECK(aug.graph.validate().empty());
    CHECK(static_cast<int>(aug.added.size()) == 3);
}

TEST_CASE("two points in one tile are rejected, as is an oversized set") {
    auto base = uniform_grid(Rat(1, 2));
    CHECK_THROWS(augment(base, {Point(Rat(1, 4), Rat(1, 4)), Point(Rat(1, 5), Rat(1, 5))}));
    std::vector<Point> many;
    for (int i = 1; i <= 5; ++i) many.push_back(Point(Rat(2 * i - 1, 10), Rat(2 * i - 1, 10)));
    CHECK_THROWS(augment(base, many));  // 5 > 2/eps = 4
}

TEST_CASE("grid edges can split more than once") {
    auto base = uniform_grid(Rat(1, 2));
    // two tiles stacked on the same column both project onto x = 0 edges;
    // the west vertical edge of the square splits twice
    auto aug = augment(base, {Point(Rat(1, 2), Rat(1, 4)), Point(Rat(1, 2), Rat(3, 4))});
    CHECK(aug.graph.validate().empty());
    CHECK(aug.graph.find_node(Point(Rat(0), Rat(1, 4))) >= 0);
    CHECK(aug.graph.find_node(Point(Rat(0), Rat(3, 4))) >= 0);
}
