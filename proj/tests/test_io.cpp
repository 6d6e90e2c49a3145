#include "doctest.h"

#include "mechlearn/io.hpp"

#include <sstream>

using namespace mechlearn;

TEST_CASE("polylines round trip through the text format") {
    Mechanism m = Mechanism::from_points({Point(Rat(1, 3), Rat(2, 3)), Point(Rat(3, 4), Rat(1, 4))});
    std::string s = polyline_to_string(m.polyline());
    std::istringstream in(s);
    auto segs = parse_polylines(in);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0] == m.polyline());
}

TEST_CASE("distribution files accept decimals, fractions and comments") {
    std::istringstream in(
        "# an example file\n"
        "0.5 1/2 0.25\n"
        "1/4 0.75 3/4  # trailing comment\n");
    auto d = parse_distribution(in);
    REQUIRE(d.atoms.size() == 2);
    CHECK(d.atoms[0].first == Point(Rat(1, 2), Rat(1, 2)));
    CHECK(d.atoms[0].second == Rat(1, 4));
    CHECK(d.atoms[1].second == Rat(3, 4));
    CHECK(d.validate().empty());

    std::istringstream bad("0.5 0.5 0.9\n");
    CHECK_THROWS(parse_distribution(bad));  // does not sum to one
    std::istringstream garbled("0.5 oops\n");
    CHECK_THROWS(parse_distribution(garbled));
}

TEST_CASE("round CSV carries the schema header") {
    std::vector<RoundRecord> rec{{1, 42, 0.5, 0.25, 0.75, 0.75}};
    std::string csv = rounds_to_csv(rec);
    CHECK(csv.find("# mechsim rounds v1") == 0);
    CHECK(csv.find("t,mechanism,v1,v2,revenue,cumulative") != std::string::npos);
    CHECK(csv.find("\n1,42,0.5,0.25,0.75,0.75\n") != std::string::npos);
}

TEST_CASE("configs parse key = value text") {
    std::istringstream in(
        "# demo\n"
        "env = smooth_mixture\n"
        "alpha = 1/3\n"
        "learner = path_learning\n"
        "T = 100\n"
        "seeds = 1,2,3\n"
        "eta = 0.05\n");
    auto cfg = config_from_key_values(parse_key_values(in));
    CHECK(cfg.horizon == 100);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(cfg.learner.kind == LearnerSpec::Kind::path_learning);
    REQUIRE(cfg.eta_override.has_value());
    CHECK(*cfg.eta_override == doctest::Approx(0.05));

    std::istringstream missing("env = smooth_mixture\nalpha = 1/3\n");
    CHECK_THROWS(config_from_key_values(parse_key_values(missing)));

    std::istringstream badenv(
        "env = smooth_mixture\nalpha = 0.9\nlearner = atbm\nT = 5\nseeds = 1\n");
    CHECK_THROWS(config_from_key_values(parse_key_values(badenv)));
}

TEST_CASE("equal-revenue and adversarial configs construct environments") {
    std::istringstream in(
        "env = equal_revenue\nn = 3\ndelta = 1/6\nlearner = atbm\nT = 10\nseeds = 7\n");
    auto cfg = config_from_key_values(parse_key_values(in));
    CHECK(cfg.env.dist.atoms.size() == 3);
    std::istringstream in2(
        "env = adversarial\ndelta = 0.3\nzeta = 0.25\nlearner = full_square\nT = 10\nseeds = 7\n");
    auto cfg2 = config_from_key_values(parse_key_values(in2));
    CHECK(cfg2.env.kind == EnvironmentSpec::Kind::adversarial);
}
