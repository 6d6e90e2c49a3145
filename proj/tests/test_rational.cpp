#include "doctest.h"

#include "mechlearn/rational.hpp"
#include "mechlearn/rng.hpp"

using namespace mechlearn;

TEST_CASE("bigint arithmetic round trips through strings") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("-987654321098765432109876543210");
    CHECK(a.to_string() == "123456789012345678901234567890");
    CHECK((a + b).to_string() == "-864197532086419753208641975320");
    CHECK((a * b).to_string() ==
          "-121932631137021795226185032733622923332237463801111263526900");
    BigInt q, r;
    BigInt::divmod(b, a, q, r);
    CHECK(q * a + r == b);
    CHECK(BigInt::gcd(BigInt(48), BigInt(180)) == BigInt(12));
}

TEST_CASE("bigint powers and doubles") {
    BigInt p = BigInt::pow(BigInt(3), 40);
    CHECK(p.to_string() == "12157665459056928801");
    CHECK(BigInt::pow(BigInt(2), 10) == BigInt(1024));
    CHECK(doctest::Approx(BigInt::pow(BigInt(2), 100).to_double()) == std::pow(2.0, 100));
}

TEST_CASE("rational normalization and ordering") {
    Rat half(2, 4);
    CHECK(half == Rat(1, 2));
    CHECK(half.num() == BigInt(1));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(3, 4) - Rat(1, 2) == Rat(1, 4));
    CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
    CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
    CHECK(Rat(-1, 2) < Rat(1, 3));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(7, 3).floor() == BigInt(2));
    CHECK(Rat(-7, 3).floor() == BigInt(-3));
    CHECK(Rat(7, 3).ceil() == BigInt(3));
}

TEST_CASE("rational parsing accepts fractions and decimals") {
    CHECK(Rat::parse("1/3") == Rat(1, 3));
    CHECK(Rat::parse("0.25") == Rat(1, 4));
    CHECK(Rat::parse("-1.5") == Rat(-3, 2));
    CHECK(Rat::parse("1e-4") == Rat(1, 10000));
    CHECK(Rat::parse("42") == Rat(42));
    CHECK_THROWS(Rat::parse("x"));
}

TEST_CASE("from_double is exact for dyadics") {
    CHECK(Rat::from_double(0.5) == Rat(1, 2));
    CHECK(Rat::from_double(0.75) == Rat(3, 4));
    CHECK(Rat::from_double(1.0) == Rat(1));
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        double v = rng.uniform01();
        CHECK(Rat::from_double(v).to_double() == v);
    }
}

TEST_CASE("field axioms hold on random small rationals") {
    Rng rng(11);
    auto rnd = [&]() {
        std::int64_t n = static_cast<std::int64_t>(rng.below(2001)) - 1000;
        std::int64_t d = 1 + static_cast<std::int64_t>(rng.below(50));
        return Rat(n, d);
    };
    for (int i = 0; i < 300; ++i) {
        Rat a = rnd(), b = rnd(), c = rnd();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}
