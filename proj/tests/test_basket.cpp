#include "qhpp/basket.hpp"
#include "qhpp/enumerate.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qhpp;

TEST_CASE("basket parsing and printing") {
    Basket b = Basket::parse("A1 + 1/3(1,1) + 1/5(1,2) + [2,3,2,3]");
    REQUIRE(b.size() == 4);
    CHECK(b.L() == 1 + 1 + 2 + 4);
    CHECK(b.singularities()[2].chain == Chain{{3, 2}});
    CHECK(b.singularities()[3].q == 19);
    CHECK(b.str() == "A1 + 1/3(1,1) + 1/5(1,2) + 1/19(1,12)");
    CHECK(Basket::parse(b.str()).L() == b.L());

    CHECK(Basket::parse("").size() == 0);
    CHECK_THROWS_AS(Basket::parse("B2"), std::invalid_argument);
    CHECK_THROWS_AS(Basket::parse("1/5(2,1)"), std::invalid_argument);
}

TEST_CASE("basket size gate") {
    Basket four = Basket::parse("A1 + A1 + A1 + A3");
    CHECK(four.size_check() == Basket::SizeCheck::ok);
    Basket five = Basket::parse("A1 + A1 + A1 + A3 + A3");
    CHECK(five.size_check(true) == Basket::SizeCheck::five_requires_enriques);
    CHECK(five.size_check(false) == Basket::SizeCheck::ok); // 3A1+2A3 Enriques carve-out
    Basket five_other = Basket::parse("A1 + A1 + A1 + A3 + A2");
    CHECK(five_other.size_check(false) == Basket::SizeCheck::five_requires_enriques);
    CHECK_THROWS_AS(Basket::parse("A1+A1+A1+A1+A1+A1"), std::invalid_argument);
}

TEST_CASE("K^2 spot values") {
    CHECK(k_squared(Basket{}) == 9);

    Basket b1 = Basket::parse("A1 + 1/3(1,1) + 1/5(1,1) + A8");
    CHECK(k_squared(b1) == Rat(2, 15));
    CHECK(orbifold_euler(b1) == Rat(13, 90));
    CHECK(bmy_gate(b1) == BmyVerdict::pass);

    Basket b2 = Basket::parse("A1 + 1/3(1,1) + A4 + [2,3,2,3]");
    CHECK(k_squared(b2) == Rat(28, 57));
    // [2,3,2,3] has tr = 3l-2; K^2 matches the case identity -2/3 + (q1+ql+2)/q
    ChainInvariants inv = chain_invariants(Chain{{2, 3, 2, 3}});
    CHECK(inv.q == 19);
    CHECK(inv.q1 == 12);
    CHECK(inv.ql == 8);
    CHECK(k_squared(b2) == Rat(-2, 3) + Rat(inv.q1 + inv.ql + 2, inv.q));
    CHECK(bmy_gate(b2) == BmyVerdict::fail_upper); // 28/57 > 3 e_orb = 49/190

    SECTION("two-path K^2 consistency on random baskets") {
        std::mt19937 rng(20240117);
        std::uniform_int_distribution<int> nsing(0, 4), len(1, 6), wt(2, 5);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<Chain> chains;
            int k = nsing(rng);
            for (int i = 0; i < k; ++i) {
                std::vector<int> ws(static_cast<size_t>(len(rng)));
                for (int& w : ws) w = wt(rng);
                chains.emplace_back(std::move(ws));
            }
            Basket b = Basket::of_chains(chains);
            SurfaceInvariants si = surface_invariants(b); // throws if routes disagree
            CHECK(si.k_squared_smooth == 9 - b.L());
            CHECK(si.e_orb <= 3);
        }
    }
}

TEST_CASE("orbifold euler") {
    CHECK(orbifold_euler(Basket{}) == 3);
    // orders (2,3,5,q) give e_orb = 1/30 + 1/q
    for (int q : {7, 11, 49}) {
        Basket b = Basket::parse("A1 + 1/3(1,1) + 1/5(1,1)").with(CyclicSingularity::from_type(q, 1));
        CHECK(orbifold_euler(b) == Rat(1, 30) + Rat(1, q));
    }
    CHECK(bmy_gate(Basket{}) == BmyVerdict::pass); // 9 <= 9, equality boundary
}

TEST_CASE("arithmetic obstructions") {
    auto r1 = arithmetic_obstructions(std::vector<Int>{2, 3, 7, 19});
    CHECK(r1.pairwise_coprime);
    CHECK(r1.gcd30_ok); // gcd(19,30) = 1

    auto r2 = arithmetic_obstructions(std::vector<Int>{2, 3, 5, 43});
    CHECK(r2.pairwise_coprime);
    CHECK(r2.gcd30_ok); // 1/43(1,19) survives the gcd test

    auto r3 = arithmetic_obstructions(std::vector<Int>{2, 3, 5, 22});
    CHECK_FALSE(r3.pairwise_coprime);
    REQUIRE(r3.offending_pair.has_value());
    CHECK(r3.offending_pair->first * r3.offending_pair->second == 44);

    auto r4 = arithmetic_obstructions(Int(5), Int(2));
    CHECK(*r4.square_test_value == 210);
    CHECK_FALSE(*r4.square_test_ok); // 210 is not a square: obstruction triggered
    CHECK_FALSE(r4.all_pass());

    // 30(q1+q) square example: q = 5, q1 = 25/... pick 30*(q+q1) = 900 with q=25,q1=5
    auto r5 = arithmetic_obstructions(Int(25), Int(5));
    CHECK(*r5.square_test_value == 900);
    CHECK(*r5.square_test_ok);
}

TEST_CASE("enumerate_chains") {
    ChainConstraints c;
    c.max_length = 1;
    c.max_weight = 5;
    c.exact_length = 1;
    auto singles = enumerate_chains(c);
    REQUIRE(singles.size() == 4);
    CHECK(singles[0] == Chain{{2}});
    CHECK(singles[3] == Chain{{5}});

    ChainConstraints c2;
    c2.max_length = 4;
    c2.max_weight = 5;
    c2.exact_length = 4;
    c2.tr_offset = 2; // tr = 3l - 2 = 10
    auto tens = enumerate_chains(c2);
    CHECK(std::find(tens.begin(), tens.end(), Chain{{2, 3, 2, 3}}) != tens.end());
    for (const auto& ch : tens) CHECK(ch.tr() == 10);

    SECTION("L = 11 window contains the three listed types") {
        ChainConstraints c3;
        c3.max_length = 7;
        c3.max_weight = 5;
        c3.exact_length = 7;
        c3.partial_basket = Basket::parse("A1 + 1/3(1,1) + 1/5(1,2)");
        c3.require_bmy_pass = true;
        c3.min_q = 20;
        auto chains = enumerate_chains(c3);
        for (auto qa : std::vector<std::pair<int, int>>{{22, 7}, {33, 13}, {43, 19}}) {
            Chain want = hj_expand(qa.first, qa.second);
            CHECK(std::find(chains.begin(), chains.end(), want) != chains.end());
        }
        // canonical deterministic order
        auto again = enumerate_chains(c3);
        CHECK(chains == again);
    }

    ChainConstraints bad;
    bad.max_length = -1;
    bad.max_weight = 5;
    CHECK_THROWS_AS(enumerate_chains(bad), std::invalid_argument);
}
