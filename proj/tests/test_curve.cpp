#include "qhpp/curve.hpp"
#include "qhpp/enumerate.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qhpp;

TEST_CASE("curve parsing") {
    CurveHypothesis c = CurveHypothesis::parse("E(-1): D4[1]*1, D4[9]*1");
    CHECK(c.label == "E");
    CHECK(c.kc == -1);
    CHECK(c.c2 == -1);
    REQUIRE(c.hits.size() == 2);
    CHECK(c.hits[0].chain == 3);
    CHECK(c.hits[0].component == 1);
    CHECK(c.hits[1].component == 9);

    CurveHypothesis d = CurveHypothesis::parse("C(-3,1): D1[1]*2");
    CHECK(d.kc == -3);
    CHECK(d.c2 == 1);
    CHECK(d.hits[0].multiplicity == 2);

    CHECK_THROWS_AS(CurveHypothesis::parse("E(-2): D1[1]"), std::invalid_argument);
    CHECK_THROWS_AS(CurveHypothesis::parse("E(-1): X1[1]"), std::invalid_argument);
}

TEST_CASE("equation one") {
    // (-1)-curve hitting only all-2 chains: every coefficient vanishes
    std::vector<Chain> rdp{Chain{{2}}, Chain{{2, 2, 2}}};
    auto e = CurveHypothesis::minus_one_curve({{0, 1, 1}, {1, 2, 1}});
    CHECK(equation_one(e, rdp) == Rat(-1));

    // (-1)-curve hitting components 1 and 9 of [3,2^8]
    std::vector<Chain> t1{hj_expand(19, 9)};
    auto e2 = CurveHypothesis::minus_one_curve({{0, 1, 1}, {0, 9, 1}});
    CHECK(equation_one(e2, t1) == Rat(-9, 19));

    // kc = 0, no hits
    CurveHypothesis c0{"C", 0, 0, {}};
    CHECK(equation_one(c0, t1) == 0);

    CurveHypothesis oob{"C", 0, 0, {{0, 10, 1}}};
    CHECK_THROWS_AS(equation_one(oob, t1), std::out_of_range);
    CurveHypothesis oob2{"C", 0, 0, {{2, 1, 1}}};
    CHECK_THROWS_AS(equation_one(oob2, t1), std::out_of_range);
}

TEST_CASE("equation two") {
    std::vector<Chain> chains{Chain{{3, 2, 2}}};
    ChainInvariants inv = chain_invariants(chains[0]);

    // end-end hit: beta = -1 + (q1+ql+2)/q
    auto cyc = CurveHypothesis::minus_one_curve({{0, 1, 1}, {0, 3, 1}});
    CHECK(equation_two(cyc, chains) == Rat(-1) + Rat(inv.q1 + inv.ql + 2, inv.q));

    // double end hit: beta = -1 + 4 q1 / q
    auto dbl = CurveHypothesis::minus_one_curve({{0, 1, 2}});
    CHECK(equation_two(dbl, chains) == Rat(-1) + Rat(4 * inv.q1, inv.q));

    // c2 = 0, no hits
    CurveHypothesis c0{"C", -2, 0, {}};
    CHECK(equation_two(c0, chains) == 0);

    // three hit components in one chain: out of the proposition's scope
    auto bad = CurveHypothesis::minus_one_curve({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    CHECK_FALSE(equation_two_applicable(bad, chains));
    CHECK_THROWS_AS(equation_two(bad, chains), Eq2Inapplicable);
}

TEST_CASE("infer_from_curve: end-end cycle") {
    for (auto ws : {std::vector<int>{3, 2}, {2, 2}, {5, 5}, {3, 2, 2, 2, 2, 2, 2, 2, 2}}) {
        std::vector<Chain> chains{Chain{ws}};
        ChainInvariants inv = chain_invariants(chains[0]);
        auto e = CurveHypothesis::minus_one_curve({{0, 1, 1}, {0, chains[0].length(), 1}});
        InferenceResult r = infer_from_curve(e, chains);
        Rat expect_alpha = 1 - Rat(inv.q1 + inv.ql + 2, inv.q);
        CHECK(r.alpha == expect_alpha);
        CHECK(r.beta == -expect_alpha);
        CHECK(r.classification != Positivity::k_ample);
        if (expect_alpha != 0) {
            CHECK(*r.m == -1);
            CHECK(*r.k_squared == -expect_alpha);
            CHECK(r.classification == Positivity::anti_k_ample);
        } else {
            CHECK(r.classification == Positivity::numerically_trivial); // e.g. [3,3]
        }
    }
    // [3,3] is the numerically trivial boundary: q1+ql+2 = q
    std::vector<Chain> c33{Chain{{3, 3}}};
    auto e = CurveHypothesis::minus_one_curve({{0, 1, 1}, {0, 2, 1}});
    CHECK(infer_from_curve(e, c33).classification == Positivity::numerically_trivial);
}

TEST_CASE("infer_from_curve: RDP-case configurations") {
    SECTION("n1 = 3: contracted double-end-hit leaves C with kc = -1, c2 = 1") {
        std::vector<Chain> chains{Chain{{3, 2}}};
        CurveHypothesis c{"C", -1, 1, {{0, 1, 1}}};
        InferenceResult r = infer_from_curve(c, chains);
        CHECK(*r.m == Rat(-7, 3));
        CHECK(*r.k_squared == Rat(9, 35));
        CHECK(r.classification == Positivity::anti_k_ample);
        // symbolic forms with q = 5, q1 = 2
        CHECK(*r.m == -Rat(5 + 2, 2 + 1));
        CHECK(*r.k_squared == Rat((2 + 1) * (2 + 1), 5 * (2 + 5)));
    }
    SECTION("n1 = 4: image is a nodal 0-curve, kc = 0, c2 = 0") {
        std::vector<Chain> chains{Chain{{3, 2}}};
        ChainInvariants inv = chain_invariants(chains[0]);
        CurveHypothesis c{"C", 0, 0, {{0, 1, 1}}};
        InferenceResult r = infer_from_curve(c, chains);
        CHECK(r.alpha == 1 - Rat(inv.q1 + 1, inv.q)); // (q - q1 - 1)/q
        CHECK(r.beta == Rat(inv.q1, inv.q));
        CHECK(*r.m == Rat(inv.q1, inv.q - inv.q1 - 1));
    }
    SECTION("known K^2 acts as a constraint") {
        std::vector<Chain> chains{Chain{{3, 2}}};
        CurveHypothesis c{"C", -1, 1, {{0, 1, 1}}};
        InferenceResult ok = infer_from_curve(c, chains, Rat(9, 35));
        CHECK(ok.classification == Positivity::anti_k_ample);
        InferenceResult bad = infer_from_curve(c, chains, Rat(1, 2));
        CHECK(bad.classification == Positivity::inconsistent);
    }
}

TEST_CASE("infer_from_curve: degenerate branches") {
    std::vector<Chain> rdp{Chain{{2, 2}}};
    // alpha = 0 and beta = 0: numerically trivial
    CurveHypothesis flat{"C", 0, 0, {}};
    CHECK(infer_from_curve(flat, rdp).classification == Positivity::numerically_trivial);
    // alpha = 0, beta != 0: inconsistent
    CurveHypothesis inc{"C", 0, 1, {}};
    CHECK(infer_from_curve(inc, rdp).classification == Positivity::inconsistent);
    // alpha != 0, beta = 0: inconsistent
    CurveHypothesis inc2{"C", 1, 0, {}};
    CHECK(infer_from_curve(inc2, rdp).classification == Positivity::inconsistent);
}

TEST_CASE("sign coherence on random hypotheses") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> wt(2, 5), len(1, 5), kc(-3, 3), mult(1, 2);
    for (int t = 0; t < 300; ++t) {
        std::vector<int> ws(static_cast<size_t>(len(rng)));
        for (int& w : ws) w = wt(rng);
        std::vector<Chain> chains{Chain{ws}};
        CurveHypothesis c{"C", kc(rng), kc(rng), {}};
        int nhits = mult(rng);
        for (int i = 0; i < nhits; ++i)
            c.hits.push_back({0, 1 + static_cast<int>(static_cast<unsigned>(rng()) % static_cast<unsigned>(chains[0].length())), mult(rng)});
        if (!equation_two_applicable(c, chains)) continue;
        InferenceResult r = infer_from_curve(c, chains);
        if (r.k_squared && *r.k_squared > 0) {
            CHECK(((*r.m > 0) == (r.alpha > 0)));
        }
        // determinism
        InferenceResult r2 = infer_from_curve(c, chains);
        CHECK(r.alpha == r2.alpha);
        CHECK(r.beta == r2.beta);
        CHECK(r.classification == r2.classification);
    }
}

TEST_CASE("pair scan on [3,2^8]") {
    PairScanResult res = pair_scan_23719();
    CHECK(res.rows.size() == 9 * 10 / 2);
    CHECK(res.all_below_one);
    CHECK(res.max_distinct == Rat(17, 19));
    CHECK(res.max_all == Rat(18, 19)); // double hit on the first component
    auto row = [&](int j, int k) {
        for (const auto& r : res.rows)
            if (r.j == j && r.k == k) return r.sum;
        throw std::logic_error("row not found");
    };
    CHECK(row(1, 2) == Rat(17, 19));
    CHECK(row(1, 1) == Rat(18, 19));
    CHECK(row(8, 9) == Rat(3, 19));
}
