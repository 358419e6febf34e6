#include "qhpp/resolution.hpp"
#include "qhpp/enumerate.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qhpp;

namespace {

// A valid 4-chain QHPP resolution state: A1 + 1/3(1,1) + 1/5(1,1) + A8.
// Scenario-specific extra curves get attached per test.
MarkedResolution base_235_state() {
    MarkedResolution s;
    s.add_curve("D1a", -2);
    s.add_curve("D2a", -3);
    s.add_curve("D3a", -5);
    for (int i = 1; i <= 8; ++i) s.add_curve("c" + std::to_string(i), -2);
    for (int i = 1; i < 8; ++i)
        s.set_intersection("c" + std::to_string(i), "c" + std::to_string(i + 1), 1);
    s.picard_rank = 1 + 11;
    return s;
}

} // namespace

TEST_CASE("blow_up arithmetic") {
    SECTION("intersection of two curves") {
        MarkedResolution s;
        s.add_curve("E", -1);
        s.add_curve("D", -2);
        s.set_intersection("E", "D", 1);
        s.picard_rank = 2;
        MarkedResolution t = blow_up(s, {"E", "D"}, "F");
        CHECK(t.self("E") == -2);
        CHECK(t.self("D") == -3);
        CHECK(t.intersection("E", "D") == 0);
        CHECK(t.intersection("F", "E") == 1);
        CHECK(t.intersection("F", "D") == 1);
        CHECK(t.self("F") == -1);
        CHECK(t.picard_rank == 3);
    }
    SECTION("free point") {
        MarkedResolution s;
        s.add_curve("D", -2);
        s.picard_rank = 1;
        MarkedResolution t = blow_up(s, {"D"}, "F");
        CHECK(t.self("D") == -3);
        CHECK(t.intersection("F", "D") == 1);
    }
    SECTION("tangency step: multiplicity 2 drops to 1") {
        MarkedResolution s;
        s.add_curve("E", -1);
        s.add_curve("D", -2);
        s.set_intersection("E", "D", 2);
        s.picard_rank = 2;
        MarkedResolution t = blow_up(s, {"E", "D"}, "F");
        CHECK(t.self("E") == -2);
        CHECK(t.self("D") == -3);
        CHECK(t.intersection("E", "D") == 1);
    }
    SECTION("disjoint curves rejected") {
        MarkedResolution s;
        s.add_curve("A", -2);
        s.add_curve("B", -2);
        CHECK_THROWS_AS(blow_up(s, {"A", "B"}), std::invalid_argument);
    }
}

TEST_CASE("contract arithmetic") {
    SECTION("E meets A(-3) and B(-2) once each") {
        MarkedResolution s;
        s.add_curve("A", -3);
        s.add_curve("B", -2);
        s.add_curve("E", -1);
        s.set_intersection("E", "A", 1);
        s.set_intersection("E", "B", 1);
        s.picard_rank = 3;
        MarkedResolution t = contract(s, "E");
        CHECK(t.self("A") == -2);
        CHECK(t.self("B") == -1);
        CHECK(t.intersection("A", "B") == 1);
        CHECK(t.picard_rank == 2);
        CHECK_FALSE(t.non_snc);
    }
    SECTION("iterated contraction of chain [2,3] plus E on the first component") {
        MarkedResolution s;
        s.add_curve("d1", -2);
        s.add_curve("d2", -3);
        s.set_intersection("d1", "d2", 1);
        s.add_curve("E", -1);
        s.set_intersection("E", "d1", 1);
        s.picard_rank = 3;
        MarkedResolution t = contract(s, "E");
        CHECK(t.self("d1") == -1);
        MarkedResolution u = contract(t, "d1");
        CHECK(u.self("d2") == -2); // terminal chain [2]
        CHECK(u.curve_count() == 1);
    }
    SECTION("double intersection flags non-snc") {
        MarkedResolution s;
        s.add_curve("d1", -2);
        s.add_curve("E", -1);
        s.set_intersection("E", "d1", 2);
        s.picard_rank = 2;
        MarkedResolution t = contract(s, "E");
        CHECK(t.self("d1") == 2); // -2 + 4
        CHECK(t.non_snc);
        CHECK_FALSE(qhpp_check(t).valid);
        CHECK(qhpp_check(t).reason == QhppVerdict::Reason::non_snc);
    }
    MarkedResolution s;
    s.add_curve("A", -2);
    CHECK_THROWS_AS(contract(s, "A"), std::invalid_argument);
}

TEST_CASE("blow_up / contract round-trip") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> ncurve(2, 6), selfd(-5, -1), coin(0, 3);
    int trips = 0;
    for (int t = 0; t < 200; ++t) {
        MarkedResolution s;
        int n = ncurve(rng);
        for (int i = 0; i < n; ++i) s.add_curve("X" + std::to_string(i), selfd(rng));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int c = coin(rng);
                if (c == 1) s.set_intersection("X" + std::to_string(i), "X" + std::to_string(j), 1);
                if (c == 2) s.set_intersection("X" + std::to_string(i), "X" + std::to_string(j), 2);
            }
        s.picard_rank = n + 1;

        std::vector<std::vector<std::string>> locs;
        for (int i = 0; i < n; ++i) locs.push_back({s.label(i)});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (s.intersection(i, j) >= 1) locs.push_back({s.label(i), s.label(j)});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    if (s.intersection(i, j) >= 1 && s.intersection(i, k) >= 1 && s.intersection(j, k) >= 1)
                        locs.push_back({s.label(i), s.label(j), s.label(k)});
        for (const auto& loc : locs) {
            MarkedResolution up = blow_up(s, loc, "NEW");
            MarkedResolution back = contract(up, "NEW");
            CHECK(back == s);
            ++trips;
        }
    }
    CHECK(trips > 500);
}

TEST_CASE("qhpp_check on valid and broken states") {
    MarkedResolution s = base_235_state();
    QhppVerdict v = qhpp_check(s);
    CHECK(v.valid);
    CHECK(v.chain_count == 4);
    CHECK(v.L == 11);

    SECTION("five disjoint chains on a rational candidate") {
        MarkedResolution t = s;
        t.add_curve("Z", -2);
        t.picard_rank += 1;
        QhppVerdict w = qhpp_check(t);
        CHECK_FALSE(w.valid);
        CHECK(w.reason == QhppVerdict::Reason::too_many_chains);
        CHECK(w.chain_count == 5);
    }
    SECTION("rank mismatch") {
        MarkedResolution t = s;
        t.picard_rank += 3;
        CHECK(qhpp_check(t).reason == QhppVerdict::Reason::rank_mismatch);
    }
    SECTION("branching exceptional set is not a chain union") {
        MarkedResolution t = s;
        t.add_curve("Z", -2);
        t.set_intersection("Z", "c2", 1); // c2 gains a third exceptional neighbour
        t.picard_rank += 1;
        CHECK(qhpp_check(t).reason == QhppVerdict::Reason::not_chain_decomposition);
    }
}

TEST_CASE("E.D >= 2 reductio branches") {
    SECTION("branch 1: E.D = 1") {
        MarkedResolution s = base_235_state();
        s.add_curve("E", -1);
        s.set_intersection("E", "c1", 1);
        REQUIRE(qhpp_check(s).valid);
        MarkedResolution t = blow_up(s, {"E", "c1"});
        QhppVerdict v = qhpp_check(t);
        CHECK_FALSE(v.valid);
        CHECK(v.reason == QhppVerdict::Reason::too_many_chains);
        CHECK(v.chain_count == 5); // E became a fifth (-2)-chain
    }
    SECTION("branch 2: E through a node of the chain") {
        MarkedResolution s = base_235_state();
        s.add_curve("E", -1);
        s.set_intersection("E", "c1", 1);
        s.set_intersection("E", "c2", 1); // both hits at the node c1.c2
        REQUIRE(qhpp_check(s).valid);
        MarkedResolution t = blow_up(s, {"c1", "c2"});
        QhppVerdict v = qhpp_check(t);
        CHECK_FALSE(v.valid);
        CHECK(v.reason == QhppVerdict::Reason::too_many_chains);
        CHECK(v.chain_count == 5); // the A8 chain split in two
    }
    SECTION("branch 3: E tangent to one component, resolved by two blow-ups") {
        MarkedResolution s = base_235_state();
        s.add_curve("E", -1);
        s.set_intersection("E", "c1", 2);
        REQUIRE(qhpp_check(s).valid);
        MarkedResolution t = blow_up(s, {"E", "c1"}, "F1");
        CHECK(t.intersection("E", "c1") == 1);
        // after the tangency blow-up E, c1 and F1 pass through one point
        MarkedResolution u = blow_up(t, {"E", "c1", "F1"}, "F2");
        QhppVerdict v = qhpp_check(u);
        CHECK_FALSE(v.valid);
        CHECK(v.reason == QhppVerdict::Reason::too_many_chains);
        CHECK(v.chain_count == 6); // E(-3) and F1(-2) join as fifth and sixth chains
        CHECK(u.self("E") == -3);
        CHECK(u.self("F1") == -2);
    }
}

TEST_CASE("contraction identities") {
    auto r1 = contraction_identities(Chain{{2, 3}});
    CHECK(r1.linear_ok);
    CHECK(r1.quadratic_ok);
    CHECK(r1.quadratic_lhs == 1); // (3-1-1)^2
    CHECK_FALSE(r1.difference_vanishes);

    auto r2 = contraction_identities(Chain{{2, 2, 2}});
    CHECK(r2.quadratic_lhs == 0);
    CHECK(r2.difference_vanishes); // A3 is a rational double point

    auto r3 = contraction_identities(Chain{{2, 4, 3, 2}});
    CHECK(r3.linear_ok);
    CHECK(r3.quadratic_ok);
    CHECK(r3.quadratic_lhs == 144);

    CHECK_THROWS_AS(contraction_identities(Chain{{3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(contraction_identities(Chain{{2}}), std::invalid_argument);

    SECTION("exhaustive over first-weight-2 chains, l <= 6, weights <= 5") {
        ChainConstraints c;
        c.max_length = 6;
        c.max_weight = 5;
        c.min_length = 2;
        for (const Chain& ch : enumerate_chains(c)) {
            if (ch.weight(1) != 2) continue;
            auto r = contraction_identities(ch);
            CHECK(r.linear_ok);
            CHECK(r.quadratic_ok);
            CHECK(r.difference_vanishes == ch.all_two());
        }
    }
}

TEST_CASE("state classification and cascade search") {
    SECTION("already log del Pezzo: empty cascade") {
        MarkedResolution s;
        s.add_curve("A", -3);
        s.add_curve("C", -1);
        s.set_intersection("C", "A", 2);
        s.picard_rank = 2;
        CHECK(classify_state(s) == Positivity::anti_k_ample);
        auto path = cascade_search(s);
        REQUIRE(path.has_value());
        CHECK(path->steps.empty());
        CHECK(path->terminal_class == TerminalClass::log_del_pezzo);
    }
    SECTION("one-step cascade inverts a blow-up") {
        // bottom state: chain [2] with a nodal 0-curve A0 (A0.X = 2) and a
        // (-1)-curve C; classifies as log del Pezzo through A0
        MarkedResolution s0;
        s0.add_curve("A0", 0);
        s0.add_curve("C", -1);
        s0.add_curve("X", -2);
        s0.set_intersection("A0", "X", 2);
        s0.set_intersection("A0", "C", 1);
        s0.set_intersection("C", "X", 2);
        s0.picard_rank = 2;
        REQUIRE(qhpp_check(s0).valid);
        CHECK(classify_state(s0) == Positivity::anti_k_ample);

        // blow up the common point of A0, C and X
        MarkedResolution s1 = blow_up(s0, {"A0", "C", "X"}, "F1");
        REQUIRE(qhpp_check(s1).valid);
        CHECK(classify_state(s1) == Positivity::k_ample); // intermediate state records its class
        auto path = cascade_search(s1);
        REQUIRE(path.has_value());
        CHECK(path->steps == std::vector<std::string>{"F1"});
        CHECK(path->terminal_class == TerminalClass::log_del_pezzo);
        CHECK(path->terminal_state == s0);
        // picard + contractions performed stays constant along the path
        CHECK(path->terminal_state.picard_rank + static_cast<int>(path->steps.size()) == s1.picard_rank);
    }
    SECTION("no admissible step when every (-1)-curve has E.D >= 3") {
        MarkedResolution s;
        s.add_curve("c1", -2);
        s.add_curve("c2", -2);
        s.add_curve("c3", -2);
        s.set_intersection("c1", "c2", 1);
        s.set_intersection("c2", "c3", 1);
        s.add_curve("E", -1);
        s.set_intersection("E", "c1", 1);
        s.set_intersection("E", "c2", 1);
        s.set_intersection("E", "c3", 1);
        s.picard_rank = 4;
        REQUIRE(qhpp_check(s).valid);
        CHECK(admissible_steps(s).empty());
        CHECK_FALSE(cascade_search(s).has_value());
    }
}

TEST_CASE("graph state serialization") {
    MarkedResolution s = base_235_state();
    s.add_curve("E", -1);
    s.set_intersection("E", "c1", 2);
    MarkedResolution t = MarkedResolution::parse(s.str());
    CHECK(t == s);

    MarkedResolution d = MarkedResolution::parse("curve A -2\ncurve B -3\nedge A B\n");
    CHECK(d.picard_rank == 3); // defaults to 1 + L
    CHECK_THROWS_AS(MarkedResolution::parse("squiggle"), std::invalid_argument);
}
