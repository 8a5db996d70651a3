#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <functional>

#include "mice/boltzmann.hpp"
#include "mice/engine.hpp"

using namespace mice;

namespace {
constexpr Spin P = Spin::Plus;
constexpr Spin M = Spin::Minus;
}  // namespace

TEST_CASE("gamma weights match the table", "[boltzmann]") {
    const int n = 3, r = 1;
    SECTION("b1 carries g of the right charge") {
        CoeffElem w = gamma_weight(VertexPattern{M, P, M, P, 2, 1}, 1, n, r);
        CHECK(w == CoeffElem::g_symbol(n, r, 1));
        CHECK(w.to_string() == "g1");
    }
    SECTION("c1 weighs (1 - v) z") {
        CoeffElem w = gamma_weight(VertexPattern{P, P, M, M, 0, 0}, 1, n, r);
        CHECK(w.to_string() == "z1 - v*z1");
    }
    SECTION("charged Minus horizontal leg kills the weight") {
        CHECK(gamma_weight(VertexPattern{M, M, M, M, 0, 2}, 1, n, r).is_zero());
        CHECK(gamma_weight(VertexPattern{P, M, P, M, 1, 1}, 1, n, r).is_zero());
    }
    SECTION("a1 charge rule is left = right + 1") {
        CHECK(gamma_weight(VertexPattern{P, P, P, P, 2, 1}, 1, n, r) == CoeffElem::one(n, r));
        CHECK(gamma_weight(VertexPattern{P, P, P, P, 1, 2}, 1, n, r).is_zero());
        CHECK(gamma_weight(VertexPattern{P, P, P, P, 0, 2}, 1, n, r) == CoeffElem::one(n, r));
    }
}

TEST_CASE("delta weights match the table", "[boltzmann]") {
    const int n = 3, r = 1;
    SECTION("a2 carries g of the left charge times z") {
        CoeffElem w = delta_weight(VertexPattern{M, M, M, M, 2, 0}, 1, n, r);
        CHECK(w == CoeffElem::g_symbol(n, r, 2) * CoeffElem::z_power(n, r, 1));
    }
    SECTION("c2 with charges (0, 1) weighs 1") {
        CHECK(delta_weight(VertexPattern{M, M, P, P, 0, 1}, 1, n, r) == CoeffElem::one(n, r));
    }
    SECTION("charged Plus horizontal leg kills the weight") {
        CHECK(delta_weight(VertexPattern{P, P, P, P, 1, 1}, 1, n, r).is_zero());
        CHECK(delta_weight(VertexPattern{P, P, P, P, 0, 0}, 1, n, r) == CoeffElem::one(n, r));
    }
}

TEST_CASE("charge vanishing rule holds exhaustively", "[boltzmann][property]") {
    // Gamma: nonzero weight forces charge 0 on Minus horizontal legs; Delta
    // dually on Plus legs.
    for (int n = 1; n <= 4; ++n) {
        for (int mask = 0; mask < 16; ++mask) {
            auto bit = [mask](int k) { return (mask >> k) & 1 ? M : P; };
            for (int lc = 0; lc < n; ++lc) {
                for (int rc = 0; rc < n; ++rc) {
                    VertexPattern p{bit(0), bit(1), bit(2), bit(3), lc, rc};
                    if (!gamma_weight(p, 1, n, 1).is_zero()) {
                        if (p.left == M) CHECK(lc == 0);
                        if (p.right == M) CHECK(rc == 0);
                    }
                    if (!delta_weight(p, 1, n, 1).is_zero()) {
                        if (p.left == P) CHECK(lc == 0);
                        if (p.right == P) CHECK(rc == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("gamma table degenerates to six-vertex at n = 1", "[boltzmann]") {
    const int n = 1, r = 1;
    auto z = CoeffElem::z_power(n, r, 1);
    auto v = CoeffElem::v_power(n, r, 1);
    CHECK(gamma_weight(VertexPattern{P, P, P, P}, 1, n, r) == CoeffElem::one(n, r));   // a1
    CHECK(gamma_weight(VertexPattern{M, M, M, M}, 1, n, r) == z);                      // a2
    CHECK(gamma_weight(VertexPattern{M, P, M, P}, 1, n, r) == -v);                     // b1 = g(0)
    CHECK(gamma_weight(VertexPattern{P, M, P, M}, 1, n, r) == z);                      // b2
    CHECK(gamma_weight(VertexPattern{P, P, M, M}, 1, n, r) == (CoeffElem::one(n, r) - v) * z);  // c1
    CHECK(gamma_weight(VertexPattern{M, M, P, P}, 1, n, r) == CoeffElem::one(n, r));   // c2
}

TEST_CASE("tilted weight spot checks", "[boltzmann]") {
    const int r = 2;
    SECTION("GammaDelta all-Plus straight entry") {
        for (int n : {1, 2, 3}) {
            for (int a = 0; a < n; ++a) {
                CoeffElem w = tilted_weight(RowType::Gamma, RowType::Delta,
                                            TiltedPattern{P, P, P, P, a, 0, a, 0}, n, r, 1, 2);
                CoeffElem expect = CoeffElem::z_power(n, r, 1, n) -
                                   CoeffElem::v_power(n, r, 1) * CoeffElem::z_power(n, r, 2, n);
                CHECK(w == expect);
            }
        }
    }
    SECTION("DeltaGamma +-+- entry with zero charges") {
        for (int n : {1, 2, 3}) {
            // slot order (SW, NW, NE, SE) = (+, -, +, -)
            CoeffElem w = tilted_weight(RowType::Delta, RowType::Gamma,
                                        TiltedPattern{P, M, P, M, 0, 0, 0, 0}, n, r, 1, 2);
            CoeffElem expect = CoeffElem::z_power(n, r, 2, n) -
                               CoeffElem::v_power(n, r, n + 1) * CoeffElem::z_power(n, r, 1, n);
            CHECK(w == expect);
        }
    }
    SECTION("DeltaDelta all-Minus equal charges") {
        const int n = 3;
        CoeffElem w = tilted_weight(RowType::Delta, RowType::Delta,
                                    TiltedPattern{M, M, M, M, 2, 2, 2, 2}, n, r, 1, 2);
        CoeffElem expect =
            CoeffElem::z_power(n, r, 2, n) - CoeffElem::v_power(n, r, 1) * CoeffElem::z_power(n, r, 1, n);
        CHECK(w == expect);
    }
    SECTION("GammaGamma all-Minus entry") {
        const int n = 2;
        CoeffElem w = tilted_weight(RowType::Gamma, RowType::Gamma, TiltedPattern{M, M, M, M}, n, r, 1, 2);
        CoeffElem expect =
            CoeffElem::z_power(n, r, 1, n) - CoeffElem::v_power(n, r, 1) * CoeffElem::z_power(n, r, 2, n);
        CHECK(w == expect);
    }
    SECTION("DeltaGamma division-by-g entry is g-free times v^-1") {
        const int n = 3;
        // straight -+-+ with charges a = b = 2 on the Delta line: a+b = 4 = 1 mod 3? no, 4 mod 3 = 1 -> dagger case.
        // pick a = 0, b = 2: a+b = 2, not 1 mod 3: the divided entry.
        CoeffElem w = tilted_weight(RowType::Delta, RowType::Gamma,
                                    TiltedPattern{M, P, M, P, 0, 2, 0, 2}, n, r, 1, 2);
        CoeffElem expect = (CoeffElem::z_power(n, r, 2, n) -
                            CoeffElem::v_power(n, r, n) * CoeffElem::z_power(n, r, 1, n)) *
                           CoeffElem::g_symbol(n, r, 2) * CoeffElem::v_power(n, r, -1);
        CHECK(w == expect);
        // multiplying back by g(a+b-1) recovers the undivided numerator
        CHECK(w * CoeffElem::g_symbol(n, r, 1) ==
              CoeffElem::z_power(n, r, 2, n) - CoeffElem::v_power(n, r, n) * CoeffElem::z_power(n, r, 1, n));
    }
}

namespace {

// Table rows as predicates on (spins, charges) in slot order (SW, NW, NE, SE);
// used to certify that the listed patterns are pairwise disjoint and exactly
// cover the nonzero weights.
struct Matcher {
    std::array<Spin, 4> spins;
    std::function<bool(int, int, int, int, int)> charges;  // (c1, c2, c3, c4, n)
};

std::vector<Matcher> family_matchers(RowType X, RowType Y) {
    auto eq1 = [](int x, int n) { return x % n == 1 % n; };
    if (X == RowType::Gamma && Y == RowType::Delta) {
        return {
            {{P, P, P, P}, [](int a, int b, int c, int d, int) { return b == 0 && d == 0 && a == c; }},
            {{M, M, M, M}, [](int a, int b, int c, int d, int) { return a == 0 && c == 0 && b == d; }},
            {{P, M, P, M}, [](int a, int b, int c, int d, int) { return a == b && b == c && c == d; }},
            {{P, M, P, M},
             [eq1](int a, int b, int c, int d, int n) { return a == c && b == d && a != b && eq1(a + b, n); }},
            {{P, M, P, M},
             [eq1](int a, int b, int c, int d, int n) { return a == c && b == d && a != b && !eq1(a + b, n); }},
            {{P, M, P, M},
             [eq1](int a, int b, int c, int d, int n) {
                 return a != c && eq1(a + b, n) && eq1(c + d, n);
             }},
            {{M, P, M, P}, [](int a, int b, int c, int d, int) { return a == 0 && b == 0 && c == 0 && d == 0; }},
            {{M, P, P, M}, [eq1](int a, int b, int c, int d, int n) { return a == 0 && b == 0 && eq1(c + d, n); }},
            {{P, M, M, P}, [eq1](int a, int b, int c, int d, int n) { return c == 0 && d == 0 && eq1(a + b, n); }},
        };
    }
    if (X == RowType::Delta && Y == RowType::Delta) {
        return {
            {{P, P, P, P}, [](int a, int b, int c, int d, int) { return a == 0 && b == 0 && c == 0 && d == 0; }},
            {{M, M, M, M}, [](int a, int b, int c, int d, int) { return a == d && b == c && a != b; }},
            {{M, M, M, M}, [](int a, int b, int c, int d, int) { return a == c && b == d && a != b; }},
            {{M, M, M, M}, [](int a, int b, int c, int d, int) { return a == b && b == c && c == d; }},
            {{P, M, P, M}, [](int a, int b, int c, int d, int) { return a == 0 && c == 0 && b == d; }},
            {{M, P, P, M}, [](int a, int b, int c, int d, int) { return b == 0 && c == 0 && a == d; }},
            {{M, P, M, P}, [](int a, int b, int c, int d, int) { return b == 0 && d == 0 && a == c; }},
            {{P, M, M, P}, [](int a, int b, int c, int d, int) { return a == 0 && d == 0 && b == c; }},
        };
    }
    if (X == RowType::Delta && Y == RowType::Gamma) {
        return {
            {{P, P, P, P}, [](int a, int b, int c, int d, int) { return a == 0 && c == 0 && b == d; }},
            {{M, M, M, M}, [](int a, int b, int c, int d, int) { return b == 0 && d == 0 && a == c; }},
            {{P, M, P, M}, [](int a, int b, int c, int d, int) { return a == 0 && b == 0 && c == 0 && d == 0; }},
            {{M, P, M, P},
             [eq1](int a, int b, int c, int d, int n) { return a == c && b == d && eq1(a + b, n); }},
            {{M, P, M, P},
             [eq1](int a, int b, int c, int d, int n) { return a == c && b == d && !eq1(a + b, n); }},
            {{M, P, M, P},
             [eq1](int a, int b, int c, int d, int n) {
                 return a != c && eq1(a + b, n) && eq1(c + d, n);
             }},
            {{M, P, P, M}, [eq1](int a, int b, int c, int d, int n) { return c == 0 && d == 0 && eq1(a + b, n); }},
            {{P, M, M, P}, [eq1](int a, int b, int c, int d, int n) { return a == 0 && b == 0 && eq1(c + d, n); }},
        };
    }
    return {
        {{P, P, P, P}, [](int a, int b, int c, int d, int) { return a == b && b == c && c == d; }},
        {{P, P, P, P}, [](int a, int b, int c, int d, int) { return a == c && b == d && a != b; }},
        {{P, P, P, P}, [](int a, int b, int c, int d, int) { return a == d && b == c && a != b; }},
        {{M, M, M, M}, [](int a, int b, int c, int d, int) { return a == 0 && b == 0 && c == 0 && d == 0; }},
        {{P, M, P, M}, [](int a, int b, int c, int d, int) { return b == 0 && d == 0 && a == c; }},
        {{M, P, M, P}, [](int a, int b, int c, int d, int) { return a == 0 && c == 0 && b == d; }},
        {{M, P, P, M}, [](int a, int b, int c, int d, int) { return a == 0 && d == 0 && b == c; }},
        {{P, M, M, P}, [](int a, int b, int c, int d, int) { return b == 0 && c == 0 && a == d; }},
    };
}

}  // namespace

TEST_CASE("tilted table rows are disjoint and cover the nonzero weights", "[boltzmann][property]") {
    for (int n = 1; n <= 4; ++n) {
        for (RowType X : {RowType::Gamma, RowType::Delta}) {
            for (RowType Y : {RowType::Gamma, RowType::Delta}) {
                auto matchers = family_matchers(X, Y);
                for (int mask = 0; mask < 16; ++mask) {
                    auto bit = [mask](int k) { return (mask >> k) & 1 ? M : P; };
                    std::array<Spin, 4> s{bit(0), bit(1), bit(2), bit(3)};  // (SW, NW, NE, SE)
                    for (int c1 = 0; c1 < n; ++c1)
                        for (int c2 = 0; c2 < n; ++c2)
                            for (int c3 = 0; c3 < n; ++c3)
                                for (int c4 = 0; c4 < n; ++c4) {
                                    int matched = 0;
                                    for (const auto& m : matchers)
                                        if (m.spins == s && m.charges(c1, c2, c3, c4, n)) ++matched;
                                    REQUIRE(matched <= 1);
                                    TiltedPattern p{s[2], s[3], s[0], s[1], c3, c4, c1, c2};
                                    bool nonzero = !tilted_weight(X, Y, p, n, 2, 1, 2).is_zero();
                                    REQUIRE(nonzero == (matched == 1));
                                }
                }
            }
        }
    }
}

TEST_CASE("convention calibration passes", "[boltzmann]") {
    CalibrationReport rep;
    REQUIRE_NOTHROW(rep = calibrate_conventions());
    CHECK(rep.ok);

    SECTION("the reference state is among the enumerated states") {
        SystemSpec spec = calibration_spec();
        ChargedState target = calibration_state();
        bool found = false;
        long count = 0;
        enumerate_admissible(spec, [&](const ChargedState& st) {
            ++count;
            if (st.spins.horiz == target.spins.horiz && st.spins.vert == target.spins.vert) found = true;
        });
        CHECK(found);
        CHECK(count == 41);
    }
    SECTION("swapping the charge slots breaks the a1 rule") {
        const int n = 2, r = 1;
        // with (left, right) = (a, a+1) instead of (a+1, a) the weight vanishes
        CHECK(gamma_weight(VertexPattern{P, P, P, P, 1, 0}, 1, n, r) == CoeffElem::one(n, r));
        CHECK(gamma_weight(VertexPattern{P, P, P, P, 0, 1}, 1, n, r).is_zero());
    }
}
