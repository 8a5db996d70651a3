#include <catch2/catch_amalgamated.hpp>

#include "mice/lattice.hpp"

using namespace mice;

TEST_CASE("columns from partition", "[lattice]") {
    CHECK(columns_from_partition(Partition({3, 2, 0}), 3).columns == std::vector<int>{5, 3, 0});
    CHECK(columns_from_partition(Partition({2, 1, 1}), 3).columns == std::vector<int>{4, 2, 1});
    CHECK(columns_from_partition(Partition({0, 0, 0}), 3).columns == std::vector<int>{2, 1, 0});
    CHECK_THROWS_AS(columns_from_partition(Partition({1}), 2), ContractViolation);
}

TEST_CASE("partition and column set validation", "[lattice]") {
    CHECK_THROWS_AS(Partition({1, 2}), ContractViolation);
    CHECK_THROWS_AS(Partition({-1}), ContractViolation);
    CHECK_THROWS_AS(ColumnSet({1, 1}), ContractViolation);
    CHECK_THROWS_AS(ColumnSet({1, 2}), ContractViolation);
}

TEST_CASE("standard system construction", "[lattice]") {
    SystemSpec spec = build_standard_system(Partition({3, 2, 0}), 3, RowType::Gamma, 2);
    CHECK(spec.columns == 6);
    CHECK(spec.top_minus.columns == std::vector<int>{5, 3, 0});
    CHECK(spec.bottom_minus.size() == 0);
    CHECK(spec.rows[0].param == 1);
    CHECK(spec.rows[2].param == 3);
    CHECK(spec.flux_valid());

    SystemSpec tiny = build_standard_system(Partition({0}), 1, RowType::Gamma, 1);
    CHECK(tiny.columns == 1);
    CHECK(tiny.top_minus.columns == std::vector<int>{0});

    // hybrid row types keep per-row parameters
    SystemSpec hybrid =
        build_standard_system(Partition({1, 0}), 2, {RowType::Gamma, RowType::Delta}, 1);
    CHECK(hybrid.rows[1].type == RowType::Delta);
    CHECK(hybrid.rows[1].param == 2);
}

TEST_CASE("two-row construction enforces flux", "[lattice]") {
    SystemSpec gd = build_two_row(ColumnSet({4, 2, 1}), ColumnSet({4}), TwoRowOrder::GammaDelta, 2);
    CHECK(gd.columns == 5);
    CHECK(gd.rows[0].type == RowType::Gamma);
    CHECK(gd.rows[0].param == 1);
    SystemSpec dg = build_two_row(ColumnSet({4, 2, 1}), ColumnSet({4}), TwoRowOrder::DeltaGamma, 2);
    CHECK(dg.rows[0].type == RowType::Delta);
    CHECK(dg.rows[0].param == 2);

    CHECK_THROWS_AS(build_two_row(ColumnSet({1, 0}), ColumnSet({2}), TwoRowOrder::GammaDelta, 1),
                    ContractViolation);
    CHECK_THROWS_WITH(build_two_row(ColumnSet({1, 0}), ColumnSet({2}), TwoRowOrder::GammaDelta, 1),
                      Catch::Matchers::ContainsSubstring("flux"));
}

TEST_CASE("enumeration basics", "[lattice]") {
    SECTION("smallest system has one state") {
        auto states = enumerate_admissible(build_standard_system(Partition({0}), 1, RowType::Gamma, 1));
        REQUIRE(states.size() == 1);
    }
    SECTION("flux-violating spec yields an empty stream") {
        SystemSpec bad;
        bad.columns = 3;
        bad.rows = {RowSpec{RowType::Gamma, 1}};
        bad.n = 1;
        CHECK(enumerate_admissible(bad).empty());
    }
    SECTION("enumeration is deterministic") {
        SystemSpec spec = build_standard_system(Partition({2, 0}), 2, RowType::Gamma, 2);
        auto a = enumerate_admissible(spec);
        auto b = enumerate_admissible(spec);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].spins.horiz == b[i].spins.horiz);
            CHECK(a[i].charges == b[i].charges);
        }
    }
}

TEST_CASE("charge derivation", "[lattice]") {
    SECTION("all-Minus Gamma row has zero charges") {
        std::vector<Spin> h(5, Spin::Minus);
        auto ch = row_charges(RowType::Gamma, h, 3);
        CHECK(ch == std::vector<int>(5, 0));
    }
    SECTION("all-Plus Gamma row counts every edge") {
        const int M = 4;
        std::vector<Spin> h(M + 1, Spin::Plus);
        auto ch = row_charges(RowType::Gamma, h, 3);
        CHECK(ch[0] == (M + 1) % 3);
        CHECK(ch[M] == 1);
    }
    SECTION("Gamma right boundary and Delta left boundary carry charge 0") {
        std::vector<Spin> h = {Spin::Plus, Spin::Minus, Spin::Plus, Spin::Minus};
        CHECK(row_charges(RowType::Gamma, h, 2).back() == 0);
        CHECK(row_charges(RowType::Delta, h, 2).front() == 0);
    }
    SECTION("re-derivation is a pure function of the spins") {
        SystemSpec spec = build_standard_system(Partition({2, 1}), 2, RowType::Delta, 3);
        for (const auto& st : enumerate_admissible(spec)) {
            ChargedState again = derive_charges(st.spins, spec.rows, spec.n);
            CHECK(again.charges == st.charges);
        }
    }
}

TEST_CASE("single-row flux property", "[lattice][property]") {
    // Any admissible single row (left +, right -) has exactly one more Minus
    // on its top edges than on its bottom edges.
    for (RowType t : {RowType::Gamma, RowType::Delta}) {
        for (int M = 1; M <= 6; ++M) {
            long states = 0;
            for (int top = 0; top < (1 << M); ++top) {
                for (int bottom = 0; bottom < (1 << M); ++bottom) {
                    SystemSpec spec;
                    spec.columns = M;
                    spec.rows = {RowSpec{t, 1}};
                    spec.n = 2;
                    std::vector<int> top_cols, bottom_cols;
                    for (int p = M - 1; p >= 0; --p) {
                        if ((top >> p) & 1) top_cols.push_back(M - 1 - p);
                        if ((bottom >> p) & 1) bottom_cols.push_back(M - 1 - p);
                    }
                    spec.top_minus = ColumnSet(top_cols);
                    spec.bottom_minus = ColumnSet(bottom_cols);
                    long found = 0;
                    enumerate_admissible(spec, [&](const ChargedState&) { ++found; });
                    states += found;
                    if (found > 0)
                        CHECK(__builtin_popcount(top) == __builtin_popcount(bottom) + 1);
                }
            }
            CHECK(states > 0);
        }
    }
}

TEST_CASE("row above the bottom boundary has exactly one Minus", "[lattice][property]") {
    for (int r = 1; r <= 3; ++r) {
        for (int l1 = 0; l1 <= 3; ++l1) {
            std::vector<std::vector<int>> lambdas;
            std::function<void(std::vector<int>&)> gen = [&](std::vector<int>& cur) {
                if (static_cast<int>(cur.size()) == r) {
                    lambdas.push_back(cur);
                    return;
                }
                int hi = cur.empty() ? l1 : cur.back();
                for (int x = hi; x >= 0; --x) {
                    cur.push_back(x);
                    gen(cur);
                    cur.pop_back();
                }
            };
            std::vector<int> cur = {l1};
            if (r == 1) {
                lambdas.push_back(cur);
            } else {
                gen(cur);
            }
            for (const auto& lam : lambdas) {
                SystemSpec spec = build_standard_system(Partition(lam), r, RowType::Gamma, 2);
                enumerate_admissible(spec, [&](const ChargedState& st) {
                    int minus = 0;
                    for (Spin s : st.spins.vert[r - 1])
                        if (s == Spin::Minus) ++minus;
                    CHECK(minus == 1);
                });
            }
        }
    }
}
