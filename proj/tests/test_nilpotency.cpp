#include <doctest.h>

#include "cpnilp/ensemble.hpp"
#include "cpnilp/nilpotency.hpp"

using namespace cpnilp;

namespace {

const Tolerance tol;

Mat unit_matrix(int n, int i, int j) {
    Mat E = Mat::Zero(n, n);
    E(i, j) = 1.0;
    return E;
}

KrausMap shift_map() { return KrausMap{2, {unit_matrix(2, 0, 1)}}; }

// n = 3, Kraus {E_12, E_13}: CP nilpotent type (1,2), adjoint type (2,1).
KrausMap one_two_map() {
    return KrausMap{3, {unit_matrix(3, 0, 1), unit_matrix(3, 0, 2)}};
}

// n = 4, Kraus {E_23, E_14 + E_34}: nilpotent of order 3 whose flag and
// adjoint-flag projections fail to commute.
KrausMap skew_flags_map() {
    Mat L2 = unit_matrix(4, 0, 3);
    L2(2, 3) = 1.0;
    return KrausMap{4, {unit_matrix(4, 1, 2), L2}};
}

}  // namespace

TEST_CASE("nilpotency_order") {
    CHECK(nilpotency_order(shift_map(), tol) == 2);
    CHECK(nilpotency_order(one_two_map(), tol) == 2);
    CHECK(nilpotency_order(skew_flags_map(), tol) == 3);
    CHECK(nilpotency_order(KrausMap::zero(3), tol) == 1);
    CHECK_FALSE(nilpotency_order(KrausMap::identity_channel(2), tol).has_value());

    // order p demands a chain of length p: the full shift on C^4
    Mat J = Mat::Zero(4, 4);
    J(0, 1) = J(1, 2) = J(2, 3) = 1.0;
    CHECK(nilpotency_order(KrausMap{4, {J}}, tol) == 4);
}

TEST_CASE("flag of the shift") {
    const FlagDecomposition f = flag(shift_map(), tol);
    REQUIRE(f.order() == 2);
    CHECK(f.subspaces[0].dim() == 1);
    CHECK(f.subspaces[1].dim() == 1);
    CHECK(std::abs(f.subspaces[0].basis(0, 0)) == doctest::Approx(1.0));  // H_1 = span{e_1}
    CHECK(std::abs(f.subspaces[1].basis(1, 0)) == doctest::Approx(1.0));  // H_2 = span{e_2}
    // projections resolve the identity
    Mat sum = Mat::Zero(2, 2);
    for (const Mat& P : f.projections) sum += P;
    CHECK((sum - Mat::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("cp_type fixtures") {
    CHECK(cp_type(shift_map(), tol).entries == std::vector<int>{1, 1});
    CHECK(cp_type(one_two_map(), tol).entries == std::vector<int>{1, 2});
    CHECK(cp_type(skew_flags_map(), tol).entries == std::vector<int>{2, 1, 1});
    CHECK(cp_type(KrausMap::zero(3), tol).entries == std::vector<int>{3});
    CHECK_THROWS_AS(cp_type(KrausMap::identity_channel(2), tol), NotNilpotent);
}

TEST_CASE("check_basic_inequalities") {
    CHECK(check_basic_inequalities(CPNilpotentType{{1, 2}, 3}, 2));
    CHECK_FALSE(check_basic_inequalities(CPNilpotentType{{1, 2}, 3}, 1));
    CHECK(check_basic_inequalities(CPNilpotentType{{1, 1, 1}, 3}, 1));
    CHECK_FALSE(check_basic_inequalities(CPNilpotentType{{1, 3}, 4}, 2));
    CHECK_FALSE(check_basic_inequalities(CPNilpotentType{{1, 0, 1}, 2}, 2));  // zero entry
}

TEST_CASE("synthesize hits the requested type") {
    const CPNilpotentType t{{1, 2}, 3};
    const KrausMap m = synthesize(t, 2);
    CHECK(m.d() == 2);
    CHECK(cp_type(m, tol).entries == t.entries);
    CHECK(adjoint_type(m, tol).entries == std::vector<int>{2, 1});
    CHECK(index(m, tol) == 2);

    CHECK_THROWS_AS(synthesize(CPNilpotentType{{1, 2}, 3}, 1), InvalidType);
}

TEST_CASE("synthesize round trip over all small types") {
    for (int n = 1; n <= 5; ++n) {
        for (const std::vector<int>& parts : compositions(n)) {
            const CPNilpotentType t{parts, n};
            for (int d = 1; d <= 3; ++d) {
                if (!check_basic_inequalities(t, d)) continue;
                const KrausMap m = synthesize(t, d);
                CHECK(cp_type(m, tol).entries == parts);
            }
        }
    }
}

TEST_CASE("cp_type is unitarily invariant") {
    Rng rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        const CPNilpotentType t = random_valid_type(4, 2, rng);
        const KrausMap m = conjugate_by_unitary(synthesize(t, 2), random_unitary(4, rng));
        CHECK(cp_type(m, tol).entries == t.entries);
    }
}

TEST_CASE("order of the adjoint equals the order") {
    Rng rng(103);
    for (int trial = 0; trial < 8; ++trial) {
        const CPNilpotentType t = random_valid_type(5, 3, rng);
        const KrausMap m = conjugate_by_unitary(synthesize(t, 3), random_unitary(5, rng));
        const CPNilpotentType adj = adjoint_type(m, tol);
        CHECK(adj.order() == t.order());
        CHECK(check_theorem_2_7(cp_type(m, tol), adj));
    }
}

TEST_CASE("check_theorem_2_7 fixtures") {
    CHECK(check_theorem_2_7(CPNilpotentType{{1, 2}, 3}, CPNilpotentType{{2, 1}, 3}));
    CHECK(check_theorem_2_7(CPNilpotentType{{1, 1}, 2}, CPNilpotentType{{1, 1}, 2}));
    // suffix sum 2 of (1,2) exceeds prefix sum 1 of (1,2)
    CHECK_FALSE(check_theorem_2_7(CPNilpotentType{{1, 2}, 3}, CPNilpotentType{{1, 2}, 3}));
    // totals differ
    CHECK_FALSE(check_theorem_2_7(CPNilpotentType{{1, 1}, 2}, CPNilpotentType{{2, 1}, 3}));
}

TEST_CASE("check_block_triangular") {
    for (const KrausMap& m : {shift_map(), one_two_map(), skew_flags_map()})
        CHECK(check_block_triangular(m, flag(m, tol), tol));

    // a flag that is wrong for the map fails the containments
    const KrausMap corner{3, {unit_matrix(3, 0, 2)}};  // flag ({e1,e2}, {e3})
    CHECK_FALSE(check_block_triangular(one_two_map(), flag(corner, tol), tol));
}

TEST_CASE("commuting_flags_report on the (1,2) instance") {
    const auto report = commuting_flags_report(one_two_map(), tol);
    REQUIRE(report.has_value());
    const std::vector<std::vector<int>> expected{{0, 2}, {1, 0}};
    CHECK(*report == expected);
}

TEST_CASE("commuting_flags_report absent when projections do not commute") {
    CHECK_FALSE(commuting_flags_report(skew_flags_map(), tol).has_value());
}

TEST_CASE("commuting_flags_report marginals") {
    Rng rng(107);
    for (int trial = 0; trial < 6; ++trial) {
        const CPNilpotentType t = random_valid_type(4, 2, rng);
        const KrausMap m = synthesize(t, 2);  // coordinate flags: always commuting
        const auto report = commuting_flags_report(m, tol);
        REQUIRE(report.has_value());
        const CPNilpotentType adj = adjoint_type(m, tol);
        const int p = t.order();
        for (int i = 0; i < p; ++i) {
            int row = 0, col = 0;
            for (int j = 0; j < p; ++j) {
                row += (*report)[i][j];
                col += (*report)[j][i];
                if (i + j + 2 > p + 1) CHECK((*report)[i][j] == 0);
            }
            CHECK(row == adj.entries[i]);
            CHECK(col == t.entries[i]);
        }
    }
}

TEST_CASE("linear_nilpotent_type fixtures") {
    CHECK(linear_nilpotent_type(shift_map(), tol).entries == std::vector<int>{3, 1});
    CHECK(linear_nilpotent_type(one_two_map(), tol).entries == std::vector<int>{8, 1});
    CHECK(linear_nilpotent_type(KrausMap::zero(2), tol).entries == std::vector<int>{4});
    CHECK_THROWS_AS(linear_nilpotent_type(KrausMap::identity_channel(2), tol), NotNilpotent);
}

TEST_CASE("check_l_lower_bound") {
    // shift: l = (3,1), a_adj = (1,1): k=1 gives 3 >= 1 + 2*1*1 = 3
    CHECK(check_l_lower_bound(LinearNilpotentType{{3, 1}, 2}, CPNilpotentType{{1, 1}, 2}));
    // (1,2) instance: l = (8,1), a_adj = (2,1): k=1 gives 8 >= 4 + 2*2*1 = 8
    CHECK(check_l_lower_bound(LinearNilpotentType{{8, 1}, 3}, CPNilpotentType{{2, 1}, 3}));
    // violating l
    CHECK_FALSE(check_l_lower_bound(LinearNilpotentType{{7, 2}, 3}, CPNilpotentType{{2, 1}, 3}));
}

TEST_CASE("l lower bound holds on random synthesized instances") {
    Rng rng(109);
    for (int trial = 0; trial < 6; ++trial) {
        const CPNilpotentType t = random_valid_type(4, 2, rng);
        const KrausMap m = conjugate_by_unitary(synthesize(t, 2), random_unitary(4, rng));
        CHECK(check_l_lower_bound(linear_nilpotent_type(m, tol), adjoint_type(m, tol)));
    }
}
