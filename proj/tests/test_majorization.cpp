#include <doctest.h>

#include <algorithm>

#include "cpnilp/ensemble.hpp"
#include "cpnilp/majorization.hpp"

using namespace cpnilp;

namespace {

const Tolerance tol;

bool same_vector(const MajorizationVector& a, const MajorizationVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    return true;
}

}  // namespace

TEST_CASE("is_invariant and split on a coordinate instance") {
    // n = 3, L = E_12 + E_23
    Mat L = Mat::Zero(3, 3);
    L(0, 1) = 1.0;
    L(1, 2) = 1.0;
    const KrausMap m{3, {L}};

    // M = span{e_2, e_3}: N = span{e_1} and L e_1 = 0 stays in N
    Subspace M{3, Mat::Identity(3, 3).rightCols(2)};
    CHECK(is_invariant(m, M, tol));

    // M = span{e_2} is not invariant: N = span{e_1, e_3}, L e_3 = e_2 ∉ N
    Subspace M2{3, Mat::Identity(3, 3).middleCols(1, 1)};
    CHECK_FALSE(is_invariant(m, M2, tol));

    const InvariantSplit s = split(m, M, tol);
    CHECK(s.M.dim() == 2);
    CHECK(s.N.dim() == 1);
    REQUIRE(s.B.size() == 1);
    CHECK(s.C[0].norm() < 1e-12);  // L vanishes on N = span{e_1}
}

TEST_CASE("split rejects non-invariant subspaces") {
    Mat L = Mat::Zero(3, 3);
    L(0, 1) = 1.0;
    L(1, 2) = 1.0;
    Subspace M2{3, Mat::Identity(3, 3).middleCols(1, 1)};
    CHECK_THROWS_AS(split(KrausMap{3, {L}}, M2, tol), NotInvariant);
}

TEST_CASE("compress yields nilpotent pieces whose types majorize") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        const auto [m, M] = random_invariant_instance(5, 2, 2, seed);
        REQUIRE(is_invariant(m, M, tol));
        REQUIRE(nilpotency_order(m, tol).has_value());

        const InvariantSplit s = split(m, M, tol);
        const auto [beta, gamma] = compress(s);
        CHECK(beta.dim == 2);
        CHECK(gamma.dim == 3);

        const CPNilpotentType a = cp_type(m, tol);
        CPNilpotentType b = cp_type(beta, tol);
        CPNilpotentType c = cp_type(gamma, tol);
        b.entries.resize(a.order(), 0);
        c.entries.resize(a.order(), 0);
        CHECK(check_theorem_3_1(a, b, c));
    }
}

TEST_CASE("check_theorem_3_1 fixtures") {
    CHECK(check_theorem_3_1(CPNilpotentType{{1, 2}, 3}, CPNilpotentType{{2, 0}, 2},
                            CPNilpotentType{{1, 0}, 1}));
    // prefix 3 of a exceeds b_1 + c_1 = 2 even though totals agree
    CHECK_FALSE(check_theorem_3_1(CPNilpotentType{{3, 1}, 4}, CPNilpotentType{{1, 1}, 2},
                                  CPNilpotentType{{1, 1}, 2}));
    // totals differ
    CHECK_FALSE(check_theorem_3_1(CPNilpotentType{{1, 2}, 3}, CPNilpotentType{{2, 0}, 2},
                                  CPNilpotentType{{2, 0}, 2}));
}

TEST_CASE("cone_membership") {
    const MajorizationVector x{1, 1, 1};
    CHECK(cone_membership(x, {1, 1, 1}));
    CHECK(cone_membership(x, {0, 0, 3}));
    CHECK(cone_membership(x, {0.5, 1.5, 1}));
    CHECK_FALSE(cone_membership(x, {2, 0, 1}));     // prefix sum exceeded
    CHECK_FALSE(cone_membership(x, {1, -1, 3}));    // negative entry
    CHECK_FALSE(cone_membership(x, {1, 1, 0.5}));   // total mismatch
    CHECK_THROWS_AS(cone_membership(x, {1, 2}), LengthMismatch);
}

TEST_CASE("extreme_points of (1,1,1)") {
    const auto pts = extreme_points({1, 1, 1});
    REQUIRE(pts.size() == 4);
    const std::vector<MajorizationVector> expected{
        {0, 0, 3}, {1, 0, 2}, {0, 2, 1}, {1, 1, 1}};
    for (const auto& e : expected) {
        CHECK(std::any_of(pts.begin(), pts.end(),
                          [&](const MajorizationVector& p) { return same_vector(p, e); }));
    }
    for (const auto& p : pts) CHECK(cone_membership({1, 1, 1}, p));
}

TEST_CASE("extreme point count is 2^(n-1) with distinct generic entries") {
    const auto pts = extreme_points({3, 2, 1, 0.5});
    CHECK(pts.size() == 8);
    for (const auto& p : pts) {
        CHECK(cone_membership({3, 2, 1, 0.5}, p));
        CHECK(verify_extreme({3, 2, 1, 0.5}, p));
    }
}

TEST_CASE("verify_extreme") {
    const MajorizationVector x{1, 1, 1};
    for (const auto& p : extreme_points(x)) CHECK(verify_extreme(x, p));
    CHECK_FALSE(verify_extreme(x, {0.5, 1.5, 1}));  // midpoint of two extreme points
    CHECK_FALSE(verify_extreme(x, {0.5, 0.5, 2}));
    CHECK_THROWS_AS(verify_extreme(x, {2, 0, 1}), NotInCone);
}

TEST_CASE("convex combinations of extreme points stay in the cone") {
    const MajorizationVector x{2, 1, 1};
    const auto pts = extreme_points(x);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            MajorizationVector mid(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) mid[k] = 0.5 * (pts[i][k] + pts[j][k]);
            CHECK(cone_membership(x, mid));
            if (!same_vector(pts[i], pts[j])) CHECK_FALSE(verify_extreme(x, mid));
        }
    }
}
