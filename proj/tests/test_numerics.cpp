#include <doctest.h>

#include <random>

#include "cpnilp/numerics.hpp"

using namespace cpnilp;

namespace {

const Tolerance tol;

Mat shift2() {
    Mat L = Mat::Zero(2, 2);
    L(0, 1) = 1.0;
    return L;
}

Mat random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat A(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) A(r, c) = Complex(g(rng), g(rng));
    return A;
}

}  // namespace

TEST_CASE("kernel: zero, identity, shift") {
    CHECK(kernel(Mat::Zero(3, 3), tol).dim() == 3);
    CHECK(kernel(Mat::Identity(4, 4), tol).dim() == 0);

    const Subspace k = kernel(shift2(), tol);
    REQUIRE(k.dim() == 1);
    CHECK(std::abs(k.basis(0, 0)) == doctest::Approx(1.0));  // span{e_1}
    CHECK(std::abs(k.basis(1, 0)) < 1e-12);
}

TEST_CASE("range: zero, identity, shift") {
    CHECK(range(Mat::Zero(2, 2), tol).dim() == 0);
    CHECK(range(Mat::Identity(3, 3), tol).dim() == 3);

    const Subspace r = range(shift2(), tol);
    REQUIRE(r.dim() == 1);
    CHECK(std::abs(r.basis(0, 0)) == doctest::Approx(1.0));  // image of shift is e_1
}

TEST_CASE("common_kernel") {
    CHECK(common_kernel({Mat::Identity(2, 2)}, tol).dim() == 0);
    CHECK(common_kernel({Mat::Zero(2, 2), Mat::Zero(2, 2)}, tol).dim() == 2);

    Mat B = Mat::Zero(2, 2);
    B(1, 1) = 1.0;
    const Subspace k = common_kernel({shift2(), B}, tol);
    REQUIRE(k.dim() == 1);
    CHECK(std::abs(k.basis(0, 0)) == doctest::Approx(1.0));

    Mat wide = Mat::Zero(2, 3);
    CHECK_THROWS_AS(common_kernel({shift2(), wide}, tol), DimensionMismatch);
}

TEST_CASE("intersect_with_complement") {
    const Subspace full = Subspace::full(2);
    CHECK(intersect_with_complement(full, Subspace::trivial(2), tol).dim() == 2);

    Subspace e1{2, Mat::Identity(2, 2).leftCols(1)};
    const Subspace s = intersect_with_complement(full, e1, tol);
    REQUIRE(s.dim() == 1);
    CHECK(std::abs(s.basis(1, 0)) == doctest::Approx(1.0));  // span{e_2}

    Mat diag(2, 1);
    diag << Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0));
    CHECK(intersect_with_complement(Subspace{2, diag}, e1, tol).dim() == 0);
}

TEST_CASE("is_psd") {
    CHECK(is_psd(Mat::Identity(3, 3), tol));
    Mat neg = Mat::Identity(2, 2);
    neg(1, 1) = -1.0;
    CHECK_FALSE(is_psd(neg, tol));
    CHECK_FALSE(is_psd(shift2(), tol));  // not Hermitian
}

TEST_CASE("rank-nullity and orthonormality on random matrices") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> dims(1, 6);
        const int m = dims(rng), n = dims(rng);
        Mat A = random_complex(m, n, rng);
        // force some rank deficiency half the time
        if (trial % 2 == 0 && n > 1) A.col(n - 1) = A.col(0);

        const Subspace k = kernel(A, tol);
        const Subspace row_space = range(A.adjoint(), tol);
        CHECK(k.dim() + row_space.dim() == n);

        if (k.dim() > 0) {
            CHECK((k.basis.adjoint() * k.basis - Mat::Identity(k.dim(), k.dim())).norm() <
                  1e-10);
            CHECK((A * k.basis).norm() < 1e-8);
        }
    }
}

TEST_CASE("common_kernel is contained in each individual kernel") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Mat> As;
        for (int i = 0; i < 3; ++i) {
            Mat A = random_complex(3, 4, rng);
            A.col(0).setZero();  // shared kernel direction
            As.push_back(A);
        }
        const Subspace ck = common_kernel(As, tol);
        REQUIRE(ck.dim() >= 1);
        for (const Mat& A : As) CHECK(containment_residual(ck, kernel(A, tol)) < 1e-8);
    }
}

TEST_CASE("intersect_with_complement output is orthogonal to T and inside S") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Subspace S = range(random_complex(5, 3, rng), tol);
        const Subspace T = range(S.basis.leftCols(1), tol);  // T ⊆ S
        const Subspace W = intersect_with_complement(S, T, tol);
        CHECK(W.dim() == S.dim() - T.dim());
        CHECK((W.basis.adjoint() * T.basis).norm() < 1e-8);
        CHECK(containment_residual(W, S) < 1e-8);
    }
}

TEST_CASE("gap certificate rejects ambiguous ranks") {
    Mat A = Mat::Zero(3, 3);
    A(0, 0) = 1.0;
    A(1, 1) = 2e-8;  // kept, but only a factor 4 above the dropped value
    A(2, 2) = 5e-9;
    CHECK_THROWS_AS(kernel(A, tol), IllConditioned);
}
