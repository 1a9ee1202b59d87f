#ifndef CPNILP_CPMAP_HPP
#define CPNILP_CPMAP_HPP

#include <vector>

#include "cpnilp/numerics.hpp"
#include "cpnilp/types.hpp"

namespace cpnilp {

/// CP map on B(C^dim) given by an ordered Kraus list:
///   alpha(X) = sum_i  L_i^* X L_i.
/// Any Kraus list yields a CP map. The zero map is {0_{n x n}}, never an
/// empty list.
struct KrausMap {
    int dim = 0;
    std::vector<Mat> kraus;

    int d() const { return static_cast<int>(kraus.size()); }

    static KrausMap zero(int n) { return KrausMap{n, {Mat::Zero(n, n)}}; }
    static KrausMap identity_channel(int n) { return KrausMap{n, {Mat::Identity(n, n)}}; }
};

struct ChoiMatrix {
    int n = 0;
    Mat matrix;  // n^2 x n^2
};

/// Matrix of X -> alpha(X) under column-stacking vectorization:
/// vec(alpha(X)) = matrix * vec(X).
struct Superoperator {
    int n = 0;
    Mat matrix;  // n^2 x n^2
};

// Column-stacking vectorization helpers.
Vec vectorize(const Mat& X);
Mat unvectorize(const Vec& v, int rows, int cols);
Mat kron(const Mat& A, const Mat& B);

Mat apply(const KrausMap& alpha, const Mat& X);
Mat power_apply(const KrausMap& alpha, int k, const Mat& X);

ChoiMatrix to_choi(const KrausMap& alpha);

/// Eigendecomposition of C; eigenpairs above max(atol, rtol*lambda_max)
/// become Kraus operators sqrt(lambda)*unvec(v)^*, with the first nonzero
/// eigenvector component made real positive. Throws NotPSD / IllConditioned.
KrausMap from_choi(const ChoiMatrix& C, const Tolerance& tol);

/// Dimension of the metric operator space span{L_i}.
int index(const KrausMap& alpha, const Tolerance& tol);

/// Equivalent map with linearly independent Kraus coefficients
/// (via from_choi(to_choi(alpha))).
KrausMap reduce_kraus(const KrausMap& alpha, const Tolerance& tol);

/// The conjugate map alpha^*(.) = sum_i L_i (.) L_i^*, i.e. Kraus {L_i^*}.
KrausMap conjugate(const KrausMap& alpha);

Superoperator to_superoperator(const KrausMap& alpha);

Subspace unit_kernel(const KrausMap& alpha, const Tolerance& tol);   // ker alpha(1)
Subspace unit_range(const KrausMap& alpha, const Tolerance& tol);    // ran alpha(1)
Subspace annihilated_vectors(const KrausMap& alpha, const Tolerance& tol);  // ∩ ker L_i^*

}  // namespace cpnilp

#endif
