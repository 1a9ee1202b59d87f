#ifndef CPNILP_NUMERICS_HPP
#define CPNILP_NUMERICS_HPP

#include <vector>

#include "cpnilp/types.hpp"

namespace cpnilp {

/// Orthonormal-basis representation of a subspace of C^ambient_dim.
/// dim() is the certified integer dimension.
struct Subspace {
    int ambient_dim = 0;
    Mat basis;  // ambient_dim x dim, orthonormal columns

    int dim() const { return static_cast<int>(basis.cols()); }
    Mat projection() const { return basis * basis.adjoint(); }

    static Subspace trivial(int ambient) { return Subspace{ambient, Mat::Zero(ambient, 0)}; }
    static Subspace full(int ambient) { return Subspace{ambient, Mat::Identity(ambient, ambient)}; }
};

/// Numerical rank of a descending singular-value list at cutoff
/// max(atol, rtol*sigma_max). Throws IllConditioned if the gap between
/// kept and dropped values is below tol.gap_ratio.
int certified_rank(const RealVec& singular_values_desc, const Tolerance& tol);

/// Orthonormal basis of the numerical null space of A.
Subspace kernel(const Mat& A, const Tolerance& tol);

/// Orthonormal basis of the numerical column space of A.
Subspace range(const Mat& A, const Tolerance& tol);

/// Intersection of the kernels of all matrices (they must share column
/// counts); kernel of the vertical stack.
Subspace common_kernel(const std::vector<Mat>& As, const Tolerance& tol);

/// S ∩ T (both in the same ambient space).
Subspace intersect(const Subspace& S, const Subspace& T, const Tolerance& tol);

/// S ∩ T^⊥.
Subspace intersect_with_complement(const Subspace& S, const Subspace& T, const Tolerance& tol);

/// True iff A is Hermitian within atol and its minimum eigenvalue is
/// >= -atol * max(1, sigma_max). Non-Hermitian input returns false.
bool is_psd(const Mat& A, const Tolerance& tol);

/// Frobenius norm of (I - P_S) * basis_T; zero iff T ⊆ S.
double containment_residual(const Subspace& T, const Subspace& S);

}  // namespace cpnilp

#endif
