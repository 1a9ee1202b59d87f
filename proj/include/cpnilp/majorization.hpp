#ifndef CPNILP_MAJORIZATION_HPP
#define CPNILP_MAJORIZATION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cpnilp/nilpotency.hpp"

namespace cpnilp {

/// Block form of the Kraus operators with respect to an alpha-invariant
/// subspace M (N = M^⊥):  L_i = [[B_i, 0], [D_i, C_i]] in the (M, N) basis.
struct InvariantSplit {
    Subspace M;
    Subspace N;
    std::vector<Mat> B;  // on M
    std::vector<Mat> C;  // on N
    std::vector<Mat> D;  // M -> N
};

using MajorizationVector = std::vector<double>;

/// True iff every Kraus coefficient leaves N = M^⊥ invariant
/// (equivalently the top-right block vanishes in the (M, N) basis).
bool is_invariant(const KrausMap& alpha, const Subspace& M, const Tolerance& tol);

InvariantSplit split(const KrausMap& alpha, const Subspace& M, const Tolerance& tol);

/// The compressions beta(X) = sum B_i^* X B_i on M and
/// gamma(X) = sum C_i^* X C_i on N.
std::pair<KrausMap, KrausMap> compress(const InvariantSplit& s);

/// Prefix inequalities sum_{i<=k} a_i <= sum_{i<=k} b_i + sum_{i<=k} c_i
/// plus total equality; b and c must be zero-padded to the length of a.
bool check_theorem_3_1(const CPNilpotentType& a, const CPNilpotentType& b,
                       const CPNilpotentType& c);

/// Deterministic (per seed) nilpotent map together with an invariant
/// subspace spanned by coordinates, for exercising the majorization
/// theorem. Invariance holds exactly in floating point.
std::pair<KrausMap, Subspace> random_invariant_instance(int n, int dimM, int d,
                                                        std::uint64_t seed);

/// y in C(x): y >= 0 entrywise, prefix sums of y bounded by those of x,
/// totals equal (no sorting anywhere).
bool cone_membership(const MajorizationVector& x, const MajorizationVector& y,
                     const Tolerance& tol = Tolerance{});

/// The 2^(n-1) extreme points of C(x): each position 1..n-1 either forces
/// y_i = 0 or forces prefix equality with x.
std::vector<MajorizationVector> extreme_points(const MajorizationVector& x);

/// Perturbation oracle: y is extreme iff no coordinate-pair transfer
/// +/- eps stays inside C(x) on both sides.
bool verify_extreme(const MajorizationVector& x, const MajorizationVector& y,
                    const Tolerance& tol = Tolerance{});

}  // namespace cpnilp

#endif
