#ifndef CPNILP_ENSEMBLE_HPP
#define CPNILP_ENSEMBLE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "cpnilp/nilpotency.hpp"

namespace cpnilp {

using Rng = std::mt19937_64;

/// Haar-ish random unitary via QR of a Gaussian matrix.
Mat random_unitary(int n, Rng& rng);

/// All tuples of positive integers summing to n.
std::vector<std::vector<int>> compositions(int n);

/// Uniformly random tuple (a_1,...,a_p) with sum n, all entries >= 1,
/// satisfying the basic inequalities for d (rejection sampling).
CPNilpotentType random_valid_type(int n, int d, Rng& rng);

/// synthesize(t, d) conjugated by a random unitary: alpha_U has Kraus
/// {U^* L_k U} and the same CP nilpotent type in the rotated basis.
KrausMap conjugate_by_unitary(const KrausMap& alpha, const Mat& U);

/// Random CP map with Gaussian Kraus operators; with_kernel forces a
/// nontrivial common kernel by zeroing a coordinate block.
KrausMap random_cp_map(int n, int d, Rng& rng, bool with_kernel = false);

/// Scales alpha so that alpha(I) <= I (largest eigenvalue moved to 1 when
/// it exceeds 1); preserves nilpotency and the CP type.
KrausMap make_contractive(const KrausMap& alpha);

Mat random_matrix(int n, Rng& rng);

}  // namespace cpnilp

#endif
