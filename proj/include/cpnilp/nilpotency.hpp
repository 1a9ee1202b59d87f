#ifndef CPNILP_NILPOTENCY_HPP
#define CPNILP_NILPOTENCY_HPP

#include <optional>
#include <vector>

#include "cpnilp/cpmap.hpp"

namespace cpnilp {

/// (a_1,...,a_p) with sum = n. Entries are dimensions of the flag
/// components; trailing zeros appear only in padded compression tuples.
struct CPNilpotentType {
    std::vector<int> entries;
    int n = 0;

    int order() const { return static_cast<int>(entries.size()); }
    bool operator==(const CPNilpotentType&) const = default;
};

/// Ordered orthogonal decomposition H = H_1 ⊕ ... ⊕ H_p where
/// H_k = ker(alpha^k(1)) ∩ ker(alpha^{k-1}(1))^⊥.
struct FlagDecomposition {
    std::vector<Subspace> subspaces;
    std::vector<Mat> projections;

    int order() const { return static_cast<int>(subspaces.size()); }
};

/// Nilpotent type (l_1 >= ... >= l_p, sum = n^2) of alpha viewed as a
/// linear operator on the n^2-dimensional space B(H).
struct LinearNilpotentType {
    std::vector<int> entries;
    int n = 0;
};

/// Least p with alpha^p(1) = 0, searched up to p = n; absent when alpha
/// is not nilpotent. Zero tests use the Frobenius norm scaled by
/// ||alpha(1)||; values in the ambiguous band raise IllConditioned.
std::optional<int> nilpotency_order(const KrausMap& alpha, const Tolerance& tol);

FlagDecomposition flag(const KrausMap& alpha, const Tolerance& tol);

CPNilpotentType cp_type(const KrausMap& alpha, const Tolerance& tol);

/// a_{i+1} <= d * a_i for all i, with all entries positive.
bool check_basic_inequalities(const CPNilpotentType& t, int d);

/// Builds a nilpotent CP map with d Kraus operators whose CP nilpotent
/// type is exactly t. H is split into consecutive coordinate blocks; the
/// a_{i+1} target vectors of block i+1 are distributed round-robin among
/// the d maps M_k : H_i -> H_{i+1}, and L_k|_{H_{i+1}} = M_k^*.
KrausMap synthesize(const CPNilpotentType& t, int d);

/// cp_type of the conjugate map.
CPNilpotentType adjoint_type(const KrausMap& alpha, const Tolerance& tol);

/// Suffix sums of a bounded by prefix sums of a_adj, equal totals.
bool check_theorem_2_7(const CPNilpotentType& a, const CPNilpotentType& a_adj);

/// L_k(H_{i+1}) ⊆ H_1 ⊕ ... ⊕ H_i for every k and i (with L_k(H_1) = 0).
bool check_block_triangular(const KrausMap& alpha, const FlagDecomposition& f,
                            const Tolerance& tol);

/// When the projections onto the H^i (adjoint flag) and H_j all commute,
/// the p x p matrix m_ij = dim(H^i ∩ H_j); absent otherwise. Row sums are
/// the adjoint type, column sums the type, and m_ij = 0 for i+j > p+1.
std::optional<std::vector<std::vector<int>>> commuting_flags_report(const KrausMap& alpha,
                                                                   const Tolerance& tol);

LinearNilpotentType linear_nilpotent_type(const KrausMap& alpha, const Tolerance& tol);

/// sum_{i<=k} l_i >= (sum_{i<=k} a^i)^2 + 2 (sum_{i<=k} a^i)(sum_{i>k} a^i)
/// for every k (the second sum runs to the order p).
bool check_l_lower_bound(const LinearNilpotentType& l, const CPNilpotentType& a_adj);

}  // namespace cpnilp

#endif
