#ifndef CPNILP_ROOTS_HPP
#define CPNILP_ROOTS_HPP

#include <optional>

#include "cpnilp/nilpotency.hpp"

namespace cpnilp {

/// Candidate p-th root of the pure state X -> <u, Xu> I: a unital CP map
/// tau with tau^p(X) = <u, Xu> I. tau is carried natively as a
/// superoperator; a Kraus form is optional.
struct RootCandidate {
    Superoperator tau;
    std::optional<KrausMap> tau_kraus;
    Vec u;
    int order_claim = 1;
};

enum class RootFailure { none, not_cp, not_unital, power_mismatch };

/// Choi matrix of a map given only as a superoperator.
ChoiMatrix choi_of_superoperator(const Superoperator& S);

Mat superoperator_apply(const Superoperator& S, const Mat& X);

/// Checks CP (Choi PSD), unitality, and tau^p(E_ij) = conj(u_i) u_j I on
/// all matrix units. On failure the reason is reported through `reason`.
bool is_root_of_state(const RootCandidate& r, const Tolerance& tol,
                      RootFailure* reason = nullptr);

/// Deterministic unitary (Householder-based) whose first column is u; the
/// remaining columns form the basis of H_0 = u^⊥ used by the compression.
Mat householder_completion(const Vec& u, const Tolerance& tol);

/// Compression of a root to B(H_0); nilpotent of order at most p.
KrausMap compress_to_nilpotent(const RootCandidate& r, const Tolerance& tol);

/// Builds the p-th root tau on C^(1+m) of the pure state at u = e_1 from
/// a contractive nilpotent alpha:
///   tau([[X11, X12], [X21, X22]]) = [[X11, 0], [0, alpha(X22) + X11 (I - alpha(I))]].
RootCandidate build_root(const KrausMap& alpha, const Tolerance& tol);

/// tau^k matches [[X11, 0], [0, alpha^k(X22) + X11 (I - alpha^k(I))]] on
/// all matrix units.
bool check_power_formula(const KrausMap& alpha, int k, const Tolerance& tol);

}  // namespace cpnilp

#endif
