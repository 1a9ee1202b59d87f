#include "cpnilp/roots.hpp"

#include <cmath>

namespace cpnilp {

namespace {

Mat unit_matrix(int n, int i, int j) {
    Mat E = Mat::Zero(n, n);
    E(i, j) = 1.0;
    return E;
}

}  // namespace

Mat superoperator_apply(const Superoperator& S, const Mat& X) {
    if (X.rows() != S.n || X.cols() != S.n)
        throw DimensionMismatch("superoperator_apply: X must be n x n");
    return unvectorize(S.matrix * vectorize(X), S.n, S.n);
}

ChoiMatrix choi_of_superoperator(const Superoperator& S) {
    const int n = S.n;
    Mat C(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            C.block(i * n, j * n, n, n) = superoperator_apply(S, unit_matrix(n, i, j));
    return ChoiMatrix{n, C};
}

bool is_root_of_state(const RootCandidate& r, const Tolerance& tol, RootFailure* reason) {
    const int n = r.tau.n;
    const Mat I = Mat::Identity(n, n);
    auto fail = [&](RootFailure why) {
        if (reason) *reason = why;
        return false;
    };
    if (reason) *reason = RootFailure::none;

    if (!is_psd(choi_of_superoperator(r.tau).matrix, tol)) return fail(RootFailure::not_cp);
    if ((superoperator_apply(r.tau, I) - I).norm() > tol.atol * n)
        return fail(RootFailure::not_unital);

    Mat Tp = Mat::Identity(n * n, n * n);
    for (int k = 0; k < r.order_claim; ++k) Tp = r.tau.matrix * Tp;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mat got = unvectorize(Tp * vectorize(unit_matrix(n, i, j)), n, n);
            const Mat want = std::conj(r.u(i)) * r.u(j) * I;
            if ((got - want).norm() > tol.atol * n) return fail(RootFailure::power_mismatch);
        }
    return true;
}

Mat householder_completion(const Vec& u, const Tolerance& tol) {
    const int n = static_cast<int>(u.size());
    if (std::abs(u.norm() - 1.0) > 100 * tol.atol)
        throw InvalidArgument("householder_completion: u must be a unit vector");
    // phase-align so that <u', e_1> is real nonnegative
    Complex phase = 1.0;
    if (std::abs(u(0)) > tol.atol) phase = u(0) / std::abs(u(0));
    const Vec up = std::conj(phase) * u;

    Vec v = up;
    v(0) -= 1.0;
    Mat R = Mat::Identity(n, n);
    const double vn2 = v.squaredNorm();
    if (vn2 > tol.atol * tol.atol) R -= (2.0 / vn2) * (v * v.adjoint());
    return phase * R;  // unitary with first column u
}

KrausMap compress_to_nilpotent(const RootCandidate& r, const Tolerance& tol) {
    RootFailure why = RootFailure::none;
    if (!is_root_of_state(r, tol, &why))
        throw NotARoot("compress_to_nilpotent: candidate is not a root of the state");
    const int n = r.tau.n;
    const Mat U = householder_completion(r.u, tol);
    const Mat V = U.rightCols(n - 1);  // isometry onto H_0

    if (r.tau_kraus) {
        KrausMap out{n - 1, {}};
        for (const Mat& K : r.tau_kraus->kraus) out.kraus.push_back(V.adjoint() * K * V);
        return out;
    }
    // Y -> V^* tau(V Y V^*) V as a superoperator, then a Kraus form via Choi
    const Mat embed = kron(V.conjugate(), V);          // vec(V Y V^*)
    const Mat extract = kron(V.transpose(), V.adjoint());  // vec(V^* Z V)
    Superoperator sub{n - 1, extract * r.tau.matrix * embed};
    return from_choi(choi_of_superoperator(sub), tol);
}

RootCandidate build_root(const KrausMap& alpha, const Tolerance& tol) {
    const int m = alpha.dim;
    const Mat Im = Mat::Identity(m, m);
    const Mat slack = Im - cpnilp::apply(alpha, Im);
    if (!is_psd(slack, tol)) throw NotContractive("build_root: I - alpha(I) is not positive");
    const auto p = nilpotency_order(alpha, tol);
    if (!p) throw NotNilpotent("build_root: alpha is not nilpotent");

    const int n = m + 1;
    Mat M = Mat::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat out = Mat::Zero(n, n);
            if (i == 0 && j == 0) {
                out(0, 0) = 1.0;
                out.block(1, 1, m, m) = slack;
            } else if (i > 0 && j > 0) {
                out.block(1, 1, m, m) = cpnilp::apply(alpha, unit_matrix(m, i - 1, j - 1));
            }
            // off-corner units map to zero
            M.col(j * n + i) = vectorize(out);
        }

    RootCandidate r;
    r.tau = Superoperator{n, M};
    r.u = Vec::Zero(n);
    r.u(0) = 1.0;
    r.order_claim = *p;
    return r;
}

bool check_power_formula(const KrausMap& alpha, int k, const Tolerance& tol) {
    if (k < 1) throw InvalidArgument("check_power_formula: k must be >= 1");
    const RootCandidate r = build_root(alpha, tol);
    const int m = alpha.dim;
    const int n = m + 1;
    const Mat Im = Mat::Identity(m, m);
    const Mat slack_k = Im - power_apply(alpha, k, Im);

    Mat Tk = Mat::Identity(n * n, n * n);
    for (int i = 0; i < k; ++i) Tk = r.tau.matrix * Tk;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Mat got = unvectorize(Tk * vectorize(unit_matrix(n, i, j)), n, n);
            Mat want = Mat::Zero(n, n);
            if (i == 0 && j == 0) {
                want(0, 0) = 1.0;
                want.block(1, 1, m, m) = slack_k;
            } else if (i > 0 && j > 0) {
                want.block(1, 1, m, m) = power_apply(alpha, k, unit_matrix(m, i - 1, j - 1));
            }
            if ((got - want).norm() > tol.atol * n) return false;
        }
    return true;
}

}  // namespace cpnilp
