#include "cpnilp/cpmap.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace cpnilp {

Vec vectorize(const Mat& X) {
    return Eigen::Map<const Vec>(X.data(), X.size());
}

Mat unvectorize(const Vec& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols)
        throw DimensionMismatch("unvectorize: size mismatch");
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Mat apply(const KrausMap& alpha, const Mat& X) {
    if (X.rows() != alpha.dim || X.cols() != alpha.dim)
        throw DimensionMismatch("apply: X must be n x n");
    Mat out = Mat::Zero(alpha.dim, alpha.dim);
    for (const Mat& L : alpha.kraus) out += L.adjoint() * X * L;
    return out;
}

Mat power_apply(const KrausMap& alpha, int k, const Mat& X) {
    if (k < 0) throw InvalidArgument("power_apply: k must be >= 0");
    Mat Y = X;
    for (int i = 0; i < k; ++i) Y = cpnilp::apply(alpha, Y);
    return Y;
}

ChoiMatrix to_choi(const KrausMap& alpha) {
    const int n = alpha.dim;
    Mat C = Mat::Zero(n * n, n * n);
    // C = sum_l w_l w_l^* with block i of w_l equal to L_l^* e_i.
    for (const Mat& L : alpha.kraus) {
        Vec w(n * n);
        const Mat Ladj = L.adjoint();
        for (int i = 0; i < n; ++i) w.segment(i * n, n) = Ladj.col(i);
        C += w * w.adjoint();
    }
    return ChoiMatrix{n, C};
}

KrausMap from_choi(const ChoiMatrix& C, const Tolerance& tol) {
    const int n = C.n;
    Eigen::SelfAdjointEigenSolver<Mat> es((C.matrix + C.matrix.adjoint()) / 2.0);
    const RealVec& ev = es.eigenvalues();  // ascending
    const int m = static_cast<int>(ev.size());
    const double lmax = ev(m - 1);
    const double sigma_max = std::max(std::abs(ev(0)), std::abs(lmax));
    if (ev(0) < -tol.atol * std::max(1.0, sigma_max))
        throw NotPSD("from_choi: Choi matrix has negative eigenvalue");

    const double cutoff = std::max(tol.atol, tol.rtol * lmax);
    int first_kept = m;
    while (first_kept > 0 && ev(first_kept - 1) > cutoff) --first_kept;
    if (first_kept > 0 && first_kept < m) {
        const double kept_min = ev(first_kept);
        const double drop_max = std::max(std::abs(ev(0)), std::abs(ev(first_kept - 1)));
        if (kept_min < tol.gap_ratio * drop_max) {
            std::ostringstream msg;
            msg << "from_choi: ambiguous eigenvalue cutoff (" << kept_min << " vs " << drop_max
                << ")";
            throw IllConditioned(msg.str());
        }
    }

    KrausMap out{n, {}};
    for (int k = m - 1; k >= first_kept; --k) {  // descending eigenvalue
        Vec v = es.eigenvectors().col(k);
        // deterministic phase: first nonzero component real positive
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v(i)) > tol.atol) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        // block i of v is L^* e_i, so L = unvec(v)^*
        out.kraus.push_back(std::sqrt(ev(k)) * unvectorize(v, n, n).adjoint());
    }
    if (out.kraus.empty()) out.kraus.push_back(Mat::Zero(n, n));
    return out;
}

int index(const KrausMap& alpha, const Tolerance& tol) {
    const int n = alpha.dim;
    Mat rows(alpha.d(), n * n);
    for (int i = 0; i < alpha.d(); ++i) rows.row(i) = vectorize(alpha.kraus[i]).transpose();
    Eigen::JacobiSVD<Mat> svd(rows);
    return certified_rank(svd.singularValues(), tol);
}

KrausMap reduce_kraus(const KrausMap& alpha, const Tolerance& tol) {
    return from_choi(to_choi(alpha), tol);
}

KrausMap conjugate(const KrausMap& alpha) {
    KrausMap out{alpha.dim, {}};
    for (const Mat& L : alpha.kraus) out.kraus.push_back(L.adjoint());
    return out;
}

Superoperator to_superoperator(const KrausMap& alpha) {
    const int n = alpha.dim;
    Mat M = Mat::Zero(n * n, n * n);
    // vec(L^* X L) = (L^T ⊗ L^*) vec(X)
    for (const Mat& L : alpha.kraus) M += kron(L.transpose(), L.adjoint());
    return Superoperator{n, M};
}

Subspace unit_kernel(const KrausMap& alpha, const Tolerance& tol) {
    return kernel(cpnilp::apply(alpha, Mat::Identity(alpha.dim, alpha.dim)), tol);
}

Subspace unit_range(const KrausMap& alpha, const Tolerance& tol) {
    return range(cpnilp::apply(alpha, Mat::Identity(alpha.dim, alpha.dim)), tol);
}

Subspace annihilated_vectors(const KrausMap& alpha, const Tolerance& tol) {
    std::vector<Mat> adjoints;
    for (const Mat& L : alpha.kraus) adjoints.push_back(L.adjoint());
    return common_kernel(adjoints, tol);
}

}  // namespace cpnilp
