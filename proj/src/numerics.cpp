#include "cpnilp/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <sstream>

namespace cpnilp {

int certified_rank(const RealVec& s, const Tolerance& tol) {
    const double smax = s.size() > 0 ? s(0) : 0.0;
    const double cutoff = std::max(tol.atol, tol.rtol * smax);
    int r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    if (r > 0 && r < s.size()) {
        const double kept_min = s(r - 1);
        const double drop_max = s(r);
        if (kept_min < tol.gap_ratio * drop_max) {
            std::ostringstream msg;
            msg << "ambiguous rank decision: kept sigma " << kept_min
                << " vs dropped sigma " << drop_max << " (gap_ratio " << tol.gap_ratio << ")";
            throw IllConditioned(msg.str());
        }
    }
    return r;
}

Subspace kernel(const Mat& A, const Tolerance& tol) {
    const int n = static_cast<int>(A.cols());
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const int r = certified_rank(svd.singularValues(), tol);
    return Subspace{n, svd.matrixV().rightCols(n - r)};
}

Subspace range(const Mat& A, const Tolerance& tol) {
    const int m = static_cast<int>(A.rows());
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
    const int r = certified_rank(svd.singularValues(), tol);
    return Subspace{m, svd.matrixU().leftCols(r)};
}

Subspace common_kernel(const std::vector<Mat>& As, const Tolerance& tol) {
    if (As.empty()) throw InvalidArgument("common_kernel: empty list");
    const int n = static_cast<int>(As.front().cols());
    Eigen::Index rows = 0;
    for (const Mat& A : As) {
        if (A.cols() != n) throw DimensionMismatch("common_kernel: column counts differ");
        rows += A.rows();
    }
    Mat stacked(rows, n);
    Eigen::Index at = 0;
    for (const Mat& A : As) {
        stacked.middleRows(at, A.rows()) = A;
        at += A.rows();
    }
    return kernel(stacked, tol);
}

Subspace intersect(const Subspace& S, const Subspace& T, const Tolerance& tol) {
    if (S.ambient_dim != T.ambient_dim)
        throw DimensionMismatch("intersect: ambient dimensions differ");
    const int n = S.ambient_dim;
    const Mat I = Mat::Identity(n, n);
    // x in S ∩ T  <=>  (I-P_S)x = 0 and (I-P_T)x = 0
    return common_kernel({I - S.projection(), I - T.projection()}, tol);
}

Subspace intersect_with_complement(const Subspace& S, const Subspace& T, const Tolerance& tol) {
    if (S.ambient_dim != T.ambient_dim)
        throw DimensionMismatch("intersect_with_complement: ambient dimensions differ");
    const int n = S.ambient_dim;
    const Mat I = Mat::Identity(n, n);
    // x in S ∩ T^⊥  <=>  (I-P_S)x = 0 and P_T x = 0
    return common_kernel({I - S.projection(), T.projection()}, tol);
}

bool is_psd(const Mat& A, const Tolerance& tol) {
    if (A.rows() != A.cols()) return false;
    if (A.size() == 0) return true;
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > tol.atol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es((A + A.adjoint()) / 2.0);
    const RealVec& ev = es.eigenvalues();
    const double sigma_max = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    return ev(0) >= -tol.atol * std::max(1.0, sigma_max);
}

double containment_residual(const Subspace& T, const Subspace& S) {
    if (T.dim() == 0) return 0.0;
    const Mat I = Mat::Identity(S.ambient_dim, S.ambient_dim);
    return ((I - S.projection()) * T.basis).norm();
}

}  // namespace cpnilp
