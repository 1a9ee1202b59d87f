#include "cpnilp/nilpotency.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cpnilp {

std::optional<int> nilpotency_order(const KrausMap& alpha, const Tolerance& tol) {
    const int n = alpha.dim;
    Mat Y = cpnilp::apply(alpha, Mat::Identity(n, n));
    const double scale = Y.norm();
    if (scale < tol.atol) return 1;  // zero map
    if (scale < tol.gap_ratio * tol.atol)
        throw IllConditioned("nilpotency_order: ||alpha(1)|| in ambiguous band");
    for (int k = 2; k <= n; ++k) {
        Y = cpnilp::apply(alpha, Y);
        const double norm = Y.norm();
        if (norm < tol.atol * scale) return k;
        if (norm < tol.gap_ratio * tol.atol * scale) {
            std::ostringstream msg;
            msg << "nilpotency_order: ||alpha^" << k << "(1)|| = " << norm
                << " in ambiguous band";
            throw IllConditioned(msg.str());
        }
    }
    return std::nullopt;
}

FlagDecomposition flag(const KrausMap& alpha, const Tolerance& tol) {
    const auto p = nilpotency_order(alpha, tol);
    if (!p) throw NotNilpotent("flag: map is not nilpotent");
    const int n = alpha.dim;

    FlagDecomposition f;
    if (n == 0) {  // degenerate compression corner
        f.subspaces.push_back(Subspace::full(0));
        f.projections.push_back(Mat::Zero(0, 0));
        return f;
    }
    Subspace prev = Subspace::trivial(n);
    Mat Y = Mat::Identity(n, n);
    for (int k = 1; k <= *p; ++k) {
        Y = cpnilp::apply(alpha, Y);  // alpha^k(1)
        const Subspace Kk = kernel(Y, tol);
        const Subspace Hk = intersect_with_complement(Kk, prev, tol);
        f.subspaces.push_back(Hk);
        f.projections.push_back(Hk.projection());
        prev = Kk;
    }
    return f;
}

CPNilpotentType cp_type(const KrausMap& alpha, const Tolerance& tol) {
    const FlagDecomposition f = flag(alpha, tol);
    CPNilpotentType t;
    t.n = alpha.dim;
    for (const Subspace& H : f.subspaces) t.entries.push_back(H.dim());
    return t;
}

bool check_basic_inequalities(const CPNilpotentType& t, int d) {
    if (d < 1) return false;
    for (int a : t.entries)
        if (a < 1) return false;
    for (size_t i = 0; i + 1 < t.entries.size(); ++i)
        if (t.entries[i + 1] > d * t.entries[i]) return false;
    return true;
}

KrausMap synthesize(const CPNilpotentType& t, int d) {
    if (!check_basic_inequalities(t, d))
        throw InvalidType("synthesize: tuple violates the basic inequalities");
    const int p = t.order();
    const int n = std::accumulate(t.entries.begin(), t.entries.end(), 0);

    std::vector<int> offset(p + 1, 0);  // block i occupies [offset[i], offset[i+1])
    for (int i = 0; i < p; ++i) offset[i + 1] = offset[i] + t.entries[i];

    KrausMap alpha{n, std::vector<Mat>(d, Mat::Zero(n, n))};
    for (int i = 0; i + 1 < p; ++i) {
        // M_k sends source vector j/d of H_i to target vector j of H_{i+1}
        // for each target j with j mod d == k; L_k = M_k^* on H_{i+1}.
        for (int j = 0; j < t.entries[i + 1]; ++j) {
            const int k = j % d;
            const int src = j / d;
            alpha.kraus[k](offset[i] + src, offset[i + 1] + j) = 1.0;
        }
    }
    return alpha;
}

CPNilpotentType adjoint_type(const KrausMap& alpha, const Tolerance& tol) {
    return cp_type(conjugate(alpha), tol);
}

bool check_theorem_2_7(const CPNilpotentType& a, const CPNilpotentType& a_adj) {
    const int p = a.order();
    if (a_adj.order() != p) throw LengthMismatch("check_theorem_2_7: unequal lengths");
    const int total_a = std::accumulate(a.entries.begin(), a.entries.end(), 0);
    const int total_adj = std::accumulate(a_adj.entries.begin(), a_adj.entries.end(), 0);
    if (total_a != total_adj) return false;
    int suffix = 0, prefix = 0;
    for (int i = 1; i <= p; ++i) {
        suffix += a.entries[p - i];
        prefix += a_adj.entries[i - 1];
        if (suffix > prefix) return false;
    }
    return true;
}

bool check_block_triangular(const KrausMap& alpha, const FlagDecomposition& f,
                            const Tolerance& tol) {
    const int p = f.order();
    const int n = alpha.dim;
    // P_ge[i] projects onto H_{i+1} ⊕ ... ⊕ H_p (1-based i)
    std::vector<Mat> tail(p + 1, Mat::Zero(n, n));
    for (int i = p - 1; i >= 0; --i) tail[i] = tail[i + 1] + f.projections[i];
    for (const Mat& L : alpha.kraus) {
        const double scale = std::max(1.0, L.norm());
        for (int i = 0; i < p; ++i) {
            // L(H_{i+1}) must land in H_1 ⊕ ... ⊕ H_i (all of H for i = 0 maps to 0)
            if ((tail[i] * L * f.projections[i]).norm() > tol.atol * scale) return false;
        }
    }
    return true;
}

std::optional<std::vector<std::vector<int>>> commuting_flags_report(const KrausMap& alpha,
                                                                   const Tolerance& tol) {
    const FlagDecomposition f = flag(alpha, tol);
    const FlagDecomposition fadj = flag(conjugate(alpha), tol);
    const int p = f.order();
    if (fadj.order() != p)
        throw IllConditioned("commuting_flags_report: flag orders disagree");

    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            const Mat c = fadj.projections[i] * f.projections[j] -
                          f.projections[j] * fadj.projections[i];
            if (c.norm() > tol.atol * alpha.dim) return std::nullopt;
        }

    std::vector<std::vector<int>> m(p, std::vector<int>(p, 0));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            m[i][j] = intersect(fadj.subspaces[i], f.subspaces[j], tol).dim();

    for (int i = 0; i < p; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < p; ++j) {
            row += m[i][j];
            col += m[j][i];
        }
        if (row != fadj.subspaces[i].dim() || col != f.subspaces[i].dim())
            throw IllConditioned("commuting_flags_report: marginal sums inconsistent");
    }
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i + 1 + j + 1 > p + 1 && m[i][j] != 0)
                throw IllConditioned("commuting_flags_report: anti-triangle not vanishing");
    return m;
}

LinearNilpotentType linear_nilpotent_type(const KrausMap& alpha, const Tolerance& tol) {
    const auto p = nilpotency_order(alpha, tol);
    if (!p) throw NotNilpotent("linear_nilpotent_type: map is not nilpotent");
    const int n = alpha.dim;
    const Mat S = to_superoperator(alpha).matrix;

    LinearNilpotentType l;
    l.n = n;
    Mat Sk = Mat::Identity(n * n, n * n);
    int prev_dim = 0;
    for (int i = 1; i <= *p; ++i) {
        Sk = S * Sk;
        const int ki = kernel(Sk, tol).dim();
        l.entries.push_back(ki - prev_dim);
        prev_dim = ki;
    }
    if (prev_dim != n * n)
        throw IllConditioned("linear_nilpotent_type: kernel chain does not exhaust B(H)");
    for (size_t i = 0; i + 1 < l.entries.size(); ++i)
        if (l.entries[i] < l.entries[i + 1])
            throw IllConditioned("linear_nilpotent_type: entries not decreasing");
    return l;
}

bool check_l_lower_bound(const LinearNilpotentType& l, const CPNilpotentType& a_adj) {
    const int p = static_cast<int>(l.entries.size());
    if (a_adj.order() != p) throw LengthMismatch("check_l_lower_bound: unequal orders");
    long total_adj = std::accumulate(a_adj.entries.begin(), a_adj.entries.end(), 0L);
    long lsum = 0, head = 0;
    for (int k = 1; k <= p; ++k) {
        lsum += l.entries[k - 1];
        head += a_adj.entries[k - 1];
        const long tail = total_adj - head;
        if (lsum < head * head + 2 * head * tail) return false;
    }
    return true;
}

}  // namespace cpnilp
