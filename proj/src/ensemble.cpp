#include "cpnilp/ensemble.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cpnilp {

Mat random_matrix(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = Complex(gauss(rng), gauss(rng));
    return G;
}

Mat random_unitary(int n, Rng& rng) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(n, rng));
    Mat Q = qr.householderQ();
    // fix the phase convention so Q is determined by the Gaussian sample
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const Complex rii = R(i, i);
        if (std::abs(rii) > 0) Q.col(i) *= rii / std::abs(rii);
    }
    return Q;
}

std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int a = 1; a <= rest; ++a) {
            cur.push_back(a);
            rec(rest - a);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

CPNilpotentType random_valid_type(int n, int d, Rng& rng) {
    std::uniform_int_distribution<int> pick_p(1, n);
    for (;;) {
        const int p = pick_p(rng);
        // random composition of n into p parts
        std::vector<int> cuts{0, n};
        std::vector<int> interior(n - 1);
        std::iota(interior.begin(), interior.end(), 1);
        std::shuffle(interior.begin(), interior.end(), rng);
        cuts.insert(cuts.end(), interior.begin(), interior.begin() + (p - 1));
        std::sort(cuts.begin(), cuts.end());
        CPNilpotentType t;
        t.n = n;
        for (int i = 0; i + 1 < static_cast<int>(cuts.size()); ++i)
            t.entries.push_back(cuts[i + 1] - cuts[i]);
        if (check_basic_inequalities(t, d)) return t;
    }
}

KrausMap conjugate_by_unitary(const KrausMap& alpha, const Mat& U) {
    KrausMap out{alpha.dim, {}};
    for (const Mat& L : alpha.kraus) out.kraus.push_back(U.adjoint() * L * U);
    return out;
}

KrausMap random_cp_map(int n, int d, Rng& rng, bool with_kernel) {
    KrausMap m{n, {}};
    Mat mask = Mat::Identity(n, n);
    if (with_kernel && n > 1) {
        std::uniform_int_distribution<int> kdim(1, n - 1);
        const int k = kdim(rng);
        for (int i = 0; i < k; ++i) mask(i, i) = 0.0;  // kill first k coordinates
    }
    for (int i = 0; i < d; ++i) m.kraus.push_back(random_matrix(n, rng) * mask);
    return m;
}

KrausMap make_contractive(const KrausMap& alpha) {
    const Mat unit = cpnilp::apply(alpha, Mat::Identity(alpha.dim, alpha.dim));
    Eigen::SelfAdjointEigenSolver<Mat> es(unit);
    const double lmax = es.eigenvalues().maxCoeff();
    KrausMap out = alpha;
    if (lmax > 1.0) {
        const double s = 1.0 / std::sqrt(lmax);
        for (Mat& L : out.kraus) L *= s;
    }
    return out;
}

}  // namespace cpnilp
