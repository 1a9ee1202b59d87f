#include "cpnilp/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cpnilp {

bool is_invariant(const KrausMap& alpha, const Subspace& M, const Tolerance& tol) {
    if (M.ambient_dim != alpha.dim) throw DimensionMismatch("is_invariant: ambient mismatch");
    const Mat PM = M.projection();
    const Mat PN = Mat::Identity(alpha.dim, alpha.dim) - PM;
    for (const Mat& L : alpha.kraus) {
        if ((PM * L * PN).norm() > tol.atol * std::max(1.0, L.norm())) return false;
    }
    return true;
}

InvariantSplit split(const KrausMap& alpha, const Subspace& M, const Tolerance& tol) {
    InvariantSplit s;
    s.M = M;
    // orthogonal complement: null space of B_M^*
    s.N = M.dim() > 0 ? kernel(M.basis.adjoint(), tol)
                      : Subspace::full(M.ambient_dim);
    const int dm = s.M.dim();
    const int dn = s.N.dim();
    for (const Mat& L : alpha.kraus) {
        const Mat tr = s.M.basis.adjoint() * L * s.N.basis;  // must vanish
        if (tr.norm() > tol.atol * std::max(1.0, L.norm()))
            throw NotInvariant("split: M is not invariant under the map");
        s.B.push_back(s.M.basis.adjoint() * L * s.M.basis);
        s.C.push_back(s.N.basis.adjoint() * L * s.N.basis);
        s.D.push_back(s.N.basis.adjoint() * L * s.M.basis);
        (void)dm;
        (void)dn;
    }
    return s;
}

std::pair<KrausMap, KrausMap> compress(const InvariantSplit& s) {
    KrausMap beta{s.M.dim(), s.B};
    KrausMap gamma{s.N.dim(), s.C};
    if (beta.kraus.empty()) beta = KrausMap::zero(beta.dim);
    if (gamma.kraus.empty()) gamma = KrausMap::zero(gamma.dim);
    return {beta, gamma};
}

bool check_theorem_3_1(const CPNilpotentType& a, const CPNilpotentType& b,
                       const CPNilpotentType& c) {
    const int p = a.order();
    if (b.order() != p || c.order() != p)
        throw LengthMismatch("check_theorem_3_1: tuples must be padded to equal length");
    int sa = 0, sb = 0, sc = 0;
    for (int k = 0; k < p; ++k) {
        sa += a.entries[k];
        sb += b.entries[k];
        sc += c.entries[k];
        if (sa > sb + sc) return false;
    }
    return sa == sb + sc;
}

std::pair<KrausMap, Subspace> random_invariant_instance(int n, int dimM, int d,
                                                        std::uint64_t seed) {
    if (n < 1 || dimM < 1 || dimM > n || d < 1)
        throw InvalidArgument("random_invariant_instance: need 1 <= dimM <= n, d >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // random ordered partition of n into p blocks of size >= 1
    std::uniform_int_distribution<int> pick_p(1, n);
    const int p = pick_p(rng);
    std::vector<int> cuts{0, n};
    {
        std::vector<int> interior(n - 1);
        std::iota(interior.begin(), interior.end(), 1);
        std::shuffle(interior.begin(), interior.end(), rng);
        cuts.insert(cuts.end(), interior.begin(), interior.begin() + (p - 1));
        std::sort(cuts.begin(), cuts.end());
    }

    // strictly block-triangular Kraus operators in the coordinate flag
    KrausMap alpha{n, std::vector<Mat>(d, Mat::Zero(n, n))};
    for (Mat& L : alpha.kraus)
        for (int b = 0; b + 2 < static_cast<int>(cuts.size()); ++b)
            for (int r = cuts[b]; r < cuts[b + 1]; ++r)
                for (int c = cuts[b + 1]; c < cuts[b + 2]; ++c)
                    L(r, c) = Complex(gauss(rng), gauss(rng));

    // M spanned by a random coordinate subset; zero the entries that would
    // break invariance (rows in M, columns outside M), which keeps the
    // block triangularity intact
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<bool> inM(n, false);
    for (int i = 0; i < dimM; ++i) inM[idx[i]] = true;
    for (Mat& L : alpha.kraus)
        for (int r = 0; r < n; ++r)
            if (inM[r])
                for (int c = 0; c < n; ++c)
                    if (!inM[c]) L(r, c) = 0.0;

    Mat basis = Mat::Zero(n, dimM);
    int col = 0;
    for (int i = 0; i < n; ++i)
        if (inM[i]) basis(i, col++) = 1.0;
    return {alpha, Subspace{n, basis}};
}

bool cone_membership(const MajorizationVector& x, const MajorizationVector& y,
                     const Tolerance& tol) {
    if (x.size() != y.size()) throw LengthMismatch("cone_membership: unequal lengths");
    for (double xi : x)
        if (xi <= 0.0) throw InvalidArgument("cone_membership: x must be entrywise positive");
    double sx = 0.0, sy = 0.0;
    const size_t n = x.size();
    for (size_t k = 0; k < n; ++k) {
        if (y[k] < -tol.atol) return false;
        sx += x[k];
        sy += y[k];
        if (k + 1 < n && sy > sx + tol.atol) return false;
    }
    return std::abs(sy - sx) <= tol.atol;
}

std::vector<MajorizationVector> extreme_points(const MajorizationVector& x) {
    const size_t n = x.size();
    for (double xi : x)
        if (xi <= 0.0) throw InvalidArgument("extreme_points: x must be entrywise positive");
    std::vector<double> prefix(n);
    std::partial_sum(x.begin(), x.end(), prefix.begin());

    std::vector<MajorizationVector> pts;
    const size_t patterns = n >= 1 ? (size_t{1} << (n - 1)) : 1;
    for (size_t mask = 0; mask < patterns; ++mask) {
        MajorizationVector y(n, 0.0);
        double running = 0.0;
        for (size_t i = 0; i + 1 < n; ++i) {
            if (mask & (size_t{1} << i)) {  // force prefix equality at i
                y[i] = prefix[i] - running;
                running = prefix[i];
            }  // else y[i] = 0
        }
        y[n - 1] = prefix[n - 1] - running;
        pts.push_back(std::move(y));
    }
    return pts;
}

bool verify_extreme(const MajorizationVector& x, const MajorizationVector& y,
                    const Tolerance& tol) {
    if (!cone_membership(x, y, tol)) throw NotInCone("verify_extreme: y is not in C(x)");
    const size_t n = x.size();
    const double thresh = 10.0 * tol.atol;

    std::vector<double> px(n), py(n);
    std::partial_sum(x.begin(), x.end(), px.begin());
    std::partial_sum(y.begin(), y.end(), py.begin());

    // eps = half the smallest genuinely positive slack
    double eps = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n; ++k) {
        if (y[k] > thresh) eps = std::min(eps, y[k] / 2.0);
        if (k + 1 < n && px[k] - py[k] > thresh) eps = std::min(eps, (px[k] - py[k]) / 2.0);
    }
    if (!std::isfinite(eps)) return true;  // every constraint pinned

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            MajorizationVector up = y, down = y;
            up[i] += eps;
            up[j] -= eps;
            down[i] -= eps;
            down[j] += eps;
            if (cone_membership(x, up, tol) && cone_membership(x, down, tol)) return false;
        }
    }
    return true;
}

}  // namespace cpnilp
