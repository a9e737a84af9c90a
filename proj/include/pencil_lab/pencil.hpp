#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "multipoly.hpp"
#include "unipoly.hpp"

namespace plab {

// A pencil of quadrics z1*A + z2*B on P^n, stored as its two symmetric member matrices.
template <class K>
struct SymmetricPencil {
    int n = 0;  // projective dimension; matrices are (n+1) x (n+1)
    Matrix<K> A, B;

    SymmetricPencil(Matrix<K> A_, Matrix<K> B_)
        : n(A_.m - 1), A(std::move(A_)), B(std::move(B_)) {
        if (A.m != A.n || B.m != B.n || A.m != B.m || A.m < 1)
            throw std::invalid_argument("SymmetricPencil: members must be square of equal size");
        bool all_zero = true;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                if (A[i][j] != A[j][i] || B[i][j] != B[j][i])
                    throw std::invalid_argument("SymmetricPencil: members must be symmetric");
                if (!A[i][j].is_zero() || !B[i][j].is_zero()) all_zero = false;
            }
        if (all_zero) throw std::invalid_argument("SymmetricPencil: zero pencil");
    }
};

// True when the two members span a line instead of a plane: a degenerate "pencil".
template <class K>
bool proportional_members(const SymmetricPencil<K>& P) {
    int i0 = -1, j0 = -1;
    for (int i = 0; i <= P.n && i0 < 0; ++i)
        for (int j = 0; j <= P.n; ++j)
            if (!P.A[i][j].is_zero() || !P.B[i][j].is_zero()) {
                i0 = i;
                j0 = j;
                break;
            }
    const K a_ref = P.A[i0][j0], b_ref = P.B[i0][j0];
    for (int i = 0; i <= P.n; ++i)
        for (int j = 0; j <= P.n; ++j)
            if (P.A[i][j] * b_ref != P.B[i][j] * a_ref) return false;
    return true;
}

namespace detail {
template <class K>
K constant_value(const MultiPoly<K>& f) {
    if (f.is_zero()) return K::zero();
    if (!f.is_constant()) throw std::logic_error("constant_value: nonconstant polynomial");
    return f.terms.begin()->second;
}
}  // namespace detail

// Full second partials: entry (i,j) of the first member is d^2 f1 / dx_i dx_j, so the
// diagonal carries twice the coefficient of x_i^2.
template <class K>
SymmetricPencil<K> hessian_pencil(MultiPoly<K> f1, MultiPoly<K> f2) {
    int nv = std::max(f1.nvars, f2.nvars);
    f1 = f1.widened(nv);
    f2 = f2.widened(nv);
    for (const auto* f : {&f1, &f2})
        if (f->is_zero() || !f->is_homogeneous() || f->total_degree() != 2)
            throw std::invalid_argument("hessian_pencil: inputs must be nonzero quadratic forms");
    if ((f2 * f1.lt_coeff() - f1 * f2.lt_coeff()).is_zero())
        throw std::invalid_argument("hessian_pencil: proportional forms do not span a pencil");
    Matrix<K> A(nv, nv), B(nv, nv);
    for (int i = 0; i < nv; ++i) {
        MultiPoly<K> d1 = f1.partial(i), d2 = f2.partial(i);
        for (int j = 0; j < nv; ++j) {
            A[i][j] = detail::constant_value(d1.partial(j));
            B[i][j] = detail::constant_value(d2.partial(j));
        }
    }
    return SymmetricPencil<K>(std::move(A), std::move(B));
}

// The dehomogenized member A + t*B as a polynomial matrix.
template <class K>
PolyMatrix<K> pencil_matrix(const SymmetricPencil<K>& P) {
    PolyMatrix<K> M(P.n + 1, P.n + 1);
    for (int i = 0; i <= P.n; ++i)
        for (int j = 0; j <= P.n; ++j)
            M[i][j] = UniPoly<K>(std::vector<K>{P.A[i][j], P.B[i][j]});
    return M;
}

template <class K>
struct Compressibility {
    int m = 0;                                   // dimension of the common constant kernel
    std::vector<std::vector<K>> common_kernel;   // vectors killed by every member
};

template <class K>
Compressibility<K> compressibility(const SymmetricPencil<K>& P) {
    Matrix<K> S(2 * (P.n + 1), P.n + 1);
    for (int i = 0; i <= P.n; ++i)
        for (int j = 0; j <= P.n; ++j) {
            S[i][j] = P.A[i][j];
            S[P.n + 1 + i][j] = P.B[i][j];
        }
    auto ns = rank_nullspace(S);
    Compressibility<K> out;
    out.m = static_cast<int>(ns.nullspace.size());
    out.common_kernel = std::move(ns.nullspace);
    return out;
}

template <class K>
struct Reduction {
    SymmetricPencil<K> pencil;  // incompressible, size (n - m) + 1
    int m = 0;
    std::vector<int> kept;      // original coordinates spanning the chosen complement
};

// Quotient by the common kernel. Cross terms against kernel vectors vanish, so the
// principal submatrix on any complementary coordinate set is the quotient pencil.
template <class K>
Reduction<K> reduce_incompressible(const SymmetricPencil<K>& P) {
    auto cmp = compressibility(P);
    std::vector<int> kept;
    if (cmp.m == 0) {
        for (int i = 0; i <= P.n; ++i) kept.push_back(i);
        return {P, 0, std::move(kept)};
    }
    Matrix<K> probe(0, P.n + 1);
    probe.a = cmp.common_kernel;
    probe.m = cmp.m;
    for (int i = 0; i <= P.n; ++i) {
        std::vector<K> e(P.n + 1, K::zero());
        e[i] = K::one();
        probe.a.push_back(std::move(e));
        ++probe.m;
        if (rank_of(probe) == probe.m) {
            kept.push_back(i);
        } else {
            probe.a.pop_back();
            --probe.m;
        }
    }
    int k = static_cast<int>(kept.size());
    Matrix<K> A(k, k), B(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            A[i][j] = P.A[kept[i]][kept[j]];
            B[i][j] = P.B[kept[i]][kept[j]];
        }
    return {SymmetricPencil<K>(std::move(A), std::move(B)), cmp.m, std::move(kept)};
}

// r1 = n + 1 - rank of the pencil over K(t); the rank of B is a limit of member ranks,
// so the dehomogenized matrix already attains the generic value.
template <class K>
int generic_corank(const SymmetricPencil<K>& P) {
    return P.n + 1 - rank_poly(pencil_matrix(P));
}

template <class K>
struct NormalizedPencil {
    SymmetricPencil<K> pencil;  // the member at (0:1) has corank exactly r1
    Matrix<K> h;                // 2x2: working point t sits at (z1:z2) = (h00 + t h10 : h01 + t h11)
};

// Move a generic member to infinity so the affine chart t -> A + t*B sees every
// corank jump. At most u - v <= n + 1 members are special, so n + 2 samples suffice.
template <class K>
NormalizedPencil<K> normalize_homography(const SymmetricPencil<K>& P) {
    int want = rank_poly(pencil_matrix(P));
    Matrix<K> h = identity_matrix(2, K::one());
    if (rank_of(P.B) == want) return {P, std::move(h)};
    long p = field_char<K>();
    long tries = p == 0 ? static_cast<long>(P.n) + 2 : p;
    K lam = K::zero();
    for (long s = 0; s < tries; ++s, lam += K::one()) {
        Matrix<K> C = P.A;
        for (int i = 0; i <= P.n; ++i)
            for (int j = 0; j <= P.n; ++j) C[i][j] += lam * P.B[i][j];
        if (rank_of(C) != want) continue;
        h[0][0] = K::zero();
        h[0][1] = K::one();
        h[1][0] = K::one();
        h[1][1] = lam;
        return {SymmetricPencil<K>(P.B, std::move(C)), std::move(h)};
    }
    throw std::domain_error("normalize_homography: too few field points, request a larger field");
}

// One coprime-basis point group of the singular support, with its corank profile.
// A cluster of degree d stands for d closure points carrying identical data.
template <class K>
struct SegreCluster {
    UniPoly<K> point;                       // monic, in the homography-adjusted coordinate
    int point_degree = 0;                   // = deg(point)
    std::vector<std::pair<int, int>> parts; // (a: multiplicity, p: repetitions), a strictly decreasing

    int sum_p() const {
        int s = 0;
        for (auto& [a, p] : parts) s += p;
        return s;
    }
    int weight() const {  // sum of a*p
        int s = 0;
        for (auto& [a, p] : parts) s += a * p;
        return s;
    }
    std::vector<int> prefix_p() const {  // q_k = p_1 + ... + p_k
        std::vector<int> q;
        int s = 0;
        for (auto& [a, p] : parts) q.push_back(s += p);
        return q;
    }
};

template <class K>
struct PencilInvariants {
    int n = 0;   // ambient projective dimension
    int m = 0;   // compressibility
    int r0 = 0;  // maximal corank
    int r1 = 0;  // generic corank
    int u = 0, v = 0;               // splitting type
    std::vector<int> degree_vector; // minimal indices, ascending, zeros counted
    std::vector<SegreCluster<K>> clusters;
    int double_hyperplanes = 0;     // e: closure points of corank n
    Matrix<K> homography;           // records the chart used for cluster coordinates

    int n_hat() const { return n - m; }
    int r0_hat() const { return r0 - m; }
    int r1_hat() const { return r1 - m; }
    int weight() const { return u - v; }
    std::vector<int> positive_indices() const {
        std::vector<int> c;
        for (int x : degree_vector)
            if (x > 0) c.push_back(x);
        return c;
    }
    int points() const {  // closure points of the singular support
        int s = 0;
        for (auto& cl : clusters) s += cl.point_degree;
        return s;
    }
};

// Full invariant extraction. Compressibility is not required: the common kernel shows
// up as zero minimal indices and every cross-relation below is checked on the way out.
template <class K>
PencilInvariants<K> segre_data(const SymmetricPencil<K>& P) {
    PencilInvariants<K> inv;
    inv.n = P.n;
    inv.r1 = generic_corank(P);

    auto norm = normalize_homography(P);
    inv.homography = norm.h;
    PolyMatrix<K> Pt = pencil_matrix(norm.pencil);

    auto S = smith_form(Pt);
    if (static_cast<int>(S.divisors.size()) != P.n + 1 - inv.r1)
        throw std::logic_error("segre_data: rank and invariant-factor count disagree");
    std::vector<UniPoly<K>> noncst;
    for (const auto& d : S.divisors)
        if (!d.is_constant()) noncst.push_back(d);

    if (!noncst.empty()) {
        auto gfb = gcd_free_basis(noncst);
        for (size_t j = 0; j < gfb.basis.size(); ++j) {
            SegreCluster<K> cl;
            cl.point = gfb.basis[j];
            cl.point_degree = cl.point.deg();
            std::vector<int> mults;
            for (size_t i = 0; i < noncst.size(); ++i) mults.push_back(gfb.mult[i][j]);
            // nonzero multiplicities form a nondecreasing suffix of the divisor chain
            size_t first = 0;
            while (first < mults.size() && mults[first] == 0) ++first;
            for (size_t i = first; i < mults.size(); ++i)
                if (mults[i] == 0 || (i > first && mults[i] < mults[i - 1]))
                    throw std::logic_error("segre_data: invariant-factor chain broken");
            for (size_t i = mults.size(); i-- > first;) {
                if (!cl.parts.empty() && cl.parts.back().first == mults[i])
                    ++cl.parts.back().second;
                else
                    cl.parts.push_back({mults[i], 1});
            }
            inv.clusters.push_back(std::move(cl));
        }
        for (size_t i = 0; i < inv.clusters.size(); ++i)
            for (size_t j = i + 1; j < inv.clusters.size(); ++j)
                if (!UniPoly<K>::gcd(inv.clusters[i].point, inv.clusters[j].point).is_constant())
                    throw std::logic_error("segre_data: cluster loci not disjoint");
    }

    auto kb = minimal_kernel_basis(Pt);
    inv.degree_vector = kb.indices;
    if (static_cast<int>(inv.degree_vector.size()) != inv.r1)
        throw std::logic_error("segre_data: kernel dimension and generic corank disagree");

    int zeros = 0, vsum = 0;
    for (int c : inv.degree_vector) {
        if (c == 0)
            ++zeros;
        else
            vsum += c;
    }
    inv.m = compressibility(P).m;
    if (inv.m != zeros)
        throw std::logic_error("segre_data: constant kernel and zero minimal indices disagree");

    int W = 0;
    for (const auto& cl : inv.clusters) W += cl.point_degree * cl.weight();
    int spread = P.n + 1 - inv.r1;
    if (spread < W || (spread - W) % 2 != 0)
        throw std::logic_error("segre_data: splitting parity failure");
    inv.v = (spread - W) / 2;
    inv.u = inv.v + W;
    if (inv.v != vsum)
        throw std::logic_error("segre_data: splitting and degree vector disagree");

    int maxp = 0;
    for (const auto& cl : inv.clusters) maxp = std::max(maxp, cl.sum_p());
    inv.r0 = inv.r1 + maxp;
    for (const auto& cl : inv.clusters)
        if (inv.r1 + cl.sum_p() == inv.n) inv.double_hyperplanes += cl.point_degree;

    if (inv.m == 0 && 3 * inv.r1 > inv.n + 1)
        throw std::logic_error("segre_data: generic corank exceeds the incompressible bound");
    return inv;
}

namespace detail {

// (f(x)g(y) - f(y)g(x)) / (x - y) as a symmetric deg(f) x deg(f) matrix; deg g <= deg f.
template <class K>
Matrix<K> bezout_matrix(const UniPoly<K>& f, const UniPoly<K>& g) {
    int N = f.deg();
    std::vector<std::vector<K>> num(N + 1, std::vector<K>(N + 1, K::zero()));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) num[i][j] = f.coeff(i) * g.coeff(j) - g.coeff(i) * f.coeff(j);
    Matrix<K> q(N, N);
    for (int i = N; i >= 1; --i)
        for (int j = 0; j < N; ++j) {
            K val = num[i][j];
            if (i < N && j >= 1) val += q[i][j - 1];
            q[i - 1][j] = val;
        }
    return q;
}

// Pencil block supported at one cluster: invariant factors (1, ..., 1, point^a), corank 1
// at each closure point of the cluster. Rational points get the staggered antidiagonal
// form; higher-degree points the two Bezoutians of point^a.
template <class K>
std::pair<Matrix<K>, Matrix<K>> cluster_block(const UniPoly<K>& point, int a) {
    if (point.deg() == 1) {
        Matrix<K> A(a, a), B(a, a);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) {
                if (i + j == a - 1) {
                    A[i][j] = point.coeff(0);  // constant part of t - lambda
                    B[i][j] = K::one();
                }
                if (i + j == a) A[i][j] = K::one();
            }
        return {std::move(A), std::move(B)};
    }
    UniPoly<K> f = point.pow(a);
    Matrix<K> B = bezout_matrix(f, UniPoly<K>::one());
    Matrix<K> Ax = bezout_matrix(f, UniPoly<K>::t());
    for (auto& row : Ax.a)
        for (auto& x : row) x = -x;
    return {std::move(Ax), std::move(B)};
}

template <class K>
void embed_block(Matrix<K>& M, const Matrix<K>& blk, int at) {
    for (int i = 0; i < blk.m; ++i)
        for (int j = 0; j < blk.n; ++j) M[at + i][at + j] = blk[i][j];
}

}  // namespace detail

// The direct sum of the cluster blocks: a regular pencil of size u - v whose cokernel
// carries exactly the invariant-factor data of the clusters.
template <class K>
SymmetricPencil<K> regular_part(const PencilInvariants<K>& inv) {
    if (inv.u == inv.v) throw std::domain_error("regular_part: empty regular part");
    int size = inv.u - inv.v;
    Matrix<K> A(size, size), B(size, size);
    int at = 0;
    for (const auto& cl : inv.clusters)
        for (auto [a, p] : cl.parts)
            for (int rep = 0; rep < p; ++rep) {
                auto [Ab, Bb] = detail::cluster_block(cl.point, a);
                detail::embed_block(A, Ab, at);
                detail::embed_block(B, Bb, at);
                at += Ab.m;
            }
    if (at != size) throw std::logic_error("regular_part: block sizes disagree with the splitting");
    return SymmetricPencil<K>(std::move(A), std::move(B));
}

// Rebuild an incompressible pencil from (r1, positive minimal indices, clusters): one
// staggered pair block per index plus the regular part. Defines n = r1 + u + v - 1.
template <class K>
SymmetricPencil<K> recover_pencil(int r1, const std::vector<int>& degree_vector,
                                  const std::vector<SegreCluster<K>>& clusters) {
    if (static_cast<int>(degree_vector.size()) != r1)
        throw std::invalid_argument("recover_pencil: need one minimal index per kernel generator");
    for (int c : degree_vector)
        if (c < 1)
            throw std::invalid_argument(
                "recover_pencil: minimal indices must be positive; add compressibility separately");
    if (degree_vector.empty() && clusters.empty())
        throw std::invalid_argument("recover_pencil: empty data");
    for (const auto& cl : clusters) {
        if (cl.parts.empty() || cl.point.deg() < 1 || cl.point.lc() != K::one() ||
            cl.point_degree != cl.point.deg())
            throw std::invalid_argument("recover_pencil: malformed cluster");
        for (size_t i = 0; i < cl.parts.size(); ++i) {
            auto [a, p] = cl.parts[i];
            if (a < 1 || p < 1 || (i > 0 && cl.parts[i - 1].first <= a))
                throw std::invalid_argument("recover_pencil: parts must be strictly decreasing");
        }
    }
    for (size_t i = 0; i < clusters.size(); ++i)
        for (size_t j = i + 1; j < clusters.size(); ++j)
            if (!UniPoly<K>::gcd(clusters[i].point, clusters[j].point).is_constant())
                throw std::invalid_argument("recover_pencil: cluster points must be pairwise coprime");

    int v = 0, W = 0;
    for (int c : degree_vector) v += c;
    for (const auto& cl : clusters) W += cl.point_degree * cl.weight();
    int u = v + W;
    int n = r1 + u + v - 1;

    Matrix<K> A(n + 1, n + 1), B(n + 1, n + 1);
    int at = 0;
    for (int c : degree_vector) {
        // [[0, tau],[tau^T, 0]] with tau the (c+1) x c stagger: one minimal index c
        for (int j = 0; j < c; ++j) {
            A[at + j][at + c + 1 + j] = A[at + c + 1 + j][at + j] = K::one();
            B[at + j + 1][at + c + 1 + j] = B[at + c + 1 + j][at + j + 1] = K::one();
        }
        at += 2 * c + 1;
    }
    for (const auto& cl : clusters)
        for (auto [a, p] : cl.parts)
            for (int rep = 0; rep < p; ++rep) {
                auto [Ab, Bb] = detail::cluster_block(cl.point, a);
                detail::embed_block(A, Ab, at);
                detail::embed_block(B, Bb, at);
                at += Ab.m;
            }
    if (at != n + 1) throw std::logic_error("recover_pencil: block sizes disagree");
    return SymmetricPencil<K>(std::move(A), std::move(B));
}

template <class K>
Matrix<K> companion_matrix(const UniPoly<K>& f) {
    int d = f.deg();
    if (d < 1 || f.lc() != K::one())
        throw std::invalid_argument("companion_matrix: monic nonconstant required");
    Matrix<K> C(d, d);
    for (int i = 1; i < d; ++i) C[i][i - 1] = K::one();
    for (int i = 0; i < d; ++i) C[i][d - 1] = -f.coeff(i);
    return C;
}

// Corank of P(t) at the roots of pi, all at once: substitute the companion matrix of pi
// for t. Gcd-free clusters carry the same corank at each root, so the total splits evenly.
template <class K>
int corank_at_cluster(const PolyMatrix<K>& P, const UniPoly<K>& pi) {
    int d = pi.deg();
    Matrix<K> C = companion_matrix(pi);
    int maxdeg = max_entry_degree(P);
    std::vector<Matrix<K>> pw{identity_matrix(d, K::one())};
    for (int e = 1; e <= maxdeg; ++e) pw.push_back(matmul(pw.back(), C));
    Matrix<K> M(P.m * d, P.n * d);
    for (int i = 0; i < P.m; ++i)
        for (int j = 0; j < P.n; ++j)
            for (int e = 0; e <= P[i][j].deg(); ++e) {
                const K& c = P[i][j].coeff(e);
                if (c.is_zero()) continue;
                for (int r = 0; r < d; ++r)
                    for (int s = 0; s < d; ++s) M[i * d + r][j * d + s] += c * pw[e][r][s];
            }
    int corank_total = P.n * d - rank_of(M);
    if (corank_total % d != 0)
        throw std::logic_error("corank_at_cluster: uneven corank across conjugate points");
    return corank_total / d;
}

}  // namespace plab
