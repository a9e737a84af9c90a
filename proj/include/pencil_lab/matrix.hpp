#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"
#include "unipoly.hpp"

namespace plab {

template <class T>
struct Matrix {
    int m = 0, n = 0;
    std::vector<std::vector<T>> a;  // row major

    Matrix() = default;
    Matrix(int rows, int cols) : m(rows), n(cols), a(rows, std::vector<T>(cols, T())) {}

    std::vector<T>& operator[](int i) { return a[i]; }
    const std::vector<T>& operator[](int i) const { return a[i]; }
};

template <class T>
Matrix<T> identity_matrix(int k, const T& one) {
    Matrix<T> r(k, k);
    for (int i = 0; i < k; ++i) r[i][i] = one;
    return r;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& A, const Matrix<T>& B) {
    if (A.n != B.m) throw std::invalid_argument("matmul: shape mismatch");
    Matrix<T> C(A.m, B.n);
    for (int i = 0; i < A.m; ++i)
        for (int k = 0; k < A.n; ++k) {
            const T& s = A[i][k];
            if (s == T()) continue;
            for (int j = 0; j < B.n; ++j) C[i][j] += s * B[k][j];
        }
    return C;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& A) {
    Matrix<T> R(A.n, A.m);
    for (int i = 0; i < A.m; ++i)
        for (int j = 0; j < A.n; ++j) R[j][i] = A[i][j];
    return R;
}

template <class K>
struct RankNullspace {
    int rank = 0;
    std::vector<std::vector<K>> nullspace;  // basis vectors of length n (cols)
};

// Row reduction over a field. Pivot rows are chosen shortest-first to limit fill-in on
// the sparse coefficient matrices this gets fed.
template <class K>
RankNullspace<K> rank_nullspace(const Matrix<K>& M) {
    int m = M.m, n = M.n;
    std::vector<std::vector<K>> rows = M.a;
    std::vector<int> nnz(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!rows[i][j].is_zero()) ++nnz[i];

    std::vector<int> pivot_col_of_row;   // in elimination order
    std::vector<int> col_pivot_row(n, -1);
    std::vector<bool> used(m, false);
    for (int col = 0; col < n; ++col) {
        int best = -1;
        for (int i = 0; i < m; ++i)
            if (!used[i] && !rows[i][col].is_zero() && (best < 0 || nnz[i] < nnz[best]))
                best = i;
        if (best < 0) continue;
        used[best] = true;
        col_pivot_row[col] = best;
        pivot_col_of_row.push_back(col);
        K inv = rows[best][col].inv();
        for (int j = 0; j < n; ++j)
            if (!rows[best][j].is_zero()) rows[best][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == best || rows[i][col].is_zero()) continue;
            K f = rows[i][col];
            int cnt = 0;
            for (int j = 0; j < n; ++j) {
                if (rows[best][j].is_zero()) {
                    if (!rows[i][j].is_zero()) ++cnt;
                    continue;
                }
                rows[i][j] -= f * rows[best][j];
                if (!rows[i][j].is_zero()) ++cnt;
            }
            nnz[i] = cnt;
        }
    }

    RankNullspace<K> out;
    out.rank = static_cast<int>(pivot_col_of_row.size());
    for (int col = 0; col < n; ++col) {
        if (col_pivot_row[col] >= 0) continue;
        std::vector<K> v(n, K::zero());
        v[col] = K::one();
        for (int pc : pivot_col_of_row) {
            int pr = col_pivot_row[pc];
            v[pc] = -rows[pr][col];
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

template <class K>
int rank_of(const Matrix<K>& M) {
    return rank_nullspace(M).rank;
}

// ---------------------------------------------------------------------------
// Sparse exact elimination
// ---------------------------------------------------------------------------

template <class K>
using SparseRow = std::map<int, K>;  // column -> nonzero coefficient

template <class K>
struct SparseRankNullspace {
    long rank = 0;
    std::vector<SparseRow<K>> nullspace;  // basis vectors, sparse over columns
};

// Row reduction on sparse rows, shortest-row-first pivoting. Forward elimination
// only: a pivot column is cleared from rows still active, never from rows already
// promoted to pivots, so a pivot row may reference later pivot columns but no
// earlier ones — back-substitution in reverse pivot order is then well-founded.
template <class K>
SparseRankNullspace<K> sparse_rank_nullspace(std::vector<SparseRow<K>> rows, long ncols,
                                             bool want_nullspace = true) {
    SparseRankNullspace<K> out;
    std::vector<std::pair<int, SparseRow<K>>> pivots;  // (pivot col, unit-pivot row)
    std::vector<size_t> active;
    for (size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].empty()) active.push_back(i);

    std::vector<bool> col_is_pivot(ncols, false);
    while (!active.empty()) {
        size_t pos = 0;
        for (size_t t = 1; t < active.size(); ++t)
            if (rows[active[t]].size() < rows[active[pos]].size()) pos = t;
        SparseRow<K> prow = std::move(rows[active[pos]]);
        active[pos] = active.back();
        active.pop_back();

        int pc = prow.begin()->first;
        K inv = prow.begin()->second.inv();
        for (auto& [c, v] : prow) v *= inv;

        for (size_t t = 0; t < active.size();) {
            SparseRow<K>& r = rows[active[t]];
            auto hit = r.find(pc);
            if (hit == r.end()) { ++t; continue; }
            K f = hit->second;
            for (const auto& [c, v] : prow) {
                auto it = r.find(c);
                if (it == r.end()) {
                    r.emplace(c, -(f * v));
                } else {
                    it->second -= f * v;
                    if (it->second.is_zero()) r.erase(it);
                }
            }
            if (r.empty()) {
                active[t] = active.back();
                active.pop_back();
            } else {
                ++t;
            }
        }
        col_is_pivot[pc] = true;
        pivots.emplace_back(pc, std::move(prow));
    }
    out.rank = static_cast<long>(pivots.size());
    if (!want_nullspace) return out;

    for (long c = 0; c < ncols; ++c) {
        if (col_is_pivot[c]) continue;
        SparseRow<K> v;
        v.emplace(static_cast<int>(c), K::one());
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            K s = K::zero();
            for (const auto& [cc, val] : it->second) {
                if (cc == it->first) continue;
                auto f = v.find(cc);
                if (f != v.end()) s += val * f->second;
            }
            if (!s.is_zero()) v.emplace(it->first, -s);
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

template <class K>
long sparse_rank(std::vector<SparseRow<K>> rows, long ncols) {
    return sparse_rank_nullspace(std::move(rows), ncols, false).rank;
}

// Incremental span tracker: add() row-reduces against the pivots collected so far
// and reports whether the row enlarged the span.
template <class K>
struct SparseSpan {
    std::map<int, SparseRow<K>> pivots;  // pivot col -> unit-pivot row

    long rank() const { return static_cast<long>(pivots.size()); }

    bool add(SparseRow<K> row) {
        while (!row.empty()) {
            int c = row.begin()->first;
            auto it = pivots.find(c);
            if (it == pivots.end()) {
                K inv = row.begin()->second.inv();
                for (auto& [cc, v] : row) v *= inv;
                pivots.emplace(c, std::move(row));
                return true;
            }
            K f = row.begin()->second;
            for (const auto& [cc, v] : it->second) {
                auto jt = row.find(cc);
                if (jt == row.end()) {
                    row.emplace(cc, -(f * v));
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero()) row.erase(jt);
                }
            }
        }
        return false;
    }
};

// ---------------------------------------------------------------------------
// Polynomial matrices
// ---------------------------------------------------------------------------

template <class K>
using PolyMatrix = Matrix<UniPoly<K>>;

template <class K>
Matrix<K> eval_at(const PolyMatrix<K>& P, const K& x) {
    Matrix<K> R(P.m, P.n);
    for (int i = 0; i < P.m; ++i)
        for (int j = 0; j < P.n; ++j) R[i][j] = P[i][j].eval(x);
    return R;
}

template <class K>
int max_entry_degree(const PolyMatrix<K>& P) {
    int d = 0;
    for (int i = 0; i < P.m; ++i)
        for (int j = 0; j < P.n; ++j) d = std::max(d, P[i][j].deg());
    return d;
}

// Rank over K(t) by fraction-free (Bareiss) elimination — exact over any K.
template <class K>
int rank_poly_bareiss(PolyMatrix<K> D) {
    using P = UniPoly<K>;
    int m = D.m, n = D.n, r = 0;
    P prev = P::one();
    for (int k = 0; k < std::min(m, n); ++k) {
        int pi = -1, pj = -1;
        for (int i = k; i < m && pi < 0; ++i)
            for (int j = k; j < n; ++j)
                if (!D[i][j].is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        std::swap(D.a[k], D.a[pi]);
        for (int i = 0; i < m; ++i) std::swap(D[i][k], D[i][pj]);
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < n; ++j)
                D[i][j] = P::divexact(D[k][k] * D[i][j] - D[i][k] * D[k][j], prev);
        prev = D[k][k];
        ++r;
    }
    return r;
}

// Rank over K(t). A size-r minor has degree at most r*maxdeg, so evaluating at
// r*maxdeg+1 distinct points and taking the maximum rank is exact; small prime
// fields fall back to Bareiss.
template <class K>
int rank_poly(const PolyMatrix<K>& P) {
    int r_cap = std::min(P.m, P.n);
    long need = static_cast<long>(r_cap) * std::max(1, max_entry_degree(P)) + 1;
    long p = field_char<K>();
    if (p != 0 && p < need) return rank_poly_bareiss(P);
    int best = 0;
    for (long x = 0; x < need && best < r_cap; ++x) {
        K pt = K::zero();
        for (long i = 0; i < x; ++i) pt += K::one();
        best = std::max(best, rank_of(eval_at(P, pt)));
    }
    return best;
}

template <class K>
struct SmithForm {
    PolyMatrix<K> U, D, V;            // U*P*V = D
    std::vector<UniPoly<K>> divisors; // monic nonzero diagonal, each dividing the next
    K det_u, det_v;                   // determinants of the unimodular transforms
};

// Smith normal form over K[t] with accumulated unimodular transforms.
template <class K>
SmithForm<K> smith_form(const PolyMatrix<K>& Pmat) {
    using P = UniPoly<K>;
    int m = Pmat.m, n = Pmat.n;
    SmithForm<K> S;
    S.D = Pmat;
    S.U = identity_matrix(m, P::one());
    S.V = identity_matrix(n, P::one());
    S.det_u = K::one();
    S.det_v = K::one();
    auto& D = S.D;
    auto& U = S.U;
    auto& V = S.V;

    auto row_sub = [&](int i, int k, const P& q) {  // row_i -= q * row_k
        for (int j = 0; j < n; ++j) D[i][j] -= q * D[k][j];
        for (int j = 0; j < m; ++j) U[i][j] -= q * U[k][j];
    };
    auto col_sub = [&](int j, int k, const P& q) {  // col_j -= q * col_k
        for (int i = 0; i < m; ++i) D[i][j] -= q * D[i][k];
        for (int i = 0; i < n; ++i) V[i][j] -= q * V[i][k];
    };
    auto row_swap = [&](int i, int k) {
        if (i == k) return;
        std::swap(D.a[i], D.a[k]);
        std::swap(U.a[i], U.a[k]);
        S.det_u = -S.det_u;
    };
    auto col_swap = [&](int j, int k) {
        if (j == k) return;
        for (int i = 0; i < m; ++i) std::swap(D[i][j], D[i][k]);
        for (int i = 0; i < n; ++i) std::swap(V[i][j], V[i][k]);
        S.det_v = -S.det_v;
    };

    for (int k = 0; k < std::min(m, n); ++k) {
        while (true) {
            int pi = -1, pj = -1, bd = -1;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j)
                    if (!D[i][j].is_zero() && (bd < 0 || D[i][j].deg() < bd)) {
                        bd = D[i][j].deg();
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) { k = std::min(m, n); break; }  // all remaining zero
            row_swap(k, pi);
            col_swap(k, pj);

            bool clean = true;
            for (int i = k + 1; i < m; ++i) {
                if (D[i][k].is_zero()) continue;
                row_sub(i, k, P::divmod(D[i][k], D[k][k]).first);
                if (!D[i][k].is_zero()) { clean = false; break; }  // smaller remainder became pivot
            }
            if (!clean) continue;
            for (int j = k + 1; j < n; ++j) {
                if (D[k][j].is_zero()) continue;
                col_sub(j, k, P::divmod(D[k][j], D[k][k]).first);
                if (!D[k][j].is_zero()) { clean = false; break; }
            }
            if (!clean) continue;

            // divisibility repair: pivot must divide the whole trailing block
            int bi = -1, bj = -1;
            for (int i = k + 1; i < m && bi < 0; ++i)
                for (int j = k + 1; j < n; ++j)
                    if (!P::divmod(D[i][j], D[k][k]).second.is_zero()) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi >= 0) {
                row_sub(k, bi, -P::one());  // row_k += row_bi, reintroduces a reducible entry
                continue;
            }
            break;
        }
        if (k >= std::min(m, n)) break;
    }

    // monic normalization, folded into U
    for (int k = 0; k < std::min(m, n); ++k) {
        if (D[k][k].is_zero()) continue;
        K u = D[k][k].lc().inv();
        for (int j = 0; j < n; ++j) D[k][j] = D[k][j] * u;
        for (int j = 0; j < m; ++j) U[k][j] = U[k][j] * u;
        S.det_u = S.det_u * u;
        S.divisors.push_back(D[k][k]);
    }
    return S;
}

// Determinant over K[t] by expansion-free Bareiss (small matrices only: used to
// verify the tracked unimodular determinants in tests).
template <class K>
UniPoly<K> det_poly(PolyMatrix<K> D) {
    using P = UniPoly<K>;
    if (D.m != D.n) throw std::invalid_argument("det_poly: square only");
    int n = D.m;
    P prev = P::one();
    K sign = K::one();
    for (int k = 0; k < n; ++k) {
        int pi = -1;
        for (int i = k; i < n && pi < 0; ++i)
            if (!D[i][k].is_zero()) pi = i;
        if (pi < 0) return P::zero();
        if (pi != k) {
            std::swap(D.a[pi], D.a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                D[i][j] = P::divexact(D[k][k] * D[i][j] - D[i][k] * D[k][j], prev);
        prev = D[k][k];
    }
    return D[n - 1][n - 1] * sign;
}

template <class K>
struct KernelBasis {
    std::vector<std::vector<UniPoly<K>>> vectors;  // columns of length n
    std::vector<int> indices;                      // minimal degrees, ascending
};

// Minimal kernel basis of an m x n polynomial matrix: a column-reduced basis of the
// K(t)-kernel whose degrees are the minimal (Kronecker) indices. Found degree-stripe
// by degree-stripe; dim{v in ker : deg v <= d} = sum over indices c<=d of (d-c+1).
template <class K>
KernelBasis<K> minimal_kernel_basis(const PolyMatrix<K>& P, int degree_bound = -1) {
    using Poly = UniPoly<K>;
    int m = P.m, n = P.n;
    if (degree_bound < 0) degree_bound = n + 1;
    int target = n - rank_poly(P);
    KernelBasis<K> out;
    if (target == 0) return out;

    int dP = max_entry_degree(P);
    for (int d = 0; d <= degree_bound; ++d) {
        // stripe system: coefficients of P*v, v of degree <= d
        int cols = n * (d + 1);
        Matrix<K> sys(m * (dP + d + 1), cols);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const Poly& p = P[i][j];
                for (int e = 0; e <= p.deg(); ++e) {
                    if (p.c[e].is_zero()) continue;
                    for (int s = 0; s <= d; ++s)
                        sys[i * (dP + d + 1) + e + s][j * (d + 1) + s] += p.c[e];
                }
            }
        auto ns = rank_nullspace(sys);

        // accumulate shifts t^s * w of already chosen vectors, then keep the stripe
        // solutions that extend the span: those have exact degree d and are new.
        Matrix<K> acc(0, cols);
        auto push_if_new = [&](const std::vector<K>& v) -> bool {
            acc.a.push_back(v);
            acc.m = static_cast<int>(acc.a.size());
            acc.n = cols;
            if (rank_of(acc) == acc.m) return true;
            acc.a.pop_back();
            acc.m = static_cast<int>(acc.a.size());
            return false;
        };
        for (size_t w = 0; w < out.vectors.size(); ++w) {
            int c = out.indices[w];
            for (int s = 0; s + c <= d; ++s) {
                std::vector<K> flat(cols, K::zero());
                for (int j = 0; j < n; ++j)
                    for (int e = 0; e <= out.vectors[w][j].deg(); ++e)
                        flat[j * (d + 1) + e + s] = out.vectors[w][j].c[e];
                push_if_new(flat);
            }
        }
        for (const auto& v : ns.nullspace) {
            if (static_cast<int>(out.vectors.size()) == target) break;
            if (!push_if_new(v)) continue;
            std::vector<Poly> vec(n);
            for (int j = 0; j < n; ++j) {
                std::vector<K> cs(v.begin() + j * (d + 1), v.begin() + (j + 1) * (d + 1));
                vec[j] = Poly(std::move(cs));
            }
            out.vectors.push_back(std::move(vec));
            out.indices.push_back(d);
        }
        if (static_cast<int>(out.vectors.size()) == target) {
            // column-reduced: top-degree coefficient vectors are independent
            Matrix<K> top(target, n);
            for (int w = 0; w < target; ++w)
                for (int j = 0; j < n; ++j) top[w][j] = out.vectors[w][j].coeff(out.indices[w]);
            if (rank_of(top) != target)
                throw std::logic_error("minimal_kernel_basis: basis not column reduced");
            return out;
        }
    }
    throw std::domain_error("minimal_kernel_basis: bound too small");
}

}  // namespace plab
