#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "multipoly.hpp"
#include "pencil.hpp"
#include "verdicts.hpp"

namespace plab {

// ---------------------------------------------------------------------------
// Regular sequences of forms
// ---------------------------------------------------------------------------

template <class K>
struct RegSequence {
    int n = 0;                        // ambient P^n, forms in x0..xn
    int k = 0;
    std::vector<MultiPoly<K>> forms;  // homogeneous, ascending degree
    std::vector<int> d;               // d_i = deg f_i - 1
    bool screened = true;             // regularity certified rather than assumed
    std::string warning;              // set when regularity is assumed

    int sum_d() const { return std::accumulate(d.begin(), d.end(), 0); }
};

namespace detail {

template <class K>
K k_scalar(long v) {
    K s = K::zero();
    long a = v < 0 ? -v : v;
    for (long i = 0; i < a; ++i) s += K::one();
    return v < 0 ? -s : s;
}

// per-degree monomial tables: ordered list plus position lookup
struct BasisCache {
    int nvars = 0;

    explicit BasisCache(int nv) : nvars(nv) {}

    const std::vector<Expo>& mons(int deg) { return slot(deg).first; }
    int pos(int deg, const Expo& e) { return slot(deg).second.at(e); }
    long dim(int deg) { return deg < 0 ? 0 : dim_forms(nvars, deg); }

  private:
    using Slot = std::pair<std::vector<Expo>, std::map<Expo, int, DegRevLexDesc>>;
    std::map<int, Slot> by_deg;

    Slot& slot(int deg) {
        auto it = by_deg.find(deg);
        if (it == by_deg.end()) {
            Slot s;
            if (deg >= 0) {
                s.first = monomials_of_degree(nvars, deg);
                for (int i = 0; i < static_cast<int>(s.first.size()); ++i)
                    s.second.emplace(s.first[i], i);
            }
            it = by_deg.emplace(deg, std::move(s)).first;
        }
        return it->second;
    }
};

// dimension of the degree-t slice of the ideal spanned by `gens`
template <class K>
long ideal_dim_at(const std::vector<MultiPoly<K>>& gens, int t, BasisCache& bc) {
    std::vector<SparseRow<K>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        int e = g.total_degree();
        if (e > t) continue;
        for (const auto& mu : bc.mons(t - e)) {
            SparseRow<K> row;
            for (const auto& [ge, gc] : g.terms) {
                Expo lam = ge;
                for (int q = 0; q < bc.nvars; ++q) lam[q] += mu[q];
                row.emplace(bc.pos(t, lam), gc);
            }
            rows.push_back(std::move(row));
        }
    }
    return sparse_rank(std::move(rows), bc.dim(t));
}

// Complete-intersection probe: the quotient's Hilbert function can only exceed the
// product-formula prediction, so any excess certifies a non-regular sequence.
template <class K>
void hilbert_probe(RegSequence<K>& s) {
    int nv = s.n + 1;
    int tmax = 2;
    for (int di : s.d) tmax += di + 1;
    if (dim_forms(nv, tmax) > 60000) {
        s.screened = false;
        s.warning = "regularity assumed: Hilbert probe window too large";
        return;
    }
    std::vector<long> num(tmax + 1, 0);
    num[0] = 1;
    for (int di : s.d) {
        int e = di + 1;
        for (int t = tmax; t >= e; --t) num[t] -= num[t - e];
    }
    for (int rep = 0; rep < nv; ++rep)  // divide by (1-t)^{nv}: iterated prefix sums
        for (int t = 1; t <= tmax; ++t) num[t] += num[t - 1];

    BasisCache bc(nv);
    for (int t = 1; t <= tmax; ++t) {
        long actual = bc.dim(t) - ideal_dim_at(s.forms, t, bc);
        if (actual > num[t])
            throw std::invalid_argument("make_regseq: Hilbert probe rejects the sequence");
        if (actual < num[t])
            throw std::logic_error("make_regseq: quotient dimension below the complete-intersection bound");
    }
    s.screened = true;
}

}  // namespace detail

template <class K>
RegSequence<K> make_regseq(std::vector<MultiPoly<K>> forms, int n) {
    if (n < 1) throw std::invalid_argument("make_regseq: need n >= 1");
    int k = static_cast<int>(forms.size());
    if (k < 1) throw std::invalid_argument("make_regseq: empty sequence");
    if (k > n) throw std::invalid_argument("make_regseq: need k <= n");
    for (auto& f : forms) {
        if (f.nvars > n + 1)
            throw std::invalid_argument("make_regseq: form uses more than n+1 variables");
        if (f.nvars < n + 1) f = f.widened(n + 1);
        if (f.is_zero() || !f.is_homogeneous() || f.total_degree() < 1)
            throw std::invalid_argument("make_regseq: forms must be nonzero homogeneous of positive degree");
    }
    std::stable_sort(forms.begin(), forms.end(), [](const MultiPoly<K>& a, const MultiPoly<K>& b) {
        return a.total_degree() < b.total_degree();
    });
    RegSequence<K> s;
    s.n = n;
    s.k = k;
    s.forms = std::move(forms);
    for (const auto& f : s.forms) s.d.push_back(f.total_degree() - 1);
    if (k == 2) {
        if (!gcd_multi(s.forms[0], s.forms[1]).is_constant())
            throw std::invalid_argument("make_regseq: the two forms share a common factor");
    } else if (k > 2) {
        detail::hilbert_probe(s);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Jacobian and its graded syzygies
// ---------------------------------------------------------------------------

template <class K>
struct JacobianMatrix {
    int n = 0, k = 0;
    std::vector<std::vector<MultiPoly<K>>> rows;  // k gradient rows of n+1 entries
};

template <class K>
JacobianMatrix<K> jacobian(const RegSequence<K>& s) {
    JacobianMatrix<K> J;
    J.n = s.n;
    J.k = s.k;
    for (int i = 0; i < s.k; ++i) {
        std::vector<MultiPoly<K>> row;
        MultiPoly<K> euler(s.n + 1);
        for (int j = 0; j <= s.n; ++j) {
            row.push_back(s.forms[i].partial(j));
            euler += MultiPoly<K>::variable(s.n + 1, j) * row.back();
        }
        if (euler != s.forms[i] * detail::k_scalar<K>(s.d[i] + 1))
            throw std::logic_error("jacobian: Euler identity failed");
        J.rows.push_back(std::move(row));
    }
    return J;
}

namespace detail {

// degree-a coefficient matrix of J: columns (x_j, mu in R_a), rows (i, lambda in R_{a+d_i})
template <class K>
std::vector<SparseRow<K>> jac_coeff_rows(const RegSequence<K>& s, const JacobianMatrix<K>& J,
                                         int a, BasisCache& bc, long& ncols) {
    int nv = s.n + 1;
    long ra = bc.dim(a);
    ncols = nv * ra;
    std::vector<long> off(s.k + 1, 0);
    for (int i = 0; i < s.k; ++i) off[i + 1] = off[i] + bc.dim(a + s.d[i]);
    std::vector<SparseRow<K>> rows(off[s.k]);
    const auto& mus = bc.mons(a);
    for (int i = 0; i < s.k; ++i)
        for (int j = 0; j < nv; ++j)
            for (const auto& [ge, gc] : J.rows[i][j].terms)
                for (long p = 0; p < ra; ++p) {
                    Expo lam = ge;
                    for (int q = 0; q < nv; ++q) lam[q] += mus[p][q];
                    rows[off[i] + bc.pos(a + s.d[i], lam)].emplace(j * ra + p, gc);
                }
    return rows;
}

}  // namespace detail

template <class K>
struct SyzygyBasis {
    int degree = 0;
    long dim = 0;
    std::vector<std::vector<MultiPoly<K>>> basis;  // n+1 components per vector
};

template <class K>
SyzygyBasis<K> syzygies(const RegSequence<K>& s, int a) {
    if (a < 0) throw std::invalid_argument("syzygies: degree must be >= 0");
    detail::BasisCache bc(s.n + 1);
    auto J = jacobian(s);
    long ncols = 0;
    auto rows = detail::jac_coeff_rows(s, J, a, bc, ncols);
    auto ns = sparse_rank_nullspace(std::move(rows), ncols);

    SyzygyBasis<K> out;
    out.degree = a;
    out.dim = ncols - ns.rank;
    long ra = bc.dim(a);
    const auto& mus = bc.mons(a);
    for (const auto& w : ns.nullspace) {
        std::vector<MultiPoly<K>> nu(s.n + 1, MultiPoly<K>(s.n + 1));
        for (const auto& [c, val] : w) nu[c / ra].add_term(mus[c % ra], val);
        out.basis.push_back(std::move(nu));
    }
    if (static_cast<long>(out.basis.size()) != out.dim)
        throw std::logic_error("syzygies: nullspace extraction lost vectors");
    return out;
}

template <class K>
long syzygy_dim(const RegSequence<K>& s, int a) {
    detail::BasisCache bc(s.n + 1);
    auto J = jacobian(s);
    long ncols = 0;
    auto rows = detail::jac_coeff_rows(s, J, a, bc, ncols);
    return ncols - sparse_rank(std::move(rows), ncols);
}

template <class K>
std::vector<long> syzygy_dims(const RegSequence<K>& s, int a_max) {
    detail::BasisCache bc(s.n + 1);
    auto J = jacobian(s);
    std::vector<long> out;
    for (int a = 0; a <= a_max; ++a) {
        long ncols = 0;
        auto rows = detail::jac_coeff_rows(s, J, a, bc, ncols);
        out.push_back(ncols - sparse_rank(std::move(rows), ncols));
    }
    return out;
}

template <class K>
long compressibility_general(const RegSequence<K>& s) {
    return syzygy_dim(s, 0);
}

// ---------------------------------------------------------------------------
// Maximal minors: common factor and first Chern class
// ---------------------------------------------------------------------------

namespace detail {

// fraction-free determinant (Bareiss) over the polynomial ring
template <class K>
MultiPoly<K> poly_det(std::vector<std::vector<MultiPoly<K>>> M) {
    int k = static_cast<int>(M.size());
    int nv = M[0][0].nvars;
    MultiPoly<K> prev = MultiPoly<K>::constant(nv, K::one());
    bool neg = false;
    for (int c = 0; c < k; ++c) {
        int piv = -1;
        for (int i = c; i < k && piv < 0; ++i)
            if (!M[i][c].is_zero()) piv = i;
        if (piv < 0) return MultiPoly<K>(nv);
        if (piv != c) {
            std::swap(M[piv], M[c]);
            neg = !neg;
        }
        for (int i = c + 1; i < k; ++i)
            for (int j = c + 1; j < k; ++j)
                M[i][j] = divexact_multi(M[c][c] * M[i][j] - M[i][c] * M[c][j], prev);
        prev = M[c][c];
    }
    return neg ? -M[k - 1][k - 1] : M[k - 1][k - 1];
}

}  // namespace detail

template <class K>
struct MinorsContent {
    int l = 0;                           // degree of the common factor
    MultiPoly<K> factor;                 // monic gcd of the k x k minors
    long c1_T = 0;                       // l - sum d_i
    std::vector<MultiPoly<K>> minors;    // all k x k column minors, subsets in lex order
    std::vector<MultiPoly<K>> residual;  // nonzero minors divided by the factor
};

template <class K>
MinorsContent<K> minors_content(const RegSequence<K>& s) {
    auto J = jacobian(s);
    int nv = s.n + 1, k = s.k;
    MinorsContent<K> out;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        std::vector<std::vector<MultiPoly<K>>> M(k, std::vector<MultiPoly<K>>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M[i][j] = J.rows[i][c[j]];
        out.minors.push_back(detail::poly_det(std::move(M)));
        int t = k - 1;
        while (t >= 0 && c[t] == nv - k + t) --t;
        if (t < 0) break;
        ++c[t];
        for (int q = t + 1; q < k; ++q) c[q] = c[q - 1] + 1;
    }
    std::vector<MultiPoly<K>> nonzero;
    for (const auto& mp : out.minors)
        if (!mp.is_zero()) nonzero.push_back(mp);
    if (nonzero.empty()) throw std::domain_error("minors_content: Jacobian not generically surjective");
    out.factor = gcd_multi_list(nonzero);
    out.l = out.factor.total_degree();
    out.c1_T = out.l - s.sum_d();
    for (const auto& mp : nonzero) out.residual.push_back(divexact_multi(mp, out.factor));
    return out;
}

// ---------------------------------------------------------------------------
// Hilbert data of the cokernel and the Jacobian scheme dimension fit
// ---------------------------------------------------------------------------

template <class K>
struct HilbertQ {
    std::vector<std::pair<int, long>> coker_dims;     // t -> dim Q_t
    std::vector<std::pair<int, long>> residual_dims;  // t -> dim (R / I_res)_t
    int window_lo = 1, window_hi = 0;
    int l = 0;           // degree of the removed divisorial part
    int xi_dim = -2;     // -2 no fit, -1 empty, 0, 1, or 2 meaning ">= 2"
    long xi_degree = 0;  // constant value (dim 0) or slope (dim 1) of the tail
    bool conclusive = false;
    std::string note;
};

template <class K>
HilbertQ<K> hilbert_Q(const RegSequence<K>& s, int t_hi = -1, int t_lo = 1) {
    if (t_hi < 0) t_hi = 2 * s.sum_d() + 4;
    if (t_lo < 1) t_lo = 1;
    if (t_hi < t_lo) throw std::invalid_argument("hilbert_Q: empty window");

    HilbertQ<K> out;
    out.window_lo = t_lo;
    out.window_hi = t_hi;
    detail::BasisCache bc(s.n + 1);
    auto J = jacobian(s);
    for (int t = t_lo; t <= t_hi; ++t) {
        long ncols = 0;
        auto rows = detail::jac_coeff_rows(s, J, t, bc, ncols);
        long rk = sparse_rank(std::move(rows), ncols);
        long target = 0;
        for (int i = 0; i < s.k; ++i) target += bc.dim(t + s.d[i]);
        out.coker_dims.emplace_back(t, target - rk);
    }

    auto mc = minors_content(s);
    out.l = mc.l;
    for (int t = t_lo; t <= t_hi; ++t)
        out.residual_dims.emplace_back(t, bc.dim(t) - detail::ideal_dim_at(mc.residual, t, bc));
    if (out.l > 0)
        out.note = "degree-" + std::to_string(out.l) +
                   " divisorial part removed before the dimension fit";

    // tail fit on the residual Hilbert values
    long w = static_cast<long>(out.residual_dims.size());
    auto val = [&](long i) { return out.residual_dims[w - 4 + i].second; };
    if (w >= 4) {
        long v0 = val(0), v1 = val(1), v2 = val(2), v3 = val(3);
        if (v0 == v1 && v1 == v2 && v2 == v3) {
            out.xi_dim = v3 == 0 ? -1 : 0;
            out.xi_degree = v3;
            out.conclusive = true;
        } else if (v1 - v0 == v2 - v1 && v2 - v1 == v3 - v2 && v3 - v2 > 0) {
            out.xi_dim = 1;
            out.xi_degree = v3 - v2;
            out.conclusive = true;
        } else if (w >= 5) {
            long u = out.residual_dims[w - 5].second;
            long d1 = v0 - u, d2 = v1 - v0, d3 = v2 - v1, d4 = v3 - v2;
            if (d2 - d1 == d3 - d2 && d3 - d2 == d4 - d3 && d4 - d3 > 0) {
                out.xi_dim = 2;  // growth of a >= 2-dimensional part
                out.conclusive = true;
            }
        }
    }
    if (!out.conclusive) {
        if (!out.note.empty()) out.note += "; ";
        out.note += "no stable tail in the window";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated minimal free resolution
// ---------------------------------------------------------------------------

struct BettiTable {
    int D = 0;
    std::vector<std::map<int, int>> steps;  // step -> (degree -> count)
    bool complete_below_D = false;

    int steps_used() const {
        int u = 0;
        for (size_t i = 0; i < steps.size(); ++i)
            if (!steps[i].empty()) u = static_cast<int>(i) + 1;
        return u;
    }
};

namespace detail {

template <class K>
struct GradedFamily {
    std::vector<int> shifts;                         // coords at t: sum of R_{t-shift}
    std::map<int, std::vector<SparseRow<K>>> basis;  // t -> basis vectors
};

inline std::vector<long> family_offsets(const std::vector<int>& shifts, int t, BasisCache& bc) {
    std::vector<long> off(shifts.size() + 1, 0);
    for (size_t c = 0; c < shifts.size(); ++c) off[c + 1] = off[c] + bc.dim(t - shifts[c]);
    return off;
}

// multiply a degree-t coordinate vector by the monomial mu, landing in degree t2
template <class K>
SparseRow<K> coord_shift(const SparseRow<K>& v, const std::vector<int>& shifts,
                         const std::vector<long>& off, const std::vector<long>& off2, int t,
                         int t2, const Expo& mu, BasisCache& bc) {
    SparseRow<K> w;
    for (const auto& [c, val] : v) {
        size_t comp = std::upper_bound(off.begin(), off.end(), static_cast<long>(c)) - off.begin() - 1;
        Expo e = bc.mons(t - shifts[comp])[c - off[comp]];
        for (int q = 0; q < bc.nvars; ++q) e[q] += mu[q];
        w.emplace(off2[comp] + bc.pos(t2 - shifts[comp], e), val);
    }
    return w;
}

template <class K>
struct MinimalStep {
    std::map<int, int> counts;                       // degree -> count
    std::vector<std::pair<int, SparseRow<K>>> gens;  // (degree, representative)
};

// minimal generators degree by degree: quotient by the span of x_j * (previous slice)
template <class K>
MinimalStep<K> minimal_generators(const GradedFamily<K>& F, int D, BasisCache& bc) {
    MinimalStep<K> out;
    int nv = bc.nvars;
    for (int t = 0; t <= D; ++t) {
        auto bt = F.basis.find(t);
        if (bt == F.basis.end() || bt->second.empty()) continue;
        SparseSpan<K> span;
        auto prev = F.basis.find(t - 1);
        if (prev != F.basis.end()) {
            auto off = family_offsets(F.shifts, t - 1, bc);
            auto off2 = family_offsets(F.shifts, t, bc);
            for (const auto& v : prev->second)
                for (int j = 0; j < nv; ++j) {
                    Expo mu(nv, 0);
                    mu[j] = 1;
                    span.add(coord_shift(v, F.shifts, off, off2, t - 1, t, mu, bc));
                }
        }
        int g = 0;
        for (const auto& v : bt->second)
            if (span.add(v)) {
                ++g;
                out.gens.emplace_back(t, v);
            }
        if (span.rank() != static_cast<long>(bt->second.size()))
            throw std::logic_error("betti: generator count inconsistent with slice dimension");
        if (g) out.counts[t] = g;
    }
    return out;
}

// kernel of the map from the free module on the chosen generators
template <class K>
GradedFamily<K> kernel_family(const GradedFamily<K>& F, const MinimalStep<K>& G, int D,
                              BasisCache& bc) {
    GradedFamily<K> ker;
    for (const auto& [deg, rep] : G.gens) ker.shifts.push_back(deg);
    for (int t = 0; t <= D; ++t) {
        std::vector<long> coloff(G.gens.size() + 1, 0);
        for (size_t g = 0; g < G.gens.size(); ++g)
            coloff[g + 1] = coloff[g] + bc.dim(t - G.gens[g].first);
        long ncols = coloff.back();
        if (ncols == 0) continue;

        auto off_t = family_offsets(F.shifts, t, bc);
        std::vector<SparseRow<K>> rows(off_t.back());
        for (size_t g = 0; g < G.gens.size(); ++g) {
            int dg = G.gens[g].first;
            auto off_g = family_offsets(F.shifts, dg, bc);
            const auto& mus = bc.mons(t - dg);
            for (long p = 0; p < static_cast<long>(mus.size()); ++p) {
                auto w = coord_shift(G.gens[g].second, F.shifts, off_g, off_t, dg, t, mus[p], bc);
                for (const auto& [r, val] : w) rows[r].emplace(coloff[g] + p, val);
            }
        }
        auto ns = sparse_rank_nullspace(std::move(rows), ncols);
        if (!ns.nullspace.empty()) ker.basis.emplace(t, std::move(ns.nullspace));
    }
    return ker;
}

}  // namespace detail

template <class K>
BettiTable betti_truncated(const RegSequence<K>& s, int D = -1, int max_step = 2) {
    if (D < 0) D = s.sum_d() + 3;
    if (max_step < 0) throw std::invalid_argument("betti_truncated: need max_step >= 0");
    detail::BasisCache bc(s.n + 1);
    auto J = jacobian(s);

    detail::GradedFamily<K> fam;
    fam.shifts.assign(s.n + 1, 0);
    std::vector<long> tdims(D + 1, 0);
    for (int t = 0; t <= D; ++t) {
        long ncols = 0;
        auto rows = detail::jac_coeff_rows(s, J, t, bc, ncols);
        auto ns = sparse_rank_nullspace(std::move(rows), ncols);
        tdims[t] = ncols - ns.rank;
        if (!ns.nullspace.empty()) fam.basis.emplace(t, std::move(ns.nullspace));
    }

    BettiTable table;
    table.D = D;
    for (int step = 0; step <= max_step; ++step) {
        auto G = detail::minimal_generators(fam, D, bc);
        table.steps.push_back(G.counts);
        if (step < max_step) fam = detail::kernel_family(fam, G, D, bc);
    }

    bool complete = true;
    for (int t = 0; t <= D && complete; ++t) {
        long acc = 0;
        long sign = 1;
        for (const auto& st : table.steps) {
            for (const auto& [deg, cnt] : st) acc += sign * cnt * bc.dim(t - deg);
            sign = -sign;
        }
        if (acc != tdims[t]) complete = false;
    }
    table.complete_below_D = complete;
    return table;
}

// ---------------------------------------------------------------------------
// Freeness certificate
// ---------------------------------------------------------------------------

enum class FreeStatus { free_module, not_free, undetermined };

inline std::string to_string(FreeStatus s) {
    switch (s) {
        case FreeStatus::free_module: return "free";
        case FreeStatus::not_free: return "not-free";
        default: return "undetermined";
    }
}

template <class K>
struct FreenessCheck {
    FreeStatus status = FreeStatus::undetermined;
    std::vector<int> exponents;  // descending, set when free
    long c1_T = 0;
    BettiTable table;
};

template <class K>
FreenessCheck<K> freeness_up_to(const RegSequence<K>& s, int D = -1) {
    FreenessCheck<K> out;
    out.table = betti_truncated(s, D, 2);
    out.c1_T = minors_content(s).c1_T;
    if (!out.table.steps[1].empty()) {
        out.status = FreeStatus::not_free;
    } else {
        long gens = 0, degsum = 0;
        for (const auto& [deg, cnt] : out.table.steps[0]) {
            gens += cnt;
            degsum += static_cast<long>(deg) * cnt;
        }
        if (gens == s.n + 1 - s.k && degsum == -out.c1_T) {
            out.status = FreeStatus::free_module;
            for (const auto& [deg, cnt] : out.table.steps[0])
                for (int i = 0; i < cnt; ++i) out.exponents.push_back(-deg);
        } else {
            out.status = FreeStatus::undetermined;
        }
    }

    // quadric pencils must agree with the symbol classification
    if (s.k == 2 && s.d[0] == 1 && s.d[1] == 1 && out.status != FreeStatus::undetermined) {
        auto fv = freeness(segre_data(hessian_pencil(s.forms[0], s.forms[1])));
        bool lib = out.status == FreeStatus::free_module;
        if (lib != fv.is_free)
            throw std::logic_error("freeness_up_to: certificate disagrees with the pencil classification");
        if (lib) {
            auto a = out.exponents;
            auto b = fv.exponents;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b)
                throw std::logic_error("freeness_up_to: exponents disagree with the pencil classification");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equal-degree power lift
// ---------------------------------------------------------------------------

template <class K>
struct WebLift {
    RegSequence<K> tau;  // (f_i^{L/(d_i+1)}), all of degree L = lcm(d_i+1)
    int checked_up_to = 0;
};

template <class K>
WebLift<K> web_power_lift(const RegSequence<K>& s, int D = 4) {
    long L = 1;
    for (int di : s.d) L = std::lcm(L, static_cast<long>(di) + 1);
    WebLift<K> out;
    out.tau.n = s.n;
    out.tau.k = s.k;
    out.tau.screened = s.screened;
    out.tau.warning = s.warning;
    for (int i = 0; i < s.k; ++i) {
        out.tau.forms.push_back(s.forms[i].pow(static_cast<int>(L / (s.d[i] + 1))));
        out.tau.d.push_back(static_cast<int>(L) - 1);
    }
    for (int a = 0; a <= D; ++a)
        if (syzygy_dim(s, a) != syzygy_dim(out.tau, a))
            throw std::logic_error("web_power_lift: syzygy dimensions changed under the power lift");
    out.checked_up_to = D;
    return out;
}

// ---------------------------------------------------------------------------
// The rational 1-form of a length-2 sequence
// ---------------------------------------------------------------------------

template <class K>
struct OneForm {
    int n = 0;
    std::vector<MultiPoly<K>> omega;  // n+1 entries of degree d1 + d2 + 1
};

template <class K>
OneForm<K> rational_form(const RegSequence<K>& s) {
    if (s.k != 2) throw std::invalid_argument("rational_form: needs exactly two forms");
    OneForm<K> w;
    w.n = s.n;
    K a = detail::k_scalar<K>(s.d[0] + 1), b = detail::k_scalar<K>(s.d[1] + 1);
    MultiPoly<K> euler(s.n + 1);
    for (int j = 0; j <= s.n; ++j) {
        w.omega.push_back(s.forms[0] * s.forms[1].partial(j) * a -
                          s.forms[1] * s.forms[0].partial(j) * b);
        euler += MultiPoly<K>::variable(s.n + 1, j) * w.omega.back();
    }
    if (!euler.is_zero()) throw std::logic_error("rational_form: Euler contraction not zero");
    return w;
}

// ---------------------------------------------------------------------------
// Slope bounds on P^3
// ---------------------------------------------------------------------------

enum class SlopeBound { stable, semistable, inconclusive };

inline std::string to_string(SlopeBound s) {
    switch (s) {
        case SlopeBound::stable: return "stable";
        case SlopeBound::semistable: return "semistable";
        default: return "inconclusive";
    }
}

template <class K>
struct StabilityBound {
    SlopeBound verdict = SlopeBound::inconclusive;
    long deg_Q = 0;  // degree of the 1-dimensional part, 0 when dim <= 0
    int xi_dim = -2;
    int l = 0;
    std::string note;
};

template <class K>
StabilityBound<K> stability_bounds(const RegSequence<K>& s, int window = -1) {
    if (s.n != 3 || s.k != 2)
        throw std::invalid_argument("stability_bounds: needs a length-2 sequence on P^3");
    auto H = hilbert_Q(s, window);
    if (!H.conclusive)
        throw std::runtime_error("stability_bounds: Jacobian-scheme dimension fit inconclusive");

    StabilityBound<K> out;
    out.xi_dim = H.xi_dim;
    out.l = H.l;
    out.note = "deg interpreted as the degree of the 1-dimensional part of the Jacobian scheme";
    if (H.l > 0) out.note += "; measured on the residual scheme after removing the divisorial part";
    if (H.xi_dim >= 2) {
        out.note += "; residual dimension >= 2, bounds not applicable";
        return out;
    }
    out.deg_Q = H.xi_dim == 1 ? H.xi_degree : 0;
    long d1 = s.d[0], d2 = s.d[1];
    if (d1 + d2 <= 0) {
        out.note += "; degree hypothesis d1+d2 > 0 fails";
        return out;
    }
    if ((d1 + d2) % 2 == 0) {
        if (2 * out.deg_Q < d1 * d1 + d2 * d2 - d1 - d2 - 2)
            out.verdict = SlopeBound::stable;
        else if (2 * out.deg_Q < d1 * d1 + d2 * d2 + d1 + d2)
            out.verdict = SlopeBound::semistable;
    } else {
        if (2 * out.deg_Q < d1 * d1 + d2 * d2 - 1) out.verdict = SlopeBound::stable;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadric-pencil bridges
// ---------------------------------------------------------------------------

// quadratic form with prescribed Hessian (char != 2)
template <class K>
MultiPoly<K> quadratic_form(const Matrix<K>& A) {
    if (A.m != A.n) throw std::invalid_argument("quadratic_form: square matrix required");
    int nv = A.m;
    K half = (K::one() + K::one()).inv();
    MultiPoly<K> f(nv);
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) {
            K c = (i == j) ? A[i][i] * half : A[i][j];
            if (c.is_zero()) continue;
            Expo e(nv, 0);
            e[i] += 1;
            e[j] += 1;
            f.add_term(e, c);
        }
    return f;
}

template <class K>
RegSequence<K> pencil_sequence(const SymmetricPencil<K>& P) {
    return make_regseq<K>({quadratic_form(P.A), quadratic_form(P.B)}, P.n);
}

// normal-form quadric pencil realizing a classified row, widened by its compressibility
template <class K>
RegSequence<K> invariants_sequence(const PencilInvariants<K>& inv) {
    std::vector<int> pos;
    for (int c : inv.degree_vector)
        if (c > 0) pos.push_back(c);
    auto P = recover_pencil<K>(inv.r1 - inv.m, pos, inv.clusters);
    auto f = quadratic_form(P.A).widened(inv.n + 1);
    auto g = quadratic_form(P.B).widened(inv.n + 1);
    return make_regseq<K>({f, g}, inv.n);
}

}  // namespace plab
