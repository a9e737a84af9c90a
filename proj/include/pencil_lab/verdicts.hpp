#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "pencil.hpp"

namespace plab {

namespace detail {

// One entry per closure point: a cluster of degree d stands for d points with the
// same part chain, and every per-point formula below is evaluated on this expansion.
template <class K>
std::vector<std::vector<std::pair<int, int>>> geometric_points(const PencilInvariants<K>& inv) {
    std::vector<std::vector<std::pair<int, int>>> pts;
    for (const auto& cl : inv.clusters)
        for (int i = 0; i < cl.point_degree; ++i) pts.push_back(cl.parts);
    std::sort(pts.begin(), pts.end(), std::greater<>());
    return pts;
}

inline std::vector<int> expand_parts(const std::vector<std::pair<int, int>>& parts) {
    std::vector<int> a;
    for (auto& [ai, p] : parts) a.insert(a.end(), p, ai);
    return a;
}

}  // namespace detail

// Ambient Segre symbol in the classical bracket notation, one entry per closure point,
// multiplicities expanded: [(2,1),1], [2,2], [(1,1,1),1]. Empty support prints [].
template <class K>
std::string segre_symbol_string(const PencilInvariants<K>& inv) {
    std::vector<std::vector<int>> expanded;
    for (auto& p : detail::geometric_points(inv)) expanded.push_back(detail::expand_parts(p));
    std::sort(expanded.begin(), expanded.end(), std::greater<>());
    std::string s = "[";
    for (size_t i = 0; i < expanded.size(); ++i) {
        if (i) s += ",";
        if (expanded[i].size() == 1)
            s += std::to_string(expanded[i][0]);
        else {
            s += "(";
            for (size_t j = 0; j < expanded[i].size(); ++j) {
                if (j) s += ",";
                s += std::to_string(expanded[i][j]);
            }
            s += ")";
        }
    }
    return s + "]";
}

enum class StabilityCase {
    trivial_sum,
    stable,
    strictly_semistable,
    unstable,
    locally_free_small_n,
};

inline std::string to_string(StabilityCase c) {
    switch (c) {
        case StabilityCase::trivial_sum: return "trivial-sum";
        case StabilityCase::stable: return "stable";
        case StabilityCase::strictly_semistable: return "strictly-semistable";
        case StabilityCase::unstable: return "unstable";
        case StabilityCase::locally_free_small_n: return "locally-free-small-n";
    }
    return "?";
}

struct StabilityVerdict {
    StabilityCase outcome = StabilityCase::unstable;
    std::string reason;
    long slope_num = 0, slope_den = 1;  // c1/(n-1) = (e-2)/(n-1), reduced
};

// Clause order matters: the double-hyperplane count is consulted before the
// compressibility test, and the 2*r0 trichotomy only fires when e = 0 and m = 0.
template <class K>
StabilityVerdict stability_verdict(const PencilInvariants<K>& inv) {
    StabilityVerdict sv;
    int e = inv.double_hyperplanes;
    if (inv.n >= 2) {
        long num = e - 2, den = inv.n - 1;
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0) g = 1;
        sv.slope_num = num / g;
        sv.slope_den = den / g;
    }
    std::ostringstream why;
    if (inv.n <= 2) {
        sv.outcome = StabilityCase::locally_free_small_n;
        why << "n = " << inv.n << ": the sheaf has rank " << inv.n - 1
            << " <= 1, is locally free, and the slope trichotomy does not apply";
    } else if (e == 2) {
        sv.outcome = StabilityCase::trivial_sum;
        why << "two double hyperplanes: the sheaf splits as O^" << inv.n - 1;
    } else if (e == 1) {
        sv.outcome = inv.m == 0 ? StabilityCase::stable : StabilityCase::unstable;
        why << "one double hyperplane, " << (inv.m == 0 ? "incompressible" : "compressible");
    } else if (inv.m > 0) {
        sv.outcome = StabilityCase::unstable;
        why << "compressible (m = " << inv.m << ") with no double hyperplane";
    } else {
        why << "incompressible, no double hyperplane: 2*r0 = " << 2 * inv.r0;
        if (2 * inv.r0 < inv.n + 1) {
            sv.outcome = StabilityCase::stable;
            why << " < n+1 = " << inv.n + 1;
        } else if (2 * inv.r0 == inv.n + 1) {
            sv.outcome = StabilityCase::strictly_semistable;
            why << " = n+1";
        } else {
            sv.outcome = StabilityCase::unstable;
            why << " > n+1 = " << inv.n + 1;
        }
    }
    sv.reason = why.str();
    return sv;
}

// Positive q with nonvanishing Ext^q against O. Computed on the incompressible
// reduction: the values are insensitive to the cone shift, so they are valid verbatim
// in the ambient frame as well. Empty set <=> locally free.
template <class K>
std::set<int> ext_support(const PencilInvariants<K>& inv) {
    std::set<int> qs;
    int base = inv.n_hat() - inv.r1_hat() - 1;
    for (const auto& cl : inv.clusters)
        for (int q : cl.prefix_p())
            if (base - q > 0) qs.insert(base - q);
    if (inv.r1_hat() > 0 && base - 1 > 0) qs.insert(base - 1);
    return qs;
}

// Projective dimension on the reduction, by two routes that must agree: the largest
// element of the Ext support, and the closed formula (regular: n-p-1 with p the
// smallest leading repetition count; irregular: n-r1-2; both clamped at 0).
template <class K>
int pdim(const PencilInvariants<K>& inv) {
    auto qs = ext_support(inv);
    int via_ext = qs.empty() ? 0 : *qs.rbegin();
    int closed;
    if (inv.r1_hat() == 0) {
        if (inv.clusters.empty())
            throw std::logic_error("pdim: a regular pencil must have singular members");
        int p = inv.clusters.front().parts.front().second;
        for (const auto& cl : inv.clusters) p = std::min(p, cl.parts.front().second);
        closed = std::max(0, inv.n_hat() - p - 1);
    } else {
        closed = std::max(0, inv.n_hat() - inv.r1_hat() - 2);
    }
    if (via_ext != closed) throw std::logic_error("pdim: Ext support and closed formula disagree");
    return closed;
}

// Largest projective dimension over the twists of the graded module. Matching of the
// two exceptional regular shapes is on the exact multiset of point shapes: two points
// of type (1^p) and (1^q), or a single point (2^q) or (2^q,1^p); p = 0 is a legal
// degenerate of the latter. Irregular pencils are exceptional exactly when every
// minimal index is 1. All formulas act on the incompressible reduction.
template <class K>
int gpdim(const PencilInvariants<K>& inv) {
    int nh = inv.n_hat();
    if (nh <= 1) return 0;
    if (inv.r1_hat() == 0) {
        auto pts = detail::geometric_points(inv);
        if (pts.size() == 2 && pts[0].size() == 1 && pts[1].size() == 1 &&
            pts[0][0].first == 1 && pts[1][0].first == 1) {
            int q = std::min(pts[0][0].second, pts[1][0].second);
            return std::max(0, nh - q - 1);
        }
        if (pts.size() == 1 && pts[0][0].first == 2 &&
            (pts[0].size() == 1 || (pts[0].size() == 2 && pts[0][1].first == 1))) {
            int q = pts[0][0].second;
            return std::max(0, nh - q - 1);
        }
        return nh - 2;
    }
    auto c = inv.positive_indices();
    bool all_ones = std::all_of(c.begin(), c.end(), [](int x) { return x == 1; });
    if (all_ones) return std::max(0, nh - inv.r1_hat() - 2);
    return nh - 1;
}

struct FreenessVerdict {
    bool is_free = false;
    std::vector<int> exponents;  // m zeros then the tail of the matched row
    std::string table_row;       // "none" when not free
};

namespace detail {

struct FreeRow {
    int n_hat;
    int r1_hat;
    std::vector<std::vector<std::pair<int, int>>> points;  // sorted descending
    const char* label;
    std::vector<int> tail;
};

template <class K>
const FreeRow* match_free_row(const PencilInvariants<K>& inv) {
    using P = std::vector<std::pair<int, int>>;
    static const std::vector<FreeRow> rows = {
        {1, 0, {P{{1, 1}}, P{{1, 1}}}, "[1,1]", {}},
        {1, 0, {P{{2, 1}}}, "[2]", {}},
        {2, 0, {P{{1, 1}}, P{{1, 1}}, P{{1, 1}}}, "[1,1,1]", {-2}},
        {2, 0, {P{{2, 1}}, P{{1, 1}}}, "[2,1]", {-2}},
        {2, 0, {P{{3, 1}}}, "[3]", {-2}},
        {2, 0, {P{{2, 1}, {1, 1}}}, "[(2,1)]", {-1}},
        {2, 0, {P{{1, 2}}, P{{1, 1}}}, "[(1,1),1]", {-1}},
        {2, 1, {}, "[] (u,v)=(1,1)", {-1}},
        {3, 0, {P{{1, 2}}, P{{1, 2}}}, "[(1,1),(1,1)]", {-1, -1}},
        {3, 0, {P{{2, 2}}}, "[(2,2)]", {-1, -1}},
        {3, 1, {P{{1, 1}}}, "[1] (u,v)=(2,1)", {-1, -1}},
    };
    auto pts = geometric_points(inv);
    for (const auto& row : rows)
        if (row.n_hat == inv.n_hat() && row.r1_hat == inv.r1_hat() && row.points == pts)
            return &row;
    return nullptr;
}

}  // namespace detail

// Shape lookup against the classification of free pencils, cross-checked against the
// Ext support: a mismatch between the two routes is a hard error, never a verdict.
template <class K>
FreenessVerdict freeness(const PencilInvariants<K>& inv) {
    FreenessVerdict fv;
    const detail::FreeRow* row = detail::match_free_row(inv);
    bool ext_empty = ext_support(inv).empty();
    if ((row != nullptr) != ext_empty)
        throw std::logic_error("freeness: table match and Ext support disagree");
    if (!row) {
        fv.table_row = "none";
        return fv;
    }
    fv.is_free = true;
    fv.table_row = row->label;
    fv.exponents.assign(inv.m, 0);
    fv.exponents.insert(fv.exponents.end(), row->tail.begin(), row->tail.end());
    return fv;
}

struct SchemeComponent {
    std::string kind;     // "scroll-Y" or "linear-Upsilon"
    int dimension = 0;    // on the incompressible reduction
    int multiplicity = 1; // fiber length a_k - a_{k+1}; 1 for the scroll
    int copies = 1;       // closure points in the carrying cluster
    std::string base;     // cluster point, or "" for the scroll
    int prefix = 0;       // k for linear pieces, 0 for the scroll
    int degree = 0;       // scroll degree v, 0 otherwise
};

struct SchemeReport {
    std::vector<SchemeComponent> components;
    long h0_structure_sheaf = 0;
    long h0_residual = 0;  // sum of deg * a_{j,1}; equals h0 itself when regular
    int dim_Xi = 0;        // ambient frame
    int dim_Xi_reduced = 0;
    int cone_shift = 0;    // m: ambient components are cones, dimensions shifted by m
};

// Primary components of the Jacobian scheme on the reduction: a rational normal
// scroll of dimension r1 and degree v when irregular, plus one linear piece per
// (cluster, prefix) of dimension r1 + q_k - 1 with fiber length a_k - a_{k+1}.
// Compressible input turns every component into a cone; only dim_Xi is reported in
// both frames here, the shift being uniform.
template <class K>
SchemeReport jacobian_report(const PencilInvariants<K>& inv) {
    SchemeReport rep;
    rep.cone_shift = inv.m;
    int r1 = inv.r1_hat();
    if (r1 == 0 && inv.clusters.empty())
        throw std::logic_error("jacobian_report: a regular pencil must have singular members");
    if (r1 > 0) {
        SchemeComponent sc;
        sc.kind = "scroll-Y";
        sc.dimension = r1;
        sc.degree = inv.v;
        rep.components.push_back(std::move(sc));
    }
    for (const auto& cl : inv.clusters) {
        auto q = cl.prefix_p();
        for (size_t k = 0; k < cl.parts.size(); ++k) {
            SchemeComponent c;
            c.kind = "linear-Upsilon";
            c.dimension = r1 + q[k] - 1;
            int next = k + 1 < cl.parts.size() ? cl.parts[k + 1].first : 0;
            c.multiplicity = cl.parts[k].first - next;
            c.copies = cl.point_degree;
            c.base = cl.point.str("t");
            c.prefix = static_cast<int>(k) + 1;
            rep.components.push_back(std::move(c));
        }
        rep.h0_residual += static_cast<long>(cl.point_degree) * cl.parts.front().first;
    }
    rep.h0_structure_sheaf = r1 > 0 ? 1 : rep.h0_residual;
    rep.dim_Xi_reduced = std::max(inv.r0_hat() - 1, r1);
    rep.dim_Xi = rep.dim_Xi_reduced + inv.m;
    if (rep.dim_Xi != std::max(inv.r0 - 1, inv.r1))
        throw std::logic_error("jacobian_report: cone dimension check failed");
    return rep;
}

template <class K>
struct P3Row {
    PencilInvariants<K> inv;
    std::string symbol;
    std::array<int, 3> chern{0, 0, 0};
    std::string stability;
    int pdim = 0;
    int gpdim = 0;
    bool free = false;
    std::vector<int> exponents;  // when free
    std::string resolution;      // when not free
};

// Full classification row for a pencil on P^3. Free rows carry exponents and Chern
// classes of the split bundle; the non-free ones are all regular incompressible with
// pdim 1 and a resolution shape determined by r0 alone.
template <class K>
P3Row<K> p3_classify(const SymmetricPencil<K>& P) {
    if (P.n != 3) throw std::invalid_argument("p3_classify: only P^3 is tabulated");
    P3Row<K> row;
    row.inv = segre_data(P);
    row.symbol = segre_symbol_string(row.inv);
    row.pdim = pdim(row.inv);
    row.gpdim = gpdim(row.inv);
    auto fv = freeness(row.inv);
    row.free = fv.is_free;
    if (fv.is_free) {
        row.exponents = fv.exponents;
        row.chern = {fv.exponents[0] + fv.exponents[1], fv.exponents[0] * fv.exponents[1], 0};
        row.stability = "free";
        return row;
    }
    if (row.inv.m != 0 || row.inv.r1 != 0 || row.pdim != 1)
        throw std::logic_error("p3_classify: non-free rows must be regular with pdim 1");
    row.stability = to_string(stability_verdict(row.inv).outcome);
    switch (row.inv.r0) {
        case 1:
            row.chern = {-2, 3, 4};
            row.resolution = "0 -> O(-3)^2 -> O(-2)^4 -> T -> 0";
            break;
        case 2:
            row.chern = {-2, 2, 2};
            row.resolution = "0 -> O(-3) -> O(-2)^2 + O(-1) -> T -> 0";
            break;
        case 3:
            row.chern = {-1, 1, 1};
            row.resolution = "0 -> O(-2) -> O(-1)^3 -> T -> 0";
            break;
        default:
            throw std::logic_error("p3_classify: r0 out of range on P^3");
    }
    return row;
}

struct AtlasRow {
    PencilInvariants<Rational> inv;
    std::string symbol;
    StabilityVerdict stability;
    std::set<int> ext;
    int pdim = 0;
    int gpdim = 0;
    FreenessVerdict free;
};

struct SplittingRow {
    int r1 = 0;
    int u = 0, v = 0;
    std::vector<int> degree_vector;  // ascending, zeros counted
    int h0_torsion = 0;              // u - v
    int m = 0;                       // zeros in the degree vector
    bool completely_irregular = false;
};

namespace detail {

// Part chains of total weight w with at most `cap` parts, i.e. integer partitions of w
// grouped into (value, repetition) runs, largest value first.
inline std::vector<std::vector<std::pair<int, int>>> partition_chains(int w, int cap) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart, int slots) -> void {
        if (rest == 0) {
            std::vector<std::pair<int, int>> chain;
            for (int a : cur) {
                if (!chain.empty() && chain.back().first == a)
                    ++chain.back().second;
                else
                    chain.push_back({a, 1});
            }
            out.push_back(std::move(chain));
            return;
        }
        if (slots == 0) return;
        for (int a = std::min(rest, maxpart); a >= 1; --a) {
            cur.push_back(a);
            self(self, rest - a, a, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, w, w, cap);
    return out;
}

// Multisets of part chains with given total weight, each chain's part count capped.
// Canonical form: chains nonincreasing in lexicographic order; an empty bound means
// the first pick is unconstrained.
inline std::vector<std::vector<std::vector<std::pair<int, int>>>> symbol_multisets(int w,
                                                                                   int cap) {
    using Chain = std::vector<std::pair<int, int>>;
    std::vector<std::vector<Chain>> out;
    if (w == 0) {
        out.push_back({});
        return out;
    }
    std::vector<Chain> cur;
    auto rec = [&](auto&& self, int rest, const Chain& bound) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int w0 = rest; w0 >= 1; --w0)
            for (const auto& ch : partition_chains(w0, cap)) {
                if (!bound.empty() && !(ch <= bound)) continue;
                cur.push_back(ch);
                self(self, rest - w0, ch);
                cur.pop_back();
            }
    };
    rec(rec, w, Chain{});
    return out;
}

// Synthetic invariants for an atlas row: every point is its own rational cluster at
// t = 0, 1, 2, ... so all cross-identities hold by construction.
inline PencilInvariants<Rational> synthetic_invariants(
    int n, int r1, const std::vector<int>& degree_vector,
    const std::vector<std::vector<std::pair<int, int>>>& points) {
    PencilInvariants<Rational> inv;
    inv.n = n;
    inv.r1 = r1;
    inv.degree_vector = degree_vector;
    inv.m = static_cast<int>(std::count(degree_vector.begin(), degree_vector.end(), 0));
    int v = 0;
    for (int c : degree_vector) v += c;
    inv.v = v;
    inv.u = n + 1 - v - r1;
    long next = 0;
    int maxp = 0;
    for (const auto& parts : points) {
        SegreCluster<Rational> cl;
        cl.point = UniPoly<Rational>::linear_root(Rational(next++));
        cl.point_degree = 1;
        cl.parts = parts;
        maxp = std::max(maxp, cl.sum_p());
        if (r1 + cl.sum_p() == n) ++inv.double_hyperplanes;
        inv.clusters.push_back(std::move(cl));
    }
    inv.r0 = r1 + maxp;
    inv.homography = identity_matrix(2, Rational::one());
    return inv;
}

inline void check_atlas_n(int n) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("atlas: n out of the tabulated range 1..12");
}

inline AtlasRow make_atlas_row(PencilInvariants<Rational> inv) {
    AtlasRow row;
    row.inv = std::move(inv);
    row.symbol = segre_symbol_string(row.inv);
    row.stability = stability_verdict(row.inv);
    row.ext = ext_support(row.inv);
    row.pdim = plab::pdim(row.inv);
    row.gpdim = plab::gpdim(row.inv);
    row.free = freeness(row.inv);
    return row;
}

}  // namespace detail

// All regular incompressible signatures on P^n: multisets of part chains of total
// weight n+1, each point's corank capped at n.
inline std::vector<AtlasRow> atlas_regular(int n) {
    detail::check_atlas_n(n);
    std::vector<AtlasRow> rows;
    for (const auto& sym : detail::symbol_multisets(n + 1, n))
        rows.push_back(detail::make_atlas_row(detail::synthetic_invariants(n, 0, {}, sym)));
    return rows;
}

// All irregular signatures on P^n, compressible ones included: r1 >= 1, every
// splitting (u, v), every ascending degree vector summing to v, every symbol of
// weight u - v with per-point corank capped at n - r1.
inline std::vector<AtlasRow> atlas_irregular(int n) {
    detail::check_atlas_n(n);
    std::vector<AtlasRow> rows;
    for (int r1 = 1; r1 <= n; ++r1)
        for (int v = 0; 2 * v <= n + 1 - r1; ++v) {
            int W = n + 1 - r1 - 2 * v;
            std::vector<std::vector<int>> dvs;
            std::vector<int> cur;
            auto rec = [&](auto&& self, int rest, int len, int minval) -> void {
                if (len == r1) {
                    if (rest == 0) dvs.push_back(cur);
                    return;
                }
                for (int c = minval; c <= rest; ++c) {
                    cur.push_back(c);
                    self(self, rest - c, len + 1, c);
                    cur.pop_back();
                }
            };
            rec(rec, v, 0, 0);
            auto symbols = detail::symbol_multisets(W, n - r1);
            for (const auto& dv : dvs)
                for (const auto& sym : symbols)
                    rows.push_back(
                        detail::make_atlas_row(detail::synthetic_invariants(n, r1, dv, sym)));
        }
    return rows;
}

// The splitting-type table on P^n: every (r1, u >= v, degree vector) with
// u + v + r1 = n + 1, with no realizability cap on the symbol side.
inline std::vector<SplittingRow> atlas_splitting(int n) {
    detail::check_atlas_n(n);
    std::vector<SplittingRow> rows;
    for (int r1 = 1; r1 <= n; ++r1)
        for (int v = 0; 2 * v <= n + 1 - r1; ++v) {
            int u = n + 1 - r1 - v;
            std::vector<int> cur;
            auto rec = [&](auto&& self, int rest, int len, int minval) -> void {
                if (len == r1) {
                    if (rest != 0) return;
                    SplittingRow row;
                    row.r1 = r1;
                    row.u = u;
                    row.v = v;
                    row.degree_vector = cur;
                    row.h0_torsion = u - v;
                    row.m = static_cast<int>(std::count(cur.begin(), cur.end(), 0));
                    row.completely_irregular = u == v;
                    rows.push_back(std::move(row));
                    return;
                }
                for (int c = minval; c <= rest; ++c) {
                    cur.push_back(c);
                    self(self, rest - c, len + 1, c);
                    cur.pop_back();
                }
            };
            rec(rec, v, 0, 0);
        }
    return rows;
}

}  // namespace plab
