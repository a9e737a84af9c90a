#pragma once

#include <chrono>
#include <random>
#include <sstream>

#include "parse.hpp"
#include "regseq.hpp"

// Built-in reproduction suite: nine deterministic end-to-end checks with pinned
// expected values, covering the classification tables, the worked examples, and
// the randomized structural properties. Each check reports pass/fail, a short
// failure detail, and its wall-clock time. No network, no external systems.

namespace plab {
namespace verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // first few failures; empty when passing
    double seconds = 0.0;
};

namespace detail {

class Check {
public:
    void req(bool ok, const std::string& msg) {
        if (ok) return;
        ++failures_;
        if (failures_ <= 6) {
            if (!detail_.empty()) detail_ += "; ";
            detail_ += msg;
        }
    }
    bool ok() const { return failures_ == 0; }
    std::string detail() const {
        if (failures_ > 6)
            return detail_ + "; (+" + std::to_string(failures_ - 6) + " more)";
        return detail_;
    }

private:
    int failures_ = 0;
    std::string detail_;
};

template <class F>
CheckResult run_check(int id, std::string name, F body) {
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
        r.pass = c.ok();
        r.detail = c.detail();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string show_set(const std::set<int>& s) {
    std::string r = "{";
    for (int x : s) {
        if (r.size() > 1) r += ",";
        r += std::to_string(x);
    }
    return r + "}";
}

inline std::string show_steps(const std::map<int, int>& step) {
    std::string r = "{";
    for (const auto& [d, c] : step) {
        if (r.size() > 1) r += ",";
        r += std::to_string(d) + ":" + std::to_string(c);
    }
    return r + "}";
}

// sequence assembled without the regularity screen, for pencils with a fixed
// component (the Jacobian syzygy module is defined regardless)
template <class K>
RegSequence<K> raw_sequence(std::vector<MultiPoly<K>> forms, int n) {
    for (auto& f : forms) f = f.widened(n + 1);
    std::stable_sort(forms.begin(), forms.end(),
                     [](const MultiPoly<K>& a, const MultiPoly<K>& b) {
                         return a.total_degree() < b.total_degree();
                     });
    RegSequence<K> s;
    s.n = n;
    s.k = static_cast<int>(forms.size());
    s.forms = std::move(forms);
    for (const auto& f : s.forms) s.d.push_back(f.total_degree() - 1);
    s.screened = false;
    s.warning = "regularity not established: fixed-component pencil";
    return s;
}

template <class K>
bool fixed_component(const PencilInvariants<K>& inv) {
    auto P = recover_pencil<K>(inv.r1 - inv.m, inv.positive_indices(), inv.clusters);
    return !gcd_multi(quadratic_form(P.A), quadratic_form(P.B)).is_constant();
}

template <class K>
std::multiset<std::vector<std::pair<int, int>>> point_shapes(
    const std::vector<SegreCluster<K>>& cls) {
    std::multiset<std::vector<std::pair<int, int>>> s;
    for (const auto& cl : cls)
        for (int i = 0; i < cl.point_degree; ++i) s.insert(cl.parts);
    return s;
}

}  // namespace detail

// 1. The thirteen regular Segre symbols on P^3: rebuild each pencil from its
// cluster data, classify, and confirm the resolution shape along the syzygy route.
inline CheckResult criterion1() {
    using detail::show_steps;
    return detail::run_check(1, "regular classification table on P3", [](detail::Check& c) {
        struct Want {
            const char* symbol;
            int r0;
            std::array<int, 3> chern;
            const char* stability;
            int pdim;
            bool free;
            const char* resolution;
        };
        static const char* kR1 = "0 -> O(-3)^2 -> O(-2)^4 -> T -> 0";
        static const char* kR2 = "0 -> O(-3) -> O(-2)^2 + O(-1) -> T -> 0";
        static const char* kR3 = "0 -> O(-2) -> O(-1)^3 -> T -> 0";
        static const std::vector<Want> table = {
            {"[1,1,1,1]", 1, {-2, 3, 4}, "stable", 1, false, kR1},
            {"[2,1,1]", 1, {-2, 3, 4}, "stable", 1, false, kR1},
            {"[2,2]", 1, {-2, 3, 4}, "stable", 1, false, kR1},
            {"[3,1]", 1, {-2, 3, 4}, "stable", 1, false, kR1},
            {"[4]", 1, {-2, 3, 4}, "stable", 1, false, kR1},
            {"[(1,1),1,1]", 2, {-2, 2, 2}, "strictly-semistable", 1, false, kR2},
            {"[2,(1,1)]", 2, {-2, 2, 2}, "strictly-semistable", 1, false, kR2},
            {"[(2,1),1]", 2, {-2, 2, 2}, "strictly-semistable", 1, false, kR2},
            {"[(3,1)]", 2, {-2, 2, 2}, "strictly-semistable", 1, false, kR2},
            {"[(1,1),(1,1)]", 2, {-2, 1, 0}, "free", 0, true, ""},
            {"[(2,2)]", 2, {-2, 1, 0}, "free", 0, true, ""},
            {"[(1,1,1),1]", 3, {-1, 1, 1}, "stable", 1, false, kR3},
            {"[(2,1,1)]", 3, {-1, 1, 1}, "stable", 1, false, kR3},
        };
        auto rows = atlas_regular(3);
        c.req(rows.size() == 13,
              "expected 13 regular rows on P3, got " + std::to_string(rows.size()));
        std::set<std::string> seen;
        for (const auto& row : rows) {
            const Want* w = nullptr;
            for (const auto& t : table)
                if (row.symbol == t.symbol) w = &t;
            c.req(w != nullptr, "unexpected symbol " + row.symbol);
            if (!w) continue;
            seen.insert(row.symbol);
            const std::string tag = row.symbol + ": ";

            auto P = recover_pencil<Rational>(0, {}, row.inv.clusters);
            auto p3 = p3_classify(P);
            c.req(p3.symbol == row.symbol, tag + "symbol round trip");
            c.req(p3.inv.r0 == w->r0, tag + "r0 = " + std::to_string(p3.inv.r0));
            c.req(p3.chern == w->chern, tag + "chern triple");
            c.req(p3.stability == w->stability, tag + "stability = " + p3.stability);
            c.req(p3.pdim == w->pdim, tag + "pdim = " + std::to_string(p3.pdim));
            c.req(p3.free == w->free, tag + "freeness flag");
            if (w->free) {
                auto e = p3.exponents;
                std::sort(e.begin(), e.end());
                c.req(e == std::vector<int>{-1, -1}, tag + "exponents");
            } else {
                c.req(p3.resolution == w->resolution, tag + "resolution string");
            }

            // resolution shape along the independent syzygy route
            auto s = invariants_sequence(row.inv);
            auto bt = betti_truncated(s, 6, 2);
            std::map<int, int> g0, g1;
            if (w->free)
                g0 = {{1, 2}};
            else if (w->r0 == 1)
                g0 = {{2, 4}}, g1 = {{3, 2}};
            else if (w->r0 == 2)
                g0 = {{1, 1}, {2, 2}}, g1 = {{3, 1}};
            else
                g0 = {{1, 3}}, g1 = {{2, 1}};
            c.req(bt.steps[0] == g0, tag + "betti step 0 = " + show_steps(bt.steps[0]));
            c.req(bt.steps[1] == g1, tag + "betti step 1 = " + show_steps(bt.steps[1]));
            c.req(bt.steps[2].empty(), tag + "betti step 2 nonempty");
            c.req(bt.complete_below_D, tag + "betti window not closed");
        }
        c.req(seen.size() == 13, "distinct symbols seen: " + std::to_string(seen.size()));
    });
}

// 2. The ten-row free-pencil table for n = 3, 4, 5: exact exponent multisets and
// the split-bundle section count dim Syz_a = sum over exponents e >= -a of
// dim R_{a+e}, for a <= 3.
inline CheckResult criterion2() {
    return detail::run_check(2, "free pencil table with syzygy dimensions", [](detail::Check& c) {
        struct Row {
            const char* forms;
            int nhat;
            int dr0, dr1;  // r0 = n + dr0, r1 = n + dr1
            std::vector<int> tail;
            const char* symbol;
            bool common_factor;
        };
        static const std::vector<Row> table = {
            {"x0*x1, x2*x3", 3, -1, -3, {-1, -1}, "[(1,1),(1,1)]", false},
            {"x0*x1 + x2*x3, x1^2 + x3^2", 3, -1, -3, {-1, -1}, "[(2,2)]", false},
            {"x0*x2, x0*x1 + x3^2", 3, -1, -2, {-1, -1}, "[1]", false},
            {"x0^2 + x2^2, x1^2 + x2^2", 2, -1, -2, {-2}, "[1,1,1]", false},
            {"x0*x1, x0^2 + x2^2", 2, -1, -2, {-2}, "[2,1]", false},
            {"2*x0*x2 + x1^2, x0*x1", 2, -1, -2, {-2}, "[3]", false},
            {"2*x0*x1 + x2^2, x0^2", 2, 0, -2, {-1}, "[(2,1)]", false},
            {"x0^2, x1^2 + x2^2", 2, 0, -2, {-1}, "[(1,1),1]", false},
            {"x0^2, x1^2", 1, 0, -1, {}, "[1,1]", false},
            {"x0^2, x0*x1", 1, 0, -1, {}, "[2]", true},
        };
        for (int n : {3, 4, 5}) {
            for (const auto& r : table) {
                const std::string tag =
                    "n=" + std::to_string(n) + " " + r.symbol + ": ";
                auto F = parse_forms<Rational>(r.forms, n + 1);
                auto inv = segre_data(hessian_pencil(F[0], F[1]));
                c.req(inv.m == n - r.nhat, tag + "m = " + std::to_string(inv.m));
                c.req(inv.r0 == n + r.dr0, tag + "r0 = " + std::to_string(inv.r0));
                c.req(inv.r1 == n + r.dr1, tag + "r1 = " + std::to_string(inv.r1));
                c.req(segre_symbol_string(inv) == r.symbol,
                      tag + "symbol = " + segre_symbol_string(inv));
                auto fv = freeness(inv);
                c.req(fv.is_free, tag + "not flagged free");
                std::vector<int> want(inv.m, 0);
                want.insert(want.end(), r.tail.begin(), r.tail.end());
                auto a = fv.exponents, b = want;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                c.req(a == b, tag + "exponent multiset");

                auto s = r.common_factor ? detail::raw_sequence(F, n)
                                         : make_regseq(F, n);
                auto dims = syzygy_dims(s, 3);
                for (int deg = 0; deg <= 3; ++deg) {
                    long wd = 0;
                    for (int e : want)
                        if (deg + e >= 0) wd += dim_forms(n + 1, deg + e);
                    c.req(dims[deg] == wd, tag + "dim Syz_" + std::to_string(deg) + " = " +
                                               std::to_string(dims[deg]) + " want " +
                                               std::to_string(wd));
                }
            }
        }
    });
}

// 3. One compound cluster with parts (6^3, 3^4, 2^3) on P^35.
inline CheckResult criterion3() {
    using detail::show_set;
    return detail::run_check(3, "compound cluster example on P35", [](detail::Check& c) {
        SegreCluster<Rational> cl;
        cl.point = UniPoly<Rational>::t();
        cl.point_degree = 1;
        cl.parts = {{6, 3}, {3, 4}, {2, 3}};
        auto P = recover_pencil<Rational>(0, {}, {cl});
        c.req(P.n == 35, "ambient dimension " + std::to_string(P.n));
        auto inv = segre_data(P);
        c.req(inv.m == 0 && inv.r1 == 0, "recovered pencil not regular");
        c.req(inv.r0 == 10, "r0 = " + std::to_string(inv.r0));
        c.req(detail::point_shapes(inv.clusters) == detail::point_shapes(std::vector<SegreCluster<Rational>>{cl}),
              "cluster shape round trip");
        auto ext = ext_support(inv);
        c.req(ext == std::set<int>{24, 27, 31}, "ext support = " + show_set(ext));
        c.req(pdim(inv) == 31, "pdim = " + std::to_string(pdim(inv)));
    });
}

// 4. The irregular example with r1 = 3, minimal indices (1,2,2), and two clusters
// on P^54: ext support, pdim, and the scroll component.
inline CheckResult criterion4() {
    using detail::show_set;
    return detail::run_check(4, "scroll example on P54", [](detail::Check& c) {
        SegreCluster<Rational> c1, c2;
        c1.point = UniPoly<Rational>::t();
        c1.point_degree = 1;
        c1.parts = {{3, 2}, {1, 4}};
        c2.point = UniPoly<Rational>::linear_root(Rational(1));
        c2.point_degree = 1;
        c2.parts = {{4, 5}, {3, 2}, {2, 3}};
        auto P = recover_pencil<Rational>(3, {1, 2, 2}, {c1, c2});
        c.req(P.n == 54, "ambient dimension " + std::to_string(P.n));
        auto inv = segre_data(P);
        c.req(inv.r1 == 3, "r1 = " + std::to_string(inv.r1));
        c.req(inv.positive_indices() == std::vector<int>{1, 2, 2}, "minimal indices");
        c.req(inv.u == 47 && inv.v == 5,
              "(u,v) = (" + std::to_string(inv.u) + "," + std::to_string(inv.v) + ")");
        auto ext = ext_support(inv);
        c.req(ext == std::set<int>{40, 43, 44, 45, 48, 49}, "ext support = " + show_set(ext));
        c.req(pdim(inv) == 49, "pdim = " + std::to_string(pdim(inv)));
        auto rep = jacobian_report(inv);
        int scrolls = 0;
        for (const auto& comp : rep.components) {
            if (comp.kind != "scroll-Y") continue;
            ++scrolls;
            c.req(comp.dimension == 3, "scroll dimension " + std::to_string(comp.dimension));
            c.req(comp.degree == 5, "scroll degree " + std::to_string(comp.degree));
        }
        c.req(scrolls == 1, "expected one scroll component");
        c.req(rep.components.size() == 6,
              "component count " + std::to_string(rep.components.size()));
    });
}

// 5. The one-parameter cubic-and-higher family for k = 0, 1, 2: Betti shape
// (5 generators in degree k+3, 4 relations in degree k+4, 1 in degree k+5),
// content-free minors with c1 = -2(k+2), and a not-free verdict.
inline CheckResult criterion5() {
    using detail::show_steps;
    return detail::run_check(5, "one-parameter family Betti shapes", [](detail::Check& c) {
        auto pw = [](const std::string& var, int e) {
            return e == 1 ? var : var + "^" + std::to_string(e);
        };
        for (int k = 0; k <= 2; ++k) {
            const std::string tag = "k=" + std::to_string(k) + ": ";
            std::string f = "x0*" + pw("x1", k + 2) + " + " + pw("x2", k + 3) + " + " +
                            pw("x2", k + 2) + "*x3";
            std::string g = pw("x2", k + 2) + "*x3 - " + pw("x1", k + 1) + "*x2*x3";
            auto s = make_regseq(parse_forms<Rational>(f + ", " + g, 4), 3);
            auto fc = freeness_up_to(s, k + 6);
            c.req(fc.status == FreeStatus::not_free, tag + "status " + to_string(fc.status));
            std::map<int, int> g0{{k + 3, 5}}, g1{{k + 4, 4}}, g2{{k + 5, 1}};
            c.req(fc.table.steps[0] == g0, tag + "step 0 = " + show_steps(fc.table.steps[0]));
            c.req(fc.table.steps[1] == g1, tag + "step 1 = " + show_steps(fc.table.steps[1]));
            c.req(fc.table.steps[2] == g2, tag + "step 2 = " + show_steps(fc.table.steps[2]));
            c.req(fc.table.complete_below_D, tag + "window not closed");
            auto mc = minors_content(s);
            c.req(mc.l == 0, tag + "content degree " + std::to_string(mc.l));
            c.req(mc.c1_T == -2 * (k + 2), tag + "c1 = " + std::to_string(mc.c1_T));
            long alt = 0;
            for (size_t step = 0; step < fc.table.steps.size(); ++step)
                for (const auto& [d, cnt] : fc.table.steps[step])
                    alt += (step % 2 ? -1L : 1L) * d * cnt;
            c.req(alt == -mc.c1_T, tag + "degree bookkeeping");
        }
    });
}

// 6. The length-two examples: the split pair, its cube-term deformation, the
// regenerations of (x0, x3^2), and the quartic with content of degree 2.
inline CheckResult criterion6() {
    return detail::run_check(6, "length-two examples and regenerations", [](detail::Check& c) {
        auto mkseq = [](const std::string& text) {
            return make_regseq(parse_forms<Rational>(text, 4), 3);
        };
        auto sigma = mkseq("x0*x1, x2^3 + x3^3");
        auto fs = freeness_up_to(sigma);
        c.req(fs.status == FreeStatus::free_module, "sigma not free");
        c.req(fs.exponents == std::vector<int>{-1, -2}, "sigma exponents");
        c.req(fs.c1_T == -3, "sigma c1");

        auto prime = mkseq("x0*x1, x0^2*x1 + x2^3 + x3^3");
        c.req(syzygy_dim(prime, 1) == 0, "deformed pair has a linear syzygy");
        c.req(minors_content(prime).c1_T == -3, "deformed pair c1");
        c.req(freeness_up_to(prime, 6).status == FreeStatus::not_free,
              "deformed pair not recognized as non-free");

        const std::vector<std::pair<const char*, std::vector<int>>> regen = {
            {"x0, x3^2", {0, 0}},
            {"x0, x0*x0 + x0*x1 + x0*x2 + x0*x3 + x3^2", {0, -1}},
            {"x0, x0^2 + x0*x1 + x3^2", {0, -1}},
            {"x0, x0^2 + x0*x3 + x3^2", {0, 0}},
        };
        for (const auto& [text, exps] : regen) {
            auto fc = freeness_up_to(mkseq(text));
            c.req(fc.status == FreeStatus::free_module, std::string(text) + ": not free");
            c.req(fc.exponents == exps, std::string(text) + ": exponents");
        }

        auto mc = minors_content(mkseq("x0*x1 + x2*x3, x0*x1*x2*x3"));
        c.req(mc.l == 2, "quartic content degree " + std::to_string(mc.l));
        c.req(mc.factor == parse_forms<Rational>("x0*x1 - x2*x3", 4)[0], "quartic content factor");
    });
}

// 7. The completely irregular pencil on P^5 and the twelve-row splitting table.
inline CheckResult criterion7() {
    using detail::show_set;
    return detail::run_check(7, "irregular pencil on P5 and the splitting table", [](detail::Check& c) {
        auto F = parse_forms<Rational>("x1*x5 + x3*x4, x2*x4 + x0*x5", 6);
        auto inv = segre_data(hessian_pencil(F[0], F[1]));
        c.req(inv.u == 2 && inv.v == 2,
              "(u,v) = (" + std::to_string(inv.u) + "," + std::to_string(inv.v) + ")");
        c.req(inv.degree_vector == std::vector<int>{1, 1}, "minimal indices");
        c.req(inv.clusters.empty() && inv.r0 == 2, "not completely irregular");
        auto ext = ext_support(inv);
        c.req(ext == std::set<int>{1}, "ext support = " + show_set(ext));
        c.req(pdim(inv) == 1, "pdim = " + std::to_string(pdim(inv)));
        auto sv = stability_verdict(inv);
        c.req(sv.outcome == StabilityCase::stable, "stability = " + to_string(sv.outcome));

        auto rows = atlas_splitting(5);
        c.req(rows.size() == 12, "splitting rows: " + std::to_string(rows.size()));
        using Row = std::tuple<int, int, int, std::vector<int>>;
        std::vector<Row> got;
        for (const auto& r : rows) {
            std::vector<int> pos;
            for (int x : r.degree_vector)
                if (x > 0) pos.push_back(x);
            got.push_back({r.r1, r.u, r.v, pos});
        }
        const std::vector<Row> expected = {
            {1, 5, 0, {}}, {1, 4, 1, {1}}, {1, 3, 2, {2}},    {2, 4, 0, {}},
            {2, 3, 1, {1}}, {2, 2, 2, {2}}, {2, 2, 2, {1, 1}}, {3, 3, 0, {}},
            {3, 2, 1, {1}}, {4, 2, 0, {}},  {4, 1, 1, {1}},    {5, 1, 0, {}},
        };
        c.req(got == expected, "splitting table rows");
        for (const auto& r : rows)
            c.req(r.h0_torsion == r.u - r.v, "torsion sections mismatch");
    });
}

// 8. Randomized structural properties over F_101, 200 trials, n <= 8.
inline CheckResult criterion8() {
    return detail::run_check(8, "randomized pencil property suite", [](detail::Check& c) {
        Fp::set_modulus(101);
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        auto rnd_sym = [&](int d) {
            Matrix<Fp> A(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j)
                    A[i][j] = A[j][i] = Fp(static_cast<long>(rng() % 101));
            return A;
        };
        auto make_pencil = [&](int n) {
            for (;;) {
                try {
                    SymmetricPencil<Fp> P(rnd_sym(n + 1), rnd_sym(n + 1));
                    if (!proportional_members(P)) return P;
                } catch (const std::invalid_argument&) {
                    // zero pencil; reroll
                }
            }
        };
        int fixed_skipped = 0;
        for (int trial = 0; trial < 200; ++trial) {
            int n = 2 + static_cast<int>(rng() % 7);
            auto P = make_pencil(n);
            const std::string tag = "trial " + std::to_string(trial) + " (n=" +
                                    std::to_string(n) + "): ";

            auto Pt = pencil_matrix(P);
            auto sm = smith_form(Pt);
            auto lhs = matmul(matmul(sm.U, Pt), sm.V);
            bool eq = lhs.m == sm.D.m && lhs.n == sm.D.n;
            for (int i = 0; eq && i < lhs.m; ++i)
                for (int j = 0; eq && j < lhs.n; ++j)
                    if (!(lhs[i][j] == sm.D[i][j])) eq = false;
            c.req(eq, tag + "Smith identity U*P*V = D");
            bool chain = true;
            for (size_t i = 0; i + 1 < sm.divisors.size(); ++i) {
                if (!(sm.divisors[i + 1] % sm.divisors[i]).is_zero()) chain = false;
                if (sm.divisors[i].is_zero() || !(sm.divisors[i].lc() == Fp(1))) chain = false;
            }
            c.req(chain, tag + "divisor chain");
            c.req(!sm.det_u.is_zero() && !sm.det_v.is_zero(), tag + "transform determinants");

            auto inv = segre_data(P);
            c.req(inv.u + inv.v + inv.r1 == n + 1, tag + "u+v+r1 = n+1");
            long W = 0;
            for (const auto& cl : inv.clusters) W += cl.point_degree * cl.weight();
            c.req(inv.u - inv.v == W, tag + "u-v = weight");
            long vsum = 0;
            int zeros = 0;
            for (int x : inv.degree_vector) {
                if (x > 0) vsum += x;
                else ++zeros;
            }
            c.req(inv.v == vsum, tag + "v = sum of minimal indices");
            c.req(inv.m == zeros, tag + "m = zero indices");
            c.req(compressibility(P).m == inv.m, tag + "compressibility agrees");

            try {
                auto s = pencil_sequence(P);
                c.req(compressibility_general(s) == static_cast<long>(inv.m),
                      tag + "dim Syz_0 = m");
            } catch (const std::invalid_argument&) {
                ++fixed_skipped;  // fixed-component pencil: not a regular sequence
            }

            // brute-force corank scan: the member at infinity, every invariant-factor
            // root via companion evaluation, and 20 random members
            auto norm = normalize_homography(P);
            auto Nt = pencil_matrix(norm.pencil);
            int best = n + 1 - rank_of(norm.pencil.B);
            for (const auto& cl : inv.clusters)
                best = std::max(best, corank_at_cluster(Nt, cl.point));
            for (int t = 0; t < 20; ++t) {
                Fp lam(static_cast<long>(rng() % 101));
                best = std::max(best, n + 1 - rank_of(eval_at(Nt, lam)));
            }
            c.req(inv.r0 == best, tag + "r0 = brute-force corank " + std::to_string(best));

            auto P2 = recover_pencil<Fp>(inv.r1 - inv.m, inv.positive_indices(), inv.clusters);
            auto inv2 = segre_data(P2);
            c.req(inv2.r1 == inv.r1 - inv.m, tag + "round trip r1");
            c.req(inv2.positive_indices() == inv.positive_indices(), tag + "round trip indices");
            c.req(detail::point_shapes(inv2.clusters) == detail::point_shapes(inv.clusters),
                  tag + "round trip cluster shapes");
        }
        c.req(fixed_skipped < 20, "too many fixed-component trials: " +
                                      std::to_string(fixed_skipped));
    });
}

// 9. Cross-formula consistency over every atlas row with n <= 6, and the Betti
// route for the resolution length on n <= 4.
inline CheckResult criterion9() {
    return detail::run_check(9, "atlas cross-formula consistency", [](detail::Check& c) {
        for (int n = 1; n <= 6; ++n) {
            auto rows = atlas_regular(n);
            auto irr = atlas_irregular(n);
            rows.insert(rows.end(), irr.begin(), irr.end());
            for (const auto& row : rows) {
                const std::string tag = "n=" + std::to_string(n) + " " + row.symbol + ": ";
                auto ext = ext_support(row.inv);
                int pd = pdim(row.inv);
                int top = ext.empty() ? 0 : *ext.rbegin();
                c.req(pd == top, tag + "pdim = max ext");
                if (row.inv.r1_hat() == 0)
                    c.req(2 * pd >= row.inv.n_hat() - 3, tag + "regular pdim bound");
                else
                    c.req(3 * pd >= 2 * row.inv.n_hat() - 7, tag + "irregular pdim bound");
                c.req(freeness(row.inv).is_free == ext.empty(), tag + "free iff ext empty");
                c.req(gpdim(row.inv) >= pd, tag + "gpdim >= pdim");
            }
        }
        for (int n = 2; n <= 4; ++n) {
            auto rows = atlas_regular(n);
            auto irr = atlas_irregular(n);
            rows.insert(rows.end(), irr.begin(), irr.end());
            int skipped = 0;
            for (const auto& row : rows) {
                if (detail::fixed_component(row.inv)) {
                    ++skipped;
                    continue;
                }
                const std::string tag = "n=" + std::to_string(n) + " " + row.symbol + ": ";
                auto s = invariants_sequence(row.inv);
                auto bt = betti_truncated(s, 6, 3);
                c.req(bt.complete_below_D, tag + "betti window not closed");
                c.req(bt.steps_used() - 1 == gpdim(row.inv),
                      tag + "betti length " + std::to_string(bt.steps_used() - 1) +
                          " vs gpdim " + std::to_string(gpdim(row.inv)));
            }
            c.req(skipped == 2, "n=" + std::to_string(n) + ": fixed-component rows " +
                                    std::to_string(skipped));
        }
    });
}

inline std::vector<CheckResult> run_all() {
    std::vector<CheckResult> out;
    out.push_back(criterion1());
    out.push_back(criterion2());
    out.push_back(criterion3());
    out.push_back(criterion4());
    out.push_back(criterion5());
    out.push_back(criterion6());
    out.push_back(criterion7());
    out.push_back(criterion8());
    out.push_back(criterion9());
    return out;
}

}  // namespace verify
}  // namespace plab
