#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace plab {

using Expo = std::vector<int>;  // exponent vector over x0..x_{nvars-1}

inline int expo_degree(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Degrevlex, descending: higher degree first; ties broken so that the term whose
// exponent difference has a negative last nonzero entry is the larger one.
struct DegRevLexDesc {
    bool operator()(const Expo& a, const Expo& b) const {
        int da = expo_degree(a), db = expo_degree(b);
        if (da != db) return da > db;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

// Monomials of the given total degree, listed in descending degrevlex order.
inline std::vector<Expo> monomials_of_degree(int nvars, int deg) {
    std::vector<Expo> out;
    Expo cur(nvars, 0);
    auto rec = [&](auto&& self, int var, int rem) -> void {
        if (var == nvars - 1) {
            cur[var] = rem;
            out.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[var] = e;
            self(self, var + 1, rem - e);
        }
        cur[var] = 0;
    };
    if (nvars > 0 && deg >= 0) rec(rec, 0, deg);
    std::sort(out.begin(), out.end(), DegRevLexDesc{});
    return out;
}

inline long dim_forms(int nvars, int deg) {  // dim of degree-`deg` forms, C(deg+nvars-1, nvars-1)
    if (deg < 0) return 0;
    long num = 1, den = 1;
    for (int i = 1; i <= nvars - 1; ++i) {
        num *= deg + i;
        den *= i;
    }
    return num / den;
}

// Sparse exact-coefficient multivariate polynomial.
template <class K>
struct MultiPoly {
    int nvars = 0;
    std::map<Expo, K, DegRevLexDesc> terms;  // no zero coefficients stored

    MultiPoly() = default;
    explicit MultiPoly(int nv) : nvars(nv) {}
    MultiPoly(int nv, const Expo& e, const K& coef) : nvars(nv) {
        if (!coef.is_zero()) terms.emplace(e, coef);
    }
    static MultiPoly constant(int nv, const K& c) { return MultiPoly(nv, Expo(nv, 0), c); }
    static MultiPoly variable(int nv, int j) {
        Expo e(nv, 0);
        e[j] = 1;
        return MultiPoly(nv, e, K::one());
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && expo_degree(terms.begin()->first) == 0);
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms) d = std::max(d, expo_degree(e));
        return d;
    }
    bool is_homogeneous() const {
        if (terms.empty()) return true;
        int d = expo_degree(terms.begin()->first);
        for (const auto& [e, c] : terms)
            if (expo_degree(e) != d) return false;
        return true;
    }
    const Expo& lt_expo() const {
        if (is_zero()) throw std::domain_error("MultiPoly: leading term of zero");
        return terms.begin()->first;
    }
    const K& lt_coeff() const {
        if (is_zero()) throw std::domain_error("MultiPoly: leading term of zero");
        return terms.begin()->second;
    }

    void add_term(const Expo& e, const K& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(nvars);
        for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }
    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r(nvars);
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                Expo e(nvars);
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly operator*(const K& s) const {
        MultiPoly r(nvars);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms) r.terms.emplace(e, c * s);
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) { return *this += -o; }
    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    bool operator==(const MultiPoly& o) const { return terms == o.terms; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly partial(int j) const {
        MultiPoly r(nvars);
        for (const auto& [e, c] : terms) {
            if (e[j] == 0) continue;
            Expo d = e;
            d[j] -= 1;
            K kj = K::zero();
            for (int i = 0; i < e[j]; ++i) kj += K::one();
            r.add_term(d, c * kj);
        }
        return r;
    }

    MultiPoly pow(int k) const {
        MultiPoly r = constant(nvars, K::one()), b = *this;
        for (; k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return r;
    }

    // Re-embed into a ring with more variables.
    MultiPoly widened(int new_nvars) const {
        if (new_nvars < nvars) throw std::invalid_argument("MultiPoly: cannot shrink");
        MultiPoly r(new_nvars);
        for (const auto& [e, c] : terms) {
            Expo w = e;
            w.resize(new_nvars, 0);
            r.terms.emplace(w, c);
        }
        return r;
    }

    int degree_in(int j) const {
        int d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[j]);
        return d;
    }

    // Coefficient of x_j^k, as a polynomial in the remaining variables (x_j removed slot stays).
    MultiPoly coeff_in(int j, int k) const {
        MultiPoly r(nvars);
        for (const auto& [e, c] : terms) {
            if (e[j] != k) continue;
            Expo w = e;
            w[j] = 0;
            r.terms.emplace(w, c);
        }
        return r;
    }

    MultiPoly monic() const {
        if (is_zero()) return *this;
        return *this * lt_coeff().inv();
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (const auto& [e, c] : terms) {
            std::string cs = c.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) out += "-", cs = cs.substr(1);
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            std::string mono;
            for (int j = 0; j < nvars; ++j) {
                if (e[j] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(j);
                if (e[j] > 1) mono += "^" + std::to_string(e[j]);
            }
            if (mono.empty()) {
                out += cs;
            } else {
                if (cs != "1") out += cs + "*";
                out += mono;
            }
        }
        return out;
    }
};

// Exact division by a single divisor via leading-term long division (degrevlex).
// Throws when the division is not exact.
template <class K>
MultiPoly<K> divexact_multi(MultiPoly<K> f, const MultiPoly<K>& d) {
    if (d.is_zero()) throw std::domain_error("divexact_multi: zero divisor");
    MultiPoly<K> q(f.nvars);
    const Expo& de = d.lt_expo();
    while (!f.is_zero()) {
        const Expo& fe = f.lt_expo();
        Expo qe(f.nvars);
        for (int i = 0; i < f.nvars; ++i) {
            qe[i] = fe[i] - de[i];
            if (qe[i] < 0) throw std::domain_error("divexact_multi: inexact");
        }
        K qc = f.lt_coeff() / d.lt_coeff();
        MultiPoly<K> t(f.nvars, qe, qc);
        q += t;
        f -= t * d;
    }
    return q;
}

template <class K>
bool divides_multi(const MultiPoly<K>& d, const MultiPoly<K>& f) {
    if (f.is_zero()) return true;
    if (d.is_zero()) return false;
    try {
        divexact_multi(f, d);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

namespace detail {

// Pseudo-remainder of f by g with respect to variable v (deg_v g >= 1).
template <class K>
MultiPoly<K> prem(MultiPoly<K> f, const MultiPoly<K>& g, int v) {
    int dg = g.degree_in(v);
    MultiPoly<K> lcg = g.coeff_in(v, dg);
    while (!f.is_zero() && f.degree_in(v) >= dg) {
        int df = f.degree_in(v);
        MultiPoly<K> lcf = f.coeff_in(v, df);
        Expo shift(f.nvars, 0);
        shift[v] = df - dg;
        MultiPoly<K> sh(f.nvars, shift, K::one());
        f = f * lcg - g * (lcf * sh);
    }
    return f;
}

}  // namespace detail

// gcd up to scalar, normalized monic in degrevlex. Primitive PRS over the main
// variable, recursing into the coefficient ring for contents.
template <class K>
MultiPoly<K> gcd_multi(MultiPoly<K> f, MultiPoly<K> g) {
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    int v = -1;
    for (int j = f.nvars - 1; j >= 0; --j)
        if (f.degree_in(j) > 0 || g.degree_in(j) > 0) {
            v = j;
            break;
        }
    if (v < 0) return MultiPoly<K>::constant(f.nvars, K::one());  // both constants

    auto content_in = [&](const MultiPoly<K>& p) {
        MultiPoly<K> c(p.nvars);
        for (int k = 0; k <= p.degree_in(v); ++k) {
            MultiPoly<K> ck = p.coeff_in(v, k);
            if (!ck.is_zero()) c = c.is_zero() ? ck : gcd_multi(c, ck);
        }
        return c;
    };

    MultiPoly<K> cf = content_in(f), cg = content_in(g);
    MultiPoly<K> cont = gcd_multi(cf, cg);
    f = divexact_multi(f, cf);
    g = divexact_multi(g, cg);

    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    while (g.degree_in(v) > 0) {
        MultiPoly<K> r = detail::prem(f, g, v);
        if (r.is_zero()) {
            f = g;
            g = MultiPoly<K>(f.nvars);
            break;
        }
        r = divexact_multi(r, content_in(r));
        f = g;
        g = r;
    }
    // remainder hit zero: the last divisor is the gcd of the primitive parts;
    // remainder degenerated in v: the primitive parts are coprime
    MultiPoly<K> pp = g.is_zero() ? f : MultiPoly<K>::constant(f.nvars, K::one());
    return (cont * pp).monic();
}

template <class K>
MultiPoly<K> gcd_multi_list(const std::vector<MultiPoly<K>>& polys) {
    MultiPoly<K> g;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p.monic() : gcd_multi(g, p);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

}  // namespace plab
