#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace plab {

// Dense univariate polynomial over K in the pencil parameter t.
// Invariant: no trailing zero coefficients; the zero polynomial has empty storage.
template <class K>
struct UniPoly {
    std::vector<K> c;  // c[i] is the coefficient of t^i

    UniPoly() = default;
    explicit UniPoly(K constant) {
        if (!constant.is_zero()) c.push_back(constant);
    }
    explicit UniPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return UniPoly(K::one()); }
    static UniPoly t() { return UniPoly(std::vector<K>{K::zero(), K::one()}); }
    // t - lambda
    static UniPoly linear_root(const K& lambda) {
        return UniPoly(std::vector<K>{-lambda, K::one()});
    }

    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    const K& lc() const {
        if (is_zero()) throw std::domain_error("UniPoly: lc of zero");
        return c.back();
    }
    K coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : K::zero();
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    UniPoly operator+(const UniPoly& o) const {
        UniPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), K::zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return zero();
        UniPoly r;
        r.c.assign(c.size() + o.c.size() - 1, K::zero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    UniPoly operator*(const K& s) const {
        UniPoly r = *this;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) { *this = *this + o; return *this; }
    UniPoly& operator-=(const UniPoly& o) { *this = *this - o; return *this; }
    UniPoly& operator*=(const UniPoly& o) { *this = *this * o; return *this; }

    bool operator==(const UniPoly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != o.c[i]) return false;
        return true;
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    // Euclidean division; the divisor may have any invertible leading coefficient.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw std::domain_error("UniPoly: division by zero");
        UniPoly q, r = a;
        q.c.assign(std::max<int>(a.deg() - b.deg() + 1, 0), K::zero());
        K linv = b.lc().inv();
        while (!r.is_zero() && r.deg() >= b.deg()) {
            int shift = r.deg() - b.deg();
            K coef = r.lc() * linv;
            q.c[shift] += coef;
            for (int i = 0; i <= b.deg(); ++i) r.c[i + shift] -= coef * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }
    UniPoly operator/(const UniPoly& o) const { return divmod(*this, o).first; }
    UniPoly operator%(const UniPoly& o) const { return divmod(*this, o).second; }

    // Exact division; throws if the remainder is nonzero.
    static UniPoly divexact(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("UniPoly: inexact division");
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }

    UniPoly derivative() const {
        UniPoly r;
        for (int i = 1; i <= deg(); ++i) {
            K ki = K::zero();
            for (int j = 0; j < i; ++j) ki += K::one();  // i as a field element
            r.c.push_back(ki * c[i]);
        }
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        K r = K::zero();
        for (int i = deg(); i >= 0; --i) r = r * x + c[i];
        return r;
    }

    UniPoly pow(int e) const {
        UniPoly r = one(), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    }

    // Monic gcd.
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            a = a % b;
            std::swap(a, b);
        }
        return a.monic();
    }

    // Largest squarefree divisor f / gcd(f, f'). Requires char 0 or char > deg f.
    UniPoly squarefree_part() const {
        if (is_zero() || is_constant()) return monic();
        long p = field_char<K>();
        if (p != 0 && deg() >= p)
            throw std::domain_error("UniPoly: squarefree part needs char > degree");
        return divexact(monic(), gcd(*this, derivative()));
    }

    // Yun's squarefree decomposition: monic pairwise-coprime squarefree factors with
    // their multiplicities, product = monic(this). Same characteristic restriction.
    std::vector<std::pair<UniPoly, int>> squarefree_decomposition() const {
        std::vector<std::pair<UniPoly, int>> out;
        if (is_zero() || is_constant()) return out;
        long p = field_char<K>();
        if (p != 0 && deg() >= p)
            throw std::domain_error("UniPoly: squarefree decomposition needs char > degree");
        UniPoly f = monic();
        UniPoly d = gcd(f, f.derivative());
        UniPoly u = divexact(f, d);
        UniPoly v = divexact(f.derivative(), d);
        int i = 1;
        while (!u.is_constant()) {
            UniPoly w = v - u.derivative();
            UniPoly ai = gcd(u, w);
            if (!ai.is_constant()) out.emplace_back(ai, i);
            u = divexact(u, ai);
            v = divexact(w, ai);
            ++i;
        }
        return out;
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            if (c[i].is_zero()) continue;
            std::string cs = c[i].str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) out += "-", cs = cs.substr(1);
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            if (i == 0) {
                out += cs;
            } else {
                if (cs != "1") out += cs + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

    // Canonical order for sorted outputs: by degree, then coefficients from the top.
    static int cmp(const UniPoly& a, const UniPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
        for (int i = a.deg(); i >= 0; --i) {
            int s = K::cmp(a.c[i], b.c[i]);
            if (s) return s;
        }
        return 0;
    }
};

// Pairwise-coprime squarefree basis of a family of nonzero polynomials, with the
// multiplicity of each basis element in each input. The basis refines as far as gcds
// allow without factoring: conjugate point groups stay together as one block.
template <class K>
struct GcdFreeBasis {
    std::vector<UniPoly<K>> basis;       // monic, squarefree, pairwise coprime, nonconstant
    std::vector<std::vector<int>> mult;  // mult[i][j] = multiplicity of basis[j] in input i
};

template <class K>
GcdFreeBasis<K> gcd_free_basis(const std::vector<UniPoly<K>>& inputs) {
    using P = UniPoly<K>;
    std::vector<P> basis;
    auto insert = [&](P s) {
        s = s.monic();
        size_t i = 0;
        while (!s.is_constant() && i < basis.size()) {
            P g = P::gcd(s, basis[i]);
            if (g.is_constant()) {
                ++i;
                continue;
            }
            P rest = P::divexact(basis[i], g);
            basis[i] = g;
            if (!rest.is_constant()) basis.push_back(rest);
            s = P::divexact(s, g);
            i = 0;  // rescan: s lost a factor, remaining parts may still meet earlier entries
        }
        if (!s.is_constant()) basis.push_back(s);
    };
    for (const auto& f : inputs) {
        if (f.is_zero()) throw std::domain_error("gcd_free_basis: zero input");
        // Yun layers carry the multiplicity structure: points with different exponent
        // patterns land in different layers, so the refinement can tell them apart.
        for (const auto& [factor, mult] : f.squarefree_decomposition()) insert(factor);
    }
    std::sort(basis.begin(), basis.end(),
              [](const P& a, const P& b) { return P::cmp(a, b) < 0; });

    GcdFreeBasis<K> out;
    out.basis = basis;
    out.mult.assign(inputs.size(), std::vector<int>(basis.size(), 0));
    for (size_t i = 0; i < inputs.size(); ++i) {
        P f = inputs[i].monic();
        for (size_t j = 0; j < basis.size(); ++j) {
            while (true) {
                auto [q, r] = P::divmod(f, basis[j]);
                if (!r.is_zero()) break;
                f = q;
                ++out.mult[i][j];
            }
        }
    }
    return out;
}

}  // namespace plab
