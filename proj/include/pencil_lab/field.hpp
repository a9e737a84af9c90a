#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace plab {

// Exact rational scalar backed by GMP. Value-semantic, always canonical.
struct Rational {
    mpq_class v;

    Rational() : v(0) {}
    Rational(long n) : v(n) {}
    Rational(long num, long den) : v(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v.canonicalize();
    }
    explicit Rational(mpq_class q) : v(std::move(q)) { v.canonicalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    bool is_zero() const { return sgn(v) == 0; }
    bool is_one() const { return v == 1; }

    Rational operator-() const { return Rational(mpq_class(-v)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v + o.v)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v - o.v)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v * o.v)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(v / o.v));
    }
    Rational& operator+=(const Rational& o) { v += o.v; return *this; }
    Rational& operator-=(const Rational& o) { v -= o.v; return *this; }
    Rational& operator*=(const Rational& o) { v *= o.v; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v));
    }

    bool operator==(const Rational& o) const { return v == o.v; }
    bool operator!=(const Rational& o) const { return v != o.v; }

    // Total order used only for canonical sorting of outputs.
    static int cmp(const Rational& a, const Rational& b) { return ::cmp(a.v, b.v); }

    std::string str() const { return v.get_str(); }
};

// Prime field with a runtime modulus shared per process (set once by the front end
// or the test fixture before any element is created).
struct Fp {
    static inline long modulus_ = 0;

    static void set_modulus(long p) {
        if (p < 2) throw std::domain_error("Fp: modulus must be >= 2");
        modulus_ = p;
    }
    static long modulus() {
        if (modulus_ == 0) throw std::logic_error("Fp: modulus unset");
        return modulus_;
    }

    long v = 0;

    Fp() = default;
    Fp(long n) {
        long p = modulus();
        v = n % p;
        if (v < 0) v += p;
    }

    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1); }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }

    Fp operator-() const { return v == 0 ? Fp() : from_raw(modulus() - v); }
    Fp operator+(const Fp& o) const {
        long s = v + o.v;
        if (s >= modulus()) s -= modulus();
        return from_raw(s);
    }
    Fp operator-(const Fp& o) const {
        long s = v - o.v;
        if (s < 0) s += modulus();
        return from_raw(s);
    }
    Fp operator*(const Fp& o) const {
        return from_raw(static_cast<long>(static_cast<__int128>(v) * o.v % modulus()));
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
    Fp& operator/=(const Fp& o) { *this = *this / o; return *this; }

    Fp inv() const {
        if (v == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid on (v, p)
        long a = v, b = modulus(), x0 = 1, x1 = 0;
        while (b) {
            long q = a / b;
            a -= q * b; std::swap(a, b);
            x0 -= q * x1; std::swap(x0, x1);
        }
        assert(a == 1);
        if (x0 < 0) x0 += modulus();
        return from_raw(x0);
    }

    bool operator==(const Fp& o) const { return v == o.v; }
    bool operator!=(const Fp& o) const { return v != o.v; }

    static int cmp(const Fp& a, const Fp& b) { return a.v < b.v ? -1 : a.v > b.v ? 1 : 0; }

    std::string str() const { return std::to_string(v); }

private:
    static Fp from_raw(long r) {
        Fp x;
        x.v = r;
        return x;
    }
};

// Characteristic probe: algorithms that need char 0 or a large enough p guard on this.
template <class K> inline long field_char();
template <> inline long field_char<Rational>() { return 0; }
template <> inline long field_char<Fp>() { return Fp::modulus(); }

}  // namespace plab
