#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "multipoly.hpp"

namespace plab {

// Parser for the inline form grammar: terms joined by + and -, each term a product of
// an optional rational coefficient p or p/q and variable powers xK^E, e.g.
//   "2*x0*x1 + x3^2", "-1/2*x0^2 - x1*x2".
// Throws std::invalid_argument (mapped to the parse-error exit code by the front end).

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct FormsCursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw ParseError("expected integer at position " + std::to_string(i));
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
};

}  // namespace detail

// Parses a single comma-separated list of forms. Variables are x0..xN; the number of
// variables is max index + 1 unless a wider `nvars` is requested.
template <class K>
std::vector<MultiPoly<K>> parse_forms(const std::string& text, int nvars = -1) {
    detail::FormsCursor c{text};
    int max_index = -1;

    struct RawTerm {
        K coeff;
        std::vector<std::pair<int, int>> powers;  // (variable, exponent)
    };
    std::vector<std::vector<RawTerm>> forms(1);

    auto parse_factor_into = [&](RawTerm& t) {
        if (c.peek() == 'x') {
            ++c.i;
            long var = c.integer();
            if (var < 0 || var > 200) throw ParseError("variable index out of range");
            int e = 1;
            if (c.accept('^')) e = static_cast<int>(c.integer());
            if (e < 0) throw ParseError("negative exponent");
            t.powers.emplace_back(static_cast<int>(var), e);
            max_index = std::max(max_index, static_cast<int>(var));
        } else if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            long num = c.integer();
            long den = 1;
            if (c.accept('/')) den = c.integer();
            if (den == 0) throw ParseError("zero denominator");
            t.coeff *= K(num) / K(den);
        } else {
            throw ParseError(std::string("unexpected character '") + c.peek() + "'");
        }
    };

    while (!c.eof()) {
        bool neg = false;
        while (true) {  // leading signs
            if (c.accept('-')) {
                neg = !neg;
            } else if (c.accept('+')) {
            } else {
                break;
            }
        }
        RawTerm t{neg ? -K::one() : K::one(), {}};
        parse_factor_into(t);
        while (c.accept('*')) parse_factor_into(t);
        forms.back().push_back(std::move(t));
        if (c.eof()) break;
        char nxt = c.peek();
        if (nxt == ',') {
            ++c.i;
            if (c.eof()) throw ParseError("trailing comma");
            forms.emplace_back();
        } else if (nxt != '+' && nxt != '-') {
            throw ParseError(std::string("unexpected character '") + nxt + "'");
        }
    }
    if (forms.back().empty()) throw ParseError("empty input");

    int nv = std::max(max_index + 1, nvars);
    if (nv <= 0) throw ParseError("no variables found and no explicit count given");
    std::vector<MultiPoly<K>> out;
    for (const auto& raw : forms) {
        MultiPoly<K> p(nv);
        for (const auto& t : raw) {
            Expo e(nv, 0);
            for (auto [v, k] : t.powers) {
                if (v >= nv) throw ParseError("variable index exceeds the requested count");
                e[v] += k;
            }
            p.add_term(e, t.coeff);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace plab
