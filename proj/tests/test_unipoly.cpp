#include <catch2/catch_amalgamated.hpp>

#include "pencil_lab/unipoly.hpp"

using namespace plab;
using QP = UniPoly<Rational>;

namespace {
QP q(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return QP(std::move(c));
}
}  // namespace

TEST_CASE("univariate arithmetic, division, gcd") {
    QP t = QP::t();
    QP f = (t - QP(Rational(1))) * (t + QP(Rational(2)));  // t^2 + t - 2
    CHECK(f == q({-2, 1, 1}));
    auto [quo, rem] = QP::divmod(f, t - QP(Rational(1)));
    CHECK(quo == q({2, 1}));
    CHECK(rem.is_zero());
    CHECK(QP::gcd(f, t - QP(Rational(1))) == q({-1, 1}));
    CHECK(QP::gcd(f, t) == QP::one());
    CHECK(QP::divexact(f, q({2, 1})) == q({-1, 1}));
    CHECK_THROWS_AS(QP::divexact(f, t), std::domain_error);
    CHECK(f.eval(Rational(2)) == Rational(4));
    CHECK(f.derivative() == q({1, 2}));
    CHECK(q({0, 0, 3}).monic() == q({0, 0, 1}));
    CHECK(f.pow(2).deg() == 4);
    CHECK((f * QP::zero()).is_zero());
    CHECK(q({-2, 1, 1}).str() == "t^2 + t - 2");
}

TEST_CASE("squarefree part strips multiplicities") {
    QP t = QP::t();
    QP f = t.pow(2) * (t - QP(Rational(1))).pow(3);
    CHECK(f.squarefree_part() == t * (t - QP(Rational(1))));
    CHECK(q({5}).squarefree_part() == QP::one());
}

TEST_CASE("gcd-free basis splits shared factors and reports multiplicities") {
    QP t = QP::t();
    QP tm1 = t - QP(Rational(1));
    std::vector<QP> in{t.pow(2) * tm1, t * tm1.pow(3)};
    auto gfb = gcd_free_basis(in);
    REQUIRE(gfb.basis.size() == 2);
    // basis is sorted canonically; locate each factor
    int it = -1, itm1 = -1;
    for (int j = 0; j < 2; ++j) {
        if (gfb.basis[j] == t) it = j;
        if (gfb.basis[j] == tm1) itm1 = j;
    }
    REQUIRE(it >= 0);
    REQUIRE(itm1 >= 0);
    CHECK(gfb.mult[0][it] == 2);
    CHECK(gfb.mult[0][itm1] == 1);
    CHECK(gfb.mult[1][it] == 1);
    CHECK(gfb.mult[1][itm1] == 3);
}

TEST_CASE("gcd-free basis keeps gcd-indistinguishable blocks together") {
    QP t = QP::t();
    QP irred = t.pow(2) + QP(Rational(1));  // no rational roots
    std::vector<QP> in{irred.pow(2), irred.pow(2) * t};
    auto gfb = gcd_free_basis(in);
    REQUIRE(gfb.basis.size() == 2);
    int ii = gfb.basis[0] == irred ? 0 : 1;
    CHECK(gfb.basis[ii] == irred);
    CHECK(gfb.mult[0][ii] == 2);
    CHECK(gfb.mult[1][ii] == 2);
    CHECK_THROWS_AS(gcd_free_basis<Rational>({QP::zero()}), std::domain_error);
}

TEST_CASE("prime-field polynomials behave identically") {
    Fp::set_modulus(101);
    using FP = UniPoly<Fp>;
    FP t = FP::t();
    FP f = (t - FP(Fp(3))).pow(2) * (t - FP(Fp(5)));
    CHECK(f.squarefree_part() == ((t - FP(Fp(3))) * (t - FP(Fp(5)))));
    auto gfb = gcd_free_basis<Fp>({f, (t - FP(Fp(3))).pow(4)});
    REQUIRE(gfb.basis.size() == 2);
    CHECK(FP::gcd(f, f.derivative()) == (t - FP(Fp(3))));
}
