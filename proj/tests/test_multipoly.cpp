#include <catch2/catch_amalgamated.hpp>

#include "pencil_lab/multipoly.hpp"
#include "pencil_lab/parse.hpp"

using namespace plab;
using MP = MultiPoly<Rational>;

namespace {
MP P(const std::string& s, int nv = 4) { return parse_forms<Rational>(s, nv)[0]; }
}  // namespace

TEST_CASE("parser handles the inline grammar") {
    auto forms = parse_forms<Rational>("x0*x2, 2*x0*x1 + x3^2");
    REQUIRE(forms.size() == 2);
    CHECK(forms[0].nvars == 4);
    CHECK(forms[0].str() == "x0*x2");
    CHECK(forms[1].str() == "2*x0*x1 + x3^2");
    CHECK(P("-1/2*x0^2 - x1*x2").str() == "-1/2*x0^2 - x1*x2");
    CHECK(P("3", 1).is_constant());
    CHECK(P("x0 + x0", 1) == P("2*x0", 1));
    CHECK_THROWS_AS(parse_forms<Rational>("x0 + "), ParseError);
    CHECK_THROWS_AS(parse_forms<Rational>("y0"), ParseError);
    CHECK_THROWS_AS(parse_forms<Rational>("1/0*x0"), ParseError);
    CHECK_THROWS_AS(parse_forms<Rational>("x0,,x1"), ParseError);
}

TEST_CASE("arithmetic, partials, Euler relation") {
    MP f = P("x0*x1 + x2*x3");
    CHECK(f.total_degree() == 2);
    CHECK(f.is_homogeneous());
    CHECK(f.partial(0) == P("x1"));
    CHECK(f.partial(3) == P("x2"));
    MP euler(4);
    for (int j = 0; j < 4; ++j) euler += MP::variable(4, j) * f.partial(j);
    CHECK(euler == f * Rational(2));
    CHECK((f - f).is_zero());
    CHECK(f.pow(2) == f * f);
    CHECK(!P("x0 + x1^2").is_homogeneous());
}

TEST_CASE("degrevlex leading terms") {
    // at equal degree, the tie goes against the variable with the higher index
    MP f = P("x3^2 + x0*x2");
    CHECK(f.lt_expo() == Expo({1, 0, 1, 0}));
    MP g = P("x0*x1 + x2^2");
    CHECK(g.lt_expo() == Expo({1, 1, 0, 0}));
    auto mons = monomials_of_degree(3, 2);
    REQUIRE(mons.size() == 6);
    CHECK(mons.front() == Expo({2, 0, 0}));
    CHECK(mons.back() == Expo({0, 0, 2}));
    CHECK(dim_forms(4, 2) == 10);
    CHECK(dim_forms(4, 0) == 1);
    CHECK(dim_forms(4, -1) == 0);
}

TEST_CASE("exact multivariate division") {
    MP d = P("x0*x1 - x2*x3");
    MP f = d * P("x1*x3 + 2*x2");
    CHECK(divexact_multi(f, d) == P("x1*x3 + 2*x2"));
    CHECK_THROWS_AS(divexact_multi(P("x0"), P("x1")), std::domain_error);
    CHECK(divides_multi(d, f));
    CHECK(!divides_multi(P("x0"), f));
}

TEST_CASE("multivariate gcd via primitive remainder sequences") {
    MP d = P("x0*x1 - x2*x3");
    MP a = d * P("x1*x3");
    MP b = d * P("x1*x2 + x0^2");
    CHECK(gcd_multi(a, b) == d);
    CHECK(gcd_multi(P("x0*x2"), P("x0*x1")) == P("x0"));
    CHECK(gcd_multi(P("x0"), P("x1")) == P("1", 4));
    CHECK(gcd_multi_list<Rational>({a, b, d * P("x3^2")}) == d);
    CHECK(gcd_multi_list<Rational>({P("2*x0", 4)}) == P("x0"));
    // gcd of a poly with zero is the (monicized) poly itself
    CHECK(gcd_multi(MP(4), a) == a.monic());
}

TEST_CASE("widening embeds into a larger variable set") {
    MP f = P("x0^2 + x1", 2);
    MP w = f.widened(5);
    CHECK(w.nvars == 5);
    CHECK(w.str() == "x0^2 + x1");
    CHECK_THROWS_AS(w.widened(3), std::invalid_argument);
}
