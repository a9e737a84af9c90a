#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pencil_lab/parse.hpp"
#include "pencil_lab/pencil.hpp"
#include "pencil_lab/verdicts.hpp"

using namespace plab;
using Q = Rational;
using QP = UniPoly<Q>;

namespace {

SymmetricPencil<Q> quadric_pencil(const std::string& text, int nvars = -1) {
    auto fs = parse_forms<Q>(text, nvars);
    REQUIRE(fs.size() == 2);
    return hessian_pencil(fs[0], fs[1]);
}

QP tpoly(std::vector<long> cs) {
    std::vector<Q> v;
    for (long c : cs) v.emplace_back(c);
    return QP(std::move(v));
}

SegreCluster<Q> cluster(QP point, std::vector<std::pair<int, int>> parts) {
    SegreCluster<Q> c;
    c.point = std::move(point);
    c.point_degree = c.point.deg();
    c.parts = std::move(parts);
    return c;
}

SegreCluster<Q> at(long root, std::vector<std::pair<int, int>> parts) {
    return cluster(QP::linear_root(Q(root)), std::move(parts));
}

// symbol as expanded per-point multiplicity lists, sorted descending (canonical)
std::vector<std::vector<int>> expanded_symbol(const PencilInvariants<Q>& inv) {
    std::vector<std::vector<int>> pts;
    for (const auto& cl : inv.clusters) {
        std::vector<int> a;
        for (auto [ai, p] : cl.parts) a.insert(a.end(), p, ai);
        for (int i = 0; i < cl.point_degree; ++i) pts.push_back(a);
    }
    std::sort(pts.begin(), pts.end(), std::greater<>());
    return pts;
}

}  // namespace

TEST_CASE("stability verdict clause order", "[verdicts]") {
    SECTION("two double hyperplanes give the trivial sum") {
        auto inv = segre_data(quadric_pencil("x0^2, x1^2", 4));
        auto sv = stability_verdict(inv);
        CHECK(sv.outcome == StabilityCase::trivial_sum);
        CHECK(to_string(sv.outcome) == "trivial-sum");
        CHECK(sv.slope_num == 0);
        CHECK(sv.slope_den == 1);
    }
    SECTION("one double hyperplane, incompressible: stable") {
        auto P = recover_pencil<Q>(0, {}, {at(0, {{1, 3}}), at(1, {{1, 1}})});
        auto inv = segre_data(P);
        REQUIRE(inv.n == 3);
        REQUIRE(inv.double_hyperplanes == 1);
        auto sv = stability_verdict(inv);
        CHECK(sv.outcome == StabilityCase::stable);
        CHECK(sv.slope_num == -1);
        CHECK(sv.slope_den == 2);
    }
    SECTION("one double hyperplane, compressible: unstable") {
        auto inv = segre_data(quadric_pencil("x0^2, x0*x1", 4));
        REQUIRE(inv.double_hyperplanes == 1);
        REQUIRE(inv.m == 2);
        CHECK(stability_verdict(inv).outcome == StabilityCase::unstable);
    }
    SECTION("compressible, no double hyperplane: unstable") {
        auto inv = segre_data(quadric_pencil("x0*x2, x0*x1", 4));
        REQUIRE(inv.double_hyperplanes == 0);
        REQUIRE(inv.m == 1);
        CHECK(stability_verdict(inv).outcome == StabilityCase::unstable);
    }
    SECTION("trichotomy: 2r0 vs n+1") {
        auto sss = segre_data(quadric_pencil("x0*x1, x2*x3", 4));
        REQUIRE(2 * sss.r0 == sss.n + 1);
        auto sv = stability_verdict(sss);
        CHECK(sv.outcome == StabilityCase::strictly_semistable);
        CHECK(sv.slope_num == -1);
        CHECK(sv.slope_den == 1);

        auto stab = segre_data(
            recover_pencil<Q>(0, {}, {at(0, {{1, 2}}), at(1, {{1, 2}}), at(2, {{1, 1}})}));
        REQUIRE(stab.n == 4);
        CHECK(2 * stab.r0 < stab.n + 1);
        CHECK(stability_verdict(stab).outcome == StabilityCase::stable);

        auto uns = segre_data(
            recover_pencil<Q>(0, {}, {at(0, {{1, 3}}), at(1, {{1, 1}}), at(2, {{1, 1}})}));
        REQUIRE(uns.n == 4);
        REQUIRE(uns.double_hyperplanes == 0);
        CHECK(2 * uns.r0 > uns.n + 1);
        CHECK(stability_verdict(uns).outcome == StabilityCase::unstable);
    }
    SECTION("small ambient dimension reported separately") {
        auto p2 = segre_data(quadric_pencil("x0^2, x1^2", 3));
        auto sv2 = stability_verdict(p2);
        CHECK(sv2.outcome == StabilityCase::locally_free_small_n);
        CHECK(sv2.slope_num == 0);  // both singular points reach full corank

        auto p1 = segre_data(quadric_pencil("x0^2, x1^2", 2));
        CHECK(stability_verdict(p1).outcome == StabilityCase::locally_free_small_n);
        CHECK(!stability_verdict(p1).reason.empty());
    }
}

TEST_CASE("Ext support and pdim on pinned examples", "[verdicts]") {
    SECTION("single cluster (6,6,6,3,3,3,3,2,2,2) on P^35") {
        auto P = recover_pencil<Q>(0, {}, {at(0, {{6, 3}, {3, 4}, {2, 3}})});
        auto inv = segre_data(P);
        REQUIRE(inv.n == 35);
        CHECK(ext_support(inv) == std::set<int>{24, 27, 31});
        CHECK(pdim(inv) == 31);
    }
    SECTION("irregular showcase on P^54") {
        auto P = recover_pencil<Q>(
            3, {1, 2, 2}, {at(0, {{3, 2}, {1, 4}}), at(1, {{4, 5}, {3, 2}, {2, 3}})});
        auto inv = segre_data(P);
        REQUIRE(inv.n == 54);
        REQUIRE(inv.u == 47);
        REQUIRE(inv.v == 5);
        CHECK(ext_support(inv) == std::set<int>{40, 43, 44, 45, 48, 49});
        CHECK(pdim(inv) == 49);
        CHECK(gpdim(inv) == 53);  // degree vector not all ones: default n-1
    }
    SECTION("completely irregular pencil on P^5") {
        auto inv = segre_data(quadric_pencil("x1*x5 + x3*x4, x2*x4 + x0*x5", 6));
        REQUIRE(inv.m == 0);
        REQUIRE(inv.r1 == 2);
        REQUIRE(inv.u == 2);
        REQUIRE(inv.v == 2);
        REQUIRE(inv.degree_vector == std::vector<int>{1, 1});
        REQUIRE(inv.clusters.empty());
        CHECK(ext_support(inv) == std::set<int>{1});
        CHECK(pdim(inv) == 1);
        CHECK(gpdim(inv) == 1);  // all minimal indices equal 1
        CHECK(stability_verdict(inv).outcome == StabilityCase::stable);

        auto same = segre_data(recover_pencil<Q>(2, {1, 1}, {}));
        CHECK(ext_support(same) == std::set<int>{1});
        CHECK(pdim(same) == 1);
    }
    SECTION("four simple points on P^3") {
        auto inv = segre_data(
            quadric_pencil("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2, x0^2 + x1^2 + x2^2 + x3^2", 4));
        REQUIRE(expanded_symbol(inv) == std::vector<std::vector<int>>{{1}, {1}, {1}, {1}});
        CHECK(ext_support(inv) == std::set<int>{1});
        CHECK(pdim(inv) == 1);
        CHECK(gpdim(inv) == 1);
    }
    SECTION("compressible input is reduced first") {
        // same forms on a larger ambient space: q values stay in the reduced frame
        auto inv = segre_data(
            quadric_pencil("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2, x0^2 + x1^2 + x2^2 + x3^2", 6));
        REQUIRE(inv.m == 2);
        REQUIRE(inv.n_hat() == 3);
        CHECK(ext_support(inv) == std::set<int>{1});
        CHECK(pdim(inv) == 1);

        auto tiny = segre_data(quadric_pencil("x0^2, x1^2", 4));
        CHECK(ext_support(tiny).empty());
        CHECK(pdim(tiny) == 0);
    }
}

TEST_CASE("gpdim exceptional shapes", "[verdicts]") {
    SECTION("two points, all multiplicities one") {
        auto inv = segre_data(recover_pencil<Q>(0, {}, {at(0, {{1, 2}}), at(1, {{1, 3}})}));
        REQUIRE(inv.n == 4);
        CHECK(pdim(inv) == 1);
        CHECK(gpdim(inv) == 1);  // n - min(p,q) - 1, not the default n-2

        auto sq = segre_data(quadric_pencil("x0*x1, x2*x3", 4));
        CHECK(gpdim(sq) == 0);
    }
    SECTION("single point (2^q) and (2^q,1^p)") {
        auto a = segre_data(recover_pencil<Q>(0, {}, {at(0, {{2, 3}})}));
        REQUIRE(a.n == 5);
        CHECK(pdim(a) == 1);
        CHECK(gpdim(a) == 1);

        auto b = segre_data(recover_pencil<Q>(0, {}, {at(0, {{2, 2}, {1, 1}})}));
        REQUIRE(b.n == 4);
        CHECK(pdim(b) == 1);
        CHECK(gpdim(b) == 1);
    }
    SECTION("a quadratic point pair counts as two points") {
        auto inv = segre_data(recover_pencil<Q>(0, {}, {cluster(tpoly({1, 0, 1}), {{1, 2}})}));
        REQUIRE(inv.n == 3);
        REQUIRE(inv.clusters.size() == 1);
        REQUIRE(inv.clusters[0].point_degree == 2);
        CHECK(gpdim(inv) == 0);
        CHECK(freeness(inv).is_free);
    }
    SECTION("generic shapes fall back to the defaults") {
        auto reg = segre_data(
            recover_pencil<Q>(0, {}, {at(0, {{1, 2}}), at(1, {{1, 2}}), at(2, {{1, 2}})}));
        REQUIRE(reg.n == 5);
        CHECK(pdim(reg) == 2);
        CHECK(gpdim(reg) == 3);  // three points: not exceptional, n-2 wins
    }
}

TEST_CASE("freeness classification, all rows realized", "[verdicts]") {
    struct Case {
        std::string forms;
        int nvars;
        std::string row;
        std::vector<int> exps;
    };
    const std::vector<Case> cases = {
        {"x0^2, x1^2", 4, "[1,1]", {0, 0}},
        {"x0^2, x0*x1", 4, "[2]", {0, 0}},
        {"x0^2 + x2^2, x1^2 + x2^2", 4, "[1,1,1]", {0, -2}},
        {"x0*x1, x0^2 + x2^2", 4, "[2,1]", {0, -2}},
        {"2*x0*x2 + x1^2, x0*x1", 4, "[3]", {0, -2}},
        {"2*x0*x1 + x2^2, x0^2", 4, "[(2,1)]", {0, -1}},
        {"x0^2, x1^2 + x2^2", 4, "[(1,1),1]", {0, -1}},
        {"x0*x2, x0*x1", 4, "[] (u,v)=(1,1)", {0, -1}},
        {"x0*x1, x2*x3", 4, "[(1,1),(1,1)]", {-1, -1}},
        {"x0*x1 + x2*x3, x1^2 + x3^2", 4, "[(2,2)]", {-1, -1}},
        {"x0*x2, 2*x0*x1 + x3^2", 4, "[1] (u,v)=(2,1)", {-1, -1}},
    };
    for (const auto& c : cases) {
        INFO(c.forms);
        auto fv = freeness(segre_data(quadric_pencil(c.forms, c.nvars)));
        CHECK(fv.is_free);
        CHECK(fv.table_row == c.row);
        CHECK(fv.exponents == c.exps);
    }
    SECTION("embeddings pick up compressibility zeros") {
        auto fv = freeness(segre_data(quadric_pencil("x0*x1, x2*x3", 6)));
        CHECK(fv.is_free);
        CHECK(fv.table_row == "[(1,1),(1,1)]");
        CHECK(fv.exponents == std::vector<int>{0, 0, -1, -1});

        auto tiny = freeness(segre_data(quadric_pencil("x0^2, x1^2", 2)));
        CHECK(tiny.is_free);
        CHECK(tiny.exponents.empty());
    }
    SECTION("near misses are rejected") {
        auto a = segre_data(quadric_pencil("x0*x1 + x2*x3, x0^2 + x1^2", 4));
        REQUIRE(expanded_symbol(a) == std::vector<std::vector<int>>{{1, 1}, {1}, {1}});
        auto fa = freeness(a);
        CHECK(!fa.is_free);
        CHECK(fa.table_row == "none");
        CHECK(ext_support(a) == std::set<int>{1});

        auto b = segre_data(
            recover_pencil<Q>(0, {}, {at(0, {{2, 1}}), at(1, {{1, 1}}), at(2, {{1, 1}})}));
        CHECK(!freeness(b).is_free);
        auto c = segre_data(recover_pencil<Q>(0, {}, {at(0, {{1, 3}}), at(1, {{1, 1}})}));
        CHECK(!freeness(c).is_free);
    }
}

TEST_CASE("Jacobian scheme reports", "[verdicts]") {
    SECTION("single cluster showcase on P^35") {
        auto rep = jacobian_report(
            segre_data(recover_pencil<Q>(0, {}, {at(0, {{6, 3}, {3, 4}, {2, 3}})})));
        REQUIRE(rep.components.size() == 3);
        std::vector<std::tuple<int, int>> dm;
        for (const auto& c : rep.components) {
            CHECK(c.kind == "linear-Upsilon");
            dm.push_back({c.dimension, c.multiplicity});
        }
        std::sort(dm.begin(), dm.end());
        CHECK(dm == std::vector<std::tuple<int, int>>{{2, 3}, {6, 1}, {9, 2}});
        CHECK(rep.h0_structure_sheaf == 6);
        CHECK(rep.dim_Xi == 9);
        CHECK(rep.cone_shift == 0);
    }
    SECTION("irregular showcase on P^54") {
        auto rep = jacobian_report(segre_data(recover_pencil<Q>(
            3, {1, 2, 2}, {at(0, {{3, 2}, {1, 4}}), at(1, {{4, 5}, {3, 2}, {2, 3}})})));
        REQUIRE(rep.components.size() == 6);
        CHECK(rep.components[0].kind == "scroll-Y");
        CHECK(rep.components[0].dimension == 3);
        CHECK(rep.components[0].degree == 5);
        std::vector<std::tuple<int, int>> dm;
        for (size_t i = 1; i < rep.components.size(); ++i)
            dm.push_back({rep.components[i].dimension, rep.components[i].multiplicity});
        std::sort(dm.begin(), dm.end());
        CHECK(dm ==
              std::vector<std::tuple<int, int>>{{4, 2}, {7, 1}, {8, 1}, {9, 1}, {12, 2}});
        CHECK(rep.h0_structure_sheaf == 1);
        CHECK(rep.h0_residual == 7);
        CHECK(rep.dim_Xi == 12);
    }
    SECTION("four simple points") {
        // one cluster of degree 4: identical local data at four rational points
        auto rep = jacobian_report(segre_data(
            quadric_pencil("x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2, x0^2 + x1^2 + x2^2 + x3^2", 4)));
        REQUIRE(rep.components.size() == 1);
        CHECK(rep.components[0].dimension == 0);
        CHECK(rep.components[0].multiplicity == 1);
        CHECK(rep.components[0].copies == 4);
        CHECK(rep.h0_structure_sheaf == 4);
        CHECK(rep.dim_Xi == 0);
    }
    SECTION("fiber lengths follow the multiplicity drops") {
        auto rep = jacobian_report(
            segre_data(recover_pencil<Q>(0, {}, {at(0, {{2, 1}, {1, 1}}), at(1, {{1, 1}})})));
        std::vector<std::tuple<int, int, int>> c;  // (dimension, multiplicity, prefix)
        for (const auto& comp : rep.components)
            c.push_back({comp.dimension, comp.multiplicity, comp.prefix});
        std::sort(c.begin(), c.end());
        CHECK(c == std::vector<std::tuple<int, int, int>>{{0, 1, 1}, {0, 1, 1}, {1, 1, 2}});
        CHECK(rep.h0_structure_sheaf == 3);
        CHECK(rep.dim_Xi == 1);
    }
    SECTION("scroll only for the completely irregular pencil") {
        auto rep = jacobian_report(segre_data(quadric_pencil("x1*x5 + x3*x4, x2*x4 + x0*x5", 6)));
        REQUIRE(rep.components.size() == 1);
        CHECK(rep.components[0].kind == "scroll-Y");
        CHECK(rep.components[0].dimension == 2);
        CHECK(rep.components[0].degree == 2);
        CHECK(rep.h0_structure_sheaf == 1);
        CHECK(rep.h0_residual == 0);
        CHECK(rep.dim_Xi == 2);
    }
    SECTION("compressible pencils report cones") {
        auto rep = jacobian_report(segre_data(quadric_pencil("x0^2, x1^2", 4)));
        CHECK(rep.cone_shift == 2);
        CHECK(rep.dim_Xi_reduced == 0);
        CHECK(rep.dim_Xi == 2);
        for (const auto& c : rep.components) CHECK(c.dimension == 0);
    }
}

TEST_CASE("P^3 classification rows", "[verdicts]") {
    SECTION("generic corank one") {
        auto row = p3_classify(recover_pencil<Q>(0, {}, {at(0, {{3, 1}}), at(1, {{1, 1}})}));
        CHECK(row.symbol == "[3,1]");
        CHECK(row.chern == std::array<int, 3>{-2, 3, 4});
        CHECK(row.stability == "stable");
        CHECK(row.pdim == 1);
        CHECK(row.resolution == "0 -> O(-3)^2 -> O(-2)^4 -> T -> 0");
    }
    SECTION("corank two, not free") {
        auto row =
            p3_classify(recover_pencil<Q>(0, {}, {at(0, {{2, 1}, {1, 1}}), at(1, {{1, 1}})}));
        CHECK(row.symbol == "[(2,1),1]");
        CHECK(row.chern == std::array<int, 3>{-2, 2, 2});
        CHECK(row.stability == "strictly-semistable");
        CHECK(row.resolution == "0 -> O(-3) -> O(-2)^2 + O(-1) -> T -> 0");
    }
    SECTION("corank three") {
        auto row = p3_classify(recover_pencil<Q>(0, {}, {at(0, {{1, 3}}), at(1, {{1, 1}})}));
        CHECK(row.symbol == "[(1,1,1),1]");
        CHECK(row.chern == std::array<int, 3>{-1, 1, 1});
        CHECK(row.stability == "stable");
        CHECK(row.resolution == "0 -> O(-2) -> O(-1)^3 -> T -> 0");
    }
    SECTION("free rows") {
        auto split = p3_classify(quadric_pencil("x0*x1, x2*x3", 4));
        CHECK(split.stability == "free");
        CHECK(split.exponents == std::vector<int>{-1, -1});
        CHECK(split.chern == std::array<int, 3>{-2, 1, 0});
        CHECK(split.pdim == 0);
        CHECK(split.resolution.empty());

        auto irr = p3_classify(quadric_pencil("x0*x2, 2*x0*x1 + x3^2", 4));
        CHECK(irr.symbol == "[1]");
        CHECK(irr.stability == "free");
        CHECK(irr.exponents == std::vector<int>{-1, -1});

        auto flat = p3_classify(quadric_pencil("x0^2, x1^2", 4));
        CHECK(flat.exponents == std::vector<int>{0, 0});
        CHECK(flat.chern == std::array<int, 3>{0, 0, 0});
    }
    SECTION("only P^3 is accepted") {
        CHECK_THROWS_AS(p3_classify(quadric_pencil("x0^2, x1^2", 3)), std::invalid_argument);
        CHECK_THROWS_AS(p3_classify(quadric_pencil("x0*x1, x2*x3", 5)), std::invalid_argument);
    }
}

TEST_CASE("atlas enumerations match the frozen tables", "[verdicts][atlas]") {
    SECTION("regular signatures on P^3") {
        auto rows = atlas_regular(3);
        REQUIRE(rows.size() == 13);
        std::vector<std::vector<std::vector<int>>> symbols;
        for (const auto& r : rows) symbols.push_back(expanded_symbol(r.inv));
        std::sort(symbols.begin(), symbols.end());
        const std::vector<std::vector<std::vector<int>>> expected = {
            {{1}, {1}, {1}, {1}}, {{1, 1}, {1}, {1}}, {{1, 1}, {1, 1}}, {{1, 1, 1}, {1}},
            {{2}, {1}, {1}},      {{2}, {1, 1}},      {{2}, {2}},       {{2, 1}, {1}},
            {{2, 1, 1}},          {{2, 2}},           {{3}, {1}},       {{3, 1}},
            {{4}},
        };
        CHECK(symbols == expected);

        const std::map<std::string, std::pair<std::string, int>> table = {
            {"[1,1,1,1]", {"stable", 1}},        {"[2,1,1]", {"stable", 1}},
            {"[2,2]", {"stable", 1}},            {"[3,1]", {"stable", 1}},
            {"[4]", {"stable", 1}},              {"[(1,1),1,1]", {"strictly-semistable", 1}},
            {"[2,(1,1)]", {"strictly-semistable", 1}},
            {"[(2,1),1]", {"strictly-semistable", 1}},
            {"[(3,1)]", {"strictly-semistable", 1}},
            {"[(1,1),(1,1)]", {"strictly-semistable", 0}},
            {"[(2,2)]", {"strictly-semistable", 0}},
            {"[(1,1,1),1]", {"stable", 1}},      {"[(2,1,1)]", {"stable", 1}},
        };
        int free_rows = 0;
        for (const auto& r : rows) {
            INFO(r.symbol);
            auto it = table.find(r.symbol);
            REQUIRE(it != table.end());
            CHECK(to_string(r.stability.outcome) == it->second.first);
            CHECK(r.pdim == it->second.second);
            if (r.free.is_free) ++free_rows;
            CHECK(r.free.is_free == (r.pdim == 0));
        }
        CHECK(free_rows == 2);
    }
    SECTION("regular signature counts grow as tabulated") {
        CHECK(atlas_regular(4).size() == 26);
        CHECK(atlas_regular(5).size() == 57);
    }
    SECTION("irregular signatures on P^3") {
        auto rows = atlas_irregular(3);
        REQUIRE(rows.size() == 9);
        using Row = std::tuple<int, int, int, std::vector<int>, std::vector<std::vector<int>>>;
        std::vector<Row> got;
        for (const auto& r : rows)
            got.push_back({r.inv.r1, r.inv.u, r.inv.v, r.inv.positive_indices(),
                           expanded_symbol(r.inv)});
        std::sort(got.begin(), got.end());
        std::vector<Row> expected = {
            {1, 3, 0, {}, {{3}}},
            {1, 3, 0, {}, {{2, 1}}},
            {1, 3, 0, {}, {{2}, {1}}},
            {1, 3, 0, {}, {{1, 1}, {1}}},
            {1, 3, 0, {}, {{1}, {1}, {1}}},
            {1, 2, 1, {1}, {{1}}},
            {2, 2, 0, {}, {{2}}},
            {2, 2, 0, {}, {{1}, {1}}},
            {2, 1, 1, {1}, {}},
        };
        std::sort(expected.begin(), expected.end());
        CHECK(got == expected);

        int incompressible = 0;
        for (const auto& r : rows)
            if (r.inv.m == 0) ++incompressible;
        CHECK(incompressible == 1);

        // every irregular signature on P^3 is free, with the tabulated exponents
        const std::map<std::pair<std::string, int>, std::vector<int>> exps = {
            {{"[3]", 1}, {0, -2}},      {{"[(2,1)]", 1}, {0, -1}}, {{"[2,1]", 1}, {0, -2}},
            {{"[(1,1),1]", 1}, {0, -1}}, {{"[1,1,1]", 1}, {0, -2}}, {{"[1]", 1}, {-1, -1}},
            {{"[2]", 2}, {0, 0}},       {{"[1,1]", 2}, {0, 0}},    {{"[]", 2}, {0, -1}},
        };
        for (const auto& r : rows) {
            INFO(r.symbol << " r1=" << r.inv.r1);
            CHECK(r.free.is_free);
            auto it = exps.find({r.symbol, r.inv.r1});
            REQUIRE(it != exps.end());
            CHECK(r.free.exponents == it->second);
        }
    }
    SECTION("splitting table on P^5") {
        auto rows = atlas_splitting(5);
        REQUIRE(rows.size() == 12);
        using Row = std::tuple<int, int, int, std::vector<int>>;
        std::vector<Row> got;
        for (const auto& r : rows) {
            std::vector<int> pos;
            for (int c : r.degree_vector)
                if (c > 0) pos.push_back(c);
            got.push_back({r.r1, r.u, r.v, pos});
        }
        const std::vector<Row> expected = {
            {1, 5, 0, {}}, {1, 4, 1, {1}}, {1, 3, 2, {2}},    {2, 4, 0, {}},
            {2, 3, 1, {1}}, {2, 2, 2, {2}}, {2, 2, 2, {1, 1}}, {3, 3, 0, {}},
            {3, 2, 1, {1}}, {4, 2, 0, {}},  {4, 1, 1, {1}},    {5, 1, 0, {}},
        };
        CHECK(got == expected);
        int ci = 0;
        for (const auto& r : rows) {
            CHECK(r.h0_torsion == r.u - r.v);
            CHECK(r.m == static_cast<int>(r.degree_vector.size()) -
                             static_cast<int>(std::count_if(r.degree_vector.begin(),
                                                            r.degree_vector.end(),
                                                            [](int c) { return c > 0; })));
            if (r.completely_irregular) ++ci;
        }
        CHECK(ci == 3);
    }
    SECTION("splitting table on P^3") {
        auto rows = atlas_splitting(3);
        REQUIRE(rows.size() == 5);
        CHECK(rows[1].r1 == 1);
        CHECK(rows[1].u == 2);
        CHECK(rows[1].v == 1);
    }
    SECTION("range guard") {
        CHECK_THROWS_AS(atlas_regular(0), std::invalid_argument);
        CHECK_THROWS_AS(atlas_irregular(13), std::invalid_argument);
        CHECK_THROWS_AS(atlas_splitting(-1), std::invalid_argument);
    }
}

TEST_CASE("verdict properties over the atlas", "[verdicts][atlas]") {
    for (int n = 1; n <= 8; ++n) {
        auto rows = atlas_regular(n);
        auto irr = atlas_irregular(n);
        rows.insert(rows.end(), irr.begin(), irr.end());
        for (const auto& r : rows) {
            INFO("n=" << n << " " << r.symbol << " r1=" << r.inv.r1);
            bool ext_empty = r.ext.empty();
            CHECK(ext_empty == (r.pdim == 0));
            CHECK(ext_empty == r.free.is_free);
            CHECK(r.gpdim >= r.pdim);
            if (r.inv.r1_hat() == 0)
                CHECK(2 * r.pdim >= r.inv.n_hat() - 3);
            else
                CHECK(3 * r.pdim >= 2 * r.inv.n_hat() - 7);
            CHECK(r.stability.slope_num * (n == 1 ? 1 : n - 1) ==
                  (r.inv.double_hyperplanes - 2) * (n == 1 ? 0 : r.stability.slope_den));
        }
    }
}

TEST_CASE("synthetic atlas rows agree with recovered pencils", "[verdicts][atlas]") {
    for (int n = 3; n <= 4; ++n) {
        auto rows = atlas_regular(n);
        auto irr = atlas_irregular(n);
        rows.insert(rows.end(), irr.begin(), irr.end());
        for (const auto& r : rows) {
            if (r.inv.m != 0) continue;  // recover_pencil builds incompressible pencils
            INFO("n=" << n << " " << r.symbol << " r1=" << r.inv.r1);
            auto P = recover_pencil<Q>(r.inv.r1, r.inv.degree_vector, r.inv.clusters);
            auto inv = segre_data(P);
            CHECK(inv.n == r.inv.n);
            CHECK(inv.r0 == r.inv.r0);
            CHECK(inv.r1 == r.inv.r1);
            CHECK(inv.u == r.inv.u);
            CHECK(inv.v == r.inv.v);
            CHECK(inv.double_hyperplanes == r.inv.double_hyperplanes);
            CHECK(segre_symbol_string(inv) == r.symbol);
            CHECK(ext_support(inv) == r.ext);
            CHECK(pdim(inv) == r.pdim);
            CHECK(gpdim(inv) == r.gpdim);
            CHECK(freeness(inv).table_row == r.free.table_row);
        }
    }
}

TEST_CASE("verdicts are deterministic", "[verdicts]") {
    auto a = atlas_regular(5);
    auto b = atlas_regular(5);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].symbol == b[i].symbol);
        CHECK(a[i].ext == b[i].ext);
        CHECK(a[i].pdim == b[i].pdim);
        CHECK(a[i].gpdim == b[i].gpdim);
        CHECK(a[i].free.table_row == b[i].free.table_row);
        CHECK(to_string(a[i].stability.outcome) == to_string(b[i].stability.outcome));
    }
}
