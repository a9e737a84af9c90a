#pragma once

// JSON reports and matrix-file input. All reports carry `"schema": "pencil-lab/1"`;
// scalars are serialized as exact strings, never floating point.

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pencil_lab/regseq.hpp"
#include "pencil_lab/verdicts.hpp"

namespace plab {

using nlohmann::json;

inline constexpr const char* kSchemaTag = "pencil-lab/1";

template <class K>
std::string field_tag();

template <>
inline std::string field_tag<Rational>() {
    return "Q";
}

template <>
inline std::string field_tag<Fp>() {
    return "fp:" + std::to_string(Fp::modulus());
}

template <class K>
K scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        mpq_class q;
        try {
            q = mpq_class(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("scalar: cannot parse \"" + s + "\"");
        }
        if (q.get_den() == 0) throw std::invalid_argument("scalar: zero denominator in \"" + s + "\"");
        return Rational(std::move(q));
    }
    throw std::invalid_argument("scalar: expected integer or string, got " + j.dump());
}

template <>
inline Fp scalar_from_json<Fp>(const json& j) {
    if (j.is_number_integer()) return Fp(j.get<long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Fp(std::stol(s));
            Fp num(std::stol(s.substr(0, slash)));
            Fp den(std::stol(s.substr(slash + 1)));
            return num * den.inv();
        } catch (const std::domain_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("scalar: cannot parse \"" + s + "\"");
        }
    }
    throw std::invalid_argument("scalar: expected integer or string, got " + j.dump());
}

template <class K>
json matrix_to_json(const Matrix<K>& M) {
    json rows = json::array();
    for (int i = 0; i < M.m; ++i) {
        json row = json::array();
        for (int j = 0; j < M.n; ++j) row.push_back(M[i][j].str());
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class K>
Matrix<K> matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("matrix: expected a non-empty array of arrays");
    int m = static_cast<int>(j.size());
    int n = static_cast<int>(j[0].size());
    Matrix<K> M(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(j[i].size()) != n)
            throw std::invalid_argument("matrix: ragged rows");
        for (int c = 0; c < n; ++c) M[i][c] = scalar_from_json<K>(j[i][c]);
    }
    return M;
}

// {"A": [[...]], "B": [[...]]}, entries integers or exact strings like "1/2"
template <class K>
SymmetricPencil<K> pencil_from_json(const json& j) {
    if (!j.contains("A") || !j.contains("B"))
        throw std::invalid_argument("pencil: need matrices \"A\" and \"B\"");
    auto A = matrix_from_json<K>(j["A"]);
    auto B = matrix_from_json<K>(j["B"]);
    SymmetricPencil<K> P(A, B);
    // a rank-1 span is a single quadric, not a pencil
    Matrix<K> z(2, (P.n + 1) * (P.n + 1));
    for (int i = 0; i <= P.n; ++i)
        for (int c = 0; c <= P.n; ++c) {
            z[0][i * (P.n + 1) + c] = A[i][c];
            z[1][i * (P.n + 1) + c] = B[i][c];
        }
    if (rank_of(z) < 2) throw std::invalid_argument("pencil: members are proportional");
    return P;
}

template <class K>
json cluster_to_json(const SegreCluster<K>& cl) {
    json parts = json::array();
    for (const auto& [a, p] : cl.parts) parts.push_back({a, p});
    json coeffs = json::array();
    for (const auto& c : cl.point.c) coeffs.push_back(c.str());
    return {{"point", cl.point.str("t")},
            {"point_coeffs", std::move(coeffs)},
            {"point_degree", cl.point_degree},
            {"parts", std::move(parts)}};
}

template <class K>
json invariants_to_json(const PencilInvariants<K>& inv) {
    json clusters = json::array();
    for (const auto& cl : inv.clusters) clusters.push_back(cluster_to_json(cl));
    return {{"n", inv.n},
            {"m", inv.m},
            {"n_hat", inv.n_hat()},
            {"r0", inv.r0},
            {"r1", inv.r1},
            {"r0_hat", inv.r0_hat()},
            {"r1_hat", inv.r1_hat()},
            {"u", inv.u},
            {"v", inv.v},
            {"degree_vector", inv.degree_vector},
            {"segre_symbol", segre_symbol_string(inv)},
            {"clusters", std::move(clusters)}};
}

inline json scheme_to_json(const SchemeReport& rep) {
    json comps = json::array();
    for (const auto& c : rep.components) {
        json jc = {{"kind", c.kind},
                   {"dimension", c.dimension},
                   {"dimension_ambient", c.dimension + rep.cone_shift},
                   {"multiplicity", c.multiplicity},
                   {"copies", c.copies}};
        if (c.kind == "scroll-Y") {
            jc["degree"] = c.degree;
        } else {
            jc["base_point"] = c.base;
            jc["prefix"] = c.prefix;
        }
        comps.push_back(std::move(jc));
    }
    return {{"components", std::move(comps)},
            {"h0_structure_sheaf", rep.h0_structure_sheaf},
            {"h0_residual", rep.h0_residual},
            {"dim", rep.dim_Xi},
            {"dim_reduced", rep.dim_Xi_reduced},
            {"cone_shift", rep.cone_shift}};
}

inline json freeness_to_json(const FreenessVerdict& fv) {
    return {{"is_free", fv.is_free}, {"exponents", fv.exponents}, {"table_row", fv.table_row}};
}

// Full classification report for one pencil. The emitted "pencil" block re-parses to
// identical invariants (round-trip property).
template <class K>
json pencil_report(const SymmetricPencil<K>& P) {
    auto inv = segre_data(P);
    auto sv = stability_verdict(inv);
    json verdicts = {
        {"stability",
         {{"outcome", to_string(sv.outcome)},
          {"reason", sv.reason},
          {"slope", std::to_string(sv.slope_num) + "/" + std::to_string(sv.slope_den)}}},
        {"ext_support", ext_support(inv)},
        {"pdim", pdim(inv)},
        {"gpdim", gpdim(inv)},
        {"free", freeness_to_json(freeness(inv))},
        {"jacobian_scheme", scheme_to_json(jacobian_report(inv))},
    };
    if (inv.m > 0)
        verdicts["frames_note"] =
            "ext_support/pdim/gpdim computed on incompressible reduction (n_hat = " +
            std::to_string(inv.n_hat()) +
            "); ext support unchanged by the cone shift; scheme dimensions reported in both frames";
    json out = {{"schema", kSchemaTag},
                {"field", field_tag<K>()},
                {"pencil", {{"A", matrix_to_json(P.A)}, {"B", matrix_to_json(P.B)}}},
                {"invariants", invariants_to_json(inv)},
                {"verdicts", std::move(verdicts)}};
    if (P.n == 3) {
        auto row = p3_classify(P);
        json p3 = {{"chern", row.chern}, {"stability", row.stability}, {"free", row.free}};
        if (row.free)
            p3["exponents"] = row.exponents;
        else
            p3["resolution"] = row.resolution;
        out["p3"] = std::move(p3);
    }
    return out;
}

inline json betti_to_json(const BettiTable& bt) {
    json steps = json::object();
    for (size_t i = 0; i < bt.steps.size(); ++i) {
        json row = json::object();
        for (const auto& [deg, cnt] : bt.steps[i]) row[std::to_string(deg)] = cnt;
        steps[std::to_string(i)] = std::move(row);
    }
    return {{"max_degree", bt.D},
            {"table", std::move(steps)},
            {"complete_below_max_degree", bt.complete_below_D}};
}

template <class K>
json hilbert_to_json(const HilbertQ<K>& H) {
    json res = json::object(), cok = json::object();
    for (const auto& [t, v] : H.residual_dims) res[std::to_string(t)] = v;
    for (const auto& [t, v] : H.coker_dims) cok[std::to_string(t)] = v;
    json out = {{"window", {H.window_lo, H.window_hi}},
                {"divisorial_degree", H.l},
                {"residual_dims", std::move(res)},
                {"coker_dims", std::move(cok)},
                {"dim", H.xi_dim},
                {"conclusive", H.conclusive}};
    if (H.conclusive && H.xi_dim <= 1) out["tail_degree"] = H.xi_degree;
    if (!H.note.empty()) out["note"] = H.note;
    return out;
}

// Syzygy/Betti/Chern/omega report for a regular sequence. `max_degree` < 0 leaves
// every truncation at its per-operation default.
template <class K>
json sequence_report(const RegSequence<K>& s, int max_degree = -1) {
    json forms = json::array();
    for (const auto& f : s.forms) forms.push_back(f.str());
    json degrees = json::array();
    for (int di : s.d) degrees.push_back(di + 1);

    int a_max = max_degree >= 0 ? max_degree : s.sum_d() + 3;
    auto dims = syzygy_dims(s, a_max);
    json jdims = json::object();
    for (int a = 0; a <= a_max; ++a) jdims[std::to_string(a)] = dims[a];

    auto mc = minors_content(s);
    auto bt = betti_truncated(s, max_degree);
    auto fc = freeness_up_to(s, max_degree);

    json out = {{"schema", kSchemaTag},
                {"field", field_tag<K>()},
                {"n", s.n},
                {"k", s.k},
                {"forms", std::move(forms)},
                {"degrees", std::move(degrees)},
                {"regularity_screened", s.screened},
                {"syzygy_dims", std::move(jdims)},
                {"compressibility", dims[0]},
                {"minors", {{"l", mc.l}, {"factor", mc.factor.str()}, {"c1_T", mc.c1_T}}},
                {"betti", betti_to_json(bt)},
                {"freeness", {{"status", to_string(fc.status)}, {"exponents", fc.exponents}}}};
    if (!s.warning.empty()) out["warning"] = s.warning;

    auto H = hilbert_Q(s, max_degree);
    out["jacobian_scheme"] = hilbert_to_json(H);
    if (s.n == 3 && s.k == 2) {
        if (H.conclusive) {
            auto sb = stability_bounds(s, max_degree);
            out["stability"] = {{"verdict", to_string(sb.verdict)},
                                {"deg_Q", sb.deg_Q},
                                {"note", sb.note}};
        } else {
            out["stability"] = {{"verdict", "inconclusive"},
                                {"note", "Jacobian-scheme dimension fit inconclusive"}};
        }
    }
    if (s.k == 2) {
        json om = json::array();
        for (const auto& w : rational_form(s).omega) om.push_back(w.str());
        out["omega"] = std::move(om);
    }
    return out;
}

// true when a verdict in the report is open only because of the degree truncation
inline bool report_inconclusive(const json& rep) {
    if (rep.contains("freeness") && rep["freeness"]["status"] == "undetermined") return true;
    if (rep.contains("jacobian_scheme") && rep["jacobian_scheme"].contains("conclusive") &&
        !rep["jacobian_scheme"]["conclusive"].get<bool>())
        return true;
    return false;
}

}  // namespace plab
