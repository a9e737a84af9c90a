#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <pencil_lab/json_io.hpp>
#include <pencil_lab/verification.hpp>

// pencil-lab: exact invariants, stability and freeness verdicts, and syzygy
// computations for pencils of quadrics and short regular sequences.
//
// Exit codes: 0 success; 1 malformed request or unparsable input; 2 valid input
// rejected by the engines (not a regular sequence, invalid pencil); 3 a verdict
// stayed open because a degree truncation was hit.

namespace {

using namespace plab;
using nlohmann::json;

struct Options {
    std::string forms;
    std::string matrices_file;
    int n = -1;
    std::string field = "Q";
    int max_degree = -1;
    bool as_json = false;
    std::string degree_vector;
    std::string segre;
    std::string points;
    bool regular = false;
    bool irregular = false;
    bool splitting = false;
};

struct RequestError : std::runtime_error {  // exit code 1
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// small input parsers
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw RequestError("cannot read " + what + " from \"" + s + "\"");
    }
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    if (text.empty()) return out;
    for (const auto& tok : split(text, ',')) out.push_back(parse_int(tok, what));
    return out;
}

// "6^3,3^4,2" -> {(6,3),(3,4),(2,1)}
std::vector<std::pair<int, int>> parse_parts(const std::string& text) {
    std::vector<std::pair<int, int>> parts;
    for (const auto& tok : split(text, ',')) {
        auto caret = tok.find('^');
        if (caret == std::string::npos) {
            parts.push_back({parse_int(tok, "a part size"), 1});
        } else {
            parts.push_back({parse_int(tok.substr(0, caret), "a part size"),
                             parse_int(tok.substr(caret + 1), "a part multiplicity")});
        }
    }
    return parts;
}

template <class K>
K parse_scalar(const std::string& s) {
    try {
        return scalar_from_json<K>(json(s));
    } catch (const std::exception&) {
        throw RequestError("cannot read a scalar from \"" + s + "\"");
    }
}

// a point is a root ("2", "-1/3") or a comma list of coefficients c0,c1,...
template <class K>
UniPoly<K> parse_point(const std::string& text) {
    auto toks = split(text, ',');
    if (toks.size() == 1) return UniPoly<K>::linear_root(parse_scalar<K>(toks[0]));
    std::vector<K> coeffs;
    for (const auto& t : toks) coeffs.push_back(parse_scalar<K>(t));
    UniPoly<K> p(coeffs);
    if (p.deg() < 1) throw RequestError("a cluster point must have positive degree");
    return p;
}

template <class K>
std::vector<SegreCluster<K>> parse_clusters(const std::string& segre, const std::string& points) {
    std::vector<SegreCluster<K>> out;
    if (segre.empty()) {
        if (!points.empty()) throw RequestError("--points given without --segre");
        return out;
    }
    auto groups = split(segre, ';');
    auto pts = points.empty() ? std::vector<std::string>() : split(points, ';');
    if (!pts.empty() && pts.size() != groups.size())
        throw RequestError("--points must list one point per cluster in --segre");
    for (size_t i = 0; i < groups.size(); ++i) {
        SegreCluster<K> cl;
        cl.parts = parse_parts(groups[i]);
        cl.point = pts.empty() ? UniPoly<K>::linear_root(K(static_cast<long>(i)))
                               : parse_point<K>(pts[i]);
        cl.point_degree = cl.point.deg();
        out.push_back(std::move(cl));
    }
    return out;
}

template <class K>
std::vector<MultiPoly<K>> parse_form_list(const std::string& text, int n) {
    if (text.empty()) throw RequestError("no input: pass --forms or --matrices");
    try {
        return parse_forms<K>(text, n < 0 ? -1 : n + 1);
    } catch (const std::exception& e) {
        throw RequestError(std::string("cannot parse --forms: ") + e.what());
    }
}

template <class K>
SymmetricPencil<K> load_pencil(const Options& opt) {
    if (!opt.matrices_file.empty()) {
        std::ifstream in(opt.matrices_file);
        if (!in) throw RequestError("cannot open " + opt.matrices_file);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw RequestError(std::string("cannot parse JSON: ") + e.what());
        }
        return pencil_from_json<K>(j.contains("pencil") ? j["pencil"] : j);
    }
    auto F = parse_form_list<K>(opt.forms, opt.n);
    if (F.size() != 2) throw RequestError("a pencil needs exactly two forms");
    return hessian_pencil(F[0], F[1]);
}

// ---------------------------------------------------------------------------
// text renderers (read from the JSON report, the single source of truth)
// ---------------------------------------------------------------------------

std::string join_ints(const json& arr) {
    std::string s;
    for (const auto& v : arr) {
        if (!s.empty()) s += ", ";
        s += v.dump();
    }
    return s;
}

void render_pencil_text(const json& r, std::ostream& os) {
    const auto& inv = r["invariants"];
    const auto& ver = r["verdicts"];
    os << "pencil of quadrics on P^" << inv["n"].get<int>() << " over " << r["field"].get<std::string>() << "\n";
    os << "  segre symbol   " << inv["segre_symbol"].get<std::string>() << "\n";
    os << "  m = " << inv["m"] << "   n_hat = " << inv["n_hat"] << "   r0 = " << inv["r0"]
       << "   r1 = " << inv["r1"] << "   (u,v) = (" << inv["u"] << "," << inv["v"] << ")\n";
    os << "  minimal indices [" << join_ints(inv["degree_vector"]) << "]\n";
    for (const auto& cl : inv["clusters"]) {
        os << "  cluster at " << cl["point"].get<std::string>() << " (degree " << cl["point_degree"] << "): parts";
        for (const auto& ap : cl["parts"]) os << " (" << ap[0] << "^" << ap[1] << ")";
        os << "\n";
    }
    const auto& st = ver["stability"];
    os << "  stability      " << st["outcome"].get<std::string>() << " (slope " << st["slope"].get<std::string>()
       << "): " << st["reason"].get<std::string>() << "\n";
    os << "  ext support    {" << join_ints(ver["ext_support"]) << "}   pdim " << ver["pdim"]
       << "   gpdim " << ver["gpdim"] << "\n";
    const auto& fr = ver["free"];
    if (fr["is_free"].get<bool>())
        os << "  free: yes      exponents [" << join_ints(fr["exponents"]) << "]\n";
    else
        os << "  free: no\n";
    const auto& js = ver["jacobian_scheme"];
    os << "  jacobian scheme: dim " << js["dim"] << " (reduced " << js["dim_reduced"]
       << ", cone shift " << js["cone_shift"] << ")\n";
    for (const auto& comp : js["components"]) {
        if (comp["kind"].get<std::string>() == "scroll-Y")
            os << "    scroll: dim " << comp["dimension"] << ", degree " << comp["degree"] << "\n";
        else
            os << "    linear piece at " << comp["base_point"].get<std::string>() << " (prefix "
               << comp["prefix"] << "): dim " << comp["dimension"] << ", multiplicity "
               << comp["multiplicity"] << ", copies " << comp["copies"] << "\n";
    }
    if (ver.contains("frames_note")) os << "  note: " << ver["frames_note"].get<std::string>() << "\n";
    if (r.contains("p3")) {
        const auto& p3 = r["p3"];
        os << "  P^3 row: chern (" << join_ints(p3["chern"]) << "), " << p3["stability"].get<std::string>();
        if (p3.contains("exponents"))
            os << ", exponents [" << join_ints(p3["exponents"]) << "]";
        else
            os << ", resolution " << p3["resolution"].get<std::string>();
        os << "\n";
    }
}

void render_betti_text(const json& bt, std::ostream& os) {
    os << "  betti (window up to degree " << bt["max_degree"] << ", "
       << (bt["complete_below_max_degree"].get<bool>() ? "closed" : "open") << ")\n";
    for (const auto& [step, row] : bt["table"].items()) {
        os << "    step " << step << ":";
        if (row.empty()) os << " -";
        for (const auto& [deg, cnt] : row.items()) os << " " << cnt.dump() << " of degree " << deg;
        os << "\n";
    }
}

void render_sequence_text(const json& r, std::ostream& os) {
    os << "sequence of " << r["k"] << " forms of degrees [" << join_ints(r["degrees"])
       << "] on P^" << r["n"].get<int>() << " over " << r["field"].get<std::string>() << "\n";
    os << "  regularity " << (r["regularity_screened"].get<bool>() ? "screened" : "assumed") << "\n";
    if (r.contains("warning")) os << "  warning: " << r["warning"].get<std::string>() << "\n";
    os << "  syzygy dims   ";
    for (const auto& [a, d] : r["syzygy_dims"].items()) os << " a=" << a << ": " << d.dump();
    os << "\n";
    os << "  compressibility " << r["compressibility"] << "\n";
    const auto& mc = r["minors"];
    os << "  minors: content degree " << mc["l"] << ", factor " << mc["factor"].get<std::string>()
       << ", c1(T) = " << mc["c1_T"] << "\n";
    render_betti_text(r["betti"], os);
    const auto& fc = r["freeness"];
    os << "  freeness: " << fc["status"].get<std::string>();
    if (!fc["exponents"].empty()) os << ", exponents [" << join_ints(fc["exponents"]) << "]";
    os << "\n";
    const auto& js = r["jacobian_scheme"];
    os << "  jacobian scheme: divisorial degree " << js["divisorial_degree"] << ", dim fit "
       << js["dim"].dump() << ", window [" << js["window"][0] << "," << js["window"][1] << "], "
       << (js["conclusive"].get<bool>() ? "conclusive" : "inconclusive");
    if (js.contains("tail_degree")) os << ", tail degree " << js["tail_degree"];
    os << "\n";
    if (js.contains("note")) os << "    note: " << js["note"].get<std::string>() << "\n";
    if (r.contains("stability")) {
        const auto& st = r["stability"];
        os << "  slope bound: " << st["verdict"].get<std::string>();
        if (st.contains("deg_Q")) os << " (deg Q = " << st["deg_Q"] << ")";
        if (!st["note"].get<std::string>().empty()) os << " -- " << st["note"].get<std::string>();
        os << "\n";
    }
    if (r.contains("omega")) {
        os << "  omega: [";
        bool first = true;
        for (const auto& w : r["omega"]) {
            if (!first) os << ", ";
            os << w.get<std::string>();
            first = false;
        }
        os << "]\n";
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

template <class K>
int cmd_analyze_pencil(const Options& opt) {
    auto P = load_pencil<K>(opt);
    auto rep = pencil_report(P);
    if (opt.as_json)
        std::cout << rep.dump(2) << "\n";
    else
        render_pencil_text(rep, std::cout);
    return 0;
}

template <class K>
int cmd_analyze_sequence(const Options& opt) {
    auto F = parse_form_list<K>(opt.forms, opt.n);
    auto s = make_regseq(F, opt.n >= 0 ? opt.n : static_cast<int>(F.empty() ? 0 : F[0].nvars) - 1);
    auto rep = sequence_report(s, opt.max_degree);
    if (opt.as_json)
        std::cout << rep.dump(2) << "\n";
    else
        render_sequence_text(rep, std::cout);
    return report_inconclusive(rep) ? 3 : 0;
}

template <class K>
int cmd_recover(const Options& opt) {
    auto dv = parse_int_list(opt.degree_vector, "a minimal index");
    std::vector<int> pos;
    int zeros = 0;
    for (int x : dv) {
        if (x > 0)
            pos.push_back(x);
        else if (x == 0)
            ++zeros;
        else
            throw RequestError("minimal indices must be >= 0");
    }
    auto clusters = parse_clusters<K>(opt.segre, opt.points);
    auto P = recover_pencil<K>(static_cast<int>(pos.size()), pos, clusters);
    if (zeros > 0) {
        int d = P.n + 1 + zeros;
        Matrix<K> A(d, d), B(d, d);
        for (int i = 0; i <= P.n; ++i)
            for (int j = 0; j <= P.n; ++j) {
                A[i][j] = P.A[i][j];
                B[i][j] = P.B[i][j];
            }
        P = SymmetricPencil<K>(std::move(A), std::move(B));
    }
    auto rep = pencil_report(P);
    if (opt.as_json)
        std::cout << rep.dump(2) << "\n";
    else
        render_pencil_text(rep, std::cout);
    return 0;
}

template <class K>
int cmd_atlas(const Options& opt) {
    if (opt.n < 1) throw RequestError("atlas needs --n >= 1");
    int picked = (opt.regular ? 1 : 0) + (opt.irregular ? 1 : 0) + (opt.splitting ? 1 : 0);
    if (picked > 1) throw RequestError("pick one of --regular, --irregular, --splitting");
    if (opt.splitting) {
        auto rows = atlas_splitting(opt.n);
        if (opt.as_json) {
            json out = json::array();
            for (const auto& r : rows)
                out.push_back({{"r1", r.r1},
                               {"u", r.u},
                               {"v", r.v},
                               {"degree_vector", r.degree_vector},
                               {"h0_torsion", r.h0_torsion},
                               {"m", r.m},
                               {"completely_irregular", r.completely_irregular}});
            std::cout << json{{"schema", kSchemaTag}, {"rows", std::move(out)}}.dump(2) << "\n";
        } else {
            std::cout << "splitting types on P^" << opt.n << " (" << rows.size() << " rows)\n";
            for (const auto& r : rows) {
                std::cout << "  r1=" << r.r1 << "  (u,v)=(" << r.u << "," << r.v << ")  indices [";
                for (size_t i = 0; i < r.degree_vector.size(); ++i)
                    std::cout << (i ? "," : "") << r.degree_vector[i];
                std::cout << "]  h0(torsion)=" << r.h0_torsion
                          << (r.completely_irregular ? "  completely irregular" : "") << "\n";
            }
        }
        return 0;
    }
    auto rows = opt.irregular ? atlas_irregular(opt.n) : atlas_regular(opt.n);
    if (opt.as_json) {
        json out = json::array();
        for (const auto& r : rows) {
            json row = {{"symbol", r.symbol},
                        {"invariants", invariants_to_json(r.inv)},
                        {"stability", to_string(r.stability.outcome)},
                        {"ext_support", r.ext},
                        {"pdim", r.pdim},
                        {"gpdim", r.gpdim},
                        {"free", freeness_to_json(r.free)}};
            out.push_back(std::move(row));
        }
        std::cout << json{{"schema", kSchemaTag}, {"rows", std::move(out)}}.dump(2) << "\n";
    } else {
        std::cout << (opt.irregular ? "irregular" : "regular") << " pencils on P^" << opt.n << " ("
                  << rows.size() << " rows)\n";
        for (const auto& r : rows) {
            std::cout << "  " << r.symbol << "  m=" << r.inv.m << " r0=" << r.inv.r0
                      << " r1=" << r.inv.r1 << "  pdim=" << r.pdim << " gpdim=" << r.gpdim << "  "
                      << to_string(r.stability.outcome);
            if (r.free.is_free) {
                std::cout << "  free [";
                for (size_t i = 0; i < r.free.exponents.size(); ++i)
                    std::cout << (i ? "," : "") << r.free.exponents[i];
                std::cout << "]";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_reproduce(const Options& opt) {
    auto results = verify::run_all();
    bool all = true;
    if (opt.as_json) {
        json out = json::array();
        for (const auto& r : results) {
            out.push_back({{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
            if (!r.pass) all = false;
        }
        std::cout << json{{"schema", kSchemaTag}, {"checks", std::move(out)}}.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                        r.detail.c_str());
            if (!r.pass) all = false;
        }
    }
    return all ? 0 : 1;
}

template <class K>
int dispatch(const CLI::App& app, const Options& opt) {
    if (app.got_subcommand("analyze-pencil")) return cmd_analyze_pencil<K>(opt);
    if (app.got_subcommand("analyze-sequence")) return cmd_analyze_sequence<K>(opt);
    if (app.got_subcommand("recover")) return cmd_recover<K>(opt);
    if (app.got_subcommand("atlas")) return cmd_atlas<K>(opt);
    return cmd_reproduce(opt);
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int run(const CLI::App& app, const Options& opt) {
    if (opt.field == "Q") return dispatch<Rational>(app, opt);
    if (opt.field.rfind("fp:", 0) == 0) {
        long p = parse_int(opt.field.substr(3), "the field characteristic");
        // composite moduli break every elimination/gcd routine downstream
        if (!is_prime(p)) throw RequestError("bad --field: " + std::to_string(p) + " is not prime");
        Fp::set_modulus(p);
        return dispatch<Fp>(app, opt);
    }
    throw RequestError("--field must be Q or fp:<prime>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants, verdicts, and syzygies for pencils of quadrics and short regular sequences"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_input) {
        sub->add_option("--field", opt.field, "Q (default) or fp:<prime>");
        sub->add_flag("--json", opt.as_json, "emit the JSON report");
        if (with_input) {
            sub->add_option("--forms", opt.forms, "comma-separated forms in x0..xn");
            sub->add_option("--n", opt.n, "ambient projective dimension (default: inferred)");
        }
    };

    auto* ap = app.add_subcommand("analyze-pencil", "classify a pencil of quadrics");
    add_common(ap, true);
    ap->add_option("--matrices", opt.matrices_file, "JSON file holding symmetric matrices A and B");

    auto* as = app.add_subcommand("analyze-sequence", "syzygy and freeness report for a regular sequence");
    add_common(as, true);
    as->add_option("--max-degree", opt.max_degree, "truncation degree for Betti/Hilbert windows");

    auto* rc = app.add_subcommand("recover", "build an explicit pencil from (minimal indices, clusters)");
    add_common(rc, false);
    rc->add_option("--degree-vector", opt.degree_vector, "minimal indices, e.g. \"0,1,2\"");
    rc->add_option("--segre", opt.segre, "clusters: parts a^p comma-separated, clusters ';'-separated");
    rc->add_option("--points", opt.points, "one point per cluster: a root or coefficients c0,c1,...");

    auto* at = app.add_subcommand("atlas", "classification tables for a fixed ambient dimension");
    add_common(at, false);
    at->add_option("--n", opt.n, "ambient projective dimension")->required();
    at->add_flag("--regular", opt.regular, "regular pencils (default)");
    at->add_flag("--irregular", opt.irregular, "irregular pencils");
    at->add_flag("--splitting", opt.splitting, "splitting-type table");

    auto* rp = app.add_subcommand("reproduce-paper", "run the built-in reproduction suite");
    rp->add_flag("--json", opt.as_json, "emit results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc_code = app.exit(e);
        return rc_code == 0 ? 0 : 1;
    }

    try {
        return run(app, opt);
    } catch (const RequestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
