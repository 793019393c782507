#include "swhw/cli.hpp"

#include "swhw/coh.hpp"
#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"
#include "swhw/orthorep.hpp"
#include "swhw/profile.hpp"
#include "swhw/quadform.hpp"
#include "swhw/symcx.hpp"
#include "swhw/traceform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace swhw::cli {

namespace {

using nlohmann::json;

struct Outcome {
    json j = json::object();
    std::vector<std::string> lines;
    int code = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MissingInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json h2_json(const H2Class& x) {
    if (!x.field().is_rationals()) return x.bit() ? 1 : 0;
    json a = json::array();
    for (const auto& v : x.places()) a.push_back(v.str());
    return a;
}

/// "0", "2,inf" over Q; "0" or "1" over Q_p and R
H2Class parse_h2(const std::string& s, const BaseField& f) {
    if (!f.is_rationals()) {
        if (s != "0" && s != "1") throw Error(ErrorKind::ParseError, "expected 0 or 1, got " + s);
        return H2Class::from_bit(f, s == "1");
    }
    if (s == "0") return H2Class::zero(f);
    std::vector<Place> places;
    for (const auto& t : split(s, ',')) places.push_back(Place::parse(t));
    return H2Class::from_places(places);
}

/// "a", "chi5", "chi5^3", "a*chi5"
CharClass parse_char(const std::string& s, const BaseField& f) {
    CharClass c{SquareClass::one(f), 0, 2};
    for (const auto& t : split(s, '*')) {
        if (t.rfind("chi", 0) == 0) {
            auto caret = t.find('^');
            c.ell = std::stol(t.substr(3, caret == std::string::npos ? std::string::npos : caret - 3));
            c.k = caret == std::string::npos ? 1 : std::stol(t.substr(caret + 1));
        } else {
            c.eps = c.eps + sqclass(f, nt::parse_rational(t));
        }
    }
    return c;
}

std::vector<SquareClass> parse_classes(const std::string& s, const BaseField& f) {
    std::vector<SquareClass> v;
    for (const auto& t : split(s, ',')) v.push_back(sqclass(f, nt::parse_rational(t)));
    return v;
}

QMatrix parse_gram(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "gram: expected an array of rows");
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw Error(ErrorKind::ParseError, "gram: expected an array of rows");
        std::vector<mpq_class> row;
        for (const auto& e : r) {
            if (e.is_number_integer())
                row.emplace_back(e.get<long>());
            else if (e.is_string())
                row.push_back(nt::parse_rational(e.get<std::string>()));
            else
                throw Error(ErrorKind::ParseError, "gram: entries are integers or rational strings");
        }
        if (row.size() != j.size()) throw Error(ErrorKind::DimensionMismatch, "gram: not square");
        rows.push_back(row);
    }
    QMatrix g = QMatrix::from_rows(rows, static_cast<int>(rows.size()));
    if (!g.is_symmetric()) throw Error(ErrorKind::ValidationFailed, "gram: not symmetric");
    return g;
}

// ---- commands ----

Outcome cmd_symbol(const std::string& a, const std::string& b, const BaseField& f, const std::string& place) {
    Outcome o;
    mpq_class x = nt::parse_rational(a), y = nt::parse_rational(b);
    H2Class c = cup(sqclass(f, x), sqclass(f, y));
    o.j = {{"a", a}, {"b", b}, {"field", f.str()}, {"class", h2_json(c)}};
    o.lines.push_back(c.str());
    if (!place.empty()) {
        Place v = Place::parse(place);
        int s = hilbert_symbol(x, y, v);
        o.j["place"] = v.str();
        o.j["hilbert_symbol"] = s;
        o.lines.push_back("(" + a + "," + b + ")_" + v.str() + " = " + std::to_string(s));
    }
    return o;
}

Outcome cmd_hw(const std::string& path, const BaseField& f) {
    Outcome o;
    QuadSpace D(parse_gram(read_file(path)), f);
    DiagForm d = diagonalize(D);
    json diag = json::array();
    std::string dl;
    for (const auto& e : d.entries) {
        diag.push_back(e.str());
        dl += (dl.empty() ? "" : ", ") + e.str();
    }
    H2Class h = hw2(d);
    o.j = {{"field", f.str()}, {"dim", D.dim()}, {"diagonal", diag}, {"hw1", disc(d).str()}, {"hw2", h2_json(h)}};
    o.lines = {"dim=" + std::to_string(D.dim()), "diagonal=<" + dl + ">", "hw1=" + disc(d).str(), "hw2=" + h.str()};
    if (f.is_rationals() || f.is_reals()) {
        Signature s = signature(QuadSpace(D.gram));
        o.j["signature"] = {s.plus, s.minus};
        o.lines.push_back("signature=(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + ")");
    }
    return o;
}

Outcome cmd_sw(const std::string& chars, const std::vector<std::string>& hyps, const BaseField& f) {
    Outcome o;
    OrthRep V;
    V.field = f;
    V.chars = parse_classes(chars, f);
    for (const auto& h : hyps) {
        auto colon = h.rfind(':');
        if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "--hyp expects det:rank, got " + h);
        long k = std::stol(h.substr(colon + 1));
        if (k < 1) throw Error(ErrorKind::InvalidArgument, "--hyp rank must be positive");
        V.hyps.push_back({parse_char(h.substr(0, colon), f), k});
    }
    SquareClass s1 = sw1(V);
    H2Class s2 = sw2(V);
    o.j = {{"field", f.str()}, {"dim", V.dim()}, {"sw1", s1.str()}, {"sw2", h2_json(s2)}};
    o.lines = {"dim=" + std::to_string(V.dim()), "sw1=" + s1.str(), "sw2=" + s2.str()};
    return o;
}

Outcome cmd_serre(const std::string& poly, const std::string& split_s, int max_degree) {
    Outcome o;
    EtaleAlgebra A = EtaleAlgebra::parse(poly, max_degree);
    std::optional<AbelianSplitting> sp;
    if (!split_s.empty()) sp = AbelianSplitting::parse(split_s);
    SerreReport r = serre_check(A, sp);
    std::string st = r.status();
    o.j = {{"poly", poly},
           {"degree", A.degree()},
           {"disc", r.disc.str()},
           {"lhs", r.lhs ? h2_json(*r.lhs) : json(nullptr)},
           {"rhs", h2_json(r.rhs)},
           {"status", st}};
    o.lines.push_back("lhs=" + (r.lhs ? r.lhs->str() : std::string("?")) + " rhs=" + r.rhs.str() + " " + st);
    o.lines.push_back("disc=" + r.disc.str());
    o.code = st == "DIFFERENT" ? 1 : 0;
    return o;
}

void add_checks(Outcome& o, const std::vector<CheckLine>& lines) {
    json arr = json::array();
    for (const auto& l : lines) {
        arr.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        o.lines.push_back(std::string(l.pass ? "PASS " : "FAIL ") + l.name + (l.detail.empty() ? "" : "  [" + l.detail + "]"));
        if (!l.pass) o.code = 1;
    }
    o.j["checks"] = arr;
}

Outcome cmd_profile_eval(const std::string& path, const std::string& form_s) {
    Outcome o;
    CohomProfile P = profile_from_json(read_file(path));
    Form form = parse_form(form_s);
    if (!P.sw2_in) {
        // nothing to compare: report the class the identity predicts
        H2Class pred = solve_sw2(P);
        o.j = {{"form", form_name(form)}, {"sw2", nullptr}, {"predicted_sw2", h2_json(pred)}};
        o.lines = {"form=" + form_name(form), "sw2 not supplied", "predicted sw2=" + pred.str()};
        return o;
    }
    Sides s = conjecture_sides(P, form);
    o.j = {{"form", form_name(form)},
           {"lhs", h2_json(s.lhs)},
           {"rhs", h2_json(s.rhs)},
           {"difference", h2_json(s.difference())},
           {"holds", s.holds()}};
    o.lines = {"form=" + form_name(form), "lhs=" + s.lhs.str(), "rhs=" + s.rhs.str(),
               "difference=" + s.difference().str(), s.holds() ? "HOLDS" : "FAILS"};
    o.code = s.holds() ? 0 : 1;
    return o;
}

Outcome cmd_profile_hypersurface(int n, int d, long ell, const BaseField& f, const std::string& dX,
                                 const std::string& hw2_s, const std::string& check) {
    Outcome o;
    if (n < 0 || n % 2) throw Error(ErrorKind::InvalidArgument, "--n must be even and nonnegative");
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "--d must be at least 2");
    std::optional<SquareClass> dx;
    if (!dX.empty()) dx = sqclass(f, nt::parse_rational(dX));
    std::optional<H2Class> h;
    if (!hw2_s.empty()) h = parse_h2(hw2_s, f);
    CohomProfile P = hypersurface_profile(n, d, ell, f, dx, h);
    o.j["profile"] = json::parse(profile_to_json(P));
    std::string betti, mid;
    for (long b : P.betti) betti += (betti.empty() ? "" : " ") + std::to_string(b);
    for (int q = 0; q <= n; ++q) mid += (mid.empty() ? "" : " ") + std::to_string(P.h(n - q, q));
    o.lines = {"n=" + std::to_string(n) + " d=" + std::to_string(d), "betti=" + betti, "hodge middle=" + mid};
    if (check == "congruences") {
        add_checks(o, congruence_checks(P).lines);
    } else if (check == "crystalline") {
        if (!P.hw2_in) P.hw2_in = H2Class::zero(f);
        CrystallineReport r = crystalline_boundary_check(P);
        add_checks(o, {{"boundary sw2 = h boundary c_p", r.holds(), "lhs=" + r.lhs.str() + " rhs=" + r.rhs.str()}});
    } else if (!check.empty()) {
        throw Error(ErrorKind::InvalidArgument, "--check is congruences or crystalline");
    }
    return o;
}

Outcome cmd_profile_congruences(const std::vector<int>& ns, int max_d, long ell) {
    Outcome o;
    json rows = json::array();
    for (int n : ns)
        for (int d = 2; d <= max_d; ++d) {
            auto rep = congruence_checks(hypersurface_profile(n, d, ell, BaseField::Q()));
            std::string failed;
            for (const auto& l : rep.lines)
                if (!l.pass) failed += (failed.empty() ? "" : "; ") + l.name;
            rows.push_back({{"n", n}, {"d", d}, {"pass", rep.all_pass()}, {"failed", failed}});
            o.lines.push_back(std::string(rep.all_pass() ? "PASS" : "FAIL") + " n=" + std::to_string(n) +
                              " d=" + std::to_string(d) + (failed.empty() ? "" : "  [" + failed + "]"));
            if (!rep.all_pass()) o.code = 1;
        }
    auto K3 = hypersurface_profile(2, 4, ell, BaseField::Q());
    bool quartic = K3.h(2, 0) == 1 && K3.h(1, 1) == 20 && K3.b(2) == 22;
    o.j = {{"sweep", rows}, {"quartic", {{"h20", K3.h(2, 0)}, {"h11", K3.h(1, 1)}, {"b2", K3.b(2)}, {"pass", quartic}}}};
    o.lines.push_back(std::string(quartic ? "PASS" : "FAIL") + " quartic surface h20=" + std::to_string(K3.h(2, 0)) +
                      " h11=" + std::to_string(K3.h(1, 1)) + " b2=" + std::to_string(K3.b(2)));
    if (!quartic) o.code = 1;
    return o;
}

Outcome cmd_profile_real(int count, unsigned long seed) {
    Outcome o;
    std::mt19937_64 rng(seed);
    int fails = 0;
    json bad = json::array();
    for (int it = 0; it < count; ++it) {
        int n = 2 * static_cast<int>(rng() % 4);
        auto r = real_identity_check(random_real_lefschetz(rng, n));
        if (!r.holds()) {
            ++fails;
            bad.push_back({{"case", it}, {"n", n}, {"lhs", h2_json(r.lhs)}, {"rhs", h2_json(r.rhs)}});
            o.lines.push_back("FAIL case=" + std::to_string(it) + " n=" + std::to_string(n) + " lhs=" + r.lhs.str() +
                              " rhs=" + r.rhs.str());
        }
    }
    o.j = {{"cases", count}, {"seed", seed}, {"failures", bad}};
    o.lines.push_back("cases=" + std::to_string(count) + " failures=" + std::to_string(fails));
    o.code = fails ? 1 : 0;
    return o;
}

Outcome cmd_symcx_selftest(int seeds, int max_dim, unsigned long start) {
    Outcome o;
    if (seeds < 0 || max_dim < 1) throw Error(ErrorKind::InvalidArgument, "--seeds >= 0 and --max-dim >= 1");
    long total = 0;
    json bad = json::array();
    for (unsigned long s = start; s < start + static_cast<unsigned long>(seeds); ++s) {
        LawReport r = law_suite(s, max_dim);
        total += static_cast<long>(r.lines.size());
        for (const auto& l : r.lines)
            if (!l.pass) {
                bad.push_back({{"seed", s}, {"law", l.name}});
                o.lines.push_back("FAIL seed=" + std::to_string(s) + " " + l.name);
            }
    }
    o.j = {{"seeds", seeds}, {"max_dim", max_dim}, {"checks", total}, {"failures", bad}};
    o.lines.push_back("seeds=" + std::to_string(seeds) + " checks=" + std::to_string(total) +
                      " failures=" + std::to_string(bad.size()));
    o.code = bad.empty() ? 0 : 1;
    return o;
}

void add_boundary(Outcome& o, const BoundaryCase& c) {
    o.j["cases"].push_back(
        {{"kind", c.kind}, {"p", c.p}, {"input", c.input}, {"formula", c.formula}, {"direct", c.direct}, {"equal", c.equal()}});
    o.lines.push_back(c.kind + " p=" + std::to_string(c.p) + " " + c.input + ": formula=" + c.formula +
                      " direct=" + c.direct + (c.equal() ? " EQUAL" : " DIFFERENT"));
    if (!c.equal()) o.code = 1;
}

BoundaryCase boundary_hw_case(long p, const std::vector<mpq_class>& diag) {
    BoundaryCase c{"hw", p, "diag=", "", ""};
    for (size_t i = 0; i < diag.size(); ++i) c.input += (i ? "," : "") + diag[i].get_str();
    auto norm = jordan_normalize(diag, p);
    c.formula = tame_boundary_hw2(norm, p).str();
    c.direct = tame_boundary_hw2_direct(diag, p).str();
    return c;
}

std::string rep_str(const OrthRep& V) {
    std::string s;
    for (const auto& a : V.chars) s += (s.empty() ? "" : ",") + a.str();
    for (const auto& h : V.hyps)
        s += (s.empty() ? "" : ",") + std::string("H(") + h.det.eps.str() + "*chi" + std::to_string(h.det.ell) + "^" +
             std::to_string(h.det.k) + ":" + std::to_string(h.rank) + ")";
    return s;
}

BoundaryCase boundary_sw_case(long p, const OrthRep& V0, const OrthRep& V1, const SquareClass& chi) {
    BoundaryCase c{"sw", p, "V0=[" + rep_str(V0) + "] V1=[" + rep_str(V1) + "] chi=" + chi.str(), "", ""};
    c.formula = tame_boundary_sw2(V0, V1, chi).str();
    c.direct = tame_boundary_sw2_direct(V0, V1, chi).str();
    return c;
}

}  // namespace

std::vector<BoundaryCase> boundary_selftest(unsigned long seed, int cases) {
    std::mt19937_64 rng(seed);
    const long primes[] = {3, 5, 7};
    auto nz_unit = [&](long p) {
        long x = 0;
        while (x == 0 || x % p == 0) x = static_cast<long>(rng() % 101) - 50;
        return x;
    };
    std::vector<BoundaryCase> out;
    for (int it = 0; it < cases; ++it) {
        long p = primes[it % 3];
        std::vector<mpq_class> v;
        for (int i = 1 + static_cast<int>(rng() % 6); i > 0; --i) {
            mpq_class x(nz_unit(p));
            // valuation in {-2, .., 3}; the formula side normalizes by squares
            int val = static_cast<int>(rng() % 6) - 2;
            for (int k = 0; k < val; ++k) x *= p;
            for (int k = 0; k > val; --k) x /= p;
            v.push_back(x);
        }
        out.push_back(boundary_hw_case(p, v));
    }
    for (int it = 0; it < cases; ++it) {
        long p = primes[it % 3];
        const BaseField K = BaseField::Qp(p);
        auto unit = [&] { return sqclass(K, mpq_class(nz_unit(p))); };
        OrthRep A, B;
        A.field = B.field = K;
        for (int i = static_cast<int>(rng() % 4); i > 0; --i) A.chars.push_back(unit());
        for (int i = static_cast<int>(rng() % 5); i > 0; --i) B.chars.push_back(unit());
        if (rng() % 2) B.hyps.push_back({CharClass{unit(), static_cast<long>(rng() % 3), 2}, 1 + static_cast<long>(rng() % 2)});
        if (rng() % 2) A.hyps.push_back({CharClass{unit(), 2 * static_cast<long>(rng() % 2), p}, 1});
        out.push_back(boundary_sw_case(p, A, B, sqclass(K, mpq_class(p * nz_unit(p)))));
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stiefel-Whitney and Hasse-Witt class calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "structured output");
    std::string field_s = "Q";

    auto* sym = app.add_subcommand("symbol", "symbol class {a, b}");
    std::string sa, sb, place;
    sym->add_option("a", sa)->required();
    sym->add_option("b", sb)->required();
    sym->add_option("--field", field_s, "Q, R or Qp:p");
    sym->add_option("--place", place, "also print the Hilbert symbol at this place (prime or inf)");

    auto* hw = app.add_subcommand("hw", "Hasse-Witt invariants of a Gram matrix");
    std::string gram;
    hw->add_option("--gram", gram, "JSON array of rows")->required();
    hw->add_option("--field", field_s, "Q, R or Qp:p");

    auto* sw = app.add_subcommand("sw", "Stiefel-Whitney classes of characters plus hyperbolic summands");
    std::string chars;
    std::vector<std::string> hyps;
    sw->add_option("--chars", chars, "comma-separated square classes");
    sw->add_option("--hyp", hyps, "hyperbolic summand det:rank, det like a, chi5 or a*chi5^k")->allow_extra_args(false);
    sw->add_option("--field", field_s, "Q, R or Qp:p");

    auto* serre = app.add_subcommand("serre", "trace form against the permutation representation");
    std::string poly, split_s;
    int max_degree = kDefaultMaxDegree;
    serre->add_option("--poly", poly)->required();
    serre->add_option("--split", split_s, "abelian splitting, e.g. q2,q3 or o3");
    serre->add_option("--max-degree", max_degree);

    auto* prof = app.add_subcommand("profile", "cohomological profiles");
    prof->require_subcommand(1);
    auto* p_eval = prof->add_subcommand("eval", "both sides of the identity for a profile file");
    std::string pfile, form_s = "plain";
    p_eval->add_option("--file", pfile)->required();
    p_eval->add_option("--form", form_s, "plain, primed or graded");
    auto* p_hyp = prof->add_subcommand("hypersurface", "profile of a smooth hypersurface");
    int hn = 2, hd = 4;
    long hell = 5;
    std::string hdX, hhw2, hcheck;
    p_hyp->add_option("--n", hn)->required();
    p_hyp->add_option("--d", hd)->required();
    p_hyp->add_option("--ell", hell);
    p_hyp->add_option("--field", field_s, "Q, R or Qp:p");
    p_hyp->add_option("--dX", hdX, "discriminant of the middle form");
    p_hyp->add_option("--hw2", hhw2, "places like 2,inf, or 0/1 over a local field");
    p_hyp->add_option("--check", hcheck, "congruences or crystalline");
    auto* p_cong = prof->add_subcommand("congruences", "congruence sweep over hypersurfaces");
    std::vector<int> cns{2, 4};
    int cmaxd = 6;
    long cell = 5;
    p_cong->add_option("--n", cns)->delimiter(',');
    p_cong->add_option("--max-d", cmaxd);
    p_cong->add_option("--ell", cell);
    auto* p_real = prof->add_subcommand("real-selftest", "real identity on synthesized Hodge structures");
    int rcount = 100;
    unsigned long rseed = 1;
    p_real->add_option("--count", rcount);
    p_real->add_option("--seed", rseed);

    auto* sc = app.add_subcommand("symcx", "symmetric complexes");
    sc->require_subcommand(1);
    auto* sc_self = sc->add_subcommand("selftest", "law suite over seeded random symmetric complexes");
    int seeds = 200, max_dim = 12;
    unsigned long seed_start = 0;
    sc_self->add_option("--seeds", seeds);
    sc_self->add_option("--max-dim", max_dim);
    sc_self->add_option("--seed-start", seed_start);

    auto* bd = app.add_subcommand("boundary", "tame boundary formulas against direct computation");
    bd->require_subcommand(1);
    auto* bd_hw = bd->add_subcommand("hw", "diagonal form over Q_p");
    long bp = 0;
    std::string bdiag;
    bd_hw->add_option("--p", bp)->required();
    bd_hw->add_option("--diag", bdiag)->required();
    auto* bd_sw = bd->add_subcommand("sw", "V0 + V1 (x) chi over Q_p");
    std::string bv0, bv1, bchi;
    bd_sw->add_option("--p", bp)->required();
    bd_sw->add_option("--v0", bv0, "unit square classes of V0");
    bd_sw->add_option("--v1", bv1, "unit square classes of V1");
    bd_sw->add_option("--chi", bchi, "ramified class, e.g. p times a unit")->required();
    auto* bd_self = bd->add_subcommand("selftest", "random tame inputs over Q_3, Q_5, Q_7");
    int bcases = 100;
    unsigned long bseed = 1;
    bd_self->add_option("--cases", bcases);
    bd_self->add_option("--seed", bseed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    Outcome o;
    try {
        BaseField field = BaseField::parse(field_s);
        if (sym->parsed()) {
            o = cmd_symbol(sa, sb, field, place);
        } else if (hw->parsed()) {
            o = cmd_hw(gram, field);
        } else if (sw->parsed()) {
            o = cmd_sw(chars, hyps, field);
        } else if (serre->parsed()) {
            o = cmd_serre(poly, split_s, max_degree);
        } else if (p_eval->parsed()) {
            o = cmd_profile_eval(pfile, form_s);
        } else if (p_hyp->parsed()) {
            o = cmd_profile_hypersurface(hn, hd, hell, field, hdX, hhw2, hcheck);
        } else if (p_cong->parsed()) {
            o = cmd_profile_congruences(cns, cmaxd, cell);
        } else if (p_real->parsed()) {
            o = cmd_profile_real(rcount, rseed);
        } else if (sc_self->parsed()) {
            o = cmd_symcx_selftest(seeds, max_dim, seed_start);
        } else if (bd_hw->parsed()) {
            std::vector<mpq_class> v;
            for (const auto& t : split(bdiag, ',')) v.push_back(nt::parse_rational(t));
            o.j["cases"] = json::array();
            add_boundary(o, boundary_hw_case(bp, v));
        } else if (bd_sw->parsed()) {
            const BaseField K = BaseField::Qp(bp);
            OrthRep A, B;
            A.field = B.field = K;
            A.chars = parse_classes(bv0, K);
            B.chars = parse_classes(bv1, K);
            o.j["cases"] = json::array();
            add_boundary(o, boundary_sw_case(bp, A, B, sqclass(K, nt::parse_rational(bchi))));
        } else if (bd_self->parsed()) {
            o.j["cases"] = json::array();
            std::vector<std::string> keep;
            for (const auto& c : boundary_selftest(bseed, bcases)) add_boundary(o, c);
            int bad = 0;
            for (const auto& c : o.j["cases"]) bad += c["equal"].get<bool>() ? 0 : 1;
            // text output lists only disagreements
            for (const auto& l : o.lines)
                if (l.size() >= 9 && l.compare(l.size() - 9, 9, "DIFFERENT") == 0) keep.push_back(l);
            keep.push_back("cases=" + std::to_string(o.j["cases"].size()) + " failures=" + std::to_string(bad));
            o.lines = keep;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: bad number: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: number out of range: " << e.what() << "\n";
        return 2;
    }

    if (as_json) {
        o.j["exit_code"] = o.code;
        out << o.j.dump(2) << "\n";
    } else {
        for (const auto& l : o.lines) out << l << "\n";
    }
    return o.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"swhw"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace swhw::cli
