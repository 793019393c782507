#include "swhw/profile.hpp"

#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"
#include "swhw/orthorep.hpp"
#include "swhw/quadform.hpp"

#include <json.hpp>

#include <cstdlib>

namespace swhw {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationFailed, what); }

SquareClass m1(const BaseField& f) { return SquareClass::minus_one(f); }
H2Class c2(const BaseField& f) { return cup(m1(f), m1(f)); }
long binom2(long r) { return r * (r - 1) / 2; }
long mod4(long x) { return ((x % 4) + 4) % 4; }

void require_field(const SquareClass& a, const BaseField& f, const std::string& what) {
    if (a.field() != f) throw Error(ErrorKind::FieldMismatch, what + " is over " + a.field().str() + ", profile over " + f.str());
}
void require_field(const H2Class& a, const BaseField& f, const std::string& what) {
    if (a.field() != f) throw Error(ErrorKind::FieldMismatch, what + " is over " + a.field().str() + ", profile over " + f.str());
}

const H2Class& need(const std::optional<H2Class>& x, const char* what) {
    if (!x) throw Error(ErrorKind::MissingInput, std::string(what) + " is not supplied");
    return *x;
}

SquareClass e_sum(const CohomProfile& P) {
    SquareClass e = SquareClass::one(P.field);
    for (int q = 0; q < P.n; ++q) e = e + P.eq_chars[static_cast<size_t>(q)];
    return e;
}

// eta (c_l - c_2) + {2, d_X}
H2Class common_tail(const CohomProfile& P, const Invariants& I) {
    const BaseField& f = P.field;
    return cup(sqclass(f, 2), P.dX) + h2_times(I.eta, c_ell(P.ell, f) + c2(f));
}

H2Class plain_rhs(const CohomProfile& P, const Invariants& I) {
    const BaseField& f = P.field;
    const H2Class& hw2 = need(P.hw2_in, "hw2 of the middle de Rham cohomology");
    long k = I.r;
    long lin = I.r;
    if (P.n % 4 == 2) {
        k = I.r + P.b(P.n);
        lin = k - 1;
    }
    return hw2 + h2_times(lin, cup(P.dX, m1(f))) + h2_times(binom2(k), c2(f)) + common_tail(P, I);
}

H2Class plain_lhs(const CohomProfile& P, const Invariants& I) {
    const H2Class& sw2 = need(P.sw2_in, "sw2 of the middle l-adic cohomology");
    return sw2 + cup(I.e, m1(P.field)) + h2_times(I.beta, c_ell(P.ell, P.field));
}

std::string sq_to_json(const SquareClass& a) { return a.rep().get_str(); }

SquareClass sq_from_json(const json& j, const BaseField& f) {
    if (j.is_number_integer()) return sqclass(f, mpq_class(j.get<long>()));
    if (!j.is_string()) throw Error(ErrorKind::ParseError, "square class must be a string or integer");
    return sqclass(f, nt::parse_rational(j.get<std::string>()));
}

json h2_to_json(const H2Class& x) {
    if (x.field().is_rationals()) {
        json a = json::array();
        for (const auto& v : x.places()) a.push_back(v.str());
        return a;
    }
    return x.bit() ? 1 : 0;
}

H2Class h2_from_json(const json& j, const BaseField& f) {
    if (f.is_rationals()) {
        if (!j.is_array()) throw Error(ErrorKind::ParseError, "H2 class over Q must be a list of places");
        std::vector<Place> pl;
        for (const auto& v : j) {
            if (v.is_number_integer()) pl.push_back(Place::finite(v.get<long>()));
            else pl.push_back(Place::parse(v.get<std::string>()));
        }
        return H2Class::from_places(pl);
    }
    if (j.is_boolean()) return H2Class::from_bit(f, j.get<bool>());
    long b = 0;
    if (j.is_number_integer()) b = j.get<long>();
    else if (j.is_string()) b = nt::parse_integer(j.get<std::string>()).get_si();
    else throw Error(ErrorKind::ParseError, "H2 class over a local field must be 0 or 1");
    if (b != 0 && b != 1) throw Error(ErrorKind::ParseError, "H2 class over a local field must be 0 or 1");
    if (f.is_finite()) return H2Class::zero(f);
    return H2Class::from_bit(f, b == 1);
}

}  // namespace

long CohomProfile::h(int p, int q) const {
    if (p < 0 || q < 0 || p >= static_cast<int>(hodge.size())) return 0;
    const auto& row = hodge[static_cast<size_t>(p)];
    return q < static_cast<int>(row.size()) ? row[static_cast<size_t>(q)] : 0;
}

void validate(const CohomProfile& P) {
    const int n = P.n;
    if (n < 0 || n % 2) invalid("dimension n must be even and nonnegative, got " + std::to_string(n));
    if (P.field.is_finite()) invalid("profiles need a base field of characteristic 0");
    if (!nt::is_prime(P.ell)) invalid("ell must be prime, got " + std::to_string(P.ell));
    if (static_cast<int>(P.betti.size()) != 2 * n + 1)
        invalid("betti must list b_0..b_2n (" + std::to_string(2 * n + 1) + " values)");
    for (int q = 0; q <= 2 * n; ++q) {
        if (P.b(q) < 0) invalid("negative Betti number b_" + std::to_string(q));
        if (q % 2 && P.b(q) % 2) invalid("odd Betti numbers must be even: b_" + std::to_string(q) + " = " + std::to_string(P.b(q)));
    }
    if (static_cast<int>(P.hodge.size()) != n + 1) invalid("hodge must be an (n+1)x(n+1) table");
    for (const auto& row : P.hodge)
        if (static_cast<int>(row.size()) != n + 1) invalid("hodge must be an (n+1)x(n+1) table");
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            std::string at = "h^{" + std::to_string(p) + "," + std::to_string(q) + "}";
            if (P.h(p, q) < 0) invalid("negative Hodge number " + at);
            if (P.h(p, q) != P.h(q, p)) invalid("Hodge symmetry fails at " + at);
            if (P.h(p, q) != P.h(n - p, n - q)) invalid("Serre duality fails at " + at);
        }
    for (int q = 0; q <= 2 * n; ++q) {
        long s = 0;
        for (int p = 0; p <= q; ++p) s += P.h(p, q - p);
        if (s != P.b(q))
            invalid("b_" + std::to_string(q) + " = " + std::to_string(P.b(q)) + " differs from the Hodge sum " + std::to_string(s));
    }
    if (static_cast<int>(P.eq_chars.size()) != n && static_cast<int>(P.eq_chars.size()) != n + 1)
        invalid("eq must list e_0..e_{n-1} and optionally e_n");
    for (size_t q = 0; q < P.eq_chars.size(); ++q) {
        require_field(P.eq_chars[q], P.field, "e_" + std::to_string(q));
        if (q % 2 && !P.eq_chars[q].is_trivial()) invalid("e_q must be trivial for odd q, e_" + std::to_string(q) + " is not");
    }
    require_field(P.dX, P.field, "d_X");
    if (P.hw2_in) require_field(*P.hw2_in, P.field, "hw2");
    if (P.sw2_in) require_field(*P.sw2_in, P.field, "sw2");
    if (P.lef) {
        const auto& L = *P.lef;
        const size_t k = static_cast<size_t>(n / 2 + 1);
        if (L.prim_dims.size() != k || L.prim_dets.size() != k) invalid("Lefschetz data must list P^0, P^2, .., P^n");
        if (L.prim_dims[0] != P.b(0)) invalid("dim P^0 must equal b_0");
        for (int q = 2; q <= n; q += 2)
            if (L.prim_dims[static_cast<size_t>(q / 2)] != P.b(q) - P.b(q - 2))
                invalid("dim P^" + std::to_string(q) + " must equal b_" + std::to_string(q) + " - b_" + std::to_string(q - 2));
        for (size_t i = 0; i < k; ++i) require_field(L.prim_dets[i], P.field, "det P^" + std::to_string(2 * i));
    }
}

Invariants derive_invariants(const CohomProfile& P) {
    validate(P);
    const int n = P.n, m = n / 2;
    Invariants I;
    long twobeta = 0;
    for (int q = 0; q < n; ++q) {
        long sg = (q % 2) ? -1 : 1;
        I.r += sg * P.b(q);
        twobeta += sg * (n - q) * P.b(q);
    }
    I.beta = twobeta / 2;
    for (int q = 0; q < m; ++q) {
        long chi = 0;
        for (int p = 0; p <= n; ++p) chi += ((p % 2) ? -1 : 1) * P.h(q, p);
        I.eta += ((q % 2) ? -1 : 1) * (m - q) * chi;
        I.h += (m - q) * P.h(q, n - q);
    }
    for (int q = 0; q < n; q += 2) {
        long sg = ((q / 2) % 2) ? -1 : 1;
        I.rprime += (n % 4 == 0) ? sg * P.b(q) : -sg * P.b(q);
    }
    if (n % 4 == 2) I.rprime += P.b(n);
    I.s = (P.b(n) - P.h(m, m)) / 2;
    I.e = e_sum(P);
    return I;
}

Form parse_form(const std::string& s) {
    if (s == "plain") return Form::Plain;
    if (s == "primed") return Form::Primed;
    if (s == "graded") return Form::Graded;
    throw Error(ErrorKind::InvalidArgument, "unknown form '" + s + "' (plain, primed, graded)");
}

std::string form_name(Form f) {
    switch (f) {
        case Form::Plain: return "plain";
        case Form::Primed: return "primed";
        case Form::Graded: return "graded";
    }
    return "?";
}

Sides conjecture_sides(const CohomProfile& P, Form form) {
    Invariants I = derive_invariants(P);
    const BaseField& f = P.field;
    const int n = P.n;
    const long bn = P.b(n);
    Sides s;
    switch (form) {
        case Form::Plain:
            s.lhs = plain_lhs(P, I);
            s.rhs = plain_rhs(P, I);
            break;
        case Form::Primed: {
            s.lhs = plain_lhs(P, I);
            const H2Class& hw2 = need(P.hw2_in, "hw2 of the middle de Rham cohomology");
            H2Class hw2p = hw2;
            SquareClass dp = P.dX;
            if (n % 4 == 2) {
                hw2p = hw2 + h2_times(bn - 1, cup(P.dX, m1(f))) + h2_times(binom2(bn), c2(f));
                dp = P.dX + sq_times(bn, m1(f));
            }
            s.rhs = hw2p + h2_times(I.r, cup(dp, m1(f))) + h2_times(binom2(I.r), c2(f)) + common_tail(P, I);
            break;
        }
        case Form::Graded: {
            const H2Class& sw2 = need(P.sw2_in, "sw2 of the middle l-adic cohomology");
            const H2Class& hw2 = need(P.hw2_in, "hw2 of the middle de Rham cohomology");
            std::vector<std::pair<int, CharClass>> lower;
            std::vector<std::pair<int, long>> offdiag;
            for (int q = 0; q < n; ++q) {
                lower.push_back({q - n, CharClass{P.eq_chars[static_cast<size_t>(q)], (n - q) * P.b(q) / 2, P.ell}});
                offdiag.push_back({q - n, P.b(q)});
            }
            s.lhs = graded_sw2(sw2, lower);
            TruncClass middle{P.dX, hw2};
            TruncClass mid_scaled = scale_hw(middle, bn, sqclass(f, (n % 4 == 2) ? -1 : 1));
            s.rhs = graded_hw_product(mid_scaled, offdiag).s2 + common_tail(P, I);
            break;
        }
    }
    return s;
}

H2Class solve_sw2(const CohomProfile& P) {
    Invariants I = derive_invariants(P);
    return plain_rhs(P, I) + cup(I.e, m1(P.field)) + h2_times(I.beta, c_ell(P.ell, P.field));
}

SquareClass det_formula_rhs(const CohomProfile& P) {
    Invariants I = derive_invariants(P);
    long k = (P.n % 4 == 0) ? I.r : I.r + P.b(P.n);
    return P.dX + sq_times(k, m1(P.field));
}

bool det_formula_check(const CohomProfile& P) {
    if (!P.has_en()) throw Error(ErrorKind::MissingInput, "e_n is not supplied");
    return P.eq_chars.back() == det_formula_rhs(P);
}

bool hodge_dR_check(const CohomProfile& P, const H2Class& hw2_hodge, const SquareClass& disc_hodge) {
    const int m = P.n / 2;
    const long diff = P.b(P.n) - P.h(m, m);
    if (nt::mod2(diff))
        throw Error(ErrorKind::ParityViolation, "b_n = " + std::to_string(P.b(P.n)) + " and h^{m,m} = " +
                                                    std::to_string(P.h(m, m)) + " have different parity");
    validate(P);
    const BaseField& f = P.field;
    require_field(hw2_hodge, f, "hw2 of the Hodge middle");
    require_field(disc_hodge, f, "disc of the Hodge middle");
    const H2Class& hw2 = need(P.hw2_in, "hw2 of the middle de Rham cohomology");
    const long s = diff / 2;
    H2Class rhs = hw2_hodge + h2_times(s, cup(m1(f), disc_hodge)) + h2_times(binom2(s), c2(f));
    return hw2 == rhs && P.dX == disc_hodge + sq_times(s, m1(f));
}

bool CongruenceReport::all_pass() const {
    for (const auto& l : lines)
        if (!l.pass) return false;
    return true;
}

CongruenceReport congruence_checks(const CohomProfile& P) {
    Invariants I = derive_invariants(P);
    const int n = P.n;
    const bool zero4 = n % 4 == 0;
    CongruenceReport rep;
    auto num = [](long x) { return std::to_string(x); };

    rep.lines.push_back({"beta = eta + h (mod 2)", nt::mod2(I.beta - I.eta - I.h) == 0,
                         "beta=" + num(I.beta) + " eta=" + num(I.eta) + " h=" + num(I.h)});
    const long rr = zero4 ? I.r : I.r + P.b(n);
    rep.lines.push_back({zero4 ? "r' = r (mod 2)" : "r' = r + b_n (mod 2)", nt::mod2(I.rprime - rr) == 0,
                         "r'=" + num(I.rprime) + " r=" + num(I.r) + " b_n=" + num(P.b(n))});
    rep.lines.push_back({zero4 ? "C(r',2) = beta + C(r,2) (mod 2)" : "C(r',2) = beta + C(r+b_n,2) (mod 2)",
                         nt::mod2(binom2(I.rprime) - I.beta - binom2(rr)) == 0,
                         "C(r',2)=" + num(binom2(I.rprime)) + " C=" + num(binom2(rr))});
    if (P.lef) {
        long dim = 0;
        SquareClass det = SquareClass::one(P.field);
        // P^- for n = 0 mod 4, P^+ for n = 2 mod 4
        const int want = zero4 ? 2 : 0;
        for (int q = 0; q < n; q += 2)
            if (q % 4 == want) {
                dim += P.lef->prim_dims[static_cast<size_t>(q / 2)];
                det = det + P.lef->prim_dets[static_cast<size_t>(q / 2)];
            }
        const std::string part = zero4 ? "P^-" : "P^+";
        rep.lines.push_back({"r + 2 beta = -dim " + part + " (mod 4)", mod4(I.r + 2 * I.beta + dim) == 0,
                             "r+2beta=" + num(I.r + 2 * I.beta) + " dim=" + num(dim)});
        rep.lines.push_back({"e = det " + part, I.e == det, "e=" + I.e.str() + " det=" + det.str()});
    }
    return rep;
}

CrystallineReport crystalline_boundary_check(const CohomProfile& P) {
    validate(P);
    const BaseField& f = P.field;
    if (!f.is_padic() || f.p == 2) throw Error(ErrorKind::InvalidArgument, "needs a profile over Q_p with p odd");
    if (P.ell != f.p) throw Error(ErrorKind::InvalidArgument, "needs ell = p");
    const H2Class& hw2 = need(P.hw2_in, "hw2 of the middle de Rham cohomology");
    if (!h2_is_zero(hw2)) invalid("hw2 must be unramified (zero over Q_p)");
    if (P.dX.odd_valuation()) invalid("d_X must be a unit class");
    Invariants I = derive_invariants(P);
    if (I.e.odd_valuation()) invalid("e must be a unit class");
    const int n = P.n;
    for (int q = 0; q <= n; ++q) {
        if (std::abs(2 * q - n) >= f.p - 1 && P.h(n - q, q) != 0)
            throw Error(ErrorKind::HodgeConditionViolated,
                        "h^{" + std::to_string(n - q) + "," + std::to_string(q) + "} = " + std::to_string(P.h(n - q, q)) +
                            " must vanish for p = " + std::to_string(f.p));
    }
    CrystallineReport rep;
    rep.lhs = boundary(solve_sw2(P));
    rep.rhs = sq_times(I.h, boundary(c_ell(f.p, f)));
    return rep;
}

// ---- real place ----

long RealHodge::dim() const {
    long d = h00plus + h00minus;
    for (long x : hpq) d += 2 * x;
    return d;
}

RealCounts real_counts(const RealHodge& H) {
    long v = H.h00minus;
    for (long x : H.hpq) v += x;
    return {v, v};
}

PolarizedPiece synthesize(const RealHodge& H, std::mt19937_64& rng) {
    for (long x : H.hpq)
        if (x < 0) throw Error(ErrorKind::InconsistentSynthesis, "negative Hodge number");
    if (H.h00plus < 0 || H.h00minus < 0) throw Error(ErrorKind::InconsistentSynthesis, "negative Hodge number");
    const int d = static_cast<int>(H.dim());
    QMatrix b(d, d), s(d, d), c(d, d);
    std::uniform_int_distribution<long> scale(1, 5);
    int i = 0;
    auto one = [&](long sigma) {
        b(i, i) = scale(rng);
        s(i, i) = sigma;
        c(i, i) = 1;
        ++i;
    };
    for (long k = 0; k < H.h00plus; ++k) one(1);
    for (long k = 0; k < H.h00minus; ++k) one(-1);
    for (size_t p = 1; p <= H.hpq.size(); ++p) {
        const long w = (p % 2) ? -1 : 1;
        for (long k = 0; k < H.hpq[p - 1]; ++k) {
            b(i, i) = w * scale(rng);
            b(i + 1, i + 1) = w * scale(rng);
            s(i, i) = 1;
            s(i + 1, i + 1) = -1;
            c(i, i) = c(i + 1, i + 1) = w;
            i += 2;
        }
    }
    if (d == 0) return {H, b, s, c};
    std::uniform_int_distribution<long> ent(-2, 2);
    QMatrix A(d, d);
    std::optional<QMatrix> Ai;
    do {
        for (int r = 0; r < d; ++r)
            for (int k = 0; k < d; ++k) A(r, k) = ent(rng);
        Ai = A.inverse();
    } while (!Ai);
    return {H, A.transpose() * b * A, *Ai * s * A, *Ai * c * A};
}

QMatrix de_rham_gram(const PolarizedPiece& X) {
    const int d = X.bV.rows();
    if (d == 0) return QMatrix(0, 0);
    QMatrix I = QMatrix::identity(d);
    QMatrix Bp = (X.sigma - I).kernel(), Bm = (X.sigma + I).kernel();
    if (Bp.cols() + Bm.cols() != d) throw Error(ErrorKind::InconsistentSynthesis, "conjugation is not an involution");
    QMatrix cross = Bp.transpose() * X.bV * Bm;
    if (!cross.is_zero()) throw Error(ErrorKind::InconsistentSynthesis, "eigenspaces of the conjugation are not orthogonal");
    QMatrix gp = Bp.transpose() * X.bV * Bp, gm = -(Bm.transpose() * X.bV * Bm);
    if (Bp.cols() == 0) return gm;
    if (Bm.cols() == 0) return gp;
    return QMatrix::block_diag(gp, gm);
}

RealCounts measure(const PolarizedPiece& X) {
    const int d = X.bV.rows();
    if (d == 0) return {0, 0};
    QMatrix I = QMatrix::identity(d);
    if (!X.bV.is_symmetric()) throw Error(ErrorKind::InconsistentSynthesis, "b_V is not symmetric");
    if (X.sigma * X.sigma != I || X.weil * X.weil != I)
        throw Error(ErrorKind::InconsistentSynthesis, "conjugation or Weil operator is not an involution");
    if (X.sigma.transpose() * X.bV * X.sigma != X.bV) throw Error(ErrorKind::InconsistentSynthesis, "conjugation does not preserve b_V");
    QMatrix pol = X.bV * X.weil;
    if (!pol.is_symmetric()) throw Error(ErrorKind::InconsistentSynthesis, "b_V(x, Cy) is not symmetric");
    Signature sg = signature(QuadSpace(pol, BaseField::R()));
    if (sg.minus != 0) throw Error(ErrorKind::InconsistentSynthesis, "b_V(x, Cy) is not positive definite");
    RealCounts rc;
    rc.vminus = (X.sigma + I).kernel().cols();
    QMatrix g = de_rham_gram(X);
    rc.dminus = g.rows() ? signature(QuadSpace(g, BaseField::R())).minus : 0;
    return rc;
}

RealLefschetz random_real_lefschetz(std::mt19937_64& rng, int n) {
    RealLefschetz L;
    L.n = n;
    std::uniform_int_distribution<long> small(0, 2);
    for (int q = 0; q <= n; q += 2) {
        RealHodge H;
        H.h00plus = small(rng);
        H.h00minus = small(rng);
        H.hpq.resize(static_cast<size_t>(q / 2));
        for (auto& x : H.hpq) x = small(rng);
        L.even.push_back(synthesize(H, rng));
    }
    for (int q = 1; q < n; q += 2) L.odd.push_back(2 * small(rng));
    return L;
}

RealIdentityReport real_identity_check(const RealLefschetz& L) {
    const int n = L.n;
    if (n < 0 || n % 2) throw Error(ErrorKind::InconsistentSynthesis, "n must be even");
    if (static_cast<int>(L.even.size()) != n / 2 + 1 || static_cast<int>(L.odd.size()) != n / 2)
        throw Error(ErrorKind::InconsistentSynthesis, "need P^q for every q <= n");
    const BaseField R = BaseField::R();
    std::vector<long> dimP(static_cast<size_t>(n + 1)), v(static_cast<size_t>(n + 1));
    RealIdentityReport rep;
    rep.counts_agree = true;
    for (int q = 0; q <= n; q += 2) {
        const auto& X = L.even[static_cast<size_t>(q / 2)];
        dimP[static_cast<size_t>(q)] = X.bV.rows();
        if (X.hodge.dim() != X.bV.rows()) throw Error(ErrorKind::InconsistentSynthesis, "Hodge numbers do not match the dimension");
        RealCounts mc = measure(X);
        if (!(mc == real_counts(X.hodge))) rep.counts_agree = false;
        v[static_cast<size_t>(q)] = mc.vminus;
    }
    for (int q = 1; q < n; q += 2) {
        long d = L.odd[static_cast<size_t>(q / 2)];
        if (d < 0 || d % 2) throw Error(ErrorKind::InconsistentSynthesis, "odd primitive parts must have even dimension");
        dimP[static_cast<size_t>(q)] = d;
    }
    std::vector<long> b(static_cast<size_t>(n + 1));
    for (int q = 0; q <= n; ++q) b[static_cast<size_t>(q)] = dimP[static_cast<size_t>(q)] + (q >= 2 ? b[static_cast<size_t>(q - 2)] : 0);
    long twobeta = 0;
    for (int q = 0; q < n; ++q) {
        long sg = (q % 2) ? -1 : 1;
        rep.r += sg * b[static_cast<size_t>(q)];
        twobeta += sg * (n - q) * b[static_cast<size_t>(q)];
    }
    rep.beta = twobeta / 2;

    long eq = 0;
    for (int q = 0; q <= n; q += 2) {
        eq += v[static_cast<size_t>(q)];
        if (q < n) rep.e_minus += eq;
    }
    rep.en_minus = eq;

    // l-adic side: sigma acts with e_n^- eigenvalues -1 on H^n
    OrthRep Hn;
    Hn.field = R;
    for (long k = 0; k < b[static_cast<size_t>(n)]; ++k) Hn.chars.push_back(k < rep.en_minus ? m1(R) : SquareClass::one(R));
    SquareClass e = sq_times(rep.e_minus, m1(R));
    rep.lhs = sw2(Hn) + cup(e, m1(R)) + h2_times(rep.beta, c2(R));

    // de Rham side: the (-1)^{n/2}-scaled form on H^n = sum of L^{(n-q)/2} P^q
    QMatrix G(0, 0);
    for (int q = 0; q <= n; q += 2) {
        QMatrix g = de_rham_gram(L.even[static_cast<size_t>(q / 2)]);
        if (g.rows() == 0) continue;
        if (((n + q) / 2) % 2) g = -g;
        G = G.rows() ? QMatrix::block_diag(G, g) : g;
    }
    H2Class hw2p = H2Class::zero(R);
    SquareClass dp = SquareClass::one(R);
    if (G.rows()) {
        QuadSpace D(G, R);
        DiagForm df = diagonalize(D);
        hw2p = hw2(df);
        dp = disc(df);
        rep.dprime_minus = signature(D).minus;
    }
    rep.rhs = hw2p + h2_times(rep.r, cup(dp, m1(R))) + h2_times(binom2(rep.r), c2(R));

    long part = 0;
    const int want = (n % 4 == 0) ? 2 : 0;
    for (int q = 0; q < n; q += 2)
        if (q % 4 == want) part += dimP[static_cast<size_t>(q)];
    rep.congruence = mod4(rep.en_minus - 2 * rep.e_minus - rep.dprime_minus + part) == 0;
    return rep;
}

// ---- constructions ----

std::vector<long> jacobian_hilbert(int n, int d, int max_deg) {
    if (n < 0 || d < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 0 and d >= 2");
    std::vector<long> acc(static_cast<size_t>(max_deg + 1));
    acc[0] = 1;
    for (int k = 0; k < n + 2; ++k) {
        std::vector<long> nxt(acc.size());
        for (int i = 0; i <= max_deg; ++i)
            for (int j = 0; j <= d - 2 && i + j <= max_deg; ++j) nxt[static_cast<size_t>(i + j)] += acc[static_cast<size_t>(i)];
        acc = std::move(nxt);
    }
    return acc;
}

CohomProfile hypersurface_profile(int n, int d, long ell, const BaseField& field, std::optional<SquareClass> dX,
                                  std::optional<H2Class> hw2) {
    if (n < 0 || n % 2) throw Error(ErrorKind::InvalidArgument, "n must be even and nonnegative");
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree must be at least 2");
    const int top = (n + 1) * d;
    auto R = jacobian_hilbert(n, d, top);
    CohomProfile P;
    P.n = n;
    P.ell = ell;
    P.field = field;
    P.hodge.assign(static_cast<size_t>(n + 1), std::vector<long>(static_cast<size_t>(n + 1)));
    for (int p = 0; p <= n; ++p) {
        if (2 * p != n) P.hodge[static_cast<size_t>(p)][static_cast<size_t>(p)] = 1;
        int k = (p + 1) * d - n - 2;
        long prim = (k >= 0 && k <= top) ? R[static_cast<size_t>(k)] : 0;
        P.hodge[static_cast<size_t>(n - p)][static_cast<size_t>(p)] += prim + (2 * p == n ? 1 : 0);
    }
    P.betti.assign(static_cast<size_t>(2 * n + 1), 0);
    for (int q = 0; q <= 2 * n; ++q) {
        long s = 0;
        for (int p = 0; p <= q; ++p) s += P.h(p, q - p);
        P.betti[static_cast<size_t>(q)] = s;
    }
    P.dX = dX ? *dX : SquareClass::one(field);
    P.hw2_in = hw2;
    P.eq_chars.assign(static_cast<size_t>(n), SquareClass::one(field));
    P.eq_chars.push_back(det_formula_rhs(P));
    LefschetzData L;
    for (int q = 0; q <= n; q += 2) {
        L.prim_dims.push_back(P.b(q) - P.b(q - 2));
        SquareClass det = P.eq_chars[static_cast<size_t>(q)];
        if (q >= 2) det = det + P.eq_chars[static_cast<size_t>(q - 2)];
        L.prim_dets.push_back(det);
    }
    P.lef = L;
    validate(P);
    return P;
}

CohomProfile abelian_surface_profile(long ell, const BaseField& field) {
    CohomProfile P;
    P.n = 2;
    P.betti = {1, 4, 6, 4, 1};
    P.hodge = {{1, 2, 1}, {2, 4, 2}, {1, 2, 1}};
    P.dX = SquareClass::one(field);
    P.eq_chars = {SquareClass::one(field), SquareClass::one(field)};
    P.hw2_in = H2Class::zero(field);
    P.ell = ell;
    P.field = field;
    validate(P);
    return P;
}

CohomProfile random_profile(std::mt19937_64& rng) {
    static const long ells[] = {2, 3, 5, 7, 11, 13};
    const BaseField fields[] = {BaseField::Q(), BaseField::Q(), BaseField::Qp(3), BaseField::Qp(5),
                                BaseField::Qp(7), BaseField::Qp(2), BaseField::R()};
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    CohomProfile P;
    P.n = 2 * static_cast<int>(pick(0, 3));
    const int n = P.n;
    P.field = fields[pick(0, 6)];
    P.ell = ells[pick(0, 5)];
    P.hodge.assign(static_cast<size_t>(n + 1), std::vector<long>(static_cast<size_t>(n + 1), -1));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (P.hodge[static_cast<size_t>(p)][static_cast<size_t>(q)] >= 0) continue;
            long x = pick(0, 3);
            for (auto [a, c] : {std::pair{p, q}, {q, p}, {n - p, n - q}, {n - q, n - p}})
                P.hodge[static_cast<size_t>(a)][static_cast<size_t>(c)] = x;
        }
    P.betti.assign(static_cast<size_t>(2 * n + 1), 0);
    for (int q = 0; q <= 2 * n; ++q)
        for (int p = 0; p <= q; ++p) P.betti[static_cast<size_t>(q)] += P.h(p, q - p);
    auto rclass = [&] {
        long a = 0;
        while (a == 0) a = pick(-30, 30);
        return sqclass(P.field, a);
    };
    auto rh2 = [&] {
        if (P.field.is_rationals()) return cup(rclass(), rclass()) + cup(rclass(), rclass());
        return H2Class::from_bit(P.field, pick(0, 1) == 1);
    };
    P.dX = rclass();
    for (int q = 0; q < n; ++q) P.eq_chars.push_back(q % 2 ? SquareClass::one(P.field) : rclass());
    if (pick(0, 1)) P.eq_chars.push_back(rclass());
    P.hw2_in = rh2();
    P.sw2_in = rh2();
    bool monotone = true;
    for (int q = 2; q <= n; q += 2)
        if (P.b(q) < P.b(q - 2)) monotone = false;
    if (monotone) {
        LefschetzData L;
        for (int q = 0; q <= n; q += 2) {
            L.prim_dims.push_back(P.b(q) - P.b(q - 2));
            SquareClass det = q < static_cast<int>(P.eq_chars.size()) ? P.eq_chars[static_cast<size_t>(q)] : rclass();
            if (q >= 2) det = det + P.eq_chars[static_cast<size_t>(q - 2)];
            L.prim_dets.push_back(det);
        }
        P.lef = L;
    }
    validate(P);
    return P;
}

// ---- JSON ----

std::string profile_to_json(const CohomProfile& P, int indent) {
    json j;
    j["n"] = P.n;
    j["betti"] = P.betti;
    j["hodge"] = P.hodge;
    j["dX"] = sq_to_json(P.dX);
    json eq = json::array();
    for (const auto& e : P.eq_chars) eq.push_back(sq_to_json(e));
    j["eq"] = eq;
    j["hw2"] = P.hw2_in ? h2_to_json(*P.hw2_in) : json(nullptr);
    j["sw2"] = P.sw2_in ? h2_to_json(*P.sw2_in) : json(nullptr);
    j["ell"] = P.ell;
    j["field"] = P.field.str();
    if (P.lef) {
        json dets = json::array();
        for (const auto& d : P.lef->prim_dets) dets.push_back(sq_to_json(d));
        j["lef"] = {{"prim_dims", P.lef->prim_dims}, {"prim_dets", dets}};
    }
    return j.dump(indent);
}

CohomProfile profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::ParseError, std::string("profile JSON: ") + ex.what());
    }
    try {
        CohomProfile P;
        P.field = j.contains("field") ? BaseField::parse(j.at("field").get<std::string>()) : BaseField::Q();
        P.n = j.at("n").get<int>();
        P.betti = j.at("betti").get<std::vector<long>>();
        P.hodge = j.at("hodge").get<std::vector<std::vector<long>>>();
        P.dX = j.contains("dX") ? sq_from_json(j.at("dX"), P.field) : SquareClass::one(P.field);
        if (j.contains("eq"))
            for (const auto& e : j.at("eq")) P.eq_chars.push_back(sq_from_json(e, P.field));
        if (j.contains("hw2") && !j.at("hw2").is_null()) P.hw2_in = h2_from_json(j.at("hw2"), P.field);
        if (j.contains("sw2") && !j.at("sw2").is_null()) P.sw2_in = h2_from_json(j.at("sw2"), P.field);
        P.ell = j.at("ell").get<long>();
        if (j.contains("lef") && !j.at("lef").is_null()) {
            LefschetzData L;
            L.prim_dims = j.at("lef").at("prim_dims").get<std::vector<long>>();
            for (const auto& d : j.at("lef").at("prim_dets")) L.prim_dets.push_back(sq_from_json(d, P.field));
            P.lef = L;
        }
        validate(P);
        return P;
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::ParseError, std::string("profile JSON: ") + ex.what());
    }
}

}  // namespace swhw
