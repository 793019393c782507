#include "swhw/orthorep.hpp"

#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"

namespace swhw {

namespace {

void check_field(const OrthRep& V, const SquareClass& c) {
    if (c.field() != V.field) throw Error(ErrorKind::FieldMismatch, "character over " + c.field().str());
}

void require_tame_field(const BaseField& f) {
    if (!f.is_padic()) throw Error(ErrorKind::FieldMismatch, "tame boundary formulas live over Q_p");
    if (f.p == 2) throw Error(ErrorKind::EvenResidueChar, "residue characteristic 2");
}

void require_unramified(const OrthRep& V, const char* what) {
    for (const auto& c : V.chars)
        if (c.odd_valuation()) throw Error(ErrorKind::BadValuation, std::string(what) + " has a ramified character");
    for (const auto& h : V.hyps) {
        if (h.det.eps.odd_valuation() || (nt::mod2(h.det.k) && h.det.ell == V.field.p))
            throw Error(ErrorKind::BadValuation, std::string(what) + " has a ramified hyperbolic summand");
    }
}

int valuation_q(const mpq_class& x, long p) {
    mpz_class P(p);
    return nt::valuation_of(x.get_num(), P) - nt::valuation_of(x.get_den(), P);
}

mpq_class p_power(long p, int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? mpq_class(1, z) : mpq_class(z);
}

}  // namespace

OrthRep OrthRep::trivial(const BaseField& f, long n) {
    OrthRep V;
    V.field = f;
    V.chars.assign(static_cast<size_t>(n), SquareClass::one(f));
    return V;
}

long OrthRep::dim() const {
    long n = static_cast<long>(chars.size());
    for (const auto& h : hyps) n += 2 * h.rank;
    return n;
}

OrthRep direct_sum(const OrthRep& a, const OrthRep& b) {
    if (a.field != b.field) throw Error(ErrorKind::FieldMismatch, "direct_sum");
    OrthRep c = a;
    c.chars.insert(c.chars.end(), b.chars.begin(), b.chars.end());
    c.hyps.insert(c.hyps.end(), b.hyps.begin(), b.hyps.end());
    return c;
}

SquareClass sw1(const OrthRep& V) {
    SquareClass s = SquareClass::one(V.field);
    for (const auto& c : V.chars) {
        check_field(V, c);
        s = s + c;
    }
    return s;
}

TruncClass sw_total(const OrthRep& V) {
    TruncClass t = TruncClass::one(V.field);
    for (const auto& c : V.chars) {
        check_field(V, c);
        t = t * TruncClass::linear(c);
    }
    for (const auto& h : V.hyps) {
        check_field(V, h.det.eps);
        if (h.rank < 0) throw Error(ErrorKind::InvalidArgument, "negative rank");
        t = t * TruncClass{SquareClass::one(V.field), cbar1(h.det)};
    }
    return t;
}

H2Class sw2(const OrthRep& V) { return sw_total(V).s2; }

OrthRep twist(const OrthRep& V, const SquareClass& chi) {
    check_field(V, chi);
    OrthRep W;
    W.field = V.field;
    for (const auto& c : V.chars) W.chars.push_back(c + chi);
    for (const auto& h : V.hyps) {
        HypSummand t = h;
        t.det.eps = h.det.eps + sq_times(h.rank, chi);
        W.hyps.push_back(t);
    }
    return W;
}

H2Class twist_sw2_formula(const OrthRep& V, const SquareClass& chi) {
    check_field(V, chi);
    const long n = V.dim();
    return sw2(V) + h2_times(n - 1, cup(sw1(V), chi)) + h2_times(n * (n - 1) / 2, cup(chi, chi));
}

H2Class graded_sw2(const H2Class& sw2_middle, const std::vector<std::pair<int, CharClass>>& lower) {
    H2Class x = sw2_middle;
    for (const auto& [q, det] : lower) {
        if (q >= 0) throw Error(ErrorKind::InvalidArgument, "lower degrees must be negative");
        x = x + cbar1(det);
    }
    return x;
}

H2Class graded_sw2(const OrthRep& V0, const std::vector<std::pair<int, CharClass>>& lower) {
    return graded_sw2(sw2(V0), lower);
}

SquareClass residue_class(const SquareClass& unit) {
    require_tame_field(unit.field());
    if (unit.odd_valuation()) throw Error(ErrorKind::BadValuation, "class " + unit.str() + " is not a unit class");
    return sqclass(BaseField::Fp(unit.field().p), mpq_class(unit.rep()));
}

SquareClass tame_boundary_sw2(const OrthRep& V0, const OrthRep& V1, const SquareClass& chi) {
    const BaseField& K = V0.field;
    require_tame_field(K);
    if (V1.field != K || chi.field() != K) throw Error(ErrorKind::FieldMismatch, "tame_boundary_sw2");
    require_unramified(V0, "V0");
    require_unramified(V1, "V1");
    if (!chi.odd_valuation()) throw Error(ErrorKind::BadValuation, "twisting character must be ramified");
    const long r = V1.dim();
    const BaseField F = BaseField::Fp(K.p);
    SquareClass out = sq_times(r * (r - 1) / 2, SquareClass::minus_one(F)) + residue_class(sw1(V1));
    if (nt::mod2(r)) {
        SquareClass detV = sw1(V0) + sw1(V1) + sq_times(r, chi);
        out = out + residue_class(detV + chi);
    }
    return out;
}

SquareClass tame_boundary_sw2_direct(const OrthRep& V0, const OrthRep& V1, const SquareClass& chi) {
    return boundary(sw2(direct_sum(V0, twist(V1, chi))));
}

std::vector<mpq_class> jordan_normalize(const std::vector<mpq_class>& diag, long p) {
    std::vector<mpq_class> out;
    for (const auto& x : diag) {
        if (sgn(x) == 0) throw Error(ErrorKind::Degenerate, "zero diagonal entry");
        int v = valuation_q(x, p);
        int shift = v >= 0 ? -(v / 2) * 2 : ((-v + 1) / 2) * 2;
        out.push_back(x * p_power(p, shift));
    }
    return out;
}

SquareClass tame_boundary_hw2(const std::vector<mpq_class>& diag, long p) {
    const BaseField K = BaseField::Qp(p);
    require_tame_field(K);
    const BaseField F = BaseField::Fp(p);
    long r = 0;
    SquareClass discL1 = SquareClass::one(F);
    SquareClass discD = SquareClass::one(K);
    for (const auto& x : diag) {
        if (sgn(x) == 0) throw Error(ErrorKind::Degenerate, "zero diagonal entry");
        int v = valuation_q(x, p);
        if (v != 0 && v != 1)
            throw Error(ErrorKind::BadValuation, "entry " + x.get_str() + " has valuation " + std::to_string(v));
        discD = discD + sqclass(K, x);
        if (v == 1) {
            ++r;
            discL1 = discL1 + sqclass(F, x / p);
        }
    }
    SquareClass out = sq_times(r * (r - 1) / 2, SquareClass::minus_one(F)) + discL1;
    if (r % 2) out = out + residue_class(discD + sqclass(K, p));
    return out;
}

SquareClass tame_boundary_hw2(const QuadSpace& D, long p) {
    return tame_boundary_hw2(jordan_normalize(diagonalize_exact(D.gram).values, p), p);
}

SquareClass tame_boundary_hw2_direct(const std::vector<mpq_class>& diag, long p) {
    return boundary(hw2(DiagForm::of(BaseField::Qp(p), diag)));
}

}  // namespace swhw
