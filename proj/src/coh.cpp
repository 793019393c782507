#include "swhw/coh.hpp"

#include "swhw/error.hpp"
#include "swhw/ntheory.hpp"

#include <algorithm>
#include <sstream>

namespace swhw {

namespace {

void require_same(const BaseField& a, const BaseField& b, const char* op) {
    if (a != b) throw Error(ErrorKind::FieldMismatch, std::string(op) + ": " + a.str() + " vs " + b.str());
}

std::vector<mpz_class> sym_diff(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Integer with the same square class as a (numerator times denominator).
mpz_class integral_rep(const mpq_class& a) {
    if (sgn(a) == 0) throw Error(ErrorKind::ZeroInput, "zero has no square class");
    return a.get_num() * a.get_den();
}

int hilbert_at_prime(mpz_class a, mpz_class b, const mpz_class& p) {
    int alpha = nt::valuation(a, p);
    int beta = nt::valuation(b, p);
    if (p == 2) {
        unsigned long ua = mpz_fdiv_ui(a.get_mpz_t(), 8), ub = mpz_fdiv_ui(b.get_mpz_t(), 8);
        int eps_a = ((ua - 1) / 2) % 2, eps_b = ((ub - 1) / 2) % 2;
        int om_a = ((ua * ua - 1) / 8) % 2, om_b = ((ub * ub - 1) / 8) % 2;
        int e = eps_a * eps_b + alpha * om_b + beta * om_a;
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    mpz_class eps = (p - 1) / 2;
    if ((alpha * beta) % 2 && mpz_odd_p(eps.get_mpz_t())) s = -s;
    if (beta % 2) s *= nt::legendre(a, p);
    if (alpha % 2) s *= nt::legendre(b, p);
    return s;
}

}  // namespace

// ---- BaseField / Place ----

BaseField BaseField::Qp(long p) {
    if (!nt::is_prime(p)) throw Error(ErrorKind::InvalidArgument, "Q_p needs a prime, got " + std::to_string(p));
    return {Kind::Padic, p};
}

BaseField BaseField::Fp(long p) {
    if (!nt::is_prime(p)) throw Error(ErrorKind::InvalidArgument, "F_p needs a prime, got " + std::to_string(p));
    if (p == 2) throw Error(ErrorKind::EvenResidueChar, "F_2 is excluded");
    return {Kind::ResidueField, p};
}

BaseField BaseField::parse(const std::string& s) {
    if (s == "Q") return Q();
    if (s == "R") return R();
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::string head = s.substr(0, colon);
        long p = 0;
        try {
            p = std::stol(s.substr(colon + 1));
        } catch (...) {
            throw Error(ErrorKind::ParseError, "bad field '" + s + "'");
        }
        if (head == "Qp") return Qp(p);
        if (head == "Fp") return Fp(p);
    }
    throw Error(ErrorKind::ParseError, "bad field '" + s + "' (expected Q, R, Qp:p, Fp:p)");
}

std::string BaseField::str() const {
    switch (kind) {
        case Kind::Rationals: return "Q";
        case Kind::Reals: return "R";
        case Kind::Padic: return "Qp:" + std::to_string(p);
        case Kind::ResidueField: return "Fp:" + std::to_string(p);
    }
    return "?";
}

Place Place::finite(const mpz_class& p) {
    if (!nt::is_prime(p)) throw Error(ErrorKind::InvalidArgument, "place needs a prime, got " + p.get_str());
    return Place{p};
}

Place Place::parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "R") return real();
    return finite(nt::parse_integer(s));
}

std::string Place::str() const { return is_real() ? "inf" : prime.get_str(); }

bool Place::operator<(const Place& o) const {
    if (is_real()) return false;
    if (o.is_real()) return true;
    return prime < o.prime;
}

// ---- SquareClass ----

SquareClass make_local_class(const BaseField& f, const mpz_class& m0) {
    SquareClass c;
    c.field_ = f;
    mpz_class m = m0;
    switch (f.kind) {
        case BaseField::Kind::Rationals:
            throw Error(ErrorKind::InvalidArgument, "make_local_class over Q");
        case BaseField::Kind::Reals:
            c.rep_ = sgn(m) < 0 ? -1 : 1;
            break;
        case BaseField::Kind::Padic: {
            mpz_class p(f.p);
            int v = nt::valuation(m, p);
            if (f.p == 2) {
                unsigned long w = mpz_fdiv_ui(m.get_mpz_t(), 8);
                bool s = (w == 3 || w == 7), five = (w == 3 || w == 5);
                c.rep_ = (s ? -1 : 1) * (v % 2 ? 2 : 1) * (five ? 5 : 1);
            } else {
                bool nonsq = nt::legendre(m, p) == -1;
                c.rep_ = mpz_class(nonsq ? nt::least_nonsquare(f.p) : 1) * (v % 2 ? p : mpz_class(1));
            }
            break;
        }
        case BaseField::Kind::ResidueField: {
            mpz_class p(f.p);
            if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
                throw Error(ErrorKind::NotInField, m0.get_str() + " is not a unit mod " + p.get_str());
            c.rep_ = nt::legendre(m, p) == -1 ? nt::least_nonsquare(f.p) : 1;
            break;
        }
    }
    return c;
}

SquareClass sqclass(const BaseField& field, const mpq_class& a) {
    if (sgn(a) == 0) throw Error(ErrorKind::ZeroInput, "zero has no square class");
    if (field.kind == BaseField::Kind::ResidueField) {
        mpz_class p(field.p);
        if (mpz_divisible_p(a.get_num_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(a.get_den_mpz_t(), p.get_mpz_t()))
            throw Error(ErrorKind::NotInField, a.get_str() + " is not a unit at " + p.get_str());
    }
    if (field.kind != BaseField::Kind::Rationals) return make_local_class(field, integral_rep(a));
    SquareClass c;
    c.field_ = field;
    auto pn = nt::odd_primes(a.get_num());
    auto pd = a.get_den() == 1 ? std::vector<mpz_class>{} : nt::odd_primes(a.get_den());
    c.primes_ = sym_diff(pn, pd);
    c.rep_ = sgn(a) < 0 ? -1 : 1;
    for (const auto& p : c.primes_) c.rep_ *= p;
    return c;
}

SquareClass SquareClass::one(const BaseField& f) {
    SquareClass c;
    c.field_ = f;
    return c;
}

SquareClass SquareClass::minus_one(const BaseField& f) { return sqclass(f, -1); }

bool SquareClass::odd_valuation() const {
    if (!field_.is_padic()) throw Error(ErrorKind::FieldMismatch, "valuation parity needs Q_p");
    return mpz_divisible_ui_p(rep_.get_mpz_t(), static_cast<unsigned long>(field_.p)) != 0;
}

std::string SquareClass::str() const { return rep_.get_str(); }

SquareClass sq_add(const SquareClass& a, const SquareClass& b) {
    require_same(a.field(), b.field(), "sq_add");
    if (a.field().kind != BaseField::Kind::Rationals) return make_local_class(a.field(), a.rep() * b.rep());
    SquareClass c;
    c.field_ = a.field();
    c.primes_ = sym_diff(a.primes(), b.primes());
    c.rep_ = (sgn(a.rep()) * sgn(b.rep()) < 0) ? -1 : 1;
    for (const auto& p : c.primes_) c.rep_ *= p;
    return c;
}

SquareClass sq_times(long k, const SquareClass& a) {
    return nt::mod2(k) ? a : SquareClass::one(a.field());
}

// ---- H2Class ----

H2Class H2Class::zero(const BaseField& f) {
    H2Class x;
    x.field_ = f;
    return x;
}

H2Class H2Class::from_places(std::vector<Place> places) {
    std::sort(places.begin(), places.end());
    for (size_t i = 1; i < places.size(); ++i)
        if (places[i] == places[i - 1])
            throw Error(ErrorKind::InvalidArgument, "repeated place " + places[i].str());
    if (places.size() % 2)
        throw Error(ErrorKind::InvalidArgument, "a class over Q ramifies at an even number of places");
    H2Class x;
    x.field_ = BaseField::Q();
    x.places_ = std::move(places);
    return x;
}

H2Class H2Class::from_bit(const BaseField& f, bool bit) {
    if (f.is_rationals()) throw Error(ErrorKind::FieldMismatch, "from_bit over Q");
    H2Class x;
    x.field_ = f;
    x.bit_ = f.is_finite() ? false : bit;
    return x;
}

bool H2Class::contains(const Place& v) const {
    return std::binary_search(places_.begin(), places_.end(), v);
}

std::string H2Class::str() const {
    if (field_.is_rationals()) {
        if (places_.empty()) return "0";
        std::string s = "{";
        for (size_t i = 0; i < places_.size(); ++i) s += (i ? ", " : "") + places_[i].str();
        return s + "}";
    }
    return bit_ ? "1" : "0";
}

H2Class h2_add(const H2Class& x, const H2Class& y) {
    require_same(x.field(), y.field(), "h2_add");
    H2Class z;
    z.field_ = x.field();
    if (x.field().is_rationals()) {
        std::set_symmetric_difference(x.places_.begin(), x.places_.end(), y.places_.begin(), y.places_.end(),
                                      std::back_inserter(z.places_));
    } else {
        z.bit_ = x.bit_ != y.bit_;
    }
    return z;
}

bool h2_is_zero(const H2Class& x) { return x.places().empty() && !x.bit(); }

H2Class h2_times(long k, const H2Class& x) { return nt::mod2(k) ? x : H2Class::zero(x.field()); }

// ---- symbols ----

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
    mpz_class A = integral_rep(a), B = integral_rep(b);
    if (v.is_real()) return (sgn(A) < 0 && sgn(B) < 0) ? -1 : 1;
    return hilbert_at_prime(A, B, v.prime);
}

H2Class cup(const SquareClass& a, const SquareClass& b) {
    require_same(a.field(), b.field(), "cup");
    const BaseField& f = a.field();
    switch (f.kind) {
        case BaseField::Kind::Rationals: {
            std::vector<mpz_class> cand{mpz_class(2)};
            for (const auto& p : a.primes()) cand.push_back(p);
            for (const auto& p : b.primes()) cand.push_back(p);
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
            std::vector<Place> ram;
            for (const auto& p : cand)
                if (hilbert_at_prime(a.rep(), b.rep(), p) == -1) ram.push_back(Place{p});
            if (sgn(a.rep()) < 0 && sgn(b.rep()) < 0) ram.push_back(Place::real());
            return H2Class::from_places(std::move(ram));
        }
        case BaseField::Kind::Padic:
            return H2Class::from_bit(f, hilbert_at_prime(a.rep(), b.rep(), mpz_class(f.p)) == -1);
        case BaseField::Kind::Reals:
            return H2Class::from_bit(f, sgn(a.rep()) < 0 && sgn(b.rep()) < 0);
        case BaseField::Kind::ResidueField:
            return H2Class::zero(f);
    }
    return H2Class::zero(f);
}

H2Class restrict(const H2Class& x, const BaseField& f) {
    if (!x.field().is_rationals()) throw Error(ErrorKind::FieldMismatch, "restrict expects a class over Q");
    if (f.is_padic()) return H2Class::from_bit(f, x.contains(Place{mpz_class(f.p)}));
    if (f.is_reals()) return H2Class::from_bit(f, x.contains(Place::real()));
    if (f.is_rationals()) return x;
    throw Error(ErrorKind::FieldMismatch, "restrict target must be Q_p or R");
}

SquareClass restrict(const SquareClass& a, const BaseField& f) {
    if (!a.field().is_rationals()) throw Error(ErrorKind::FieldMismatch, "restrict expects a class over Q");
    return sqclass(f, mpq_class(a.rep()));
}

H2Class c_ell(long ell, const BaseField& field) {
    if (!nt::is_prime(ell)) throw Error(ErrorKind::InvalidArgument, "ell must be prime, got " + std::to_string(ell));
    switch (field.kind) {
        case BaseField::Kind::Rationals:
            return H2Class::from_places({Place{mpz_class(ell)}, Place::real()});
        case BaseField::Kind::Padic:
            return H2Class::from_bit(field, field.p == ell);
        case BaseField::Kind::Reals:
            return H2Class::from_bit(field, true);
        case BaseField::Kind::ResidueField:
            if (field.p == ell)
                throw Error(ErrorKind::CharacteristicClash, "chi_ell undefined in characteristic " + std::to_string(ell));
            return H2Class::zero(field);
    }
    return H2Class::zero(field);
}

CharClass char_mul(const CharClass& a, const CharClass& b) {
    if (a.ell != b.ell && a.k % 2 != 0 && b.k % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "characters with different ell");
    long ell = a.k != 0 ? a.ell : b.ell;
    return {a.eps + b.eps, a.k + b.k, ell};
}

H2Class cbar1(const CharClass& chi) {
    const BaseField& f = chi.field();
    H2Class c = c_ell(chi.ell, f);
    return cup(chi.eps, SquareClass::minus_one(f)) + h2_times(chi.k, c);
}

SquareClass boundary(const H2Class& x) {
    if (!x.field().is_padic()) throw Error(ErrorKind::FieldMismatch, "boundary expects a class over Q_p");
    if (x.field().p == 2) throw Error(ErrorKind::EvenResidueChar, "boundary needs odd residue characteristic");
    BaseField F = BaseField::Fp(x.field().p);
    return x.bit() ? sqclass(F, nt::least_nonsquare(x.field().p)) : SquareClass::one(F);
}

// ---- truncated total classes ----

TruncClass TruncClass::one(const BaseField& f) { return {SquareClass::one(f), H2Class::zero(f)}; }

TruncClass TruncClass::linear(const SquareClass& a) { return {a, H2Class::zero(a.field())}; }

std::string TruncClass::str() const { return "(1, " + s1.str() + ", " + s2.str() + ")"; }

TruncClass trunc_mul(const TruncClass& x, const TruncClass& y) {
    require_same(x.field(), y.field(), "trunc_mul");
    return {x.s1 + y.s1, x.s2 + y.s2 + cup(x.s1, y.s1)};
}

TruncClass trunc_inv(const TruncClass& x) { return {x.s1, x.s2 + cup(x.s1, x.s1)}; }

TruncClass trunc_pow(const TruncClass& x, long n) {
    TruncClass base = n < 0 ? trunc_inv(x) : x;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    TruncClass acc = TruncClass::one(x.field());
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

TruncClass cbar_rank(const BaseField& f, long r) {
    return trunc_pow(TruncClass::linear(SquareClass::minus_one(f)), r);
}

}  // namespace swhw
