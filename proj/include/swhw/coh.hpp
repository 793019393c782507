#pragma once
// Square classes, degree-2 classes, symbols and truncated total classes
// over Q, Q_p, R and F_p (p odd).

#include <gmpxx.h>

#include <string>
#include <vector>

namespace swhw {

struct BaseField {
    enum class Kind { Rationals, Padic, Reals, ResidueField };
    Kind kind = Kind::Rationals;
    long p = 0;

    static BaseField Q() { return {Kind::Rationals, 0}; }
    static BaseField Qp(long p);
    static BaseField R() { return {Kind::Reals, 0}; }
    static BaseField Fp(long p);
    /// "Q", "R", "Qp:5", "Fp:7"
    static BaseField parse(const std::string& s);

    bool is_rationals() const { return kind == Kind::Rationals; }
    bool is_padic() const { return kind == Kind::Padic; }
    bool is_reals() const { return kind == Kind::Reals; }
    bool is_finite() const { return kind == Kind::ResidueField; }

    std::string str() const;
    bool operator==(const BaseField& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const BaseField& o) const { return !(*this == o); }
};

/// A place of Q. prime == 0 encodes the real place.
struct Place {
    mpz_class prime;

    static Place real() { return Place{mpz_class(0)}; }
    static Place finite(const mpz_class& p);
    static Place parse(const std::string& s);

    bool is_real() const { return prime == 0; }
    std::string str() const;
    bool operator==(const Place& o) const { return prime == o.prime; }
    bool operator!=(const Place& o) const { return !(*this == o); }
    /// finite primes ascending, real place last
    bool operator<(const Place& o) const;
};

class SquareClass {
public:
    SquareClass() = default;

    static SquareClass one(const BaseField& f);
    static SquareClass minus_one(const BaseField& f);

    const BaseField& field() const { return field_; }
    /// Canonical representative: squarefree integer over Q, a coset
    /// representative over Q_p, +-1 over R, 1 or the least nonsquare over F_p.
    const mpz_class& rep() const { return rep_; }
    /// Primes of the squarefree representative (over Q only).
    const std::vector<mpz_class>& primes() const { return primes_; }

    bool is_trivial() const { return rep_ == 1; }
    /// Over Q_p: parity of the valuation.
    bool odd_valuation() const;

    std::string str() const;
    bool operator==(const SquareClass& o) const { return field_ == o.field_ && rep_ == o.rep_; }
    bool operator!=(const SquareClass& o) const { return !(*this == o); }

private:
    friend SquareClass sqclass(const BaseField&, const mpq_class&);
    friend SquareClass sq_add(const SquareClass&, const SquareClass&);
    friend SquareClass make_local_class(const BaseField&, const mpz_class&);
    BaseField field_;
    mpz_class rep_ = 1;
    std::vector<mpz_class> primes_;
};

SquareClass sqclass(const BaseField& field, const mpq_class& a);
SquareClass sq_add(const SquareClass& a, const SquareClass& b);
SquareClass sq_times(long k, const SquareClass& a);
inline SquareClass operator+(const SquareClass& a, const SquareClass& b) { return sq_add(a, b); }

class H2Class {
public:
    H2Class() = default;
    static H2Class zero(const BaseField& f);
    /// Over Q only; the place list must have even length.
    static H2Class from_places(std::vector<Place> places);
    /// Over Q_p or R.
    static H2Class from_bit(const BaseField& f, bool bit);

    const BaseField& field() const { return field_; }
    const std::vector<Place>& places() const { return places_; }
    bool bit() const { return bit_; }
    bool contains(const Place& v) const;

    std::string str() const;
    bool operator==(const H2Class& o) const {
        return field_ == o.field_ && places_ == o.places_ && bit_ == o.bit_;
    }
    bool operator!=(const H2Class& o) const { return !(*this == o); }

private:
    friend H2Class h2_add(const H2Class&, const H2Class&);
    BaseField field_;
    std::vector<Place> places_;
    bool bit_ = false;
};

H2Class h2_add(const H2Class& x, const H2Class& y);
bool h2_is_zero(const H2Class& x);
H2Class h2_times(long k, const H2Class& x);
inline H2Class operator+(const H2Class& a, const H2Class& b) { return h2_add(a, b); }

/// (a,b)_v in {+1,-1}
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

H2Class cup(const SquareClass& a, const SquareClass& b);

/// Localization of a global class at Q_p or R.
H2Class restrict(const H2Class& x, const BaseField& f);
SquareClass restrict(const SquareClass& a, const BaseField& f);

/// The class ramified exactly at ell and the real place, read in `field`.
H2Class c_ell(long ell, const BaseField& field);

/// The character eps * chi_ell^k.
struct CharClass {
    SquareClass eps;
    long k = 0;
    long ell = 2;

    static CharClass of(const SquareClass& e) { return {e, 0, 2}; }
    const BaseField& field() const { return eps.field(); }
};

CharClass char_mul(const CharClass& a, const CharClass& b);
H2Class cbar1(const CharClass& chi);

/// Residue map H^2(Q_p) -> H^1(F_p), p odd.
SquareClass boundary(const H2Class& x);

struct TruncClass {
    SquareClass s1;
    H2Class s2;

    static TruncClass one(const BaseField& f);
    static TruncClass linear(const SquareClass& a);
    const BaseField& field() const { return s1.field(); }
    bool is_one() const { return s1.is_trivial() && h2_is_zero(s2); }
    std::string str() const;
    bool operator==(const TruncClass& o) const { return s1 == o.s1 && s2 == o.s2; }
    bool operator!=(const TruncClass& o) const { return !(*this == o); }
};

TruncClass trunc_mul(const TruncClass& x, const TruncClass& y);
TruncClass trunc_inv(const TruncClass& x);
TruncClass trunc_pow(const TruncClass& x, long n);
inline TruncClass operator*(const TruncClass& a, const TruncClass& b) { return trunc_mul(a, b); }

/// (1 + {-1})^r
TruncClass cbar_rank(const BaseField& f, long r);

}  // namespace swhw
