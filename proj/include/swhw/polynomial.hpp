#pragma once
// Univariate integer polynomials in x: arithmetic and a small parser.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace swhw {

struct ZPoly {
    std::vector<mpz_class> c;  ///< c[i] is the coefficient of x^i; no trailing zeros

    ZPoly() = default;
    explicit ZPoly(std::vector<mpz_class> coeffs);
    static ZPoly constant(const mpz_class& a);
    static ZPoly x();

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lead() const { return c.back(); }
    mpz_class coeff(int i) const;

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly pow(unsigned long e) const;
    ZPoly derivative() const;
    bool operator==(const ZPoly& o) const { return c == o.c; }

    std::string str() const;
};

/// Accepts integers, x, + - *, ^ with integer exponents, parentheses and
/// implicit multiplication, e.g. "x^4-10x^2+1" or "(x^2-2)(x^2-3)".
ZPoly parse_poly(const std::string& s);

/// Degree of gcd(f, g) over Q.
int gcd_degree(const ZPoly& f, const ZPoly& g);

}  // namespace swhw
